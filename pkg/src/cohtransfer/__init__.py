"""Population transfer and quantum coherence in small tight-binding networks."""

from .coherence import (
    BasisChoice,
    l1_coherence,
    local_pair_coherence,
    maximally_coherent_state,
    mcs_bounds,
    pure_l1,
    pure_pair_l1,
    pure_reoc,
    reoc,
)
from .errors import DegenerateSystemError, ValidationError
from .hamiltonian import (
    DimerForm,
    ExcitonDecomposition,
    HermitianOperator,
    NetworkParams,
    TrimerReducedForm,
    build_hamiltonian,
    dimer_form,
    exciton_decomposition,
    trimer_reduced,
)
from .metrics import (
    CoherenceSeries,
    TransferReport,
    coherence_series,
    exciton_coherence,
    fidelity_series,
    local_coherence_series,
    perfect_transfer_condition,
    running_average,
)
from .propagation import TimeGrid, Trajectory, density_matrix, propagate, trajectory
from .sweep import ParamRange, SweepRecord, SweepResult, SweepSpec, run_sweep

__version__ = "0.1.0"
