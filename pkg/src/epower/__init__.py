"""Entangling power of multipartite unitary gates under the one-tangle measure."""

from .tensorops import (
    NORM_TOL,
    HERM_TOL,
    UNITARY_TOL,
    PSD_TOL,
    ValidationError,
    SubsystemDims,
    PureState,
    DensityOperator,
    GateMatrix,
    flatten_index,
    unflatten_index,
    basis_state,
    product_state,
    kron_all,
    apply_gate,
    partial_trace,
    partial_trace_density,
    purity,
    reduction_purity,
)
from .entanglement import (
    AME_TOL,
    AmeReport,
    Bipartition,
    ExtendedBipartition,
    canonical_bipartitions,
    concurrence_upper_bound,
    enumerate_bipartitions,
    extended_bipartitions,
    generalized_concurrence,
    ghz_state,
    is_ame,
    one_tangle,
    one_tangle_batch,
    w_state,
)
from .power import (
    EPowerReport,
    GroupMeanInputs,
    choi_state,
    epower_batch,
    epower_bipartition,
    epower_bipartition_indexform,
    epower_one_tangle,
    max_tau_one,
    mean_orthogonal,
    mean_qudit_orthogonal,
    mean_qudit_unitary,
    mean_unitary,
    upper_bound_bipartition,
    upper_bound_one_tangle,
    upper_bound_qudit,
)
from .ensembles import (
    McEstimate,
    MomentEstimate,
    MomentSpec,
    RngSeed,
    as_generator,
    enumerate_permutation_matrices,
    haar_orthogonal,
    haar_orthogonals,
    haar_unitaries,
    haar_unitary,
    mc_entangling_power,
    mc_moment,
    orthogonal_fourth_moment,
    permutation_count,
    permutation_matrix,
    permutation_words,
    product_state_batch,
    random_diagonal_phases,
    random_diagonal_unitary,
    random_product_state,
    unitary_second_moment,
)
from .gates import (
    DIAGONAL_MAX,
    DiagonalMaxResult,
    DiagonalParams,
    deutsch,
    diagonal_gate,
    diagonal_mean,
    epower_diagonal_closed,
    epower_diagonal_deltas,
    epower_gn_closed,
    fredkin,
    g_n,
    gn_coefficient,
    h_d8,
    h_u8,
    identity_gate,
    maximize_diagonal_epower,
    phases_from_omegas_deltas,
    swap_gate,
    toffoli,
)
from .gatefile import GateFileError, read_gate_file, write_gate_file

__version__ = "0.1.0"
