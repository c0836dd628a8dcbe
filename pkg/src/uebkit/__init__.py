"""Construction and verification of unextendible entangled bases of multi-qudit systems."""

from .catalog import (
    CATALOG,
    GENERATORS,
    CoeffVariant,
    ConstructionError,
    bell_meb,
    build_entry,
    build_generator,
    dft_superposition,
    embed_meb,
    extend_padded_square_meb,
    me_triple_2x3,
    meb_extension_completion,
    n_qubit_ueb,
    padded_meb_with_extension,
    recognize_padded_square_meb,
    three_qubit_mixed_ueb,
    three_qubit_w_ueb,
    two_qubit_ueb_fourier,
    two_qubit_ueb_general,
    two_qubit_ueb_real,
)
from .cuts import (
    Bipartition,
    SchmidtData,
    enumerate_cuts,
    is_genuinely_entangled,
    is_maximally_entangled,
    is_product,
    reshape,
    schmidt,
    single_cut,
    unreshape,
)
from .locc import (
    CutProjectionFlag,
    ProjectionOrthogonalityError,
    ProjectionResult,
    RuleFlag,
    VanishingProjectionError,
    all_cut_indistinguishability_flag,
    lone_party_for_cut,
    mask_isolating,
    project_two_qubit,
    symmetric_bell_plane,
    walgate_flag,
)
from .slocc import (
    SloccClass,
    SloccVerdict,
    classify_three_qubit,
    ghz_state,
    ghz_w_range_witness,
    partial_trace,
    resource_dimension_flag,
    three_tangle,
    w_state,
)
from .statefile import (
    LoadedStateFile,
    StateFileError,
    dumps_state_file,
    load_state_file,
    parse_state_file,
    save_state_file,
)
from .states import (
    DEFAULT_EPS,
    PureState,
    QuditDims,
    StateSet,
    Subspace,
    Tolerance,
    apply_local_unitaries,
    apply_local_unitary,
    basis_state,
    canonical_phase,
    haar_unitary,
    inner,
    orthogonal_complement,
    orthonormalize,
    random_state,
    span_equal,
    state_from_combination,
    tensor_product,
)
from .subspaces import (
    BasisKind,
    BasisVerdict,
    Completable,
    CompletionResult,
    DeflationResult,
    Grade,
    Outcome,
    ProductCount,
    SearchConfig,
    SetMode,
    SubspaceStatus,
    SubspaceVerdict,
    completion_search,
    count_product_states_2d_2x2,
    entangled_vector_search,
    find_maximally_entangled,
    find_product_state,
    max_orthogonal_set,
    max_schmidt_rank_in_subspace,
    only_product_across_cut,
    schmidt_rank_upper_bound,
    verify_basis,
)

__version__ = "0.1.0"
