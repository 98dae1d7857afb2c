"""circsq: distinct squares in circular words.

Word algebra, square and power-class counting, factor-graph circuit
analysis, and exhaustive verification sweeps for the related counting
bounds, with a CLI frontend (``circsq --help``).
"""

from .words import (
    CircularWord,
    InvalidWordError,
    PrimitiveRoot,
    alphabet,
    canonical_rotation,
    circular_factors,
    factors,
    fine_wilf_check,
    has_period,
    is_primitive,
    least_rotation_index,
    primitive_root,
    rational_power,
    rename_by_first_occurrence,
    rotations,
    smallest_period,
    validate_word,
    word_from_ids,
)
from .squares import (
    ClassDecomposition,
    PowerClass,
    SquareSet,
    class_decomposition,
    decomposition_report,
    distinct_squares,
    distinct_squares_circular,
    distinct_squares_circular_via_doubling,
    odd_even_counts,
    power_factors,
    power_factors_circular,
)
from .rauzy import (
    Circuit,
    CircuitCapExceeded,
    ClassCircuit,
    RauzyGraph,
    SmallCircuitProfile,
    build_rauzy_graph,
    circuit_root,
    class_circuit,
    contains_class_circuit,
    cyclomatic_number,
    decompose_split,
    enumerate_elementary_circuits,
    independent_rank,
    is_weakly_connected,
    small_circuit_profile,
    split_point,
    to_dot,
    vector_cycle,
)
from .verify import (
    CHECK_ORDER,
    CheckReport,
    LARGE_CIRCUIT_INSTANCES,
    SuiteReport,
    SweepConfig,
    check_large_circuit,
    circular_square_count,
    necklace_form,
    run_check,
    run_suite,
    search_extremal,
)

__version__ = "0.1.0"
