"""In-situ programs: compute a mapping of (Z/sZ)^n by overwriting one
component of the input vector at a time, with no other storage.

Compilers: route_bijection (2n - 1 steps), compile_general5 (5n - 4),
compile_general4_sorted and compile_general4_flexible (4n - 3), and
decompose for linear mappings mod s (at most 2n - 1 assignment
matrices).  minsim checks programs as routings of stage networks;
oracle provides brute-force minimal lengths and whole-universe suites.
"""

from .core import (
    Alphabet,
    Assignment,
    BadSignature,
    InSituError,
    InSituProgram,
    Mapping,
    NotBijective,
    NotBoolean,
    SignatureNotGroupable,
    assignment_table,
    component_permutation,
    concat,
    cycle_program,
    execute,
    execute_all,
    index_of,
    merge_adjacent,
    permutation_length_bound,
    regroup,
    reverse_boolean_bijection,
    vector_of,
)
from .benes import NotRegular, SuffixGraph, edge_color, route_bijection, route_bijection_reversed, suffix_graph
from .factor import (
    ClassFactorisation,
    InvalidOrdering,
    NotDistanceCompatible,
    NotOrderPreserving,
    SizesDoNotSum,
    backward_restricted_program,
    collapse_mapping,
    compile_general4_sorted,
    compile_general5,
    factor_by_classes,
    forward_program,
    is_distance_compatible,
    preimage_classes,
)
from .blockseq import (
    BadChoice,
    BadLength,
    BadSum,
    BlockSequence,
    NotSuffixCompatible,
    compile_general4_flexible,
    compose_forward_program,
    is_block_sequence,
    is_suffix_compatible,
    make_block_sequence,
    permute_block_tree,
    tree_choice_count,
)
from .linmod import (
    AssignmentMatrix,
    DimensionMismatch,
    LinearProgram,
    MatrixMod,
    ModRing,
    NotInvertible,
    ZeroColumn,
    decompose,
    invert_linear_program,
    linear_mapping,
    product,
    to_in_situ,
    unit_multipliers,
)
from .minsim import Min, Routing, RoutingReport, benes_network, butterfly, export_dot, min_of, reversed_butterfly, routing_of, verify
from .oracle import BudgetExceeded, SuiteReport, exhaustive_suite, full_universe, linear_universe, min_length_bfs
from .rng import SplitMix64, random_bijection, random_mapping

__version__ = "0.1.0"
