"""Mark (k-score) sequences of k-digraphs: realizability, construction,
arc minimization, irreducible decomposition and unique realizability."""

from .construction import (
    FlowNetwork,
    IllDefinedStep,
    NegativeEntryProduced,
    ReductionPlan,
    Rule,
    build_network,
    cancel_two_cycles,
    hh_step,
    max_flow_integral,
    realize_flow,
    realize_hh,
)
from .core import (
    ErrorKind,
    KDigraph,
    MarkSequence,
    NotRealizable,
    ValidationError,
    compute_marks,
    parse_sequence,
    validate_digraph,
)
from .decomposition import (
    Decomposition,
    UniqueReport,
    compose,
    decompose_digraph,
    decompose_sequence,
    is_irreducible_digraph,
    is_irreducible_sequence,
    is_uniquely_realizable,
)
from .oracle import (
    RealizationCount,
    TooLarge,
    canonical_form,
    count_realizations,
    enumerate_digraphs,
    min_arc_count_bruteforce,
    realizable_set_bruteforce,
)
from .realizability import (
    RealizabilityReport,
    TournamentReport,
    check_oriented_marks,
    check_realizable,
    check_tournament_marks,
)
from .transform import (
    Direction,
    InapplicableMove,
    MoveKind,
    TripleMove,
    apply_move,
    enumerate_moves,
    is_transitive,
    minimize_arcs,
)

__version__ = "0.1.0"
