"""Non-self OU sequences, OU numbers and RIIIα move bounds for link diagrams."""
from .bounds import (
    Parity,
    bound_report,
    lemma_checks,
    lower_bound_ordered,
    lower_bound_unordered,
    multiset_obstruction,
    parity_constraint,
    per_component_bound,
)
from .canonical import canonical_key, digest
from .diagram import (
    LinkDiagram,
    linking_number,
    non_self_ou,
    ou_number,
    ou_vector,
    reverse_component,
    trace_component,
)
from .errors import InternalError, LinkError
from .generators import (
    braid_closure,
    fixture,
    hhn_word,
    jablonowski_sequences,
    parse_braid,
    random_closure,
    trivial_diagram,
)
from .moves import MoveKind, MoveSite, apply_move, classify_r3, enumerate_moves
from .ousequence import CyclicOUSequence, HalfInteger, OUSequence, phi_cyclic, phi_linear, reduce_full
from .pdcode import from_json, parse_pd, serialize_pd, to_json
from .search import Objective, SearchConfig, SearchStatus, connect, fuzz_walk, random_walk

__version__ = "0.1.0"
