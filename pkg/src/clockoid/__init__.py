"""clockoid: clock states, clock-move lattices and Mock Alexander
polynomials of starred 1-linkoid (knotoid) diagrams.

Diagrams are plain combinatorial maps read from the KDF text format; all
state/trail/lattice structure and the polynomial are derived exactly, with
integer and Laurent-polynomial arithmetic throughout.
"""

from .corpus import CorpusEntry, RunReport, load_corpus, run_corpus
from .diagram import Crossing, DualGraph, LinkoidDiagram, Region, StarPlacement
from .errors import (
    ArcMultiplicityError,
    CapExceededError,
    ClockoidError,
    DiagramError,
    DisconnectedError,
    InvalidMoveError,
    InvalidStateError,
    KdfSyntaxError,
    MismatchedDiagramError,
    NonSphericalError,
    StarError,
    TheoryError,
    ThreadingError,
)
from .kdf import parse_kdf, parse_kdf_file, to_kdf
from .laurent import LaurentPoly
from .moves import (
    ClockMove,
    LatticeReport,
    StateGraph,
    apply_move,
    clocked_state,
    counterclocked_state,
    factorize_exchange,
    hasse_dot,
    legal_moves,
    state_graph,
    verify_lattice,
)
from .polynomial import (
    count_states_matrixtree,
    mock_alexander,
    permanent,
    permanent_polynomial,
    state_count_permanent,
    state_weight,
    tree_count_comparison,
    weighted_incidence_matrix,
)
from .states import (
    ClockState,
    ExchangeDiff,
    NotATrail,
    RootedTree,
    Trail,
    apply_resmoothing,
    enumerate_states,
    exchange_diff,
    make_trail,
    some_state,
    state_to_trail,
    trail_to_state,
    trail_to_tree,
    validate_state,
)
from .surgery import induced_state, smooth_out_crossing
from .weights import DEFAULT_WEIGHTS, WeightTable

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
