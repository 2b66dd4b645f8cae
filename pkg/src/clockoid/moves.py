"""Clock moves, extremal states, the state graph and its lattice structure.

A clock move rotates markers by one corner step (90 degrees).  There are
two kinds:

* paired: the markers of two regions that share a boundary rotate past
  that boundary in the same sense and swap which crossing serves which
  region.  Generically the two crossings are the endpoints of a single
  shared arc, but the shared boundary may run through further crossings
  (a curl or a whole knotted portion riding on it), so legality is
  decided by the region swap, not by arc adjacency;
* single: one marker rotates and stays inside its own region, which
  requires the edge it passes to have that region on both sides.  The
  standard instance is the marker next to the head rotating past the head
  arc; closed knot components (e.g. a one-arc ring) provide further
  instances that the extremal-uniqueness theorems need.  The tail's
  region is starred in the standard representation, so no single moves
  happen there.

With corners indexed counterclockwise, a clockwise rotation decrements the
corner index.  The clocked state is the unique state with only clockwise
moves; it is found by greedily applying counterclockwise moves, which
strictly ascends the lattice order and so terminates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .diagram import LinkoidDiagram
from .errors import InvalidMoveError, TheoryError
from .states import (
    ClockState,
    enumerate_states,
    exchange_diff,
    state_to_trail,
    validate_state,
)

CW = "cw"
CCW = "ccw"


@dataclass(frozen=True, order=True)
class ClockMove:
    """One or two 90-degree marker rotations with a common rotational sense.

    ``rotations`` holds (crossing id, from corner, to corner), sorted by
    crossing id.
    """

    kind: str  # "paired" | "head"
    sense: str  # "cw" | "ccw"
    rotations: tuple[tuple[int, int, int], ...]

    def reversed(self) -> "ClockMove":
        return ClockMove(
            self.kind,
            CCW if self.sense == CW else CW,
            tuple(sorted((c, t, f) for c, f, t in self.rotations)),
        )

    def crossings(self) -> tuple[int, ...]:
        return tuple(c for c, _f, _t in self.rotations)

    def to_json_dict(self):
        return {
            "kind": self.kind,
            "sense": self.sense,
            "rotations": [
                {"crossing": c, "from": f, "to": t} for c, f, t in self.rotations
            ],
        }


def _step(corner: int, sense: str) -> int:
    return (corner - 1) % 4 if sense == CW else (corner + 1) % 4


def legal_moves(diagram: LinkoidDiagram, state: ClockState) -> list[ClockMove]:
    """All clock moves legal on ``state``, in a deterministic order.

    Candidates are generated geometrically and validated by applying them
    and re-checking the state invariants.

    A paired move needs the two markers' regions to swap under the two
    rotations.  The shared boundary between the swapping regions may pass
    through other crossings (curls or whole knotted portions riding on it),
    so candidates are drawn from all crossing pairs, not only from arcs
    with marked endpoints.
    """
    by_crossing = state.by_crossing()
    region = diagram.corner_region
    candidates: list[ClockMove] = []

    # Single move: a marker rotates one corner step and stays in its own
    # region (the edge it passes has that region on both sides).  For pure
    # knotoids this only ever fires at the crossing next to the head (the
    # tail's region is starred, and a curl's ambient region never has its
    # marker on the curl crossing), but closed knot components expose
    # further cases, e.g. the crossing of a one-arc ring, and those single
    # moves are needed for the extremal states to stay unique.
    for cid, (r, q) in sorted(by_crossing.items()):
        for sense in (CW, CCW):
            t = _step(q, sense)
            if region[(cid, t)] == r:
                candidates.append(ClockMove("single", sense, ((cid, q, t),)))

    crossings = sorted(by_crossing)
    for i, c1 in enumerate(crossings):
        x, q1 = by_crossing[c1]
        for c2 in crossings[i + 1 :]:
            y, q2 = by_crossing[c2]
            for sense in (CW, CCW):
                t1 = _step(q1, sense)
                t2 = _step(q2, sense)
                if region[(c1, t1)] == y and region[(c2, t2)] == x:
                    rot = tuple(sorted(((c1, q1, t1), (c2, q2, t2))))
                    candidates.append(ClockMove("paired", sense, rot))

    moves = []
    for move in sorted(set(candidates)):
        try:
            apply_move(diagram, state, move, _check_legal=False)
        except InvalidMoveError:
            continue
        moves.append(move)
    return moves


def apply_move(
    diagram: LinkoidDiagram,
    state: ClockState,
    move: ClockMove,
    _check_legal: bool = True,
) -> ClockState:
    """Apply a clock move; raises InvalidMoveError if it is not legal."""
    if _check_legal and move not in legal_moves(diagram, state):
        raise InvalidMoveError(f"move {move} is not legal on this state")
    by_crossing = state.by_crossing()
    new_by_crossing = dict(by_crossing)
    for cid, q_from, q_to in move.rotations:
        if cid not in by_crossing:
            raise InvalidMoveError(f"no marker at crossing {cid}")
        _r, q = by_crossing[cid]
        if q != q_from:
            raise InvalidMoveError(
                f"marker at crossing {cid} sits at corner {q}, move expects {q_from}"
            )
        if q_to != _step(q_from, move.sense):
            raise InvalidMoveError("rotation is not one corner step in the move's sense")
        new_region = diagram.corner_region[(cid, q_to)]
        new_by_crossing[cid] = (new_region, q_to)
    markers = tuple(sorted((r, c, q) for c, (r, q) in new_by_crossing.items()))
    new_state = ClockState(markers)
    try:
        validate_state(diagram, new_state)
    except Exception as exc:
        raise InvalidMoveError(f"move result is not a valid state: {exc}")
    return new_state


# ---------------------------------------------------------------------------
# extremal states
# ---------------------------------------------------------------------------


def _state_bound(diagram) -> int:
    from .polynomial import state_count_permanent

    return max(1, state_count_permanent(diagram))


def _greedy(diagram, sense, start=None, rng=None, max_steps=None):
    from .states import some_state

    state = start if start is not None else some_state(diagram)
    validate_state(diagram, state)
    if max_steps is None:
        max_steps = _state_bound(diagram)
    seen = {state}
    for _ in range(max_steps + 1):
        moves = [m for m in legal_moves(diagram, state) if m.sense == sense]
        if not moves:
            return state
        move = moves[0] if rng is None else rng.choice(moves)
        state = apply_move(diagram, state, move, _check_legal=False)
        if state in seen:
            raise TheoryError("greedy extremal iteration revisited a state")
        seen.add(state)
    raise TheoryError(
        f"extremal iteration exceeded the state count bound ({max_steps})"
    )


def clocked_state(diagram: LinkoidDiagram, start=None, rng=None) -> ClockState:
    """The unique state admitting only clockwise moves, reached by greedily
    applying counterclockwise moves from any start state."""
    return _greedy(diagram, CCW, start=start, rng=rng)


def counterclocked_state(diagram: LinkoidDiagram, start=None, rng=None) -> ClockState:
    """The unique state admitting only counterclockwise moves."""
    return _greedy(diagram, CW, start=start, rng=rng)


# ---------------------------------------------------------------------------
# state graph and lattice
# ---------------------------------------------------------------------------


@dataclass
class StateGraph:
    """All states plus the clockwise move relation (edges point from a state
    to the state its clockwise move produces, i.e. downwards)."""

    diagram: LinkoidDiagram
    states: tuple[ClockState, ...]
    cw_edges: tuple[tuple[int, int, ClockMove], ...]

    def index(self) -> dict[ClockState, int]:
        return {s: i for i, s in enumerate(self.states)}

    def undirected_connected(self) -> bool:
        if not self.states:
            return True
        adj = {i: set() for i in range(len(self.states))}
        for i, j, _m in self.cw_edges:
            adj[i].add(j)
            adj[j].add(i)
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.states)


def state_graph(diagram: LinkoidDiagram, cap: int = 10000) -> StateGraph:
    """Enumerate all states and every clockwise move between them."""
    states = enumerate_states(diagram, cap=cap)
    index = {s: i for i, s in enumerate(states)}
    edges = []
    for i, s in enumerate(states):
        for move in legal_moves(diagram, s):
            if move.sense != CW:
                continue
            target = apply_move(diagram, s, move, _check_legal=False)
            j = index.get(target)
            if j is None:
                raise TheoryError("clock move produced a state outside enumeration")
            edges.append((i, j, move))
    return StateGraph(diagram, tuple(states), tuple(edges))


@dataclass
class LatticeReport:
    """Outcome of verifying the lattice structure of the clockwise order."""

    num_states: int
    acyclic: bool
    top: int | None  # clocked state index
    bottom: int | None  # counter-clocked state index
    connected: bool
    all_reachable_from_top: bool
    violations: tuple[str, ...]
    meets: dict[tuple[int, int], int] | None = field(default=None, repr=False)
    joins: dict[tuple[int, int], int] | None = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json_dict(self):
        data = {
            "num_states": self.num_states,
            "acyclic": self.acyclic,
            "top": self.top,
            "bottom": self.bottom,
            "connected": self.connected,
            "all_reachable_from_top": self.all_reachable_from_top,
            "violations": list(self.violations),
        }
        if self.meets is not None:
            data["meets"] = {f"{i},{j}": k for (i, j), k in sorted(self.meets.items())}
            data["joins"] = {f"{i},{j}": k for (i, j), k in sorted(self.joins.items())}
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


MEET_TABLE_LIMIT = 512  # keep pairwise tables only for small graphs


def verify_lattice(graph: StateGraph) -> LatticeReport:
    """Check that the clockwise relation is a lattice order.

    The order is "s2 < s1 when s2 is reachable from s1 by clockwise moves";
    the report records acyclicity, unique top/bottom, reachability from the
    top, and existence/uniqueness of meets and joins for all pairs.
    Violations are reported with witnesses, never raised.
    """
    n = len(graph.states)
    violations: list[str] = []
    children = [set() for _ in range(n)]
    parents = [set() for _ in range(n)]
    for i, j, _m in graph.cw_edges:
        if i == j:
            violations.append(f"self-loop clockwise move at state {i}")
            continue
        children[i].add(j)
        parents[j].add(i)

    order, acyclic = _toposort(n, children)

    # reachability bitmasks, self-inclusive
    desc = [0] * n
    anc = [0] * n
    if acyclic:
        for v in reversed(order):
            mask = 1 << v
            for w in children[v]:
                mask |= desc[w]
            desc[v] = mask
        for v in order:
            mask = 1 << v
            for w in parents[v]:
                mask |= anc[w]
            anc[v] = mask
    else:
        violations.append("clockwise relation contains a cycle")

    sources = [v for v in range(n) if not parents[v]]
    sinks = [v for v in range(n) if not children[v]]
    top = sources[0] if len(sources) == 1 else None
    bottom = sinks[0] if len(sinks) == 1 else None
    if len(sources) != 1:
        violations.append(f"expected one clocked state, found sources {sources}")
    if len(sinks) != 1:
        violations.append(f"expected one counter-clocked state, found sinks {sinks}")

    connected = graph.undirected_connected()
    if not connected:
        violations.append("state graph is not connected")

    all_reachable = False
    if acyclic and top is not None:
        all_reachable = desc[top] == (1 << n) - 1
        if not all_reachable:
            missing = [v for v in range(n) if not (desc[top] >> v) & 1]
            violations.append(
                f"states {missing[:10]} not reachable from the clocked state"
            )

    meets: dict[tuple[int, int], int] = {}
    joins: dict[tuple[int, int], int] = {}
    if acyclic:
        for i in range(n):
            for j in range(i + 1, n):
                k = _unique_bound(anc[i] & anc[j], anc)
                if k is None:
                    violations.append(f"pair ({i},{j}) has no unique join")
                else:
                    joins[(i, j)] = k
                k = _unique_bound(desc[i] & desc[j], desc)
                if k is None:
                    violations.append(f"pair ({i},{j}) has no unique meet")
                else:
                    meets[(i, j)] = k

    keep_tables = n <= MEET_TABLE_LIMIT
    return LatticeReport(
        num_states=n,
        acyclic=acyclic,
        top=top,
        bottom=bottom,
        connected=connected,
        all_reachable_from_top=all_reachable,
        violations=tuple(violations),
        meets=meets if keep_tables else None,
        joins=joins if keep_tables else None,
    )


def _toposort(n, children):
    indeg = [0] * n
    for v in range(n):
        for w in children[v]:
            indeg[w] += 1
    queue = [v for v in range(n) if indeg[v] == 0]
    order = []
    i = 0
    while i < len(queue):
        v = queue[i]
        i += 1
        order.append(v)
        for w in children[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return order, len(order) == n


def _unique_bound(common: int, closure: list[int]) -> int | None:
    """The unique element of ``common`` lying below all of it (closure =
    self-inclusive up-sets for joins / down-sets for meets)."""
    found = None
    mask = common
    while mask:
        v = (mask & -mask).bit_length() - 1
        mask &= mask - 1
        if common & ~closure[v] == 0:
            if found is not None:
                return None
            found = v
    return found


# ---------------------------------------------------------------------------
# monotone factorization of exchanges
# ---------------------------------------------------------------------------


def factorize_exchange(
    diagram: LinkoidDiagram, s1: ClockState, s2: ClockState
) -> list[ClockMove]:
    """A sequence of clock moves, all of one sense, taking s1 to s2.

    Precondition: the trails of s1 and s2 differ by a single or double
    exchange whose site markers rotate in one common sense.  The sequence
    is found by BFS restricted to that sense and verified by replay.
    """
    if s1 == s2:
        return []
    t1 = state_to_trail(diagram, s1)
    t2 = state_to_trail(diagram, s2)
    diff = exchange_diff(t1, t2)
    if not 1 <= len(diff) <= 2:
        raise ValueError(
            f"states differ at {len(diff)} smoothing sites, need 1 or 2"
        )
    senses = set()
    c1 = s1.by_crossing()
    c2 = s2.by_crossing()
    for site in diff.sites:
        delta = (c2[site][1] - c1[site][1]) % 4
        senses.add(CCW if delta == 1 else CW if delta == 3 else None)
    if len(senses) != 1 or None in senses:
        raise ValueError("exchange has no definite rotational sense")
    sense = senses.pop()

    frontier = [s1]
    back: dict[ClockState, tuple[ClockState, ClockMove] | None] = {s1: None}
    while frontier:
        nxt = []
        for state in frontier:
            for move in legal_moves(diagram, state):
                if move.sense != sense:
                    continue
                succ = apply_move(diagram, state, move, _check_legal=False)
                if succ in back:
                    continue
                back[succ] = (state, move)
                if succ == s2:
                    return _replay(diagram, s1, s2, back)
                nxt.append(succ)
        frontier = nxt
    raise TheoryError(
        f"no monotone {sense} path between the states "
        f"(searched {len(back)} states)"
    )


def _replay(diagram, s1, s2, back):
    moves = []
    cur = s2
    while back[cur] is not None:
        prev, move = back[cur]
        moves.append(move)
        cur = prev
    moves.reverse()
    state = s1
    for move in moves:
        state = apply_move(diagram, state, move)
    if state != s2:
        raise TheoryError("replay of the factorized move sequence failed")
    return moves


# ---------------------------------------------------------------------------
# DOT export
# ---------------------------------------------------------------------------


def hasse_dot(graph: StateGraph, title: str = "clockwise") -> str:
    """Deterministic DOT text of the Hasse diagram of the clockwise order.

    Vertices are state indices in canonical enumeration order; only cover
    edges (clockwise moves not implied by longer clockwise paths) are kept.
    The top (clocked) and bottom (counter-clocked) states are highlighted.
    """
    n = len(graph.states)
    children = [set() for _ in range(n)]
    parents = [set() for _ in range(n)]
    edge_set = set()
    for i, j, _m in graph.cw_edges:
        children[i].add(j)
        parents[j].add(i)
        edge_set.add((i, j))
    order, acyclic = _toposort(n, children)
    desc = [0] * n
    if acyclic:
        for v in reversed(order):
            mask = 1 << v
            for w in children[v]:
                mask |= desc[w]
            desc[v] = mask

    covers = []
    for i, j in sorted(edge_set):
        redundant = False
        if acyclic:
            for k in children[i]:
                if k != j and (desc[k] >> j) & 1:
                    redundant = True
                    break
        if not redundant:
            covers.append((i, j))

    sources = [v for v in range(n) if not parents[v]]
    sinks = [v for v in range(n) if not children[v]]
    lines = [f'digraph "{title}" {{', "  rankdir=TB;"]
    for i, state in enumerate(graph.states):
        label = ",".join(f"{c}:{q}" for c, q in sorted(state.fingerprint().items()))
        attrs = [f'label="s{i}\\n{label}"']
        if [i] == sources:
            attrs.append('style=filled fillcolor="#c8e6c9"')
        elif [i] == sinks:
            attrs.append('style=filled fillcolor="#ffcdd2"')
        lines.append(f"  s{i} [{' '.join(attrs)}];")
    for i, j in covers:
        lines.append(f"  s{i} -> s{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
