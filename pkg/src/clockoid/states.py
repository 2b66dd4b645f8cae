"""Clock states, trails, rooted trees, and the bijections between them.

A clock state puts one marker in every unstarred region, each at a corner
of a crossing incident to that region, such that every crossing carries
exactly one marker.  Smoothing every crossing towards its marker (merging
the marker's corner with the opposite one) turns the diagram into a single
open curve from tail to head covering every arc once: a trail.  The trail
in turn determines a spanning tree of the regions rooted at the star, and
orienting that tree towards the root recovers the state, which is why the
two sets are in bijection.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .diagram import HEAD, TAIL, LinkoidDiagram
from .errors import (
    CapExceededError,
    InvalidStateError,
    MismatchedDiagramError,
    TheoryError,
)

# Smoothing names: pair 0 merges corners {0,2}, pair 1 merges corners {1,3}.
PAIR_02 = 0
PAIR_13 = 1


@dataclass(frozen=True, order=True)
class ClockState:
    """Markers as a sorted tuple of (region id, crossing id, corner)."""

    markers: tuple[tuple[int, int, int], ...]

    def by_region(self) -> dict[int, tuple[int, int]]:
        return {r: (c, q) for r, c, q in self.markers}

    def by_crossing(self) -> dict[int, tuple[int, int]]:
        return {c: (r, q) for r, c, q in self.markers}

    def corner_of(self, crossing_id: int) -> int:
        for _r, c, q in self.markers:
            if c == crossing_id:
                return q
        raise KeyError(crossing_id)

    def fingerprint(self) -> dict[int, int]:
        """crossing id -> marker corner; identifies the state on a diagram."""
        return {c: q for _r, c, q in self.markers}

    def to_json_dict(self):
        return {
            "markers": [
                {"region": r, "crossing": c, "corner": q} for r, c, q in self.markers
            ]
        }


@dataclass(frozen=True)
class Trail:
    """A smoothing per crossing whose result is one open tail-to-head curve.

    ``smoothings`` maps each crossing to PAIR_02/PAIR_13; ``walk`` is the
    arc sequence of the curve (every arc exactly once).  The diagram is
    carried for convenience and excluded from equality.
    """

    smoothings: tuple[tuple[int, int], ...]  # (crossing id, pair) sorted
    walk: tuple[int, ...]
    diagram: LinkoidDiagram = field(compare=False, repr=False)

    def smoothing_map(self) -> dict[int, int]:
        return dict(self.smoothings)

    def to_json_dict(self):
        return {
            "smoothings": [
                {"crossing": c, "merged_corners": [p, p + 2]}
                for c, p in self.smoothings
            ],
            "walk": list(self.walk),
        }


@dataclass(frozen=True)
class NotATrail:
    """Outcome of a resmoothing that breaks the single-open-arc property.

    Not an error: exchange searches legitimately pass through these.  The
    open walk from the tail plus the leftover closed loops describe what
    went wrong.
    """

    smoothings: tuple[tuple[int, int], ...]
    walk: tuple[int, ...]
    loops: tuple[tuple[int, ...], ...]
    diagram: LinkoidDiagram = field(compare=False, repr=False)

    @property
    def diagnosis(self) -> str:
        return f"{len(self.loops)} closed loop(s) split off the open curve"


@dataclass(frozen=True)
class RootedTree:
    """Spanning tree of the regions, edges directed towards the star root.

    Each edge (child region, parent region) is labeled by the crossing the
    edge passes through when that crossing is smoothed.
    """

    root: int
    edges: tuple[tuple[int, int, int], ...]  # (child, parent, crossing id)

    def parent_of(self) -> dict[int, tuple[int, int]]:
        return {child: (parent, c) for child, parent, c in self.edges}

    def to_json_dict(self):
        return {
            "root": self.root,
            "edges": [
                {"child": ch, "parent": pa, "crossing": c}
                for ch, pa, c in self.edges
            ],
        }


@dataclass(frozen=True)
class ExchangeDiff:
    """Crossings where two trails of the same diagram choose opposite
    smoothings."""

    sites: frozenset[int]

    def __len__(self):
        return len(self.sites)


def _same_universe(d1: LinkoidDiagram, d2: LinkoidDiagram) -> bool:
    return d1 is d2 or (
        d1.n == d2.n
        and tuple((c.id, c.slots) for c in d1.crossings)
        == tuple((c.id, c.slots) for c in d2.crossings)
        and d1.loops == d2.loops
        and d1.star_region == d2.star_region
    )


# ---------------------------------------------------------------------------
# state enumeration
# ---------------------------------------------------------------------------


def validate_state(diagram: LinkoidDiagram, state: ClockState) -> None:
    """Raise InvalidStateError unless ``state`` satisfies all invariants."""
    regions = set()
    crossings = set()
    for r, c, q in state.markers:
        if diagram.corner_region.get((c, q)) != r:
            raise InvalidStateError(
                f"marker ({r},{c},{q}): corner {q} of crossing {c} is not in region {r}"
            )
        regions.add(r)
        crossings.add(c)
    if regions != set(diagram.unstarred_regions):
        raise InvalidStateError("markers must cover every unstarred region once")
    if len(state.markers) != len(regions) or len(crossings) != len(state.markers):
        raise InvalidStateError("markers must be a region<->crossing bijection")
    if diagram.star_region in regions:
        raise InvalidStateError("the starred region must not carry a marker")


def enumerate_states(diagram: LinkoidDiagram, cap: int | None = None) -> list[ClockState]:
    """All clock states, duplicate-free, in canonical (sorted) order.

    Backtracks over regions in increasing incidence-degree order with a
    forward check that every unassigned region still has a free crossing.
    If a region touches the same crossing at two corners, each corner is a
    distinct state.
    """
    options = {
        rid: list(diagram.region_corners[rid]) for rid in diagram.unstarred_regions
    }
    order = sorted(options, key=lambda rid: (len(options[rid]), rid))
    out: list[ClockState] = []
    chosen: dict[int, tuple[int, int]] = {}
    used: set[int] = set()

    def feasible(idx: int) -> bool:
        for rid in order[idx:]:
            if all(c in used for c, _q in options[rid]):
                return False
        return True

    def recurse(idx: int):
        if idx == len(order):
            markers = tuple(
                sorted((rid, c, q) for rid, (c, q) in chosen.items())
            )
            out.append(ClockState(markers))
            if cap is not None and len(out) > cap:
                raise CapExceededError(
                    f"more than {cap} clock states (raise the cap to enumerate)"
                )
            return
        rid = order[idx]
        for c, q in options[rid]:
            if c in used:
                continue
            used.add(c)
            chosen[rid] = (c, q)
            if feasible(idx + 1):
                recurse(idx + 1)
            del chosen[rid]
            used.discard(c)

    recurse(0)
    out.sort()
    return out


def some_state(diagram: LinkoidDiagram) -> ClockState:
    """One clock state, cheaply: the first the backtracking search finds."""
    options = {
        rid: list(diagram.region_corners[rid]) for rid in diagram.unstarred_regions
    }
    order = sorted(options, key=lambda rid: (len(options[rid]), rid))
    chosen: dict[int, tuple[int, int]] = {}
    used: set[int] = set()

    def recurse(idx: int):
        if idx == len(order):
            return True
        rid = order[idx]
        for c, q in options[rid]:
            if c in used:
                continue
            used.add(c)
            chosen[rid] = (c, q)
            if recurse(idx + 1):
                return True
            del chosen[rid]
            used.discard(c)
        return False

    if not recurse(0):
        raise TheoryError("diagram admits no clock state")
    return ClockState(tuple(sorted((rid, c, q) for rid, (c, q) in chosen.items())))


# ---------------------------------------------------------------------------
# trails
# ---------------------------------------------------------------------------

# Entering slot s, the smoothing routes the strand to the adjacent slot:
# pair 1 (merge {1,3}) connects slots (0,1) and (2,3); pair 0 connects
# (1,2) and (3,0).
_EXIT = {
    PAIR_13: {0: 1, 1: 0, 2: 3, 3: 2},
    PAIR_02: {1: 2, 2: 1, 3: 0, 0: 3},
}


def _walk_from(diagram, smoothing, start_point):
    """Follow the smoothed curve from a strand end until an endpoint or the
    starting point recurs; returns the arc sequence."""
    arcs = []
    point = start_point
    first = None
    while True:
        if point in (TAIL, HEAD):
            if point == TAIL:
                dart = (diagram.tail_arc, +1)
            else:
                dart = (diagram.head_arc, -1)
        else:
            dart = diagram._leaving_dart(point)
        if first is None:
            first = dart
        elif dart == first:
            break  # closed a loop
        arc, direction = dart
        arcs.append(arc)
        start, end = diagram.arc_ends[arc]
        target = end if direction > 0 else start
        if target in (TAIL, HEAD):
            break
        cid, slot = target
        exit_slot = _EXIT[smoothing[cid]][slot]
        point = (cid, exit_slot)
    return arcs


def _trace_smoothed(diagram, smoothing):
    """(open walk from the tail, leftover loops) under the smoothing."""
    walk = _walk_from(diagram, smoothing, TAIL)
    seen = set(walk)
    loops = []
    for a in range(diagram.num_arcs):
        if a in seen:
            continue
        start, _end = diagram.arc_ends[a]
        loop = _walk_from(diagram, smoothing, start)
        loops.append(tuple(loop))
        seen.update(loop)
    return walk, loops


def make_trail(diagram: LinkoidDiagram, smoothing: dict[int, int]):
    """Build a Trail from a smoothing map, or a NotATrail if loops split off."""
    if set(smoothing) != set(diagram.crossing_by_id):
        raise InvalidStateError("smoothing must cover exactly the crossings")
    walk, loops = _trace_smoothed(diagram, smoothing)
    smoothings = tuple(sorted(smoothing.items()))
    if loops:
        return NotATrail(smoothings, tuple(walk), tuple(loops), diagram)
    if len(walk) != diagram.num_arcs:
        raise TheoryError("open walk misses arcs but no loops were found")
    return Trail(smoothings, tuple(walk), diagram)


def state_to_trail(diagram: LinkoidDiagram, state: ClockState) -> Trail:
    """Smooth every crossing towards its marker; always a trail for a valid
    state (a failure here is a theory discrepancy, not bad input)."""
    validate_state(diagram, state)
    smoothing = {}
    for _rid, c, q in state.markers:
        pair = q % 2
        r1, r2 = diagram.merge_regions(c, pair)
        if r1 == r2:
            raise TheoryError(
                f"marker smoothing at crossing {c} merges region {r1} with itself"
            )
        smoothing[c] = pair
    result = make_trail(diagram, smoothing)
    if isinstance(result, NotATrail):
        raise TheoryError(
            f"state-directed smoothing is not a trail: {result.diagnosis}"
        )
    return result


def trail_to_tree(diagram: LinkoidDiagram, trail: Trail) -> RootedTree:
    """The spanning tree whose edges are the smoothed crossings, rooted at
    the starred region and directed towards it."""
    if not _same_universe(diagram, trail.diagram):
        raise MismatchedDiagramError("trail belongs to a different diagram")
    adjacency = {r.id: [] for r in diagram.regions}
    for cid, pair in trail.smoothings:
        r1, r2 = diagram.merge_regions(cid, pair)
        if r1 == r2:
            raise TheoryError(f"trail smoothing at crossing {cid} is a self-merge")
        adjacency[r1].append((r2, cid))
        adjacency[r2].append((r1, cid))
    root = diagram.star_region
    parent = {root: None}
    stack = [root]
    while stack:
        rid = stack.pop()
        for nxt, cid in adjacency[rid]:
            if nxt not in parent:
                parent[nxt] = (rid, cid)
                stack.append(nxt)
    if len(parent) != len(diagram.regions):
        raise TheoryError("trail smoothings do not span all regions")
    edges = tuple(
        sorted((child, pa_c[0], pa_c[1]) for child, pa_c in parent.items() if pa_c)
    )
    if len(edges) != diagram.n:
        raise TheoryError("trail smoothings contain a cycle")
    return RootedTree(root, edges)


def trail_to_state(diagram: LinkoidDiagram, trail: Trail) -> ClockState:
    """Inverse of state_to_trail: orient the trail's tree towards the root
    and put each region's marker where its outgoing edge enters its parent,
    i.e. at the merge corner lying in the child region."""
    tree = trail_to_tree(diagram, trail)
    smoothing = trail.smoothing_map()
    markers = []
    for child, _parent, cid in tree.edges:
        pair = smoothing[cid]
        corner = None
        for q in (pair, pair + 2):
            if diagram.corner_region[(cid, q)] == child:
                corner = q
                break
        if corner is None:
            raise TheoryError(
                f"tree edge at crossing {cid} does not touch region {child}"
            )
        markers.append((child, cid, corner))
    state = ClockState(tuple(sorted(markers)))
    validate_state(diagram, state)
    return state


def exchange_diff(t1: Trail | NotATrail, t2: Trail | NotATrail) -> ExchangeDiff:
    """Crossings where the two trails smooth oppositely; empty iff equal."""
    if not _same_universe(t1.diagram, t2.diagram):
        raise MismatchedDiagramError("trails belong to different diagrams")
    m1, m2 = dict(t1.smoothings), dict(t2.smoothings)
    return ExchangeDiff(frozenset(c for c in m1 if m1[c] != m2[c]))


def apply_resmoothing(diagram: LinkoidDiagram, trail: Trail, sites):
    """Flip the smoothing at each site; a Trail if the result stays a single
    open curve, otherwise a NotATrail value with the loop diagnosis."""
    sites = set(sites)
    if not sites:
        raise ValueError("need at least one site to resmooth")
    unknown = sites - set(diagram.crossing_by_id)
    if unknown:
        raise KeyError(f"unknown crossing id(s): {sorted(unknown)}")
    if not _same_universe(diagram, trail.diagram):
        raise MismatchedDiagramError("trail belongs to a different diagram")
    smoothing = trail.smoothing_map()
    for c in sites:
        smoothing[c] = 1 - smoothing[c]
    return make_trail(diagram, smoothing)


def states_json(states) -> str:
    return json.dumps([s.to_json_dict() for s in states], indent=2)
