"""Smoothing a crossing out of a diagram (the Removal Lemma's surgery).

Smoothing a crossing so that corners ``p`` and ``p+2`` merge deletes the
vertex and splices the four attached strand ends pairwise: slot p+1 to
p+2 and slot p+3 to p.  The rotation system of every other crossing is
untouched; what changes is the bookkeeping: strand pieces may reverse
direction or split off into closed components, so arcs are renumbered by
rewalking the diagram, each crossing's slot 0 is re-anchored to wherever
its under-strand now enters, and the star is re-expressed relative to a
surviving arc.  ``corner_map`` translates old (crossing, corner) pairs to
the new numbering so marker assignments can be carried over.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import HEAD, TAIL, Crossing, LinkoidDiagram, StarPlacement
from .errors import DisconnectedError, TheoryError
from .states import ClockState, validate_state


@dataclass
class RemovalResult:
    diagram: LinkoidDiagram
    corner_map: dict[tuple[int, int], tuple[int, int]]  # old (c,q) -> new (c,q)
    arc_map: dict[int, tuple[int, int]]  # old arc -> (new arc, traversal dir)
    region_map: dict[int, int]  # old region id -> new region id


def smooth_out_crossing(
    diagram: LinkoidDiagram, crossing_id: int, pair: int
) -> RemovalResult:
    """Remove ``crossing_id`` by the smoothing merging corners {pair, pair+2}.

    Raises DisconnectedError when that smoothing would split off a closed
    curve through no remaining crossing (exactly the self-merge case).
    """
    if crossing_id not in diagram.crossing_by_id:
        raise KeyError(f"unknown crossing {crossing_id}")
    if pair not in (0, 1):
        raise ValueError("pair must be 0 (corners {0,2}) or 1 (corners {1,3})")

    # slot welds induced by the smoothing
    p = pair
    weld = {
        (p + 1) % 4: (p + 2) % 4,
        (p + 2) % 4: (p + 1) % 4,
        (p + 3) % 4: p % 4,
        p % 4: (p + 3) % 4,
    }

    def leave(point):
        return diagram._leaving_dart(point)

    def target(dart):
        return diagram._dart_target(dart)

    visited: set[int] = set()
    arc_map: dict[int, tuple[int, int]] = {}
    # per surviving crossing: old slot -> (new arc id, "in"/"out")
    slot_roles: dict[int, dict[int, tuple[int, str]]] = {
        c.id: {} for c in diagram.crossings if c.id != crossing_id
    }
    next_arc = 0
    loops: list[tuple[int, int]] = []

    def traverse(dart, stop_at_endpoints):
        """Walk the smoothed strand from ``dart``; returns list of segments,
        each segment a list of old darts forming one new arc, plus the
        crossing passages separating them."""
        nonlocal next_arc
        segments = [[]]
        passages = []  # (crossing id, entry slot) between segment i and i+1
        first = dart
        while True:
            arc, _d = dart
            if arc in visited:
                raise TheoryError("arc visited twice while rewalking")
            visited.add(arc)
            segments[-1].append(dart)
            t = target(dart)
            if t in (TAIL, HEAD):
                if not stop_at_endpoints:
                    raise TheoryError("closed walk reached an endpoint")
                return segments, passages, False
            cid, slot = t
            if cid == crossing_id:
                dart = leave((crossing_id, weld[slot]))
            else:
                passages.append((cid, slot))
                segments.append([])
                dart = leave((cid, (slot + 2) % 4))
            if dart == first:
                if segments and not segments[-1]:
                    segments.pop()  # walk closed exactly at a passage
                return segments, passages, True

    def commit(segments, passages, closed):
        """Assign new arc ids to segments and record crossing slot roles."""
        nonlocal next_arc
        base = next_arc
        ids = list(range(base, base + len(segments)))
        next_arc += len(segments)
        for new_id, segment in zip(ids, segments):
            for old_arc, d in segment:
                arc_map[old_arc] = (new_id, d)
        for k, (cid, slot) in enumerate(passages):
            in_arc = ids[k]
            out_arc = ids[k + 1] if k + 1 < len(ids) else ids[0]
            slot_roles[cid][slot] = (in_arc, "in")
            slot_roles[cid][(slot + 2) % 4] = (out_arc, "out")
        if closed and len(passages) != len(segments):
            raise TheoryError("closed component passages do not match segments")
        return ids

    # open component first: it fixes arc ids 0..m
    segments, passages, closed = traverse(leave(TAIL), stop_at_endpoints=True)
    if closed:
        raise TheoryError("open walk closed on itself")
    commit(segments, passages, closed=False)

    # remaining arcs belong to closed components
    new_loops = []
    for a in range(diagram.num_arcs):
        if a in visited:
            continue
        segments, passages, closed = traverse((a, +1), stop_at_endpoints=False)
        if not closed:
            raise TheoryError("leftover walk did not close")
        if not passages:
            raise DisconnectedError(
                "smoothing splits off a free closed curve (self-merge smoothing)"
            )
        # rotate so each segment ends at a passage: traversal started mid-arc
        # when the start dart was not just after a passage; merge the wrap
        if len(segments) == len(passages) + 1:
            tail_seg = segments.pop()
            segments[0] = tail_seg + segments[0]
        ids = commit(segments, passages, closed=True)
        new_loops.append((ids[0], ids[-1]))

    # rebuild crossings in the new numbering
    new_crossings = []
    corner_map: dict[tuple[int, int], tuple[int, int]] = {}
    for c in diagram.crossings:
        if c.id == crossing_id:
            continue
        roles = slot_roles[c.id]
        if set(roles) != {0, 1, 2, 3}:
            raise TheoryError(f"crossing {c.id} not fully rethreaded")
        under_entry = [s for s in (0, 2) if roles[s][1] == "in"]
        over_entry = [s for s in (1, 3) if roles[s][1] == "in"]
        if len(under_entry) != 1 or len(over_entry) != 1:
            raise TheoryError(f"crossing {c.id} has inconsistent strand roles")
        delta = under_entry[0]
        new_slots = tuple(roles[(i + delta) % 4][0] for i in range(4))
        new_over_in = (over_entry[0] - delta) % 4
        new_crossings.append(Crossing(c.id, new_slots, new_over_in))
        for q in range(4):
            corner_map[(c.id, q)] = (c.id, (q - delta) % 4)

    # star: any dart of the old starred region survives; keep its side
    star_darts = sorted(
        d for d, rid in diagram.face_of_dart.items() if rid == diagram.star_region
    )
    old_arc, old_dir = star_darts[0]
    new_arc, trav_dir = arc_map[old_arc]
    side = "R" if old_dir == trav_dir else "L"
    if diagram.n - 1 == 0:
        star = StarPlacement.tail()  # single region left
    else:
        star = StarPlacement.at_arc(new_arc, side)

    new_diagram = LinkoidDiagram(
        new_crossings,
        loops=new_loops,
        star=star,
        name=f"{diagram.name}-minus-x{crossing_id}" if diagram.name else "",
        weights=diagram.weights,
    )

    region_map = _region_correspondence(diagram, new_diagram, arc_map)
    return RemovalResult(new_diagram, corner_map, arc_map, region_map)


def _region_correspondence(old, new, arc_map):
    """old region id -> new region id via surviving arc sides.

    The two regions merged by the smoothing map to the same new region.
    """
    mapping: dict[int, int] = {}
    for (old_arc, old_dir), old_rid in old.face_of_dart.items():
        new_arc, trav_dir = arc_map[old_arc]
        new_dart = (new_arc, +1 if old_dir == trav_dir else -1)
        new_rid = new.face_of_dart[new_dart]
        prev = mapping.get(old_rid)
        if prev is not None and prev != new_rid:
            raise TheoryError("surgery split an old region across new regions")
        mapping[old_rid] = new_rid
    return mapping


def induced_state(
    state: ClockState,
    removal: RemovalResult,
    removed_crossing: int,
) -> ClockState:
    """Carry a state over to the smaller universe after smoothing out
    ``removed_crossing`` along its own marker: markers at the surviving
    crossings keep their corners (renumbered), and the merged region
    inherits the partner's marker."""
    new = removal.diagram
    markers = []
    for _rid, cid, q in state.markers:
        if cid == removed_crossing:
            continue
        ncid, nq = removal.corner_map[(cid, q)]
        markers.append((new.corner_region[(ncid, nq)], ncid, nq))
    result = ClockState(tuple(sorted(markers)))
    validate_state(new, result)
    return result
