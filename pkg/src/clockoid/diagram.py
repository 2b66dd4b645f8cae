"""Starred 1-linkoid diagrams as combinatorial maps.

A diagram has one open (knotoid) component running from a tail endpoint to
a head endpoint, optionally some closed knot components, and n crossings.
Arcs are numbered 0..2n along the orientation: the open component uses
0..m (arc 0 leaves the tail, arc m arrives at the head), closed components
take the remaining numbers in declared cyclic ranges.

Each crossing stores the four arcs attached to it in counterclockwise
rotation order, with slot 0 holding the incoming under-strand arc.  Corner
``q`` of a crossing is the sector between slot ``q`` and slot ``q+1``.
All face/region structure is derived from this rotation system alone, so
no geometric embedding is ever needed.

Conventions fixed here and relied on everywhere else:

* faces are traced by "arrive at slot j, record corner j, leave from slot
  j+1 (ccw-next)"; the traced face lies to the *right* of each dart;
* a crossing is positive when the over-strand enters at slot 3 (so its
  outgoing over-arc sits in slot 1, ccw-next from the incoming under-arc);
* smoothing a crossing so that corners q and q+2 merge connects slot q+1
  to slot q+2 and slot q+3 to slot q.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import (
    ArcMultiplicityError,
    DisconnectedError,
    NonSphericalError,
    StarError,
    ThreadingError,
)

TAIL = "tail"
HEAD = "head"


@dataclass(frozen=True)
class Crossing:
    """A 4-valent vertex: four arc ids in ccw order, slot 0 = incoming under.

    ``over_in_slot`` (1 or 3) records at which slot the over-strand enters;
    it is normally inferred from the arc numbering but must be given
    explicitly when the numbering alone is ambiguous (a closed component
    meeting only this crossing).
    """

    id: int
    slots: tuple[int, int, int, int]
    over_in_slot: int = -1  # resolved during diagram construction

    @property
    def under_in(self) -> int:
        return self.slots[0]

    @property
    def under_out(self) -> int:
        return self.slots[2]

    @property
    def over_in(self) -> int:
        return self.slots[self.over_in_slot]

    @property
    def over_out(self) -> int:
        return self.slots[4 - self.over_in_slot]

    @property
    def sign(self) -> int:
        """+1 when the over-strand enters at slot 3, else -1."""
        return 1 if self.over_in_slot == 3 else -1


@dataclass(frozen=True)
class StarPlacement:
    """Where the star goes: the tail's region, the head's region, or the
    region on a given side (L/R along the arc direction) of an explicit arc."""

    mode: str = TAIL  # "tail" | "head" | "arc"
    arc: int | None = None
    side: str | None = None  # "L" | "R" when mode == "arc"

    @classmethod
    def tail(cls):
        return cls(TAIL)

    @classmethod
    def head(cls):
        return cls(HEAD)

    @classmethod
    def at_arc(cls, arc: int, side: str):
        if side not in ("L", "R"):
            raise ValueError("side must be 'L' or 'R'")
        return cls("arc", arc, side)

    def __str__(self):
        if self.mode == "arc":
            return f"star {self.arc} {self.side}"
        return f"star {self.mode}"


@dataclass(frozen=True)
class Region:
    """A face of the universe: its corners in boundary-walk order plus the
    endpoint incidences (tail/head) encountered on the walk."""

    id: int
    corners: tuple[tuple[int, int], ...]  # (crossing id, corner index)
    endpoints: tuple[str, ...]  # subset of ("tail", "head"), walk order
    starred: bool = False


@dataclass
class DualGraph:
    """Regions as vertices; one edge per arc.  Arcs with the same region on
    both sides are kept as loops (they never enter spanning trees).
    ``merge_pairs[c]`` gives, per crossing, the region pairs the two
    smoothings of c would merge: index 0 for corners {0,2}, 1 for {1,3}."""

    num_vertices: int
    edges: tuple[tuple[int, int, int], ...]  # (arc, region, region)
    loops: tuple[tuple[int, int], ...]  # (arc, region)
    merge_pairs: dict[int, tuple[tuple[int, int], tuple[int, int]]]


class LinkoidDiagram:
    """Validated, immutable starred 1-linkoid diagram with derived structure.

    Construction performs full validation: arc multiplicities, threading
    consistency, connectivity, and the Euler face count F = n+1.  After
    that the instance carries regions, the region/crossing incidence, per
    crossing signs and the dual graph, all computed once.  Instances are
    treated as immutable; no method mutates them.
    """

    def __init__(self, crossings, loops=(), star=None, name="", weights=None):
        self.name = name
        self.loops = tuple((int(a), int(b)) for a, b in loops)
        self.star = star if star is not None else StarPlacement.tail()
        self.weights = weights  # optional WeightTable parsed from KDF

        raw = [
            c if isinstance(c, Crossing) else Crossing(c[0], tuple(c[1]), *c[2:])
            for c in crossings
        ]
        self.n = len(raw)
        self.num_arcs = 2 * self.n + 1
        self._partition_arcs()
        self.crossings = tuple(self._resolve_over(raw))
        self.crossing_by_id = {c.id: c for c in self.crossings}
        if len(self.crossing_by_id) != self.n:
            raise ThreadingError("duplicate crossing ids")
        self._check_multiplicities()
        self._thread()
        self._check_connected()
        self._trace_faces()
        self._resolve_star()
        self._build_incidence()
        self._build_dual()

    # ------------------------------------------------------------------
    # validation + derivation
    # ------------------------------------------------------------------

    def _partition_arcs(self):
        closed = set()
        for first, last in self.loops:
            if last < first:
                raise ThreadingError(f"bad loop range {first}..{last}")
            for a in range(first, last + 1):
                if a in closed:
                    raise ThreadingError(f"arc {a} in two loop ranges")
                closed.add(a)
        all_arcs = set(range(self.num_arcs))
        if not closed <= all_arcs:
            raise ThreadingError("loop range outside arc range 0..2n")
        open_arcs = sorted(all_arcs - closed)
        if not open_arcs or open_arcs != list(range(len(open_arcs))):
            raise ThreadingError(
                "open-component arcs must be the initial segment 0..m"
            )
        self.closed_arcs = closed
        self.open_arcs = open_arcs
        self.tail_arc = 0
        self.head_arc = open_arcs[-1]

    def successor(self, arc: int) -> int | None:
        """The next arc along the same component; None after the head arc."""
        for first, last in self.loops:
            if first <= arc <= last:
                return first if arc == last else arc + 1
        if arc == self.head_arc:
            return None
        return arc + 1

    def _resolve_over(self, raw):
        """Fix each crossing's over_in_slot from the arc numbering.

        Almost always ``successor(slots[s]) == slots[4-s]`` holds for
        exactly one s in {1,3}.  Two-arc closed components crossing twice
        make both orientations locally consistent; those are resolved by
        requiring every arc to be entered exactly once globally.  A closed
        component meeting only one crossing (a one-arc loop) is genuinely
        ambiguous and must come with an explicit over_in_slot.
        """
        pending = []
        resolved = []
        for c in raw:
            if len(c.slots) != 4:
                raise ThreadingError(f"crossing {c.id} does not have 4 slots")
            if c.over_in_slot in (1, 3):
                resolved.append(c)
                continue
            options = [
                s for s in (1, 3) if self.successor(c.slots[s]) == c.slots[4 - s]
            ]
            if not options:
                raise ThreadingError(
                    f"crossing {c.id}: slots {c.slots} inconsistent with arc order"
                )
            if len(options) == 1:
                resolved.append(Crossing(c.id, c.slots, options[0]))
            else:
                pending.append((c, options))

        if pending:
            resolved = self._disambiguate_over(resolved, pending)
        for c in resolved:
            if self.successor(c.slots[0]) != c.slots[2]:
                raise ThreadingError(
                    f"crossing {c.id}: slot 2 is not the under-strand successor"
                )
            if self.successor(c.over_in) != c.over_out:
                raise ThreadingError(
                    f"crossing {c.id}: over-strand slots are not consecutive arcs"
                )
        return sorted(resolved, key=lambda c: c.id)

    def _disambiguate_over(self, resolved, pending):
        """Pick over orientations so every arc is entered exactly once."""
        entered = {}

        def enter(arc, delta):
            entered[arc] = entered.get(arc, 0) + delta

        for c in resolved:
            enter(c.slots[0], 1)
            enter(c.over_in, 1)
        for c, _options in pending:
            enter(c.slots[0], 1)

        out = list(resolved)

        def backtrack(i):
            if i == len(pending):
                return all(v == 1 for v in entered.values())
            c, options = pending[i]
            for s in options:
                enter(c.slots[s], 1)
                if entered[c.slots[s]] <= 1:
                    out.append(Crossing(c.id, c.slots, s))
                    if backtrack(i + 1):
                        return True
                    out.pop()
                enter(c.slots[s], -1)
            return False

        if not backtrack(0):
            raise ThreadingError(
                "cannot orient over-strands from the arc numbering alone; "
                "give over_in_slot explicitly"
            )
        return out

    def _check_multiplicities(self):
        counts = {}
        for c in self.crossings:
            for a in c.slots:
                if not 0 <= a < self.num_arcs:
                    raise ArcMultiplicityError(
                        f"crossing {c.id} references unknown arc {a}"
                    )
                counts[a] = counts.get(a, 0) + 1
        for a in range(self.num_arcs):
            if a == self.tail_arc == self.head_arc:
                want = 0  # the 0-crossing diagram: one arc, tail to head
            elif a in (self.tail_arc, self.head_arc):
                want = 1
            else:
                want = 2
            if counts.get(a, 0) != want:
                raise ArcMultiplicityError(
                    f"arc {a} appears in {counts.get(a, 0)} slots, expected {want}"
                )

    def _thread(self):
        """Locate both ends of every arc: arc_ends[a] = (start, end), each a
        (crossing, slot) pair or 'tail'/'head'."""
        starts = {}
        ends = {}
        for c in self.crossings:
            for s, a in enumerate(c.slots):
                # the strand passes straight through: slots 0 and over_in
                # are entries, slots 2 and over_out are exits
                if s == 0 or s == c.over_in_slot:
                    ends.setdefault(a, []).append((c.id, s))
                else:
                    starts.setdefault(a, []).append((c.id, s))
        arc_ends = {}
        for a in range(self.num_arcs):
            s_list = list(starts.get(a, []))
            e_list = list(ends.get(a, []))
            if a == self.tail_arc:
                s_list.append(TAIL)
            if a == self.head_arc:
                e_list.append(HEAD)
            if len(s_list) != 1 or len(e_list) != 1:
                raise ThreadingError(
                    f"arc {a} must leave one point and arrive at one point "
                    f"(got {len(s_list)} starts, {len(e_list)} ends)"
                )
            arc_ends[a] = (s_list[0], e_list[0])
        self.arc_ends = arc_ends

    def _check_connected(self):
        if self.n == 0:
            return
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        for _a, (s, e) in self.arc_ends.items():
            sv = s if s in (TAIL, HEAD) else ("x", s[0])
            ev = e if e in (TAIL, HEAD) else ("x", e[0])
            union(sv, ev)
        vertices = {TAIL, HEAD} | {("x", c.id) for c in self.crossings}
        roots = {find(v) for v in vertices}
        if len(roots) != 1:
            raise DisconnectedError("underlying 4-valent map is not connected")

    # -- face tracing ----------------------------------------------------

    def _dart_target(self, dart):
        arc, direction = dart
        start, end = self.arc_ends[arc]
        return end if direction > 0 else start

    def _leaving_dart(self, point):
        """The unique dart leaving a (crossing, slot) pair or an endpoint."""
        if point == TAIL:
            return (self.tail_arc, +1)
        if point == HEAD:
            return (self.head_arc, -1)
        cid, slot = point
        arc = self.crossing_by_id[cid].slots[slot]
        start, end = self.arc_ends[arc]
        if start == point:
            return (arc, +1)
        if end == point:
            return (arc, -1)
        raise ThreadingError(f"arc {arc} does not touch {point}")

    def _trace_faces(self):
        regions = []
        face_of_dart = {}
        for seed in ((a, d) for a in range(self.num_arcs) for d in (+1, -1)):
            if seed in face_of_dart:
                continue
            rid = len(regions)
            corners = []
            endpoints = []
            dart = seed
            while True:
                face_of_dart[dart] = rid
                target = self._dart_target(dart)
                if target == TAIL:
                    endpoints.append(TAIL)
                    nxt = self._leaving_dart(TAIL)
                elif target == HEAD:
                    endpoints.append(HEAD)
                    nxt = self._leaving_dart(HEAD)
                else:
                    cid, slot = target
                    corners.append((cid, slot))
                    nxt = self._leaving_dart((cid, (slot + 1) % 4))
                dart = nxt
                if dart == seed:
                    break
            regions.append(
                Region(rid, tuple(corners), tuple(endpoints), starred=False)
            )
        if len(regions) != self.n + 1:
            raise NonSphericalError(
                f"face tracing found {len(regions)} faces, expected {self.n + 1}"
            )
        self._raw_regions = regions
        self.face_of_dart = face_of_dart

    def _resolve_star(self):
        mode = self.star.mode
        if mode == TAIL:
            rid = self._endpoint_region(TAIL)
        elif mode == HEAD:
            rid = self._endpoint_region(HEAD)
        elif mode == "arc":
            if self.star.arc is None or not 0 <= self.star.arc < self.num_arcs:
                raise StarError(f"star arc {self.star.arc} does not exist")
            dart = (self.star.arc, +1 if self.star.side == "R" else -1)
            rid = self.face_of_dart[dart]
        else:
            raise StarError(f"unknown star mode {mode!r}")
        self.star_region = rid
        self.regions = tuple(
            Region(r.id, r.corners, r.endpoints, starred=(r.id == rid))
            for r in self._raw_regions
        )
        del self._raw_regions
        self.unstarred_regions = tuple(r.id for r in self.regions if not r.starred)

    def _endpoint_region(self, which):
        for r in self._raw_regions:
            if which in r.endpoints:
                return r.id
        raise StarError(f"no region contains the {which}")

    def _build_incidence(self):
        corner_region = {}
        for r in self.regions:
            for corner in r.corners:
                if corner in corner_region:
                    raise NonSphericalError(f"corner {corner} appears in two regions")
                corner_region[corner] = r.id
        if len(corner_region) != 4 * self.n:
            raise NonSphericalError("corners do not partition the 4n slots")
        self.corner_region = corner_region

        by_region = {r.id: [] for r in self.regions}
        by_crossing = {c.id: [] for c in self.crossings}
        for (cid, q), rid in sorted(corner_region.items()):
            by_region[rid].append((cid, q))
            by_crossing[cid].append((q, rid))
        self.region_corners = {rid: tuple(v) for rid, v in by_region.items()}
        self.crossing_corners = {cid: tuple(v) for cid, v in by_crossing.items()}

    def _build_dual(self):
        edges = []
        loops = []
        for a in range(self.num_arcs):
            right = self.face_of_dart[(a, +1)]
            left = self.face_of_dart[(a, -1)]
            if right == left:
                loops.append((a, right))
            else:
                edges.append((a, right, left))
        merge_pairs = {}
        for c in self.crossings:
            r = self.corner_region
            merge_pairs[c.id] = (
                (r[(c.id, 0)], r[(c.id, 2)]),
                (r[(c.id, 1)], r[(c.id, 3)]),
            )
        self.dual = DualGraph(
            num_vertices=self.n + 1,
            edges=tuple(edges),
            loops=tuple(loops),
            merge_pairs=merge_pairs,
        )

    # ------------------------------------------------------------------
    # queries
    # ------------------------------------------------------------------

    def signs(self) -> dict[int, int]:
        """Crossing id -> +1/-1 under the fixed ccw slot convention."""
        return {c.id: c.sign for c in self.crossings}

    @property
    def tail_region(self) -> int:
        for r in self.regions:
            if TAIL in r.endpoints:
                return r.id
        raise StarError("no region contains the tail")

    @property
    def head_region(self) -> int:
        for r in self.regions:
            if HEAD in r.endpoints:
                return r.id
        raise StarError("no region contains the head")

    def is_knot_type(self) -> bool:
        """True when tail and head lie in the same region."""
        return self.tail_region == self.head_region

    def head_anchor(self) -> tuple[int, int] | None:
        """(crossing id, slot) where the head arc leaves its last crossing,
        or None for the 0-crossing diagram."""
        start, _ = self.arc_ends[self.head_arc]
        if start == TAIL:
            return None
        return start

    def merge_regions(self, crossing_id: int, pair: int) -> tuple[int, int]:
        """Regions merged by smoothing ``crossing_id`` with corner pair
        {0,2} (pair=0) or {1,3} (pair=1)."""
        return self.dual.merge_pairs[crossing_id][pair]

    def incidence_matrix(self) -> list[list[int]]:
        """Unstarred-region x crossing matrix of corner multiplicities."""
        rows = []
        for rid in self.unstarred_regions:
            row = []
            for c in self.crossings:
                row.append(
                    sum(1 for (cid, _q) in self.region_corners[rid] if cid == c.id)
                )
            rows.append(row)
        return rows

    def regions_json(self) -> str:
        """Stable JSON export of regions and incidence."""
        data = {
            "name": self.name,
            "crossings": self.n,
            "regions": [
                {
                    "id": r.id,
                    "starred": r.starred,
                    "corners": [[cid, q] for cid, q in r.corners],
                    "endpoints": list(r.endpoints),
                }
                for r in self.regions
            ],
            "signs": {str(c.id): c.sign for c in self.crossings},
            "knot_type": self.is_knot_type(),
        }
        return json.dumps(data, indent=2, sort_keys=True)

    def __repr__(self):
        label = self.name or "diagram"
        return (
            f"<LinkoidDiagram {label}: {self.n} crossings, "
            f"{len(self.regions)} regions>"
        )
