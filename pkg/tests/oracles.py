"""Independent oracles used to pin expected values in the tests.

These deliberately avoid the library's own enumeration/permanent code
paths: the permanent is computed by row recursion (the library expands
permutations or uses Ryser), and trails are found by trying all 2^n
smoothing assignments and walking the result directly off the slot data.
"""

from __future__ import annotations

import itertools


def brute_force_permanent(matrix):
    """Permanent by direct row recursion with used-column masking."""
    n = len(matrix)

    def rec(i, used):
        if i == n:
            return 1
        total = 0
        for j in range(n):
            if not used & (1 << j) and matrix[i][j]:
                total += matrix[i][j] * rec(i + 1, used | (1 << j))
        return total

    return rec(0, 0)


def enumerate_trails_brute_force(diagram):
    """All smoothing assignments whose result is one open tail-to-head curve
    covering every arc; returned as sorted tuples of (crossing, pair)."""
    ids = sorted(diagram.crossing_by_id)
    trails = []
    for choice in itertools.product((0, 1), repeat=len(ids)):
        smoothing = dict(zip(ids, choice))
        if _is_single_open_curve(diagram, smoothing):
            trails.append(tuple(sorted(smoothing.items())))
    return trails


def _is_single_open_curve(diagram, smoothing):
    # pair 1 joins slots (0,1) and (2,3); pair 0 joins (1,2) and (3,0)
    exits = {
        1: {0: 1, 1: 0, 2: 3, 3: 2},
        0: {1: 2, 2: 1, 3: 0, 0: 3},
    }
    covered = 0
    point = "tail"
    arc = diagram.tail_arc
    direction = +1
    while True:
        covered += 1
        start, end = diagram.arc_ends[arc]
        target = end if direction > 0 else start
        if target in ("tail", "head"):
            break
        cid, slot = target
        out_slot = exits[smoothing[cid]][slot]
        arc = diagram.crossing_by_id[cid].slots[out_slot]
        start, end = diagram.arc_ends[arc]
        direction = +1 if start == (cid, out_slot) else -1
    return covered == diagram.num_arcs
