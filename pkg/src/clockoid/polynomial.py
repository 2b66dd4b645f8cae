"""The Mock Alexander polynomial: state sum, permanent form, tree counts.

The polynomial is the sum over all clock states of the product of the
corner weights the state markers point at.  Because each unstarred region
must pick a distinct crossing, the same sum is the permanent of the
region-by-crossing matrix whose entries are the corner weights (summing
monomials when a region meets a crossing at several corners).  Everything
here is exact: Laurent coefficients are integers, the permanent is done by
expansion or Ryser's formula over the ring, and the spanning-tree count of
the dual graph uses a fraction-free integer determinant.
"""

from __future__ import annotations

from itertools import permutations

from .diagram import LinkoidDiagram
from .errors import CapExceededError
from .laurent import LaurentPoly
from .states import ClockState, enumerate_states
from .weights import DEFAULT_WEIGHTS, WeightTable

PERMANENT_EXPANSION_LIMIT = 8
PERMANENT_RYSER_LIMIT = 12


def resolve_weights(diagram: LinkoidDiagram, table: WeightTable | None) -> WeightTable:
    """Explicit table wins, then the diagram's own KDF table, then the default."""
    if table is not None:
        return table
    if diagram.weights is not None:
        return diagram.weights
    return DEFAULT_WEIGHTS


def state_weight(
    diagram: LinkoidDiagram, table: WeightTable | None, state: ClockState
) -> LaurentPoly:
    """Product over crossings of the marker's corner weight; empty product 1."""
    table = resolve_weights(diagram, table)
    signs = diagram.signs()
    result = LaurentPoly.one()
    for _rid, cid, q in state.markers:
        result = result * table.weight(signs[cid], q)
    return result


def mock_alexander(diagram: LinkoidDiagram, table: WeightTable | None = None) -> LaurentPoly:
    """The state-sum polynomial: sum of state_weight over all clock states."""
    table = resolve_weights(diagram, table)
    total = LaurentPoly.zero()
    for state in enumerate_states(diagram):
        total = total + state_weight(diagram, table, state)
    return total


def weighted_incidence_matrix(
    diagram: LinkoidDiagram, table: WeightTable | None = None
) -> list[list[LaurentPoly]]:
    """Square matrix: rows unstarred regions, columns crossings, entries the
    corner-weight sums where the region meets the crossing."""
    table = resolve_weights(diagram, table)
    rows = []
    for rid in diagram.unstarred_regions:
        corners = diagram.region_corners[rid]
        row = []
        for c in diagram.crossings:
            entry = LaurentPoly.zero()
            for cid, q in corners:
                if cid == c.id:
                    entry = entry + table.weight(c.sign, q)
            row.append(entry)
        rows.append(row)
    return rows


def permanent(matrix) -> LaurentPoly | int:
    """Permanent over any commutative ring with int identities.

    Full expansion up to 8x8, Ryser's formula with Gray-code updates up to
    12x12; larger matrices are refused (exactness over speed).
    """
    n = len(matrix)
    if n == 0:
        return 1
    if any(len(row) != n for row in matrix):
        raise ValueError("permanent needs a square matrix")
    if n <= PERMANENT_EXPANSION_LIMIT:
        total = 0
        for perm in permutations(range(n)):
            term = 1
            for i, j in enumerate(perm):
                term = term * matrix[i][j]
            total = total + term
        return total
    if n > PERMANENT_RYSER_LIMIT:
        raise CapExceededError(
            f"permanent of a {n}x{n} matrix exceeds the exact-computation cap "
            f"({PERMANENT_RYSER_LIMIT})"
        )
    return _ryser(matrix, n)


def _ryser(matrix, n):
    # perm(A) = (-1)^n * sum over subsets S of columns of
    #           (-1)^|S| * prod_i sum_{j in S} a[i][j]
    row_sums = [0] * n
    total = 0
    prev_gray = 0
    size = 0
    for k in range(1, 1 << n):
        gray = k ^ (k >> 1)
        changed = gray ^ prev_gray
        j = changed.bit_length() - 1
        if gray & changed:
            for i in range(n):
                row_sums[i] = row_sums[i] + matrix[i][j]
            size += 1
        else:
            for i in range(n):
                row_sums[i] = row_sums[i] - matrix[i][j]
            size -= 1
        prev_gray = gray
        term = 1
        for i in range(n):
            term = term * row_sums[i]
        total = total + (term if size % 2 == 0 else -term)
    return total if n % 2 == 0 else -total


def permanent_polynomial(
    diagram: LinkoidDiagram, table: WeightTable | None = None
) -> LaurentPoly:
    """The polynomial as a permanent of the weighted incidence matrix."""
    result = permanent(weighted_incidence_matrix(diagram, table))
    if isinstance(result, int):
        return LaurentPoly.monomial(result, 0)
    return result


def state_count_permanent(diagram: LinkoidDiagram) -> int:
    """Number of clock states as the permanent of the incidence matrix
    (entries are corner multiplicities)."""
    return int(permanent(diagram.incidence_matrix()))


def bareiss_determinant(matrix: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in matrix]
    if any(len(row) != n for row in m):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def count_states_matrixtree(diagram: LinkoidDiagram) -> int:
    """Spanning trees of the edge-dual multigraph by Kirchhoff's theorem.

    Loop edges (arcs with the same region on both sides) never occur in
    spanning trees and are dropped.  The count is returned for comparison
    with the enumerated state count; callers report disagreements instead
    of raising, since the two counts measure different tree families in
    general.
    """
    n = diagram.dual.num_vertices
    if n <= 1:
        return 1
    lap = [[0] * n for _ in range(n)]
    for _arc, r1, r2 in diagram.dual.edges:
        lap[r1][r1] += 1
        lap[r2][r2] += 1
        lap[r1][r2] -= 1
        lap[r2][r1] -= 1
    reduced = [row[:-1] for row in lap[:-1]]
    return bareiss_determinant(reduced)


def tree_count_comparison(diagram: LinkoidDiagram) -> dict:
    """Run the matrix-tree count next to the enumerated state count."""
    trees = count_states_matrixtree(diagram)
    states = len(enumerate_states(diagram))
    return {
        "matrix_tree_count": trees,
        "state_count": states,
        "agree": trees == states,
    }
