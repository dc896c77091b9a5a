"""Exact rational linear algebra: Gaussian elimination and a phase-1 simplex.

Everything operates on ``fractions.Fraction`` so feasibility and membership
verdicts are exact.  Matrices are lists of row lists.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Row = Sequence[Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def matrix_rank(rows: Sequence[Row]) -> int:
    """Rank of a rational matrix by fraction-free-ish Gaussian elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pr = m[rank]
        inv = _ONE / pr[col]
        m[rank] = [v * inv for v in pr]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def solve_unique(rows: Sequence[Row], rhs: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """Solve ``rows @ x = rhs`` when the solution exists and is unique.

    Returns None when the system is inconsistent or has a non-trivial
    null space (the columns are linearly dependent).
    """
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    if not m:
        return []
    ncols = len(rows[0])
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            return None  # dependent columns: no unique solution
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = _ONE / m[rank][col]
        m[rank] = [v * inv for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == ncols:
            break
    # rows below the pivot rows must have vanished entirely
    for i in range(rank, len(m)):
        if m[i][-1] != 0:
            return None
    x = [_ZERO] * ncols
    for r, col in enumerate(pivots):
        x[col] = m[r][-1]
    return x


class Phase1Result:
    """Outcome of the phase-1 feasibility simplex.

    ``solution`` is set when the system is feasible; ``certificate`` is a
    Farkas vector y with y.A <= 0 componentwise and y.b > 0 otherwise.
    """

    __slots__ = ("solution", "certificate")

    def __init__(self, solution: Optional[list[Fraction]], certificate: Optional[list[Fraction]]):
        self.solution = solution
        self.certificate = certificate

    @property
    def feasible(self) -> bool:
        return self.solution is not None


def feasible_nonnegative(rows: Sequence[Row], rhs: Sequence[Fraction]) -> Phase1Result:
    """Decide whether ``A x = b`` admits x >= 0, by phase-1 simplex.

    Uses Bland's rule, so it terminates on degenerate systems.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    flip = [(-_ONE if b < 0 else _ONE) for b in rhs]
    tab = [[v * flip[i] for v in rows[i]] + [_ZERO] * nrows + [rhs[i] * flip[i]] for i in range(nrows)]
    for i in range(nrows):
        tab[i][ncols + i] = _ONE
    basis = [ncols + i for i in range(nrows)]
    cost = [_ZERO] * ncols + [_ONE] * nrows

    def reduced_cost(j: int) -> Fraction:
        return cost[j] - sum(cost[basis[i]] * tab[i][j] for i in range(nrows))

    while True:
        enter = None
        for j in range(ncols + nrows):
            if j in basis:
                continue
            if reduced_cost(j) < 0:
                enter = j
                break
        if enter is None:
            break
        leave = None
        best = None
        for i in range(nrows):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:  # unbounded phase-1 objective cannot happen
            raise AssertionError("phase-1 simplex unbounded")
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for i in range(nrows):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[leave])]
        basis[leave] = enter

    value = sum(cost[basis[i]] * tab[i][-1] for i in range(nrows))
    if value == 0:
        x = [_ZERO] * ncols
        for i in range(nrows):
            if basis[i] < ncols:
                x[basis[i]] = tab[i][-1]
        return Phase1Result(x, None)
    # y_i = c_B . (B^-1 e_i); the artificial column i of the tableau is B^-1 e_i
    y = [sum(cost[basis[r]] * tab[r][ncols + i] for r in range(nrows)) * flip[i] for i in range(nrows)]
    return Phase1Result(None, y)


def convex_combination(points: Sequence[Row], target: Row) -> Optional[list[Fraction]]:
    """Coefficients expressing ``target`` as a convex combination of ``points``.

    Returns None when ``target`` is outside the convex hull.
    """
    if not points:
        return None
    dim = len(target)
    rows = [[p[i] for p in points] for i in range(dim)]
    rows.append([_ONE] * len(points))
    rhs = list(target) + [_ONE]
    return feasible_nonnegative(rows, rhs).solution


def separating_functional(points: Sequence[Row], target: Row) -> Optional[list[Fraction]]:
    """A functional f with f.target > max_i f.point_i, or None if target is
    inside the convex hull."""
    dim = len(target)
    rows = [[p[i] for p in points] for i in range(dim)]
    rows.append([_ONE] * len(points))
    rhs = list(target) + [_ONE]
    res = feasible_nonnegative(rows, rhs)
    if res.feasible:
        return None
    assert res.certificate is not None
    return res.certificate[:dim]
