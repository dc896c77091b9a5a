from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st

from credaldyn.linalg import (
    convex_combination,
    matrix_rank,
    separating_functional,
    solve_unique,
)

fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def test_rank():
    assert matrix_rank([[F(1), F(2)], [F(2), F(4)]]) == 1
    assert matrix_rank([[F(1), F(0)], [F(0), F(1)]]) == 2
    assert matrix_rank([]) == 0


def test_solve_unique():
    sol = solve_unique([[F(2), F(0)], [F(0), F(3)]], [F(4), F(6)])
    assert sol == [F(2), F(2)]
    # dependent columns: no unique solution
    assert solve_unique([[F(1), F(2)], [F(2), F(4)]], [F(1), F(2)]) is None
    # inconsistent
    assert solve_unique([[F(1)], [F(1)]], [F(1), F(2)]) is None


def test_convex_combination_midpoint():
    pts = [(F(1), F(0)), (F(0), F(1))]
    lam = convex_combination(pts, (F(1, 2), F(1, 2)))
    assert lam is not None and sum(lam) == 1
    assert convex_combination(pts, (F(2), F(-1))) is None


def test_separating_functional_certificate():
    pts = [(F(1), F(0), F(0)), (F(0), F(1), F(0))]
    target = (F(0), F(0), F(1))
    f = separating_functional(pts, target)
    assert f is not None
    score = sum(a * b for a, b in zip(f, target))
    assert all(score > sum(a * b for a, b in zip(f, p)) for p in pts)
    assert separating_functional(pts, (F(1, 2), F(1, 2), F(0))) is None


@given(st.lists(st.tuples(fracs, fracs, fracs), min_size=1, max_size=5), st.data())
@settings(max_examples=60)
def test_true_combinations_are_found(points, data):
    raw = data.draw(
        st.lists(st.integers(0, 5), min_size=len(points), max_size=len(points))
    )
    if sum(raw) == 0:
        raw[0] = 1
    lam = [F(w, sum(raw)) for w in raw]
    target = tuple(
        sum((l * p[i] for l, p in zip(lam, points)), F(0)) for i in range(3)
    )
    assert convex_combination(points, target) is not None
    assert separating_functional(points, target) is None


@given(st.lists(st.tuples(fracs, fracs), min_size=1, max_size=4),
       st.tuples(fracs, fracs))
@settings(max_examples=60)
def test_verdicts_are_consistent(points, target):
    lam = convex_combination(points, target)
    f = separating_functional(points, target)
    assert (lam is None) == (f is not None)
    if lam is not None:
        assert all(v >= 0 for v in lam) and sum(lam) == 1
        recon = tuple(sum((l * p[i] for l, p in zip(lam, points)), F(0)) for i in range(2))
        assert recon == tuple(target)
