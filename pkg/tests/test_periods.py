from fractions import Fraction as F

import pytest

from credaldyn import (
    Observable,
    ProbVec,
    SystemMap,
    canonical,
    check_period_characterization,
    check_period_lattice,
    compose_power,
    dominating_component,
    e_d_lp,
    gen_cycle,
    period_of,
    period_of_component,
    period_report,
    periodic_decomposition_check,
    pushforward,
    theta_d,
    upper_expectation,
)
from credaldyn.errors import NotDivisible, NotInvariant

SWAP = SystemMap((1, 0))
SWAP_SET = canonical([ProbVec.point_mass(2, 0), ProbVec.point_mass(2, 1)])
CYCLE3 = SystemMap((1, 2, 0))
CYCLE3_SET = canonical([ProbVec.point_mass(3, x) for x in range(3)])


def brute_period(C, T, d):
    """Smallest l with every generator of Theta^(d) fixed by T^l applied
    within the component; equivalently min l with pi_d^l = identity,
    found by stepping the pushforward of each generator."""
    comp = theta_d(C, T, d)
    l = 1
    while True:
        S = compose_power(T, l)
        if all(pushforward(g, S) == g for g in comp.generators):
            return l
        l += 1


def divisor_search_period(C, T, d):
    """Smallest l with Theta^(l) == Theta^(d); independent of period_of."""
    target = theta_d(C, T, d)
    for l in range(1, d + 1):
        if theta_d(C, T, l) == target:
            return l
    raise AssertionError("no step matched its own component")


class TestPeriodOf:
    def test_swap(self):
        assert period_of(SWAP_SET, SWAP) == 2

    def test_three_cycle(self):
        assert period_of(CYCLE3_SET, CYCLE3) == 3

    def test_identity_map(self):
        C = canonical([ProbVec.of(["1/4", "3/4"])])
        assert period_of(C, SystemMap.identity(2)) == 1

    def test_requires_invariance(self):
        with pytest.raises(NotInvariant):
            period_of(canonical([ProbVec.point_mass(2, 0)]), SWAP)

    def test_matches_brute_force(self, small_corpus):
        for _, T, C in small_corpus:
            assert period_of(C, T) == brute_period(C, T, period_of(C, T))


class TestPeriodOfComponent:
    def test_three_cycle_components(self):
        assert period_of_component(CYCLE3_SET, CYCLE3, 2) == 1
        assert period_of_component(CYCLE3_SET, CYCLE3, 3) == 3

    def test_six_cycle(self):
        T, C = gen_cycle(6)
        assert period_of_component(C, T, 4) == 2
        assert period_of_component(C, T, 3) == 3
        assert period_of_component(C, T, 6) == 6
        assert period_of_component(C, T, 1) == 1

    def test_matches_divisor_search(self, small_corpus):
        for _, T, C in small_corpus[:15]:
            for d in (1, 2, 3, 4, 6):
                p_d = period_of_component(C, T, d)
                assert p_d == divisor_search_period(C, T, d)
                assert d % p_d == 0
                assert theta_d(C, T, p_d) == theta_d(C, T, d)


class TestPeriodCharacterization:
    def test_swap(self):
        res = check_period_characterization(SWAP_SET, SWAP, 1)
        assert res.ok and res.detail["shift-blind"] is False
        res = check_period_characterization(SWAP_SET, SWAP, 4)
        assert res.ok and res.detail["shift-blind"] is True

    def test_corpus(self, small_corpus):
        for seed, T, C in small_corpus[:15]:
            p = period_of(C, T)
            for d in (1, p, 2 * p, max(1, p - 1)):
                assert check_period_characterization(C, T, d, samples=2, seed=seed).ok


class TestPeriodLattice:
    def test_six_cycle_all_pairs(self):
        T, C = gen_cycle(6)
        for d in range(1, 9):
            for l in range(d, 9, d):
                assert check_period_lattice(C, T, d, l).ok

    def test_detail_fields(self):
        res = check_period_lattice(SWAP_SET, SWAP, 2, 4)
        assert res.ok
        assert res.detail["p_d"] == 2 and res.detail["p_l"] == 2

    def test_rejects_non_multiple(self):
        with pytest.raises(NotDivisible):
            check_period_lattice(SWAP_SET, SWAP, 4, 2)

    def test_corpus(self, small_corpus):
        for _, T, C in small_corpus[:15]:
            for d in (1, 2, 3, 4):
                for l in (d, 2 * d, 3 * d):
                    assert check_period_lattice(C, T, d, l).ok


class TestPeriodicDecomposition:
    def test_swap_at_period(self):
        f = Observable.of([1, 0])
        res = periodic_decomposition_check(SWAP_SET, SWAP, f)
        assert res.ok
        assert res.detail["p"] == 2
        assert res.detail["upper"] == 1

    def test_equality_on_corpus(self, small_corpus):
        for _, T, C in small_corpus[:15]:
            p = period_of(C, T)
            for x in range(T.n):
                f = Observable.indicator(T.n, [x])
                assert upper_expectation(C, f) == e_d_lp(C, T, p, f)


class TestDominatingComponent:
    def test_cycle_examples(self):
        T, C = gen_cycle(6)
        assert dominating_component(C, T, l_max=12) == 6
        assert dominating_component(CYCLE3_SET, CYCLE3, l_max=12) == 3
        assert dominating_component(SWAP_SET, SWAP, l_max=12) == 2

    def test_matches_period(self, small_corpus):
        for _, T, C in small_corpus[:15]:
            assert dominating_component(C, T, l_max=12) == period_of(C, T)


class TestPeriodReport:
    def test_six_cycle_report(self):
        T, C = gen_cycle(6)
        rep = period_report(C, T)
        assert rep.p == 6 and rep.dominating_d == 6
        by_d = {c.d: c for c in rep.components}
        assert by_d[1].p_d == 1 and by_d[4].p_d == 2 and by_d[6].p_d == 6
        assert by_d[1].vertex_count == 1
        assert all(chk.ok for chk in rep.lattice_checks)

    def test_vertex_counts_monotone_along_divisibility(self, small_corpus):
        for _, T, C in small_corpus[:15]:
            rep = period_report(C, T)
            by_d = {c.d: c for c in rep.components}
            for d in by_d:
                for l in by_d:
                    if l % d == 0:
                        assert by_d[d].vertex_count <= by_d[l].vertex_count
