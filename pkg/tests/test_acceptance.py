"""Acceptance gate: eight exact, zero-tolerance criteria over a fixed
200-instance seeded corpus (n <= 8, at most 6 generators).

Each criterion prints a single PASS/FAIL line; every comparison is exact
rational equality.
"""

import math
import random
from fractions import Fraction as F

from credaldyn import (
    Observable,
    ProbVec,
    cesaro_upper,
    compose_power,
    cycle_time_mean,
    e_d_closed_form,
    e_d_lp,
    ergodic_theorem_check,
    gen_cycle,
    gen_product_shift,
    invariant_core_equality,
    invariant_partition,
    invariant_surrogate,
    is_ergodic,
    membership,
    orbit_structure,
    period_of,
    period_of_component,
    periodic_decomposition_check,
    strong_ergodicity_check,
    theta_d,
    upper_expectation,
    upper_probability,
)

D_SET = (1, 2, 3, 4, 6)


def _report(name, ok, note=""):
    line = f"{'PASS' if ok else 'FAIL'} {name}"
    if note:
        line += f"  [{note}]"
    print(line)
    assert ok, line


def _observables(n, seed, count=5):
    rng = random.Random(seed)
    return [
        Observable(tuple(F(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(n)))
        for _ in range(count)
    ]


def test_criterion_1_component_values(corpus):
    """Exact agreement of both component-value methods, finite-horizon
    upper bounds, the coboundary identity, and memberwise inclusion."""
    ok = True
    for seed, T, C in corpus:
        obs = _observables(T.n, seed)
        for d in D_SET:
            orb = orbit_structure(compose_power(T, d))
            horizons = range(1, orb.lead + 5 * orb.period + 1)
            for f in obs:
                v = e_d_lp(C, T, d, f)
                ok &= v == e_d_closed_form(C, T, d, f)
                ok &= all(cesaro_upper(C, T, d, f, h) >= v for h in horizons)
                g = obs[0]
                shifted = f + g.after(compose_power(T, d)) - g
                ok &= e_d_lp(C, T, d, shifted) == v
        for d in D_SET:
            for l in D_SET:
                if l % d == 0 and l > d:
                    big = theta_d(C, T, l)
                    ok &= all(membership(g, big) for g in theta_d(C, T, d).generators)
        if not ok:
            _report("criterion-1 component-values", False, f"seed {seed}")
    _report("criterion-1 component-values", ok, f"{len(corpus)} instances")


def test_criterion_2_gcd_and_iteration(corpus):
    """Component inclusion collapses to the gcd component, and iterating
    components lands on the gcd component, for all pairs d, l <= 6."""
    ok = True
    for seed, T, C in corpus:
        for d in range(1, 7):
            comp_d = theta_d(C, T, d)
            for l in range(1, 7):
                comp_l = theta_d(C, T, l)
                gcd_comp = theta_d(C, T, math.gcd(d, l))
                if all(membership(g, comp_d) for g in comp_l.generators):
                    ok &= comp_l == gcd_comp
                ok &= theta_d(comp_d, T, l) == gcd_comp
        if not ok:
            _report("criterion-2 gcd-reduction", False, f"seed {seed}")
    _report("criterion-2 gcd-reduction", ok, f"{len(corpus)} instances")


def test_criterion_3_period_lattice(corpus):
    """The period equals its divisor-search characterization, and the
    component periods form a divisibility lattice."""
    ok = True
    for seed, T, C in corpus:
        p = period_of(C, T)
        full = theta_d(C, T, p)
        oracle = min(l for l in range(1, p + 1) if theta_d(C, T, l) == full)
        ok &= oracle == p and full == C
        for d in range(1, 13):
            p_d = period_of_component(C, T, d)
            comp_d = theta_d(C, T, d)
            ok &= d % p_d == 0
            ok &= p_d == min(
                l for l in range(1, d + 1) if theta_d(C, T, l) == comp_d
            )
            for l in range(2 * d, 13, d):
                ok &= period_of_component(C, T, l) % p_d == 0
        if not ok:
            _report("criterion-3 period-lattice", False, f"seed {seed}")
    _report("criterion-3 period-lattice", ok, f"{len(corpus)} instances")


def test_criterion_4_periodic_decomposition(corpus):
    """The upper expectation is recovered at the period component, for a
    spanning set of observables plus five random ones per instance."""
    ok = True
    systems = list(corpus) + [
        (-1,) + gen_cycle(6),
        (-2,) + gen_cycle(3),
        (-3,) + gen_product_shift(2, 2, [["2/3", "1/3"], ["1/3", "2/3"]]),
    ]
    for seed, T, C in systems:
        spanning = [Observable.indicator(T.n, [x]) for x in range(T.n)]
        for f in spanning + _observables(T.n, seed ^ 0x5EED):
            ok &= periodic_decomposition_check(C, T, f).ok
        if not ok:
            _report("criterion-4 periodic-decomposition", False, f"seed {seed}")
    _report("criterion-4 periodic-decomposition", ok, f"{len(systems)} systems")


def test_criterion_5_surrogates_and_core(corpus):
    """Invariant surrogates preserve atom masses and land in the invariant
    component; when the capacity is 0/1 on invariant sets (n <= 6), the
    invariant members of the credal set equal those of its capacity core."""
    ok = True
    checked_cores = 0
    for seed, T, C in corpus:
        atoms = invariant_partition(T, 1).atoms
        comp1 = theta_d(C, T, 1)
        for P in C.generators:
            Q = invariant_surrogate(C, T, P)
            ok &= all(Q.mass(a) == P.mass(a) for a in atoms)
            ok &= membership(Q, comp1)
        if T.n <= 6:
            res = invariant_core_equality(C, T)
            ok &= res.ok
            if res.detail["status"] == "checked":
                checked_cores += 1
        if not ok:
            _report("criterion-5 surrogate-and-core", False, f"seed {seed}")
    _report(
        "criterion-5 surrogate-and-core",
        ok,
        f"{len(corpus)} instances, {checked_cores} core equalities checked",
    )


def test_criterion_6_ergodic_decomposition(corpus):
    """On strongly ergodic instances: extreme points of each divisor
    component are ergodic at the component period and mutually singular;
    vertex counts are monotone along divisibility; every component up to
    12 sits inside the period component."""
    ok = True
    strongly_ergodic = 0
    for seed, T, C in corpus:
        if not strong_ergodicity_check(C, T).ok:
            continue
        strongly_ergodic += 1
        p = period_of(C, T)
        comp_p = theta_d(C, T, p)
        for d in (d for d in range(1, p + 1) if p % d == 0):
            p_d = period_of_component(C, T, d)
            ext = theta_d(C, T, d).generators
            ok &= all(is_ergodic(P, T, p_d) for P in ext)
            atoms = invariant_partition(T, p_d).atoms
            supports = [
                frozenset(i for i, a in enumerate(atoms) if P.mass(a) > 0) for P in ext
            ]
            ok &= all(
                s.isdisjoint(t)
                for i, s in enumerate(supports)
                for t in supports[i + 1 :]
            )
        counts = {l: len(theta_d(C, T, l).generators) for l in range(1, 13)}
        ok &= all(
            counts[d] <= counts[l]
            for d in counts
            for l in counts
            if l % d == 0
        )
        for l in range(1, 13):
            ok &= all(membership(g, comp_p) for g in theta_d(C, T, l).generators)
        if not ok:
            _report("criterion-6 ergodic-decomposition", False, f"seed {seed}")
    _report(
        "criterion-6 ergodic-decomposition",
        ok,
        f"{strongly_ergodic}/{len(corpus)} strongly ergodic instances",
    )


def test_criterion_7_time_mean(corpus):
    """Sandwich and attainment of the upper expectation by period-step
    time means.  The statement's hypothesis is strong ergodicity, so
    instances without it are counted but not asserted (a single skewed
    generator under the identity map already violates the sandwich)."""
    ok = True
    applied = 0
    for seed, T, C in corpus:
        if not strong_ergodicity_check(C, T).ok:
            continue
        applied += 1
        for f in _observables(T.n, seed ^ 0x7EA7):
            v = ergodic_theorem_check(C, T, f)
            ok &= v.ok
            upper = upper_expectation(C, f)
            lower = -upper_expectation(C, -f)
            for g in C.generators:
                for x in g.support():
                    ok &= lower <= cycle_time_mean(T, v.p, f, x) <= upper
            ok &= v.achiever.expectation(f) == upper
            ok &= all(
                cycle_time_mean(T, v.p, f, x) == upper for x in v.achiever.support()
            )
        if not ok:
            _report("criterion-7 time-mean", False, f"seed {seed}")
    _report(
        "criterion-7 time-mean",
        ok and applied > 0,
        f"{applied}/{len(corpus)} instances met the strong-ergodicity hypothesis",
    )


def test_criterion_8_gallery_regression():
    """Pinned exact values for the reference systems."""
    ok = True
    T6, C6 = gen_cycle(6)
    ok &= period_of(C6, T6) == 6
    ok &= period_of_component(C6, T6, 4) == 2
    ok &= period_of_component(C6, T6, 3) == 3
    ok &= theta_d(C6, T6, 1).generators == (ProbVec.uniform(6),)

    Tp, Cp = gen_product_shift(2, 2, [["2/3", "1/3"], ["1/3", "2/3"]])
    ok &= period_of(Cp, Tp) == 2
    f = Observable.of([1, 0, 0, 0])
    nonlinear = upper_expectation(Cp, f) + upper_expectation(Cp, -f) > 0
    ok &= nonlinear
    midpoint = ProbVec.of(["2/9", "5/18", "5/18", "2/9"])
    ok &= midpoint in theta_d(Cp, Tp, 1).generators
    ok &= upper_probability(Cp, [0]) == F(4, 9)
    _report("criterion-8 gallery-regression", ok)
