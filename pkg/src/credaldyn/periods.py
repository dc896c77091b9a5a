"""Periods of invariant credal sets and their components.

The period is the smallest p such that the upper expectation cannot tell f
from f o T^p.  On a finitely generated invariant credal set this equals
the order of the permutation that the pushforward induces on the extreme
points, which is cross-checked against the divisor-search
characterization (smallest l whose component equals the whole set).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .credal import (
    CredalSet,
    check_invariance,
    extreme_points,
    membership,
    pushforward_permutation,
    upper_expectation,
)
from .decomposition import CheckResult, e_d_lp, theta_d
from .errors import NotDivisible, NotInvariant
from .systems import Observable, SystemMap, compose_power


def _require_invariant(C: CredalSet, T: SystemMap) -> CredalSet:
    base = C if C.canonical else extreme_points(C)
    if not check_invariance(base, T):
        raise NotInvariant("credal set is not invariant under the map")
    return base


@lru_cache(maxsize=8192)
def period_of(C: CredalSet, T: SystemMap) -> int:
    """Order of the pushforward permutation on the extreme points."""
    base = _require_invariant(C, T)
    return pushforward_permutation(base, T).order()


def period_of_component(C: CredalSet, T: SystemMap, d: int) -> int:
    """Period p_d of the d-component."""
    return period_of(theta_d(C, T, d), T)


def _random_observable(n: int, rng: random.Random) -> Observable:
    return Observable(
        tuple(Fraction(rng.randint(-12, 12), rng.randint(1, 9)) for _ in range(n))
    )


def check_period_characterization(
    C: CredalSet, T: SystemMap, d: int, samples: int = 5, seed: int = 0
) -> CheckResult:
    """The upper expectation is blind to d-step shifts exactly when it
    coincides with its own d-component.

    The left side is decided by the permutation identity pi^d = id, the
    right side by canonical equality of the set with its d-component; the
    two must agree, and both are spot-checked on random observables.
    """
    base = _require_invariant(C, T)
    pi = pushforward_permutation(base, T)
    left = pi.power(d).is_identity()
    right = theta_d(base, T, d).generators == base.generators
    ok = left == right
    rng = random.Random(seed)
    Td = compose_power(T, d)
    spot = []
    for _ in range(samples):
        f = _random_observable(T.n, rng)
        shift_gap = upper_expectation(base, f.after(Td) - f)
        comp_gap = upper_expectation(base, f) - e_d_lp(base, T, d, f)
        spot.append((shift_gap, comp_gap))
        if left and shift_gap != 0:
            ok = False
        if right and comp_gap != 0:
            ok = False
    return CheckResult(
        "period-characterization",
        ok,
        {"d": d, "shift-blind": left, "component-equal": right, "spot": spot},
    )


def check_period_lattice(C: CredalSet, T: SystemMap, d: int, l: Optional[int] = None) -> CheckResult:
    """Divisibility structure of component periods: p_d divides d, p_d is
    the least step whose component matches the d-component, and p_d
    divides p_l whenever d divides l."""
    base = _require_invariant(C, T)
    p_d = period_of_component(base, T, d)
    comp_d = theta_d(base, T, d)
    divides_d = d % p_d == 0
    minimal = min(
        k for k in range(1, d + 1) if theta_d(base, T, k).generators == comp_d.generators
    )
    ok = divides_d and minimal == p_d
    detail = {"d": d, "p_d": p_d, "min-matching-step": minimal}
    if l is not None:
        if l % d != 0:
            raise NotDivisible(f"{d} does not divide {l}")
        p_l = period_of_component(base, T, l)
        detail.update({"l": l, "p_l": p_l})
        ok = ok and p_l % p_d == 0
    return CheckResult("period-lattice", ok, detail)


def periodic_decomposition_check(C: CredalSet, T: SystemMap, f: Observable) -> CheckResult:
    """The upper expectation is recovered as the best component value,
    attained at the period: E[f] = E_{p}[f] with p the period.

    The supremum over all step sizes reduces to the period because every
    component equals the gcd-component against the period.
    """
    base = _require_invariant(C, T)
    p = period_of(base, T)
    total = upper_expectation(base, f)
    at_period = e_d_lp(base, T, p, f)
    return CheckResult(
        "periodic-decomposition",
        total == at_period,
        {"p": p, "upper": total, "component-value": at_period},
    )


def dominating_component(C: CredalSet, T: SystemMap, l_max: int = 12) -> int:
    """The step whose component contains every other component; equals the
    period.  Also verifies the vertex-count monotonicity along
    divisibility that underpins the containment argument."""
    base = _require_invariant(C, T)
    p = period_of(base, T)
    comp_p = theta_d(base, T, p)
    for l in range(1, l_max + 1):
        for g in theta_d(base, T, l).generators:
            if not membership(g, comp_p):
                raise AssertionError(f"component {l} escapes the dominating component {p}")
    counts = {l: len(theta_d(base, T, l).generators) for l in range(1, l_max + 1)}
    for dd in range(1, l_max + 1):
        for ll in range(dd, l_max + 1, dd):
            if counts[dd] > counts[ll]:
                raise AssertionError(
                    f"vertex count not monotone along divisibility: {dd} | {ll}"
                )
    return p


@dataclass(frozen=True)
class ComponentRecord:
    d: int
    p_d: int
    vertex_count: int


@dataclass(frozen=True)
class PeriodReport:
    p: int
    components: tuple[ComponentRecord, ...]
    lattice_checks: tuple[CheckResult, ...]
    dominating_d: int


def period_report(C: CredalSet, T: SystemMap, l_max: int = 12) -> PeriodReport:
    base = _require_invariant(C, T)
    p = period_of(base, T)
    components = []
    checks = []
    for d in range(1, l_max + 1):
        p_d = period_of_component(base, T, d)
        components.append(ComponentRecord(d, p_d, len(theta_d(base, T, d).generators)))
        checks.append(check_period_lattice(base, T, d))
    for d in range(1, l_max + 1):
        for l in range(2 * d, l_max + 1, d):
            checks.append(check_period_lattice(base, T, d, l))
    dom = dominating_component(base, T, l_max)
    return PeriodReport(p, tuple(components), tuple(checks), dom)
