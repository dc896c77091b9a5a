"""Periodic components of an invariant credal set.

For a step size d, the d-component of an invariant credal set C is the set
of members of conv(C) fixed by the pushforward of T^d.  Its support
function is computed three ways: as a maximum over the component's extreme
points, by an exact closed form replacing the defining long-run limit, and
as finite-horizon averaged upper bounds that must dominate the limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from . import linalg
from .credal import (
    CredalSet,
    ProbVec,
    canonical,
    check_invariance,
    membership,
    upper_expectation,
)
from .errors import NotDivisible, NotInvariant
from .systems import Observable, SystemMap, compose_power, orbit_structure

GENERATOR_CAP = 12
STATE_CAP = 12
STEP_CAP = 64


def _require_invariant(C: CredalSet, T: SystemMap) -> CredalSet:
    from .credal import extreme_points

    base = C if C.canonical else extreme_points(C)
    if not check_invariance(base, T):
        raise NotInvariant("credal set is not invariant under the map")
    return base


def _validate_caps(C: CredalSet, T: SystemMap, d: int):
    if d < 1:
        raise ValueError("d must be >= 1")
    if d > STEP_CAP:
        raise ValueError(f"step size capped at {STEP_CAP}")
    if T.n > STATE_CAP:
        raise ValueError(f"state count capped at {STATE_CAP}")
    if len(C.generators) > GENERATOR_CAP:
        raise ValueError(f"generator count capped at {GENERATOR_CAP}")


@lru_cache(maxsize=8192)
def theta_d(C: CredalSet, T: SystemMap, d: int) -> CredalSet:
    """Canonical extreme points of {P in conv(C) : P is T^d-invariant}.

    Works in generator-coefficient space: a member is sum lambda_i P_i with
    lambda in the simplex, and invariance is the linear system
    sum lambda_i (P_i o T^-d - P_i) = 0.  Vertices of that coefficient
    polytope are enumerated as basic feasible solutions, mapped to
    probability space, and filtered down to extreme points.
    """
    base = _require_invariant(C, T)
    _validate_caps(base, T, d)
    gens = base.generators
    k = len(gens)
    S = compose_power(T, d)
    from .credal import pushforward

    diff = [[pushforward(g, S).weights[x] - g.weights[x] for g in gens] for x in range(T.n)]
    rows = diff + [[Fraction(1)] * k]
    rhs = [Fraction(0)] * T.n + [Fraction(1)]
    rank = linalg.matrix_rank(rows)
    found: set[tuple[Fraction, ...]] = set()
    from itertools import combinations

    for cols in combinations(range(k), rank):
        sub = [[row[j] for j in cols] for row in rows]
        sol = linalg.solve_unique(sub, rhs)
        if sol is None or any(v < 0 for v in sol):
            continue
        lam = [Fraction(0)] * k
        for j, v in zip(cols, sol):
            lam[j] = v
        point = tuple(
            sum((lam[i] * gens[i].weights[x] for i in range(k)), Fraction(0)) for x in range(T.n)
        )
        found.add(point)
    if not found:
        raise AssertionError("invariant component is empty, which is impossible")
    return canonical([ProbVec(p) for p in found])


def e_d_lp(C: CredalSet, T: SystemMap, d: int, f: Observable) -> Fraction:
    """Component upper expectation as a maximum over the component's
    extreme points."""
    return upper_expectation(theta_d(C, T, d), f)


def e_d_closed_form(C: CredalSet, T: SystemMap, d: int, f: Observable) -> Fraction:
    """Component upper expectation via the exact value of the long-run
    averaged limit.

    With (l, c) the transient and period of T^d, the averaged sums
    stabilize on h = sum_{k=l}^{l+c-1} f o (T^d)^k and the limit is
    E[h] / c.
    """
    base = _require_invariant(C, T)
    _validate_caps(base, T, d)
    S = compose_power(T, d)
    orb = orbit_structure(S)
    h = Observable.constant(T.n, 0)
    for k in range(orb.lead, orb.lead + orb.period):
        h = h + f.after(compose_power(S, k))
    return upper_expectation(base, h) / orb.period


def cesaro_upper(C: CredalSet, T: SystemMap, d: int, f: Observable, n: int) -> Fraction:
    """Finite-horizon bound a_n / n with a_n = E[sum_{k<n} f o T^(kd)].

    The sequence a_n is subadditive, so a_n / n dominates the limit value
    for every n (the limit is the infimum).
    """
    base = _require_invariant(C, T)
    _validate_caps(base, T, d)
    if n < 1:
        raise ValueError("horizon must be >= 1")
    S = compose_power(T, d)
    total = Observable.constant(T.n, 0)
    for k in range(n):
        total = total + f.after(compose_power(S, k))
    return upper_expectation(base, total) / n


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: dict

    def __bool__(self) -> bool:
        return self.ok


def check_shift_identity(
    C: CredalSet, T: SystemMap, d: int, f: Observable, g: Observable
) -> CheckResult:
    """The component expectation kills d-step coboundaries:
    E_d[f + g o T^d - g] = E_d[f], exactly."""
    shifted = f + g.after(compose_power(T, d)) - g
    left = e_d_lp(C, T, d, shifted)
    right = e_d_lp(C, T, d, f)
    return CheckResult(
        "coboundary-identity",
        left == right,
        {"d": d, "lhs": left, "rhs": right},
    )


def check_monotone_inclusion(C: CredalSet, T: SystemMap, d: int, l: int) -> CheckResult:
    """Component monotonicity along divisibility: the d-component sits
    inside the l-component when d divides l."""
    if l % d != 0:
        raise NotDivisible(f"{d} does not divide {l}")
    big = theta_d(C, T, l)
    missing = [g for g in theta_d(C, T, d).generators if not membership(g, big)]
    return CheckResult(
        "component-monotonicity",
        not missing,
        {"d": d, "l": l, "missing": len(missing)},
    )


def check_gcd_reduction(C: CredalSet, T: SystemMap, l: int, d: int) -> CheckResult:
    """Whenever the l-component is contained in the d-component, it already
    equals the gcd(l, d)-component."""
    comp_l = theta_d(C, T, l)
    comp_d = theta_d(C, T, d)
    if not all(membership(g, comp_d) for g in comp_l.generators):
        return CheckResult(
            "gcd-reduction", True, {"l": l, "d": d, "status": "precondition-not-met"}
        )
    g = math.gcd(l, d)
    comp_g = theta_d(C, T, g)
    return CheckResult(
        "gcd-reduction",
        comp_l.generators == comp_g.generators,
        {"l": l, "d": d, "gcd": g, "status": "checked"},
    )


def check_iterated_decomposition(C: CredalSet, T: SystemMap, d: int, l: int) -> CheckResult:
    """Taking the l-component of the d-component lands on the
    gcd(l, d)-component of the original set."""
    inner = theta_d(C, T, d)
    iterated = theta_d(inner, T, l)
    direct = theta_d(C, T, math.gcd(l, d))
    return CheckResult(
        "iterated-component",
        iterated.generators == direct.generators,
        {"d": d, "l": l, "gcd": math.gcd(l, d)},
    )
