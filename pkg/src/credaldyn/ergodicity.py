"""Ergodicity of invariant probabilities and the time-mean theorem.

On a finite state space "almost surely" means "on every state of positive
mass", invariant sets are unions of partition atoms, and long-run time
means are exact cycle averages; all verdicts here are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .credal import (
    CredalSet,
    ProbVec,
    canonical,
    check_invariance,
    extreme_points,
    pushforward,
    upper_probability,
)
from .decomposition import CheckResult, theta_d
from .errors import (
    AtomCapExceeded,
    NoAchiever,
    NotInvariant,
    NotInvariantProbability,
)
from .periods import period_of, period_of_component
from .systems import Observable, SystemMap, compose_power, invariant_partition, orbit_structure

ATOM_CAP = 20


def _require_invariant(C: CredalSet, T: SystemMap) -> CredalSet:
    base = C if C.canonical else extreme_points(C)
    if not check_invariance(base, T):
        raise NotInvariant("credal set is not invariant under the map")
    return base


def is_ergodic(P: ProbVec, T: SystemMap, d: int = 1) -> bool:
    """P gives every T^d-invariant set mass 0 or 1.

    Checking the partition atoms suffices: invariant sets are exactly
    unions of atoms and P is additive.
    """
    S = compose_power(T, d)
    if pushforward(P, S) != P:
        raise NotInvariantProbability("probability is not fixed by the d-step map")
    for atom in invariant_partition(T, d).atoms:
        if P.mass(atom) not in (0, 1):
            return False
    return True


@dataclass(frozen=True)
class ErgodicReport:
    d: int
    p_d: int
    extreme: tuple[ProbVec, ...]
    ergodic_flags: tuple[bool, ...]
    mutually_singular: Optional[bool]

    @property
    def all_ergodic(self) -> bool:
        return all(self.ergodic_flags)


def ergodic_decomposition(C: CredalSet, T: SystemMap, d: int = 1) -> ErgodicReport:
    """Extreme points of the d-component with per-point ergodicity at the
    component's own period, plus mutual singularity when all are ergodic."""
    base = _require_invariant(C, T)
    comp = theta_d(base, T, d)
    p_d = period_of_component(base, T, d)
    flags = tuple(is_ergodic(P, T, p_d) for P in comp.generators)
    singular: Optional[bool] = None
    if all(flags):
        atoms = invariant_partition(T, p_d).atoms
        supports = [
            frozenset(i for i, atom in enumerate(atoms) if P.mass(atom) > 0)
            for P in comp.generators
        ]
        singular = all(
            supports[i].isdisjoint(supports[j])
            for i in range(len(supports))
            for j in range(i + 1, len(supports))
        )
    return ErgodicReport(d, p_d, comp.generators, flags, singular)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def strong_ergodicity_check(
    C: CredalSet, T: SystemMap, atom_cap: int = ATOM_CAP
) -> CheckResult:
    """The upper probability of every component is 0/1 on that component's
    invariant sets.

    Checking the divisors of the period suffices, because every other
    component coincides with its gcd against the period.  Returns the
    first failing (d, set) as a counterexample.
    """
    base = _require_invariant(C, T)
    p = period_of(base, T)
    for d in _divisors(p):
        comp = theta_d(base, T, d)
        p_d = period_of_component(base, T, d)
        atoms = invariant_partition(T, p_d).atoms
        if len(atoms) > atom_cap:
            raise AtomCapExceeded(f"{len(atoms)} atoms exceed the cap {atom_cap}")
        for mask in range(1, 2 ** len(atoms) - 1):
            A = [x for i, atom in enumerate(atoms) if mask >> i & 1 for x in atom]
            v = upper_probability(comp, A)
            if v not in (0, 1):
                return CheckResult(
                    "strong-ergodicity",
                    False,
                    {"d": d, "p_d": p_d, "set": tuple(sorted(A)), "value": v},
                )
    return CheckResult("strong-ergodicity", True, {"p": p, "divisors": _divisors(p)})


def invariant_core(C: CredalSet, T: SystemMap, state_cap: int = 10) -> CredalSet:
    """T-invariant probabilities dominated by the upper probability of C.

    The T-invariant probabilities form a simplex spanned by the uniform
    distributions on the cycles of T; that simplex is cut with
    P(A) <= V(A) for every subset A, which keeps the vertex count far
    below enumerating the full capacity core first.
    """
    from .credal import _cut_polytope
    from .errors import StateCapExceeded

    n = C.n
    if n > state_cap:
        raise StateCapExceeded(f"invariant core capped at {state_cap} states, got {n}")
    orb = orbit_structure(T)
    vertices = [
        ProbVec(tuple(Fraction(1, len(cyc)) if x in cyc else Fraction(0) for x in range(n)))
        for cyc in orb.cycles
    ]
    for mask in range(1, 2**n - 1):
        A = tuple(x for x in range(n) if mask >> x & 1)
        bound = upper_probability(C, A)
        if bound >= 1:
            continue
        vertices = _cut_polytope(vertices, A, bound)
    return canonical(vertices)


def invariant_core_equality(C: CredalSet, T: SystemMap) -> CheckResult:
    """Invariant members of the credal set coincide with invariant members
    of its capacity core.

    The statement assumes the upper probability is 0/1 on invariant sets;
    when that hypothesis fails, the verdict reports it instead of checking.
    """
    base = _require_invariant(C, T)
    atoms = invariant_partition(T, 1).atoms
    if len(atoms) > ATOM_CAP:
        raise AtomCapExceeded(f"{len(atoms)} atoms exceed the cap {ATOM_CAP}")
    for mask in range(1, 2 ** len(atoms) - 1):
        A = [x for i, atom in enumerate(atoms) if mask >> i & 1 for x in atom]
        if upper_probability(base, A) not in (0, 1):
            return CheckResult(
                "invariant-core-equality",
                True,
                {"status": "hypothesis-not-met", "set": tuple(sorted(A))},
            )
    inv_direct = theta_d(base, T, 1)
    inv_core = invariant_core(base, T)
    return CheckResult(
        "invariant-core-equality",
        inv_direct.generators == inv_core.generators,
        {
            "status": "checked",
            "direct-vertices": len(inv_direct.generators),
            "core-vertices": len(inv_core.generators),
        },
    )


def cycle_time_mean(T: SystemMap, p: int, f: Observable, x0: int) -> Fraction:
    """Exact value of the long-run average of f along the p-step orbit of
    x0: the average of f over the cycle that the orbit falls into."""
    if not 0 <= x0 < T.n:
        raise ValueError("state index out of range")
    if p < 1:
        raise ValueError("step size must be >= 1")
    S = compose_power(T, p)
    orb = orbit_structure(S)
    cycle = orb.cycles[orb.cycle_id[x0]]
    return sum((f.values[y] for y in cycle), Fraction(0)) / len(cycle)


@dataclass(frozen=True)
class TimeMeanVerdict:
    ok: bool
    p: int
    lower: Fraction
    upper: Fraction
    achiever: ProbVec
    means: dict

    def __bool__(self) -> bool:
        return self.ok


def ergodic_theorem_check(C: CredalSet, T: SystemMap, f: Observable) -> TimeMeanVerdict:
    """Sandwich and attainment of the upper expectation by period-step
    time means.

    For every state charged by some generator, the exact period-step time
    mean lies between the lower and upper expectations; and some extreme
    point of the period component has expectation E[f] and concentrates on
    states whose time mean equals E[f].
    """
    base = _require_invariant(C, T)
    p = period_of(base, T)
    upper = max(g.expectation(f) for g in base.generators)
    lower = -max(g.expectation(-f) for g in base.generators)
    means = {}
    ok = True
    for g in base.generators:
        for x in g.support():
            m = means.setdefault(x, cycle_time_mean(T, p, f, x))
            if not lower <= m <= upper:
                ok = False
    achiever = None
    for P in theta_d(base, T, p).generators:
        if P.expectation(f) != upper:
            continue
        if all(cycle_time_mean(T, p, f, x) == upper for x in P.support()):
            achiever = P
            break
    if achiever is None:
        raise NoAchiever("no extreme point of the period component attains the bound")
    return TimeMeanVerdict(ok, p, lower, upper, achiever, means)
