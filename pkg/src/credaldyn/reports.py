"""Whole-instance analysis: the full ledger of identity checks.

Each entry records the check name, its inputs, both exactly computed
sides, and a verdict; the ledger is what the ``check-theorems`` CLI
subcommand prints and what CI gates on.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .credal import (
    CredalSet,
    ProbVec,
    check_invariance,
    extreme_points,
    invariant_surrogate,
    membership,
    pushforward,
    upper_expectation,
)
from .decomposition import (
    CheckResult,
    cesaro_upper,
    check_gcd_reduction,
    check_iterated_decomposition,
    check_monotone_inclusion,
    check_shift_identity,
    e_d_closed_form,
    e_d_lp,
)
from .ergodicity import (
    ergodic_decomposition,
    ergodic_theorem_check,
    invariant_core_equality,
    strong_ergodicity_check,
)
from .errors import NotInvariant
from .periods import (
    check_period_characterization,
    check_period_lattice,
    period_of,
    periodic_decomposition_check,
)
from .systems import Observable, SystemMap, invariant_partition

CORE_CHECK_STATE_CAP = 10


def _random_observable(n: int, rng: random.Random) -> Observable:
    return Observable(tuple(Fraction(rng.randint(-12, 12), rng.randint(1, 9)) for _ in range(n)))


def _spanning_observables(n: int) -> list[Observable]:
    return [Observable.indicator(n, [x]) for x in range(n)]


def surrogate_check(C: CredalSet, T: SystemMap, P: ProbVec) -> CheckResult:
    """The invariant surrogate stays in the set, is a pushforward fixed
    point, and matches P on every invariant atom."""
    Q = invariant_surrogate(C, T, P)
    base = C if C.canonical else extreme_points(C)
    in_set = membership(Q, base)
    fixed = pushforward(Q, T) == Q
    atoms = invariant_partition(T, 1).atoms
    agrees = all(Q.mass(a) == P.mass(a) for a in atoms)
    return CheckResult(
        "invariant-surrogate",
        in_set and fixed and agrees,
        {"in-set": in_set, "fixed-point": fixed, "matches-atoms": agrees},
    )


def check_ledger(
    C: CredalSet,
    T: SystemMap,
    seed: int = 0,
    d_max: int = 6,
    samples: int = 3,
) -> list[CheckResult]:
    """Run every identity check the library knows against one instance."""
    base = C if C.canonical else extreme_points(C)
    verdict = check_invariance(base, T)
    if not verdict:
        raise NotInvariant("credal set is not invariant under the map")
    rng = random.Random(seed)
    n = T.n
    ledger: list[CheckResult] = []
    obs = _spanning_observables(n) + [_random_observable(n, rng) for _ in range(samples)]

    for d in range(1, d_max + 1):
        for f in obs[: samples + 1]:
            lp = e_d_lp(base, T, d, f)
            closed = e_d_closed_form(base, T, d, f)
            ledger.append(
                CheckResult(
                    "component-value-agreement",
                    lp == closed,
                    {"d": d, "lp": lp, "closed-form": closed},
                )
            )
            bound = cesaro_upper(base, T, d, f, d + 2)
            ledger.append(
                CheckResult(
                    "finite-horizon-upper-bound",
                    bound >= closed,
                    {"d": d, "horizon": d + 2, "bound": bound, "limit": closed},
                )
            )
            g = _random_observable(n, rng)
            ledger.append(check_shift_identity(base, T, d, f, g))
        ledger.append(check_period_characterization(base, T, d, samples=samples, seed=seed))
        ledger.append(check_period_lattice(base, T, d))
    for d in range(1, d_max + 1):
        for l in range(d, d_max + 1):
            if l % d == 0:
                ledger.append(check_monotone_inclusion(base, T, d, l))
            ledger.append(check_gcd_reduction(base, T, l, d))
            ledger.append(check_iterated_decomposition(base, T, d, l))

    for f in obs:
        ledger.append(periodic_decomposition_check(base, T, f))
    for P in base.generators:
        ledger.append(surrogate_check(base, T, P))
    if n <= CORE_CHECK_STATE_CAP:
        ledger.append(invariant_core_equality(base, T))
    strong = strong_ergodicity_check(base, T)
    ledger.append(
        CheckResult("strong-ergodicity-hypothesis", True, {"holds": strong.ok, **strong.detail})
    )
    p = period_of(base, T)
    if strong:
        for d in [k for k in range(1, p + 1) if p % k == 0]:
            rep = ergodic_decomposition(base, T, d)
            ledger.append(
                CheckResult(
                    "component-ergodic-decomposition",
                    rep.all_ergodic and bool(rep.mutually_singular),
                    {
                        "d": d,
                        "p_d": rep.p_d,
                        "vertices": len(rep.extreme),
                        "mutually-singular": rep.mutually_singular,
                    },
                )
            )
    for f in obs[: samples + 2]:
        if not strong:
            # the time-mean theorem assumes strong ergodicity; report the
            # missing hypothesis instead of a spurious failure
            ledger.append(
                CheckResult(
                    "time-mean-sandwich-and-achiever",
                    True,
                    {"status": "hypothesis-not-met", "hypothesis": "strong-ergodicity"},
                )
            )
            continue
        tm = ergodic_theorem_check(base, T, f)
        ledger.append(
            CheckResult(
                "time-mean-sandwich-and-achiever",
                tm.ok,
                {"p": tm.p, "lower": tm.lower, "upper": tm.upper, "achiever": tm.achiever},
            )
        )
    return ledger


@dataclass(frozen=True)
class ComponentSummary:
    d: int
    p_d: int
    vertices: tuple[ProbVec, ...]
    strongly_ergodic: Optional[bool]


@dataclass(frozen=True)
class AnalysisReport:
    label: Optional[str]
    invariant: bool
    p: Optional[int]
    components: tuple[ComponentSummary, ...]
    checks: tuple[CheckResult, ...]
    observable: Optional[Observable]
    upper: Optional[Fraction]
    component_values: dict
    achiever: Optional[ProbVec]

    @property
    def all_ok(self) -> bool:
        return self.invariant and all(c.ok for c in self.checks)


def analyze(
    C: CredalSet,
    T: SystemMap,
    f: Optional[Observable] = None,
    label: Optional[str] = None,
    seed: int = 0,
) -> AnalysisReport:
    base = C if C.canonical else extreme_points(C)
    verdict = check_invariance(base, T)
    if not verdict:
        return AnalysisReport(label, False, None, (), (), f, None, {}, None)
    p = period_of(base, T)
    strong = strong_ergodicity_check(base, T)
    components = []
    for d in [k for k in range(1, p + 1) if p % k == 0]:
        rep = ergodic_decomposition(base, T, d)
        components.append(
            ComponentSummary(d, rep.p_d, rep.extreme, strong.ok if strong is not None else None)
        )
    checks: list[CheckResult] = [
        CheckResult("strong-ergodicity-hypothesis", True, {"holds": strong.ok, **strong.detail})
    ]
    upper = None
    comp_values: dict = {}
    achiever = None
    if f is not None:
        upper = upper_expectation(base, f)
        for d in [k for k in range(1, p + 1) if p % k == 0]:
            comp_values[d] = e_d_lp(base, T, d, f)
        checks.append(periodic_decomposition_check(base, T, f))
        if strong:
            tm = ergodic_theorem_check(base, T, f)
            achiever = tm.achiever
            checks.append(
                CheckResult(
                    "time-mean-sandwich-and-achiever",
                    tm.ok,
                    {"p": tm.p, "lower": tm.lower, "upper": tm.upper},
                )
            )
        else:
            checks.append(
                CheckResult(
                    "time-mean-sandwich-and-achiever",
                    True,
                    {"status": "hypothesis-not-met", "hypothesis": "strong-ergodicity"},
                )
            )
    return AnalysisReport(
        label, True, p, tuple(components), tuple(checks), f, upper, comp_values, achiever
    )
