"""Probability vectors, credal sets, and upper expectations.

A credal set is stored by a finite generator list whose convex hull is the
set of probabilities; the upper expectation is the maximum of the linear
expectation over the generators.  Canonical form keeps exactly the extreme
points, deduplicated and sorted, so polytope equality reduces to tuple
equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from . import linalg
from .errors import (
    DimensionMismatch,
    NotInvariant,
    NotMember,
    NotVertexImage,
    StateCapExceeded,
)
from .systems import Observable, SystemMap, compose_power, orbit_structure

CORE_STATE_CAP = 10


@dataclass(frozen=True)
class ProbVec:
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if any(w < 0 for w in self.weights):
            raise ValueError("negative weight")
        if sum(self.weights) != 1:
            raise ValueError("weights do not sum to 1")

    @property
    def n(self) -> int:
        return len(self.weights)

    @staticmethod
    def of(values: Iterable) -> "ProbVec":
        return ProbVec(tuple(Fraction(v) for v in values))

    @staticmethod
    def point_mass(n: int, x: int) -> "ProbVec":
        return ProbVec(tuple(Fraction(1 if i == x else 0) for i in range(n)))

    @staticmethod
    def uniform(n: int) -> "ProbVec":
        return ProbVec((Fraction(1, n),) * n)

    def support(self) -> tuple[int, ...]:
        return tuple(x for x, w in enumerate(self.weights) if w > 0)

    def expectation(self, f: Observable) -> Fraction:
        if f.n != self.n:
            raise DimensionMismatch("observable size disagrees with probability")
        return sum((w * v for w, v in zip(self.weights, f.values)), Fraction(0))

    def mass(self, states: Iterable[int]) -> Fraction:
        return sum((self.weights[x] for x in states), Fraction(0))

    def mix(self, other: "ProbVec", t: Fraction) -> "ProbVec":
        """(1-t) * self + t * other."""
        return ProbVec(tuple((1 - t) * a + t * b for a, b in zip(self.weights, other.weights)))


@dataclass(frozen=True)
class CredalSet:
    generators: tuple[ProbVec, ...]
    canonical: bool = False

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a credal set needs at least one generator")
        n = self.generators[0].n
        if any(g.n != n for g in self.generators):
            raise DimensionMismatch("generators live on different state counts")

    @property
    def n(self) -> int:
        return self.generators[0].n

    @staticmethod
    def of(rows: Iterable[Iterable]) -> "CredalSet":
        return CredalSet(tuple(ProbVec.of(r) for r in rows))


@dataclass(frozen=True)
class Permutation:
    mapping: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError("not a bijection")

    @property
    def m(self) -> int:
        return len(self.mapping)

    def order(self) -> int:
        import math

        seen = [False] * self.m
        lengths = []
        for start in range(self.m):
            if seen[start]:
                continue
            length = 0
            x = start
            while not seen[x]:
                seen[x] = True
                x = self.mapping[x]
                length += 1
            lengths.append(length)
        return math.lcm(*lengths)

    def power(self, k: int) -> "Permutation":
        result = list(range(self.m))
        base = list(self.mapping)
        while k:
            if k & 1:
                result = [base[i] for i in result]
            base = [base[i] for i in base]
            k >>= 1
        return Permutation(tuple(result))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.mapping))


def upper_expectation(C: CredalSet, f: Observable) -> Fraction:
    """max_P E_P[f] over the credal set (attained at a generator)."""
    if f.n != C.n:
        raise DimensionMismatch("observable size disagrees with credal set")
    return max(g.expectation(f) for g in C.generators)


def lower_expectation(C: CredalSet, f: Observable) -> Fraction:
    return -upper_expectation(C, -f)


def upper_probability(C: CredalSet, states: Iterable[int]) -> Fraction:
    A = sorted(set(states))
    if any(not 0 <= x < C.n for x in A):
        raise ValueError("state index out of range")
    return upper_expectation(C, Observable.indicator(C.n, A))


def pushforward(P: ProbVec, T: SystemMap) -> ProbVec:
    """The image probability: result(y) = sum of P(x) over x with Tx = y."""
    if T.n != P.n:
        raise DimensionMismatch("map size disagrees with probability")
    out = [Fraction(0)] * P.n
    for x, w in enumerate(P.weights):
        out[T.mapping[x]] += w
    return ProbVec(tuple(out))


def membership(P: ProbVec, C: CredalSet) -> bool:
    """Exact test that P is a convex combination of the generators."""
    if P.n != C.n:
        raise DimensionMismatch("probability size disagrees with credal set")
    return linalg.convex_combination([g.weights for g in C.generators], P.weights) is not None


@lru_cache(maxsize=8192)
def extreme_points(C: CredalSet) -> CredalSet:
    """Canonical form: keep exactly the extreme points, sorted."""
    points = sorted(set(C.generators), key=lambda g: g.weights)
    kept = list(points)
    i = 0
    while i < len(kept):
        others = [g.weights for j, g in enumerate(kept) if j != i]
        if others and linalg.convex_combination(others, kept[i].weights) is not None:
            kept.pop(i)
        else:
            i += 1
    return CredalSet(tuple(kept), canonical=True)


def canonical(gens: Sequence[ProbVec]) -> CredalSet:
    return extreme_points(CredalSet(tuple(gens)))


def _require_canonical(C: CredalSet) -> CredalSet:
    return C if C.canonical else extreme_points(C)


@dataclass(frozen=True)
class InvarianceVerdict:
    invariant: bool
    witness: Optional[Observable] = None
    value: Optional[Fraction] = None
    value_after: Optional[Fraction] = None

    def __bool__(self) -> bool:
        return self.invariant


@lru_cache(maxsize=8192)
def check_invariance(C: CredalSet, T: SystemMap) -> InvarianceVerdict:
    """Decide E[f o T] = E[f] for all f via the hull identity
    conv(pushforward of generators) = conv(generators).

    On failure the verdict carries a witness observable with
    E[f o T] != E[f].
    """
    base = _require_canonical(C)
    pushed = canonical([pushforward(g, T) for g in base.generators])
    if pushed.generators == base.generators:
        return InvarianceVerdict(True)
    base_pts = [g.weights for g in base.generators]
    pushed_pts = [g.weights for g in pushed.generators]
    for v in pushed.generators:
        f = linalg.separating_functional(base_pts, v.weights)
        if f is not None:
            # E[f o T] >= f . v > max over base generators = E[f]
            witness = Observable(tuple(f))
            return InvarianceVerdict(
                False,
                witness,
                value=upper_expectation(base, witness),
                value_after=upper_expectation(base, witness.after(T)),
            )
    for v in base.generators:
        f = linalg.separating_functional(pushed_pts, v.weights)
        if f is not None:
            witness = Observable(tuple(f))
            return InvarianceVerdict(
                False,
                witness,
                value=upper_expectation(base, witness),
                value_after=upper_expectation(base, witness.after(T)),
            )
    raise AssertionError("hulls differ but no separating witness found")


def pushforward_permutation(C: CredalSet, T: SystemMap) -> Permutation:
    """The bijection induced on the extreme points by the pushforward.

    An affine self-map of a polytope onto itself permutes its extreme
    points, so under invariance this is well defined.
    """
    base = _require_canonical(C)
    if not check_invariance(base, T):
        raise NotInvariant("credal set is not invariant under the map")
    index = {g: i for i, g in enumerate(base.generators)}
    images = []
    for g in base.generators:
        q = pushforward(g, T)
        if q not in index:
            raise NotVertexImage("pushforward of an extreme point is not an extreme point")
        images.append(index[q])
    return Permutation(tuple(images))


def invariant_surrogate(C: CredalSet, T: SystemMap, P: ProbVec) -> ProbVec:
    """A T-invariant member of the credal set agreeing with P on every
    invariant set, built as the exact long-run average of the pushforward
    orbit of P (the orbit is eventually periodic, so the average is exact).
    """
    base = _require_canonical(C)
    if not check_invariance(base, T):
        raise NotInvariant("credal set is not invariant under the map")
    if not membership(P, base):
        raise NotMember("probability is outside the credal set")
    orb = orbit_structure(T)
    lead, c = orb.lead, orb.period
    total = [Fraction(0)] * P.n
    for k in range(lead, lead + c):
        Q = pushforward(P, compose_power(T, k))
        for i, w in enumerate(Q.weights):
            total[i] += w
    return ProbVec(tuple(w / c for w in total))


def _cut_polytope(vertices: list[ProbVec], A: tuple[int, ...], bound: Fraction) -> list[ProbVec]:
    """Intersect conv(vertices) with {P : P(A) <= bound}."""
    vals = [v.mass(A) for v in vertices]
    if all(val <= bound for val in vals):
        return vertices
    keep = [v for v, val in zip(vertices, vals) if val <= bound]
    for vin, val_in in zip(vertices, vals):
        if val_in > bound:
            continue
        for vout, val_out in zip(vertices, vals):
            if val_out <= bound:
                continue
            t = (bound - val_in) / (val_out - val_in)
            keep.append(vin.mix(vout, t))
    if not keep:
        raise AssertionError("cut emptied the polytope")
    return list(canonical(keep).generators)


def core_of_capacity(C: CredalSet, state_cap: int = CORE_STATE_CAP) -> CredalSet:
    """All probabilities dominated by the upper probability of C, as a
    canonical V-representation.

    Starts from the full simplex and cuts with P(A) <= V(A) for every
    subset A, so the cost is exponential in the state count; hence the cap.
    """
    n = C.n
    if n > state_cap:
        raise StateCapExceeded(f"core computation capped at {state_cap} states, got {n}")
    vertices = [ProbVec.point_mass(n, x) for x in range(n)]
    for mask in range(1, 2**n - 1):
        A = tuple(x for x in range(n) if mask >> x & 1)
        bound = upper_probability(C, A)
        if bound >= 1:
            continue
        vertices = _cut_polytope(vertices, A, bound)
    return canonical(vertices)
