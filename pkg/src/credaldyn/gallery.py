"""Constructors for reference systems used in tests and from the CLI.

Three families: pure rotation cycles, cyclic product shifts over finite
words (a finite stand-in for shift-invariant i.i.d. models), and seeded
random invariant systems for fuzzing.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from typing import Sequence

from .credal import CredalSet, ProbVec, canonical, check_invariance, pushforward
from .systems import SystemMap, compose_power, orbit_structure

PRODUCT_STATE_CAP = 4096


def gen_cycle(q: int) -> tuple[SystemMap, CredalSet]:
    """q states rotated cyclically, with every point mass as a generator.

    The resulting period is q and the 1-component is the uniform
    distribution alone.
    """
    if q < 1:
        raise ValueError("cycle length must be >= 1")
    T = SystemMap(tuple((x + 1) % q for x in range(q)))
    C = canonical([ProbVec.point_mass(q, x) for x in range(q)])
    return T, C


def gen_product_shift(
    s: int, m: int, marginals: Sequence[Sequence]
) -> tuple[SystemMap, CredalSet]:
    """Words of length m over an alphabet of size s under the cyclic left
    shift, with one product generator per assignment of a marginal to each
    position.

    The shift permutes the product generators, so the credal set is
    invariant by construction.
    """
    if s < 2 or m < 1 or not marginals:
        raise ValueError("need s >= 2, m >= 1 and at least one marginal")
    n = s**m
    if n > PRODUCT_STATE_CAP:
        raise ValueError(f"state count {n} exceeds cap {PRODUCT_STATE_CAP}")
    margs = [tuple(Fraction(v) for v in row) for row in marginals]
    for row in margs:
        if len(row) != s or any(v < 0 for v in row) or sum(row) != 1:
            raise ValueError("each marginal must be a probability over the alphabet")

    def index(word: tuple[int, ...]) -> int:
        i = 0
        for a in word:
            i = i * s + a
        return i

    words = list(product(range(s), repeat=m))
    T = SystemMap(tuple(index(w[1:] + w[:1]) for w in words))
    gens = []
    for choice in product(range(len(margs)), repeat=m):
        weights = [Fraction(0)] * n
        for w in words:
            p = Fraction(1)
            for pos, a in enumerate(w):
                p *= margs[choice[pos]][a]
            weights[index(w)] = p
        gens.append(ProbVec(tuple(weights)))
    return T, canonical(gens)


def gen_random_invariant(n: int, k: int, seed: int) -> tuple[SystemMap, CredalSet]:
    """A random map with a random credal set closed under pushforward.

    Random generators are replaced by the union of their eventual-cycle
    pushforward orbits, which the pushforward permutes; the result always
    passes the invariance check and is deterministic per seed.
    """
    rng = random.Random(seed)
    T = SystemMap(tuple(rng.randrange(n) for _ in range(n)))
    orb = orbit_structure(T)
    closed = []
    for _ in range(k):
        raw = [rng.randint(1, 6) for _ in range(n)]
        total = sum(raw)
        P = ProbVec(tuple(Fraction(v, total) for v in raw))
        for step in range(orb.lead, orb.lead + orb.period):
            closed.append(pushforward(P, compose_power(T, step)))
    C = canonical(closed)
    assert check_invariance(C, T)
    return T, C
