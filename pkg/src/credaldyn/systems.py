"""Finite state spaces, deterministic self-maps, and their orbit structure.

A system is a self-map T on states {0, ..., n-1}, stored as an index array.
All maps are eventually periodic: there are minimal l >= 0 and c >= 1 with
T^(l+c) = T^l, which is what makes exact long-run averages possible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .errors import DimensionMismatch


@dataclass(frozen=True)
class SystemMap:
    mapping: tuple[int, ...]

    def __post_init__(self):
        n = len(self.mapping)
        if n == 0:
            raise ValueError("a system needs at least one state")
        for x, y in enumerate(self.mapping):
            if not isinstance(y, int) or not 0 <= y < n:
                raise ValueError(f"map entry {x} -> {y!r} is out of range")

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    @staticmethod
    def identity(n: int) -> "SystemMap":
        return SystemMap(tuple(range(n)))

    def then(self, other: "SystemMap") -> "SystemMap":
        """The composite map x -> other(self(x))."""
        if other.n != self.n:
            raise DimensionMismatch("cannot compose maps on different state counts")
        return SystemMap(tuple(other.mapping[y] for y in self.mapping))


@lru_cache(maxsize=4096)
def compose_power(T: SystemMap, k: int) -> SystemMap:
    """T^k with T^0 the identity, by binary exponentiation."""
    if k < 0:
        raise ValueError("negative powers are undefined for non-bijective maps")
    result = SystemMap.identity(T.n)
    base = T
    while k:
        if k & 1:
            result = result.then(base)
        base = base.then(base)
        k >>= 1
    return result


@dataclass(frozen=True)
class Observable:
    """An exact rational function on states."""

    values: tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return len(self.values)

    @staticmethod
    def of(values: Iterable) -> "Observable":
        return Observable(tuple(Fraction(v) for v in values))

    @staticmethod
    def indicator(n: int, states: Iterable[int]) -> "Observable":
        inside = set(states)
        return Observable(tuple(Fraction(1 if x in inside else 0) for x in range(n)))

    @staticmethod
    def constant(n: int, c) -> "Observable":
        return Observable((Fraction(c),) * n)

    def after(self, T: SystemMap) -> "Observable":
        """The composite f o T."""
        if T.n != self.n:
            raise DimensionMismatch("observable and map sizes disagree")
        return Observable(tuple(self.values[y] for y in T.mapping))

    def __add__(self, other: "Observable") -> "Observable":
        if other.n != self.n:
            raise DimensionMismatch("observable sizes disagree")
        return Observable(tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "Observable") -> "Observable":
        if other.n != self.n:
            raise DimensionMismatch("observable sizes disagree")
        return Observable(tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "Observable":
        return Observable(tuple(-a for a in self.values))

    def scale(self, c) -> "Observable":
        c = Fraction(c)
        return Observable(tuple(c * a for a in self.values))


@dataclass(frozen=True)
class OrbitStructure:
    """Cycle decomposition of the functional graph of a map.

    ``transient_len[x]`` is the number of steps from x to its cycle,
    ``cycle_id[x]`` indexes the cycle that the forward orbit of x enters.
    ``lead`` and ``period`` are the minimal l >= 0, c >= 1 with
    T^(l+c) = T^l as index arrays.
    """

    transient_len: tuple[int, ...]
    cycle_id: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]
    lead: int
    period: int


@lru_cache(maxsize=4096)
def orbit_structure(T: SystemMap) -> OrbitStructure:
    n = T.n
    # peel states of in-degree zero; whatever survives lies on a cycle
    indeg = [0] * n
    for y in T.mapping:
        indeg[y] += 1
    stack = [x for x in range(n) if indeg[x] == 0]
    on_cycle = [True] * n
    while stack:
        x = stack.pop()
        on_cycle[x] = False
        y = T.mapping[x]
        indeg[y] -= 1
        if indeg[y] == 0:
            stack.append(y)

    cycles: list[tuple[int, ...]] = []
    cycle_of_state = [-1] * n
    seen = [False] * n
    for x in range(n):
        if on_cycle[x] and not seen[x]:
            cyc = []
            y = x
            while not seen[y]:
                seen[y] = True
                cyc.append(y)
                y = T.mapping[y]
            for s in cyc:
                cycle_of_state[s] = len(cycles)
            cycles.append(tuple(cyc))

    transient = [-1] * n
    cycle_id = [-1] * n
    for x in range(n):
        if on_cycle[x]:
            transient[x] = 0
            cycle_id[x] = cycle_of_state[x]
    for x in range(n):
        if transient[x] < 0:
            path = []
            y = x
            while transient[y] < 0:
                path.append(y)
                y = T.mapping[y]
            base_t, base_c = transient[y], cycle_id[y]
            for k, s in enumerate(reversed(path)):
                transient[s] = base_t + k + 1
                cycle_id[s] = base_c
    lead = max(transient)
    period = math.lcm(*(len(c) for c in cycles))
    return OrbitStructure(tuple(transient), tuple(cycle_id), tuple(cycles), lead, period)


@dataclass(frozen=True)
class InvariantPartition:
    """Atoms of the sigma-algebra of T^d-invariant sets.

    On a finite state space a set A satisfies (T^d)^{-1} A = A exactly when
    A is a union of connected components of the undirected graph with edges
    {x, T^d x}; those components are the atoms.
    """

    d: int
    atoms: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return sum(len(a) for a in self.atoms)

    def atom_index(self) -> tuple[int, ...]:
        idx = [-1] * self.n
        for i, atom in enumerate(self.atoms):
            for x in atom:
                idx[x] = i
        return tuple(idx)


@lru_cache(maxsize=4096)
def invariant_partition(T: SystemMap, d: int) -> InvariantPartition:
    if d < 1:
        raise ValueError("d must be >= 1")
    S = compose_power(T, d)
    parent = list(range(S.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in enumerate(S.mapping):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
    groups: dict[int, list[int]] = {}
    for x in range(S.n):
        groups.setdefault(find(x), []).append(x)
    atoms = tuple(tuple(sorted(g)) for g in sorted(groups.values()))
    return InvariantPartition(d, atoms)
