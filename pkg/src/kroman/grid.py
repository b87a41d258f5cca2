"""Cylindrical grid C_m x P_n.

Vertices are pairs ``(i, j)`` with ``i`` the position on the cycle (0..m-1) and
``j`` the position on the path (0..n-1).  Storage is fibre-major: the flat
index of ``(i, j)`` is ``j * m + i``, so every fibre is a contiguous run.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple

import numpy as np

from .errors import ParameterDomainError


class Vertex(NamedTuple):
    i: int
    j: int


@dataclass(frozen=True)
class Grid:
    m: int
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.m, (int, np.integer)) or not isinstance(self.n, (int, np.integer)):
            raise ParameterDomainError(f"grid sizes must be integers, got m={self.m!r}, n={self.n!r}")
        if self.m < 3:
            raise ParameterDomainError(f"cycle length m must be >= 3, got {self.m}")
        if self.n < 1:
            raise ParameterDomainError(f"path length n must be >= 1, got {self.n}")

    @property
    def size(self) -> int:
        return self.m * self.n

    def __contains__(self, v: object) -> bool:
        try:
            i, j = v  # type: ignore[misc]
        except (TypeError, ValueError):
            return False
        return 0 <= i < self.m and 0 <= j < self.n

    def index(self, v: tuple[int, int]) -> int:
        self._require(v)
        return v[1] * self.m + v[0]

    def vertex(self, index: int) -> Vertex:
        if not 0 <= index < self.size:
            raise ParameterDomainError(f"vertex index {index} out of range for {self}")
        j, i = divmod(index, self.m)
        return Vertex(i, j)

    def vertices(self) -> Iterator[Vertex]:
        for j in range(self.n):
            for i in range(self.m):
                yield Vertex(i, j)

    def _require(self, v: tuple[int, int]) -> None:
        if v not in self:
            raise ParameterDomainError(f"vertex {tuple(v)} is not in C_{self.m} x P_{self.n}")

    def open_neighborhood(self, v: tuple[int, int]) -> set[Vertex]:
        self._require(v)
        i, j = v
        out = {Vertex((i + 1) % self.m, j), Vertex((i - 1) % self.m, j)}
        if j > 0:
            out.add(Vertex(i, j - 1))
        if j < self.n - 1:
            out.add(Vertex(i, j + 1))
        return out

    def closed_neighborhood(self, v: tuple[int, int]) -> set[Vertex]:
        out = self.open_neighborhood(v)
        out.add(Vertex(*v))
        return out

    def fibre(self, j: int) -> list[Vertex]:
        if not 0 <= j < self.n:
            raise ParameterDomainError(f"fibre index {j} out of range 0..{self.n - 1}")
        return [Vertex(i, j) for i in range(self.m)]

    def cycle_distance(self, i1: int, i2: int) -> int:
        d = abs(i1 - i2) % self.m
        return min(d, self.m - d)

    def distance(self, u: tuple[int, int], v: tuple[int, int]) -> int:
        self._require(u)
        self._require(v)
        return self.cycle_distance(u[0], v[0]) + abs(u[1] - v[1])

    def square_adjacent(self, u: tuple[int, int], v: tuple[int, int]) -> bool:
        """True iff N[u] and N[v] intersect, i.e. u != v lie at distance <= 2."""
        if tuple(u) == tuple(v):
            raise ParameterDomainError("square_adjacent needs two distinct vertices")
        return self.distance(u, v) <= 2

    @cached_property
    def neighbor_table(self) -> tuple[tuple[int, ...], ...]:
        """Open neighbourhoods as tuples of flat indices, in ascending order."""
        return tuple(
            tuple(sorted(self.index(u) for u in self.open_neighborhood(v))) for v in self.vertices()
        )

    @cached_property
    def square_table(self) -> tuple[frozenset[int], ...]:
        """For each vertex, the flat indices of the other vertices within distance 2."""
        m, n = self.m, self.n
        table = []
        for v in self.vertices():
            near = set()
            for dj in range(-2, 3):
                j = v.j + dj
                if not 0 <= j < n:
                    continue
                reach = 2 - abs(dj)
                for di in range(-reach, reach + 1):
                    near.add(j * m + (v.i + di) % m)
            near.discard(self.index(v))
            table.append(frozenset(near))
        return tuple(table)


def make_grid(m: int, n: int) -> Grid:
    return Grid(m, n)


def closed_neighborhood(g: Grid, v: tuple[int, int]) -> set[Vertex]:
    return g.closed_neighborhood(v)


def fibre(g: Grid, j: int) -> list[Vertex]:
    return g.fibre(j)


def square_adjacent(g: Grid, u: tuple[int, int], v: tuple[int, int]) -> bool:
    return g.square_adjacent(u, v)
