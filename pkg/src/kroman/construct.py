"""Explicit [k]-Roman dominating functions on cylindrical grids.

All constructors return a :class:`Labeling` and re-check it with the verifier
before handing it out; a failed check raises :class:`ConstructionError`
instead of returning a bad witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import bounds, fragments
from .errors import ConstructionError, InvalidPackingError, ParameterDomainError
from .grid import Grid, Vertex
from .verify import Labeling, check


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ParameterDomainError(msg)


def _checked(L: Labeling, what: str) -> Labeling:
    rep = check(L)
    if not rep.valid:
        v = rep.violations[0]
        raise ConstructionError(
            f"{what} is not a [k]-RDF: {len(rep.violations)} violation(s), first at "
            f"({v.vertex.i},{v.vertex.j}) with {v.achieved} < {v.required}"
        )
    return L


@dataclass(frozen=True)
class PackingSet:
    grid: Grid
    vertices: frozenset[Vertex]

    def __init__(self, grid: Grid, vertices: Iterable[tuple[int, int]]):
        verts = frozenset(Vertex(int(i), int(j)) for i, j in vertices)
        for v in verts:
            if v not in grid:
                raise InvalidPackingError(f"vertex {tuple(v)} is not in the grid")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "vertices", verts)
        self.validate()

    def validate(self) -> None:
        idx = sorted(self.grid.index(v) for v in self.vertices)
        chosen = set(idx)
        sq = self.grid.square_table
        for p in idx:
            clash = sq[p] & chosen
            if clash:
                u, w = self.grid.vertex(p), self.grid.vertex(min(clash))
                raise InvalidPackingError(f"closed neighbourhoods of {tuple(u)} and {tuple(w)} intersect")

    def __len__(self) -> int:
        return len(self.vertices)

    def sorted(self) -> list[Vertex]:
        return sorted(self.vertices, key=lambda v: (v.j, v.i))


@dataclass(frozen=True)
class UniformParams:
    a: int
    b: int
    variant: str

    @classmethod
    def for_k(cls, k: int, variant: str = "base") -> "UniformParams":
        a, b = bounds.uniform_params(k, variant)
        # both stay within 0..k+1 for every k >= 1; a violation means a formula bug
        assert 1 <= a <= k + 1 and 0 <= b <= k + 1, (k, a, b)
        return cls(a, b, variant)


# --- linear patterns ------------------------------------------------------------------

def linear_c5(n: int, k: int) -> Labeling:
    """Diagonal pattern on C_5 x P_n: one k+1 per fibre plus two patches of value k."""
    _require(n >= 2, f"linear_c5 needs n >= 2, got {n}")
    _require(k >= 1, f"k must be >= 1, got {k}")
    f = np.zeros((n, 5), dtype=np.int64)
    for j in range(n):
        f[j, (3 + 2 * j) % 5] = k + 1
    f[0, 1] = k
    f[n - 1, (3 + 2 * n) % 5] = k
    return _checked(Labeling(Grid(5, n), k, f), "linear_c5")


def linear_c9(n: int, k: int) -> Labeling:
    """Two k+1 labels per fibre at distance 4, moving by 2 each step, with end fixes."""
    _require(n >= 2, f"linear_c9 needs n >= 2, got {n}")
    _require(k >= 1, f"k must be >= 1, got {k}")
    f = np.zeros((n, 9), dtype=np.int64)
    for j in range(n):
        x = (5 + 2 * j) % 9
        f[j, x] = f[j, (x + 4) % 9] = k + 1
    f[0, 3] = k
    # last fibre: locate the pair in fibre n-2 and rebuild fibre n-1 around it
    prev = f[n - 2]
    hits = [j for j in range(9) if prev[j] == k + 1 and prev[(j + 4) % 9] == k + 1]
    if not hits:
        raise ConstructionError("linear_c9: fibre n-2 has no pair of k+1 labels at distance 4")
    j = hits[0]
    f[n - 1] = 0
    f[n - 1, (j - 1) % 9] = k
    f[n - 1, (j + 2) % 9] = k + 1
    f[n - 1, (j - 3) % 9] = k + 1
    return _checked(Labeling(Grid(9, n), k, f), "linear_c9")


def tile(L: Labeling, t: int) -> Labeling:
    """Repeat ``L`` t times around the cycle."""
    _require(t >= 1, f"tile factor must be >= 1, got {t}")
    if t == 1:
        return L
    f = np.tile(L.labels, (1, t))
    return _checked(Labeling(Grid(L.grid.m * t, L.grid.n), L.k, f), "tiled labeling")


# --- uniform and packing-refined labelings -------------------------------------------------

def uniform_labeling(m: int, n: int, k: int, variant: str = "base") -> Labeling:
    _require(m >= 3, f"m must be >= 3, got {m}")
    _require(n >= 4, f"uniform labeling needs n >= 4, got {n}")
    _require(k >= 1, f"k must be >= 1, got {k}")
    p = UniformParams.for_k(k, variant)
    f = np.full((n, m), p.a, dtype=np.int64)
    f[0] = f[n - 1] = p.b
    return _checked(Labeling(Grid(m, n), k, f), f"uniform labeling ({variant})")


def c9_packing_pattern(n: int) -> PackingSet:
    """Packing of C_9 x P_n of size 2n - floor(n/3).

    Fibres come in groups of three carrying 2, 2 and 1 vertices; each group is
    the previous one shifted by one position around the cycle.
    """
    _require(n >= 4, f"packing pattern needs n >= 4, got {n}")
    verts = []
    for j in range(n):
        t, s = divmod(j, 3)
        rows = ((1, 5), (3, 7), (0,))[s]
        verts.extend(((r + t) % 9, j) for r in rows)
    S = PackingSet(Grid(9, n), verts)
    assert len(S) == bounds.c9_packing_size(n)
    return S


def boundary_slack(k: int) -> int:
    """Spare weight at a constrained boundary vertex of the slack uniform labeling."""
    p = UniformParams.for_k(k, "slack")
    if p.b >= k:
        return 1 << 30  # boundary vertices carry no constraint
    return p.a + 3 * p.b - (k + 3)


def packing_labeling(m: int, n: int, k: int, S: PackingSet) -> Labeling:
    """Slack uniform labeling lowered by one on every vertex of the packing S."""
    _require(m >= 3, f"m must be >= 3, got {m}")
    _require(n >= 4, f"packing labeling needs n >= 4, got {n}")
    if S.grid != Grid(m, n):
        raise InvalidPackingError(f"packing lives on {S.grid}, expected C_{m} x P_{n}")
    S.validate()
    base = uniform_labeling(m, n, k, "slack")
    f = base.labels.copy()
    for v in S.vertices:
        if f[v.j, v.i] < 1:
            raise InvalidPackingError(f"vertex {tuple(v)} has label 0 and cannot be lowered")
        f[v.j, v.i] -= 1
    L = Labeling(base.grid, k, f)
    rep = check(L)
    if not rep.valid:
        near_end = [v for v in S.vertices if v.j in (0, 1, n - 2, n - 1)]
        raise ConstructionError(
            f"packing labeling for k={k} is not a [k]-RDF: boundary slack is "
            f"{boundary_slack(k)}, {len(near_end)} packing vertices lie within reach of an "
            f"end fibre, {len(rep.violations)} violation(s)"
        )
    return L


# --- residue classes mod 5 --------------------------------------------------------------

def mod5_labeling(m: int, n: int, k: int) -> Labeling:
    _require(m >= 3, f"m must be >= 3, got {m}")
    _require(n >= 4, f"mod5 labeling needs n >= 4, got {n}")
    _require(k >= 2, f"mod5 labeling needs k >= 2, got {k}")
    if m % 5 == 0:
        return tile(linear_c5(n, k), m // 5)
    f = fragments.stitch(m, n, k)
    L = _checked(Labeling(Grid(m, n), k, f), f"mod5 labeling for m={m}, n={n}")
    bound = bounds.bound_mod5(m, n, k).value
    if L.weight > bound:
        raise ConstructionError(f"mod5 labeling weight {L.weight} exceeds the bound {bound}")
    return L


FAMILIES = ("linear_c5", "linear_c9", "uniform", "uniform_slack", "packing", "mod5")
