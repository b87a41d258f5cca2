"""[k]-Roman dominating function checks.

A labeling f: V -> {0, ..., k+1} is a [k]-RDF when every vertex with
f(v) < k satisfies f(N[v]) >= k + |AN(v)|, where AN(v) is the set of
neighbours with a positive label.  Vertices labelled k or k+1 carry no
constraint.

The check is vectorised with a small identity: subtracting one for every
active neighbour turns the condition into

    f(v) + sum_{u in N(v)} g(f(u)) >= k,    g(x) = max(x - 1, 0),

which is a plain stencil sum over the cylinder.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import MalformedLabelingError, ParameterDomainError
from .grid import Grid, Vertex


@dataclass(frozen=True, eq=False)
class Labeling:
    """A labeling of C_m x P_n; ``labels[j, i]`` is f(i, j)."""

    grid: Grid
    k: int
    labels: np.ndarray

    def __post_init__(self) -> None:
        if int(self.k) < 1:
            raise ParameterDomainError(f"k must be >= 1, got {self.k}")
        arr = np.array(self.labels, dtype=np.int64, copy=True)
        if arr.ndim == 1 and arr.size == self.grid.size:
            arr = arr.reshape(self.grid.n, self.grid.m)
        if arr.shape != (self.grid.n, self.grid.m):
            raise MalformedLabelingError(
                f"labels must have shape (n, m) = {(self.grid.n, self.grid.m)}, got {arr.shape}"
            )
        bad = np.argwhere((arr < 0) | (arr > self.k + 1))
        if bad.size:
            j, i = (int(x) for x in bad[0])
            raise MalformedLabelingError(
                f"label {int(arr[j, i])} at vertex ({i},{j}) is outside 0..{self.k + 1}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "labels", arr)
        object.__setattr__(self, "k", int(self.k))

    @classmethod
    def from_fibres(cls, k: int, fibres: Any) -> "Labeling":
        arr = np.asarray(fibres, dtype=np.int64)
        if arr.ndim != 2:
            raise MalformedLabelingError("labels must be an array of fibres")
        n, m = arr.shape
        return cls(Grid(int(m), int(n)), k, arr)

    @classmethod
    def zeros(cls, grid: Grid, k: int) -> "Labeling":
        return cls(grid, k, np.zeros((grid.n, grid.m), dtype=np.int64))

    @classmethod
    def constant(cls, grid: Grid, k: int, value: int) -> "Labeling":
        return cls(grid, k, np.full((grid.n, grid.m), value, dtype=np.int64))

    def __getitem__(self, v: tuple[int, int]) -> int:
        if v not in self.grid:
            raise ParameterDomainError(f"vertex {tuple(v)} is not in the grid")
        return int(self.labels[v[1], v[0]])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Labeling):
            return NotImplemented
        return self.grid == other.grid and self.k == other.k and np.array_equal(self.labels, other.labels)

    def __hash__(self) -> int:
        return hash((self.grid, self.k, self.labels.tobytes()))

    @property
    def weight(self) -> int:
        return int(self.labels.sum())

    def flat(self) -> np.ndarray:
        return self.labels.reshape(-1)

    def replace(self, labels: np.ndarray) -> "Labeling":
        return Labeling(self.grid, self.k, labels)

    def to_dict(self) -> dict[str, Any]:
        return {
            "m": self.grid.m,
            "n": self.grid.n,
            "k": self.k,
            "labels": self.labels.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":")) + "\n"

    @classmethod
    def from_dict(cls, doc: Any) -> "Labeling":
        if not isinstance(doc, dict):
            raise MalformedLabelingError("labeling document must be a JSON object")
        missing = [key for key in ("m", "n", "k", "labels") if key not in doc]
        if missing:
            raise MalformedLabelingError(f"labeling document lacks field(s): {', '.join(missing)}")
        m, n, k, rows = doc["m"], doc["n"], doc["k"], doc["labels"]
        for name, val in (("m", m), ("n", n), ("k", k)):
            if isinstance(val, bool) or not isinstance(val, int):
                raise MalformedLabelingError(f"field {name} must be an integer")
        if not isinstance(rows, list) or len(rows) != n:
            raise MalformedLabelingError(f"labels must be a list of n={n} fibres")
        for j, fib in enumerate(rows):
            if not isinstance(fib, list) or len(fib) != m:
                raise MalformedLabelingError(f"fibre {j} must list m={m} labels")
            if any(isinstance(x, bool) or not isinstance(x, int) for x in fib):
                raise MalformedLabelingError(f"fibre {j} contains a non-integer label")
        return cls(Grid(m, n), k, np.array(rows, dtype=np.int64).reshape(n, m))

    @classmethod
    def from_json(cls, text: str) -> "Labeling":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedLabelingError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(doc)


@dataclass(frozen=True)
class Violation:
    vertex: Vertex
    required: int
    achieved: int


@dataclass(frozen=True)
class VerifyReport:
    valid: bool
    weight: int
    violations: list[Violation] = field(default_factory=list)
    # None means no vertex was constrained (every label >= k)
    min_slack: int | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "valid": self.valid,
            "weight": self.weight,
            "min_slack": "unconstrained" if self.min_slack is None else self.min_slack,
            "violations": [
                {"i": v.vertex.i, "j": v.vertex.j, "required": v.required, "achieved": v.achieved}
                for v in self.violations
            ],
        }


def _stencil(arr: np.ndarray) -> np.ndarray:
    """Sum of ``arr`` over the open neighbourhood of every vertex."""
    out = np.roll(arr, 1, axis=1) + np.roll(arr, -1, axis=1)
    out[1:] += arr[:-1]
    out[:-1] += arr[1:]
    return out


def neighborhood_sums(L: Labeling) -> tuple[np.ndarray, np.ndarray]:
    """Return (f(N[v]), |AN(v)|) as (n, m) arrays."""
    f = L.labels
    closed = f + _stencil(f)
    active = _stencil((f > 0).astype(np.int64))
    return closed, active


def slack_array(L: Labeling) -> np.ndarray:
    """f(N[v]) - (k + |AN(v)|) for every vertex, constrained or not."""
    closed, active = neighborhood_sums(L)
    return closed - (L.k + active)


def active_neighborhood(L: Labeling, v: tuple[int, int]) -> set[Vertex]:
    return {u for u in L.grid.open_neighborhood(v) if L[u] > 0}


def check(L: Labeling) -> VerifyReport:
    closed, active = neighborhood_sums(L)
    required = L.k + active
    constrained = L.labels < L.k
    slack = closed - required
    bad = constrained & (slack < 0)
    violations = [
        Violation(Vertex(int(i), int(j)), int(required[j, i]), int(closed[j, i]))
        for j, i in np.argwhere(bad)
    ]
    min_slack = int(slack[constrained].min()) if constrained.any() else None
    return VerifyReport(
        valid=not violations,
        weight=L.weight,
        violations=violations,
        min_slack=min_slack,
    )


def is_valid(L: Labeling) -> bool:
    closed, active = neighborhood_sums(L)
    return not bool(((L.labels < L.k) & (closed < L.k + active)).any())


def weight(L: Labeling) -> int:
    return L.weight
