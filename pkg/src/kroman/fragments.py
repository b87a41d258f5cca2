"""Residue-class labeling fragments for C_m x P_n with m not a multiple of 5.

For m = 5L + d, cycle rows 0..5L-1 carry the C_5 diagonal pattern: k+1 where
(i - 2j) mod 5 == 2, plus k where (i - 2j) mod 5 is 0 in the first fibre or 4
in the last.  The remaining d rows are a seam.  A fragment stores the labels
of a band around the seam (``height`` rows starting ``window_offset`` rows
from it).  Along the path it stores a base of ``n_base`` columns and a
5-column block that is repeated at column ``insert_at``; the diagonal pattern
has period 5 along the path, so any n of the right residue is covered.

Small cylinders use ``special`` fragments whose window is the whole cylinder.

Cells are stored as ``{"c0": a, "ck": b}`` meaning label a + b*k; only the
three labels 0, k and k+1 occur, which makes one fragment valid for all
k >= 2.  The shipped files were produced by ``tools/derive_mod5_fragments.py``
and every construction is re-checked by the verifier anyway.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from .errors import ConstructionError, ParameterDomainError

ENCODE = {
    "0": {"c0": 0, "ck": 0},
    "k": {"c0": 0, "ck": 1},
    "k+1": {"c0": 1, "ck": 1},
}
_CODE = {(0, 0): 0, (0, 1): 1, (1, 1): 2}  # 0 / k / k+1


@dataclass(frozen=True)
class Fragment:
    residue_m: int
    residue_n: int
    lines: int  # 0 for a whole-cylinder fragment
    window_offset: int
    height: int
    n_base: int
    insert_at: int
    base: np.ndarray  # (n_base, height) codes 0/1/2
    block: np.ndarray  # (5, height)

    @classmethod
    def from_dict(cls, doc: dict) -> "Fragment":
        def grid(rows):
            try:
                return np.array([[_CODE[(c["c0"], c["ck"])] for c in col] for col in rows], dtype=np.int64)
            except (KeyError, TypeError) as exc:
                raise ConstructionError(f"malformed fragment cell: {exc}") from exc

        frag = cls(
            int(doc["residue_m"]),
            int(doc["residue_n"]),
            int(doc["lines"]),
            int(doc["window_offset"]),
            int(doc["height"]),
            int(doc["n_base"]),
            int(doc["insert_at"]),
            grid(doc["base"]),
            grid(doc["block"]),
        )
        if frag.base.shape != (frag.n_base, frag.height) or frag.block.shape != (5, frag.height):
            raise ConstructionError("fragment arrays do not match the declared sizes")
        if doc.get("corrections"):
            raise ConstructionError("fragment corrections are not supported")
        return frag


@dataclass(frozen=True)
class FragmentFile:
    general: Fragment
    min_m: int
    special: dict[int, Fragment]


@lru_cache(maxsize=None)
def load(d: int, e: int) -> FragmentFile:
    if d not in (1, 2, 3, 4) or e not in range(5):
        raise ParameterDomainError(f"no fragment for residues m%5={d}, n%5={e}")
    name = f"mod5_r{d}_n{e}.json"
    try:
        text = resources.files("kroman").joinpath("data", "fragments", name).read_text()
    except FileNotFoundError as exc:
        raise ConstructionError(f"fragment file {name} is missing") from exc
    doc = json.loads(text)
    return FragmentFile(
        Fragment.from_dict(doc),
        int(doc["min_m"]),
        {int(m): Fragment.from_dict(sub) for m, sub in doc.get("special", {}).items()},
    )


def select(m: int, n: int) -> tuple[Fragment, int]:
    """The fragment used for (m, n) and its number of lines."""
    d, e = m % 5, n % 5
    if d == 0:
        raise ParameterDomainError("multiples of 5 need no fragment")
    ff = load(d, e)
    if m in ff.special:
        frag = ff.special[m]
        lines = 0
    elif m >= ff.min_m:
        frag = ff.general
        lines = (m - d) // 5
    else:
        raise ConstructionError(f"no fragment covers m={m}")
    if n < frag.n_base:
        raise ConstructionError(f"fragment for n%5={e} needs n >= {frag.n_base}, got n={n}")
    return frag, lines


def _line_code(i: int, j: int, n: int, lines: int) -> int:
    if i >= 5 * lines:
        return 0
    off = (i - 2 * j) % 5
    if off == 2:
        return 2
    if (j == 0 and off == 0) or (j == n - 1 and off == 4):
        return 1
    return 0


def stitch_codes(m: int, n: int) -> np.ndarray:
    """(n, m) array of codes 0/1/2 standing for labels 0/k/k+1."""
    frag, lines = select(m, n)
    copies = (n - frag.n_base) // 5
    top = 0 if lines == 0 else (5 * lines + frag.window_offset) % m
    a = frag.insert_at
    out = np.zeros((n, m), dtype=np.int64)
    for j in range(n):
        if j < a:
            col = frag.base[j]
        elif j < a + 5 * copies:
            col = frag.block[(j - a) % 5]
        else:
            col = frag.base[j - 5 * copies]
        for i in range(m):
            w = (i - top) % m
            out[j, i] = col[w] if w < frag.height else _line_code(i, j, n, lines)
    return out


def stitch(m: int, n: int, k: int) -> np.ndarray:
    codes = stitch_codes(m, n)
    return np.choose(codes, [0, k, k + 1])
