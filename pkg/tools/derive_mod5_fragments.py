"""Derive the residue-class (m mod 5) labeling fragments shipped in
``src/kroman/data/fragments``.

Run once, offline:

    python tools/derive_mod5_fragments.py [--out DIR]

Geometry.  For m = 5L + d, rows 0..5L-1 of the cycle carry the C_5 diagonal
pattern (k+1 where (i - 2j) mod 5 == 2, with patches of value k at the two
ends) and rows 5L..m-1 form a seam of d rows.  Only a band around the seam
(``margin`` rows on either side) is searched; everything else is fixed.  The
fixed pattern is 5-periodic along the path, so a 5-column block of the band
can be repeated.

Labels are restricted to {0, k, k+1}.  For k >= 2 a 0-vertex is then satisfied
iff it has a (k+1)-neighbour or two k-neighbours, so one fragment serves every
k >= 2.  The search is a 0/1 program over the window cells of a base of
``n0`` columns plus a 5-column core that is pumped at column ``insert_at``;
the program enforces validity for 0, 1 and 2 copies of the core (every
3-column neighbourhood of a longer pump already occurs with two copies) and
keeps both the k-coefficient and the constant of the weight under the
residue-class bound, for the base and for every added core.

Small cylinders (m < 10 + d) leave no fixed rows outside the band; for those
the whole cylinder is searched.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import lil_matrix

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from kroman.bounds import mod5_coefficients  # noqa: E402
from kroman.fragments import ENCODE  # noqa: E402

ZERO, PATCH, CODE = 0, 1, 2
BASE_N = {0: 5, 1: 6, 2: 7, 3: 8, 4: 4}
SPECIAL_M = {1: [6], 2: [7], 3: [3, 8], 4: [4, 9]}


def fixed_label(i: int, j: int, n: int, lines: int) -> int:
    """Label of a cell outside the band."""
    if i >= 5 * lines:
        return ZERO
    off = (i - 2 * j) % 5
    if off == 2:
        return CODE
    if (j == 0 and off == 0) or (j == n - 1 and off == 4):
        return PATCH
    return ZERO


class Program:
    def __init__(self, m: int, d: int, lines: int, margin: int, n0: int, insert_at: int):
        self.m, self.d, self.lines, self.margin = m, d, lines, margin
        self.n0, self.insert_at = n0, insert_at
        if lines == 0:
            self.top, self.height = 0, m
        else:
            self.top, self.height = (5 * lines - margin) % m, d + 2 * margin
        # variable cells: ("base", col, w) and ("core", t, w)
        self.cells: list[tuple[str, int, int]] = []
        for b in range(n0):
            for w in range(self.height):
                self.cells.append(("base", b, w))
        for t in range(5):
            for w in range(self.height):
                self.cells.append(("core", t, w))
        self.pos = {c: p for p, c in enumerate(self.cells)}
        self.nv = 2 * len(self.cells)  # [C..., P...]

    def window_row(self, r: int) -> int | None:
        w = (r - self.top) % self.m
        return w if w < self.height else None

    def role(self, j: int, s: int) -> tuple[str, int]:
        a = self.insert_at
        if j < a:
            return "base", j
        if j < a + 5 * s:
            return "core", (j - a) % 5
        return "base", j - 5 * s

    def cell(self, i: int, j: int, n: int, s: int):
        """('var', index) or ('fixed', label) for original cell (i, j)."""
        w = self.window_row(i)
        if w is None:
            return "fixed", fixed_label(i, j, n, self.lines)
        kind, col = self.role(j, s)
        return "var", self.pos[(kind, col, w)]

    def build(self, coeff_fn):
        m, nc = self.m, len(self.cells)
        rows: list[tuple[dict[int, float], float, float]] = []
        for p in range(nc):
            rows.append(({p: 1.0, nc + p: 1.0}, -np.inf, 1.0))
        for s in (0, 1, 2):
            n = self.n0 + 5 * s
            cnt_c: dict[int, float] = {}
            cnt_cp: dict[int, float] = {}
            fixed_c = fixed_cp = 0
            for j in range(n):
                for i in range(m):
                    kind, val = self.cell(i, j, n, s)
                    if kind == "var":
                        cnt_c[val] = cnt_c.get(val, 0) + 1
                        cnt_cp[val] = cnt_cp.get(val, 0) + 1
                        cnt_cp[nc + val] = cnt_cp.get(nc + val, 0) + 1
                    else:
                        fixed_c += val == CODE
                        fixed_cp += val != ZERO
                    # covering constraint of vertex (i, j)
                    coef: dict[int, float] = {}
                    const = 0.0
                    nbrs = [((i + 1) % m, j), ((i - 1) % m, j)]
                    if j > 0:
                        nbrs.append((i, j - 1))
                    if j < n - 1:
                        nbrs.append((i, j + 1))
                    for (a, b), self_cell in [((i, j), True)] + [(u, False) for u in nbrs]:
                        kk, vv = self.cell(a, b, n, s)
                        wc, wp = (2.0, 2.0) if self_cell else (2.0, 1.0)
                        if kk == "var":
                            coef[vv] = coef.get(vv, 0) + wc
                            coef[nc + vv] = coef.get(nc + vv, 0) + wp
                        else:
                            const += wc if vv == CODE else (wp if vv == PATCH else 0.0)
                    if const >= 2:
                        continue
                    rows.append((coef, 2.0 - const, np.inf))
            b_coef, c0 = coeff_fn(n)
            rows.append((cnt_cp, -np.inf, b_coef - fixed_cp))
            rows.append((cnt_c, -np.inf, c0 - fixed_c))
        # growth per core copy
        b1, c1 = coeff_fn(self.n0 + 5)
        b0, c0 = coeff_fn(self.n0)
        core_c: dict[int, float] = {}
        core_cp: dict[int, float] = {}
        fixed_c = fixed_cp = 0
        for t in range(5):
            for r in range(m):
                w = self.window_row(r)
                if w is None:
                    lab = fixed_label(r, 5 + t, 20, self.lines)  # interior column
                    fixed_c += lab == CODE
                    fixed_cp += lab != ZERO
                else:
                    p = self.pos[("core", t, w)]
                    core_c[p] = 1.0
                    core_cp[p] = 1.0
                    core_cp[nc + p] = 1.0
        rows.append((core_cp, -np.inf, (b1 - b0) - fixed_cp))
        rows.append((core_c, -np.inf, (c1 - c0) - fixed_c))

        A = lil_matrix((len(rows), self.nv))
        lo, hi = [], []
        for r, (coef, l, h) in enumerate(rows):
            for col, val in coef.items():
                A[r, col] = val
            lo.append(l)
            hi.append(h)
        # cost at k = 2, cores counted as heavily as the base
        cost = np.r_[np.full(nc, 3.0), np.full(nc, 2.0)]
        return cost, LinearConstraint(A.tocsr(), lo, hi)

    def solve(self, coeff_fn, time_limit: float):
        cost, cons = self.build(coeff_fn)
        res = milp(
            cost,
            constraints=cons,
            integrality=np.ones(self.nv),
            bounds=Bounds(0, 1),
            options={"time_limit": time_limit, "presolve": True},
        )
        if res.x is None:
            return None
        x = np.round(res.x).astype(int)
        nc = len(self.cells)
        out = {}
        for p, c in enumerate(self.cells):
            out[c] = CODE if x[p] else (PATCH if x[nc + p] else ZERO)
        return out


def encode(label: int) -> dict[str, int]:
    return dict(ENCODE[{ZERO: "0", PATCH: "k", CODE: "k+1"}[label]])


def derive(m: int, d: int, e: int, lines: int, margin: int, time_limit: float) -> dict:
    n0 = BASE_N[e]
    coeff = lambda n: mod5_coefficients(m, n)  # noqa: E731
    last = None
    for a in sorted(range(1, n0), key=lambda a: abs(a - n0 // 2)):
        prog = Program(m, d, lines, margin, n0, a)
        sol = prog.solve(coeff, time_limit)
        if sol is None:
            last = a
            continue
        base = [[encode(sol[("base", b, w)]) for w in range(prog.height)] for b in range(n0)]
        block = [[encode(sol[("core", t, w)]) for w in range(prog.height)] for t in range(5)]
        return {
            "residue_m": d,
            "residue_n": e,
            "lines": lines,
            "window_offset": -margin if lines else 0,
            "height": prog.height,
            "n_base": n0,
            "insert_at": a,
            "base": base,
            "block": block,
            "corrections": [],
        }
    raise RuntimeError(f"no fragment for m={m} (d={d}) e={e}, last insertion tried {last}")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=ROOT / "src" / "kroman" / "data" / "fragments")
    ap.add_argument("--margin", type=int, default=3)
    ap.add_argument("--time-limit", type=float, default=120.0)
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)
    for d in (1, 2, 3, 4):
        for e in range(5):
            general_m = 15 + d
            doc = derive(general_m, d, e, 3, args.margin, args.time_limit)
            doc["min_m"] = 10 + d
            special = {}
            for m in SPECIAL_M[d]:
                special[str(m)] = derive(m, d, e, 0, 0, args.time_limit)
            doc["special"] = special
            path = args.out / f"mod5_r{d}_n{e}.json"
            path.write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")
            print(f"wrote {path.name}", flush=True)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
