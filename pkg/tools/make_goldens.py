"""Regenerate ``src/kroman/data/goldens.json`` from the exact oracles.

Every gamma value is computed by the fibre DP and, where the brute-force
search is cheap, confirmed by it; packing numbers are computed by the line
transfer and confirmed by the independent-set search when small.

    python tools/make_goldens.py
"""

from __future__ import annotations

import datetime as dt
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from kroman.exact import brute_gamma, exact_gamma, exact_packing_number  # noqa: E402

GAMMA = sorted(
    {(m, n, k) for m in (3, 4) for n in range(1, 5) for k in (1, 2)}
    | {(m, 1, k) for m in range(3, 9) for k in (1, 2, 3)}
    | {(5, 8, 2), (5, 8, 1), (3, 4, 1), (5, 4, 2), (6, 4, 2), (4, 6, 3)}
)
RHO = sorted({(9, n) for n in range(4, 10)} | {(m, n) for m in range(3, 9) for n in range(4, 7)})


def main() -> int:
    today = dt.date.today().isoformat()
    out = []
    for m, n, k in GAMMA:
        val = exact_gamma(m, n, k).value
        method = "dp"
        if (k + 2) ** (m * n) <= 4**16:
            assert brute_gamma(m, n, k).value == val, (m, n, k)
            method = "dp+brute"
        out.append({"kind": "gamma", "m": m, "n": n, "k": k, "value": val, "method": method, "date": today})
    for m, n in RHO:
        val = exact_packing_number(m, n).value
        method = "transfer"
        if m * n <= 40:
            assert exact_packing_number(m, n, method="mis").value == val, (m, n)
            method = "transfer+mis"
        out.append({"kind": "rho", "m": m, "n": n, "value": val, "method": method, "date": today})
    path = ROOT / "src" / "kroman" / "data" / "goldens.json"
    path.write_text(json.dumps(out, indent=1) + "\n")
    print(f"wrote {len(out)} goldens to {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
