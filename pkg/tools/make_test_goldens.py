"""Regenerate the byte-compared CSV goldens under ``tests/golden``.

    python tools/make_test_goldens.py

Review the diff by hand before committing: the region tables should show
the same winners as the published region charts.
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from kroman import bounds  # noqa: E402

OUT = ROOT / "tests" / "golden"
LOW_K = [1, 2] + list(range(12, 28))
HIGH_K = list(range(35, 46))
REGIME_K = range(1, 61)
REGIME_HORIZON = 10000


def dr_table() -> str:
    lines = ["m,n,multiple,best_r,residue,outcome,printed"]
    for m in range(3, 20):
        for n in range(4, 41):
            r = bounds.compare_double_roman(m, n)
            p = bounds.dr_printed_outcome(m, n)
            mul = "" if r.multiple is None else str(r.multiple.value)
            best_r = "" if r.multiple is None else str(r.multiple.extra["r"])
            lines.append(f"{m},{n},{mul},{best_r},{r.residue.value},{r.outcome or ''},{p or ''}")
    return "\n".join(lines) + "\n"


def main() -> int:
    OUT.mkdir(parents=True, exist_ok=True)
    ns = range(4, 21)
    (OUT / "region_c9_low_k.csv").write_text(bounds.region_csv(bounds.region_table(9, ns, LOW_K)))
    (OUT / "region_c9_high_k.csv").write_text(bounds.region_csv(bounds.region_table(9, ns, HIGH_K)))
    regimes, bad = bounds.c9_regime_audit(REGIME_K, REGIME_HORIZON)
    (OUT / "regime_c9.csv").write_text(bounds.regime_csv(regimes))
    lines = ["k,claimed,actual,slope_linear,slope_packing"]
    for d in bad:
        sl = d.slopes
        lines.append(
            f"{d.k},{d.claimed},{d.actual or 'tie'},{sl[str(bounds.Family.LINEAR_C9)]},{sl[str(bounds.Family.PACKING_C9)]}"
        )
    (OUT / "regime_discrepancies.csv").write_text("\n".join(lines) + "\n")
    (OUT / "double_roman_compare.csv").write_text(dr_table())
    print("goldens written to", OUT)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
