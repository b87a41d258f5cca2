"""Closed-form upper bounds on the [k]-Roman domination number of C_m x P_n.

Every evaluator returns a :class:`BoundValue`.  Values are exact integers; an
evaluation outside the domain the bound was proved for comes back with
``applicable=False`` and ``value=None`` so that sweeps can span every (n, k)
without exceptions.  The formula value itself is still available as
``raw`` whenever the expression is defined.

Slopes (the coefficient of n for fixed m and k) are exact ``Fraction``s.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import ParameterDomainError


class Family(str, Enum):
    LINEAR_C9 = "LinearC9"
    UNIFORM_C9 = "UniformC9"
    PACKING_C9 = "PackingC9"
    LINEAR_MULTIPLE = "LinearMultiple"
    MOD5 = "Mod5"
    UNIFORM_GENERAL = "UniformGeneral"
    PACKING_GENERAL = "PackingGeneral"
    DOUBLE_ROMAN_MULTIPLE = "DoubleRomanMultiple"
    DOUBLE_ROMAN_MOD5 = "DoubleRomanMod5"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class BoundValue:
    family: Family
    m: int
    n: int
    k: int
    value: int | None
    applicable: bool = True
    reason: str = ""
    raw: int | None = None
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.applicable and (self.value is None or self.value < 0):
            raise ValueError(f"applicable bound needs a non-negative value, got {self.value}")
        if not self.applicable and self.value is not None:
            raise ValueError("inapplicable bounds carry no value")

    @property
    def label(self) -> str:
        if "r" in self.extra:
            return f"{self.family}(r={self.extra['r']},t={self.extra['t']})"
        return str(self.family)


def _bv(family, m, n, k, raw, problems, **extra) -> BoundValue:
    if problems:
        return BoundValue(family, m, n, k, None, False, "; ".join(problems), raw, extra)
    return BoundValue(family, m, n, k, raw, True, "", raw, extra)


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def uniform_params(k: int, variant: str = "base") -> tuple[int, int]:
    """Interior weight a and boundary weight b of the uniform labeling.

    ``base``: a = ceil((k+4)/5); ``slack``: a = ceil((k+5)/5).  In both cases
    b = ceil((k+3-a)/3).
    """
    if variant == "base":
        a = ceil_div(k + 4, 5)
    elif variant == "slack":
        a = ceil_div(k + 5, 5)
    else:
        raise ParameterDomainError(f"unknown uniform variant {variant!r}")
    return a, ceil_div(k + 3 - a, 3)


def c9_packing_size(n: int) -> int:
    return 2 * n - n // 3


# --- C_9 -------------------------------------------------------------------

def bound_linear_c9(n: int, k: int) -> BoundValue:
    problems = [] if n >= 2 else [f"needs n >= 2 (n={n})"]
    if k < 1:
        problems.append("needs k >= 1")
    return _bv(Family.LINEAR_C9, 9, n, k, 2 * n * (k + 1) + 2 * k, problems)


def bound_uniform_c9(n: int, k: int) -> BoundValue:
    a, b = uniform_params(k, "base")
    problems = []
    if k <= 2:
        problems.append(f"needs k > 2 (k={k})")
    if n < 4:
        problems.append(f"needs n >= 4 (n={n})")
    return _bv(Family.UNIFORM_C9, 9, n, k, 9 * (n - 2) * a + 18 * b, problems)


def bound_uniform_c9_relaxed(n: int, k: int) -> Fraction:
    return Fraction(9 * n * k + 81 * n + 6 * k - 6, 5)


def bound_packing_c9(n: int, k: int) -> BoundValue:
    a, b = uniform_params(k, "slack")
    problems = [] if n >= 4 else [f"needs n >= 4 (n={n})"]
    raw = 9 * (n - 2) * a + 18 * b - c9_packing_size(n)
    return _bv(Family.PACKING_C9, 9, n, k, raw, problems)


def bound_packing_c9_relaxed(n: int, k: int) -> Fraction:
    return Fraction(27 * n * k + 245 * n + 18 * k - 90, 15)


# --- multiples of r = 3..9 ---------------------------------------------------

def _linear_base(r: int, n: int, k: int) -> int:
    """Bound for C_r x P_n (t = 1)."""
    if r == 3:
        return n * k + 2
    if r == 4:
        return n * (k + 1)
    if r == 5:
        return n * (k + 1) + 2 * k
    if r == 6:
        c = ceil_div(4 * n, 3) * (k + 1)
        return c + (k + 1, 0, k)[n % 3]
    if r == 7:
        if n % 2:
            return (n + 1) * (k + 1) + (n - 1) // 2 * (k + 1) + 2 * k
        half = n * (k + 1) + 2 * k + 1
        assert (n * (k + 1)) % 2 == 0
        return half + n // 2 * (k + 1)
    if r == 8:
        return 2 * n * (k + 1) - ((n - 2) // 5 + n // 5) + 2 * k
    if r == 9:
        return 2 * n * (k + 1) + 2 * k
    raise ParameterDomainError(f"base circumference r must be in 3..9, got {r}")


def bound_linear_multiple(r: int, t: int, n: int, k: int) -> BoundValue:
    if r not in range(3, 10):
        raise ParameterDomainError(f"base circumference r must be in 3..9, got {r}")
    if t < 1:
        raise ParameterDomainError(f"multiplier t must be >= 1, got {t}")
    problems = [] if n >= 2 else [f"needs n >= 2 (n={n})"]
    raw = t * _linear_base(r, max(n, 0), k) if n >= 0 else None
    return _bv(Family.LINEAR_MULTIPLE, r * t, n, k, raw, problems, r=r, t=t)


def linear_multiples(m: int, n: int, k: int) -> list[BoundValue]:
    """All applicable decompositions m = r t with r in 3..9, ascending r."""
    return [bound_linear_multiple(r, m // r, n, k) for r in range(3, 10) if m % r == 0]


def best_linear_multiple(m: int, n: int, k: int) -> BoundValue | None:
    cands = [b for b in linear_multiples(m, n, k) if b.applicable]
    if not cands:
        return None
    return min(cands, key=lambda b: (b.value, b.extra["r"]))


# --- residue classes mod 5 ---------------------------------------------------

def _mod5_raw(m: int, n: int, k: int) -> int:
    w5 = n * (k + 1) + 2 * k
    q = (n - 2) // 5
    d = m % 5
    if d == 0:
        return m // 5 * w5
    if d == 1:
        return (m + 4) // 5 * w5 - (4 * k + 1) - 2 * (k + 2) * q
    if d == 2:
        return (m + 3) // 5 * w5 - 3 * k - (k + 3) * q
    if d == 3:
        return (m + 2) // 5 * w5 - 2 * k - 2 * q
    return (m + 1) // 5 * w5 - 2 * k


def mod5_coefficients(m: int, n: int) -> tuple[int, int]:
    """The residue bound is affine in k: return (coefficient of k, constant)."""
    c0 = _mod5_raw(m, n, 0)
    return _mod5_raw(m, n, 1) - c0, c0


def bound_mod5(m: int, n: int, k: int) -> BoundValue:
    problems = []
    if m < 3:
        problems.append(f"needs m >= 3 (m={m})")
    if n < 4:
        problems.append(f"needs n >= 4 (n={n})")
    if k < 2:
        problems.append(f"needs k >= 2 (k={k})")
    return _bv(Family.MOD5, m, n, k, _mod5_raw(m, n, k), problems, d=m % 5)


# --- uniform / packing for every m -------------------------------------------

def bound_uniform_general(m: int, n: int, k: int) -> BoundValue:
    a, b = uniform_params(k, "base")
    problems = [] if n >= 4 else [f"needs n >= 4 (n={n})"]
    return _bv(Family.UNIFORM_GENERAL, m, n, k, m * (n - 2) * a + 2 * m * b, problems)


def bound_packing_general(m: int, n: int, k: int, rho: int | None) -> BoundValue:
    a, b = uniform_params(k, "slack")
    problems = [] if n >= 4 else [f"needs n >= 4 (n={n})"]
    if rho is None:
        problems.append("packing number unknown")
        raw = None
    else:
        raw = m * (n - 2) * a + 2 * m * b - rho
    return _bv(Family.PACKING_GENERAL, m, n, k, raw, problems, rho=rho)


# --- double Roman (k = 2), transcribed independently ---------------------------

def _double_roman_base(r: int, n: int) -> int:
    if r == 3:
        return 2 * n + 2
    if r == 4:
        return 3 * n
    if r == 5:
        return 3 * n + 4
    if r == 6:
        c = 3 * ceil_div(4 * n, 3)
        return c + (3, 0, 2)[n % 3]
    if r == 7:
        num = 9 * n + (11 if n % 2 else 10)
        assert num % 2 == 0
        return num // 2
    if r == 8:
        return 6 * n - ((n - 2) // 5 + n // 5) + 4
    if r == 9:
        return 6 * n + 4
    raise ParameterDomainError(f"base circumference r must be in 3..9, got {r}")


def double_roman_multiple(r: int, t: int, n: int) -> BoundValue:
    if r not in range(3, 10) or t < 1:
        raise ParameterDomainError(f"need r in 3..9 and t >= 1, got r={r}, t={t}")
    problems = [] if n >= 2 else [f"needs n >= 2 (n={n})"]
    return _bv(Family.DOUBLE_ROMAN_MULTIPLE, r * t, n, 2, t * _double_roman_base(r, n), problems, r=r, t=t)


def double_roman_mod5(m: int, n: int) -> BoundValue:
    q = (n - 2) // 5
    d = m % 5
    base = 3 * n + 4
    if d == 0:
        raw = m // 5 * base
    elif d == 1:
        raw = (m + 4) // 5 * base - 9 - 8 * q
    elif d == 2:
        raw = (m + 3) // 5 * base - 6 - 5 * q
    elif d == 3:
        raw = (m + 2) // 5 * base - 4 - 2 * q
    else:
        raw = (m + 1) // 5 * base - 4
    problems = []
    if m < 3:
        problems.append(f"needs m >= 3 (m={m})")
    if n < 4:
        problems.append(f"needs n >= 4 (n={n})")
    return _bv(Family.DOUBLE_ROMAN_MOD5, m, n, 2, raw, problems, d=d)


def best_double_roman_multiple(m: int, n: int) -> BoundValue | None:
    cands = [double_roman_multiple(r, m // r, n) for r in range(3, 10) if m % r == 0]
    cands = [c for c in cands if c.applicable]
    if not cands:
        return None
    return min(cands, key=lambda b: (b.value, b.extra["r"]))


# --- slopes -------------------------------------------------------------------

@dataclass(frozen=True)
class Slope:
    family: str
    coefficient: Fraction
    period: int = 1


NORMALIZED_BASES = (3, 4, 5, 6, 7, 8)


def normalized_slope(r: int, k: int) -> Fraction:
    """Slope of the C_r x P_n linear bound divided by r (per unit of m)."""
    base = {
        3: Fraction(k),
        4: Fraction(k + 1),
        5: Fraction(k + 1),
        6: Fraction(4 * (k + 1), 3),
        7: Fraction(3 * (k + 1), 2),
        8: Fraction(2 * (k + 1)) - Fraction(2, 5),
        9: Fraction(2 * (k + 1)),
    }[r]
    return base / r


def linear_multiple_slope(r: int, t: int, k: int) -> Slope:
    period = {6: 3, 7: 2, 8: 5}.get(r, 1)
    return Slope(f"LinearMultiple(r={r},t={t})", normalized_slope(r, k) * r * t, period)


def mod5_slope(m: int, k: int) -> Slope:
    d = m % 5
    t = Fraction(m + (5 - d) % 5, 5)
    coef = {
        0: t * (k + 1),
        1: t * (k + 1) - Fraction(2 * (k + 2), 5),
        2: t * (k + 1) - Fraction(k + 3, 5),
        3: t * (k + 1) - Fraction(2, 5),
        4: t * (k + 1),
    }[d]
    return Slope("Mod5", coef, 5)


def c9_slopes(k: int) -> list[Slope]:
    a, _ = uniform_params(k, "base")
    a2, _ = uniform_params(k, "slack")
    return [
        Slope(str(Family.LINEAR_C9), Fraction(2 * (k + 1))),
        Slope(str(Family.UNIFORM_C9), Fraction(9 * a)),
        Slope(str(Family.PACKING_C9), Fraction(9 * a2) - Fraction(5, 3), 3),
    ]


def slopes(m: int, k: int) -> list[Slope]:
    """Exact slopes of every bound family defined for (m, k)."""
    out = [linear_multiple_slope(r, m // r, k) for r in range(3, 10) if m % r == 0]
    a, _ = uniform_params(k, "base")
    out.append(Slope(str(Family.UNIFORM_GENERAL), Fraction(m * a)))
    if k >= 2:
        out.append(mod5_slope(m, k))
    if m == 9:
        out = c9_slopes(k) + out
    return out


def normalized_slopes(k: int) -> dict[int, Fraction]:
    """k/3, (k+1)/4, (k+1)/5, 2(k+1)/9, 3(k+1)/14, (5k+4)/20 keyed by r."""
    return {r: normalized_slope(r, k) for r in NORMALIZED_BASES}


def least_normalized_slope(k: int) -> tuple[list[int], Fraction]:
    table = normalized_slopes(k)
    best = min(table.values())
    return [r for r, s in table.items() if s == best], best


def double_roman_multiple_slopes(m: int) -> dict[int, Fraction]:
    """Admissible r | m and the k = 2 slope of t * B_r."""
    return {r: normalized_slope(r, 2) * m for r in range(3, 10) if m % r == 0}


def finite_difference_slope(evaluate: Callable[[int], int], n: int, period: int) -> Fraction:
    return Fraction(evaluate(n + period) - evaluate(n), period)


# --- region tables --------------------------------------------------------------

COLUMNS = ("linear", "uniform", "packing", "mod5")
DEFAULT_FAMILIES = ("linear", "uniform", "packing")


@dataclass(frozen=True)
class RegionCell:
    m: int
    n: int
    k: int
    values: dict[str, int | None]
    winner: str | None
    tie_set: tuple[str, ...]


def region_values(m: int, n: int, k: int, rho: Callable[[int, int], int | None] | None = None) -> dict[str, int | None]:
    """Bound values keyed by CSV column; None when inapplicable."""
    if m == 9:
        lin = bound_linear_c9(n, k)
        uni = bound_uniform_c9(n, k)
        pac = bound_packing_c9(n, k)
    else:
        lin = best_linear_multiple(m, n, k)
        uni = bound_uniform_general(m, n, k)
        r = rho(m, n) if rho is not None and n >= 4 else None
        pac = bound_packing_general(m, n, k, r)
    mod = bound_mod5(m, n, k)
    return {
        "linear": lin.value if lin is not None else None,
        "uniform": uni.value,
        "packing": pac.value,
        "mod5": mod.value,
    }


def pick_winner(values: dict[str, int | None], families: Sequence[str]) -> tuple[str | None, tuple[str, ...]]:
    present = [(values[f], COLUMNS.index(f), f) for f in families if values.get(f) is not None]
    if not present:
        return None, ()
    best = min(v for v, _, _ in present)
    ties = tuple(f for v, _, f in sorted(present, key=lambda x: x[1]) if v == best)
    return ties[0], ties


def region_table(
    m: int,
    n_range: Iterable[int],
    k_range: Iterable[int],
    families: Sequence[str] = DEFAULT_FAMILIES,
    rho: Callable[[int, int], int | None] | None = None,
) -> list[RegionCell]:
    ns = list(n_range)
    ks = list(k_range)
    if not ns or not ks:
        raise ParameterDomainError("region ranges must be nonempty")
    for f in families:
        if f not in COLUMNS:
            raise ParameterDomainError(f"unknown family column {f!r}")
    cells = []
    for k in ks:
        for n in ns:
            vals = region_values(m, n, k, rho)
            winner, ties = pick_winner(vals, families)
            cells.append(RegionCell(m, n, k, vals, winner, ties))
    return cells


def region_csv(cells: Iterable[RegionCell]) -> str:
    lines = ["m,n,k," + ",".join(COLUMNS) + ",winner,ties"]
    for c in cells:
        vals = ["" if c.values[col] is None else str(c.values[col]) for col in COLUMNS]
        ties = ";".join(c.tie_set) if len(c.tie_set) > 1 else ""
        lines.append(f"{c.m},{c.n},{c.k}," + ",".join(vals) + f",{c.winner or ''},{ties}")
    return "\n".join(lines) + "\n"


# --- regime analysis for C_9 (eventual winners in n) ------------------------------

C9_EVALUATORS: dict[str, Callable[[int, int], int]] = {
    "linear": lambda n, k: bound_linear_c9(n, k).raw,
    "uniform": lambda n, k: bound_uniform_c9(n, k).raw,
    "packing": lambda n, k: bound_packing_c9(n, k).raw,
}


@dataclass(frozen=True)
class Regime:
    k: int
    eventual: str | None  # unique winner from the crossover on; None = permanent tie
    crossover: int | None  # least n from which `eventual` wins strictly up to the horizon
    slopes: dict[str, Fraction]


def asymptotic_c9_winner(k: int) -> str | None:
    """Family that is strictly smallest for all large n, decided exactly.

    Differences of the three C_9 bounds are affine in n plus a 3-periodic term,
    so comparing slopes and, on equal slopes, the per-residue offsets decides it.
    """
    sl = {s.family: s.coefficient for s in c9_slopes(k)}
    names = {"linear": str(Family.LINEAR_C9), "uniform": str(Family.UNIFORM_C9), "packing": str(Family.PACKING_C9)}
    best = min(sl[names[f]] for f in C9_EVALUATORS)
    cands = [f for f in C9_EVALUATORS if sl[names[f]] == best]
    if len(cands) == 1:
        return cands[0]
    # equal slopes: compare over one full period far out
    n0 = 3000
    winners = set()
    for n in range(n0, n0 + 3):
        vals = {f: C9_EVALUATORS[f](n, k) for f in cands}
        low = min(vals.values())
        w = [f for f in cands if vals[f] == low]
        if len(w) > 1:
            return None
        winners.add(w[0])
    return winners.pop() if len(winners) == 1 else None


def c9_regime(k: int, horizon: int = 10000, n_min: int = 4) -> Regime:
    eventual = asymptotic_c9_winner(k)
    sl = {s.family: s.coefficient for s in c9_slopes(k)}
    if eventual is None:
        return Regime(k, None, None, sl)
    crossover = None
    for n in range(horizon, n_min - 1, -1):
        vals = {f: ev(n, k) for f, ev in C9_EVALUATORS.items()}
        mine = vals[eventual]
        if all(mine < v for f, v in vals.items() if f != eventual):
            crossover = n
        else:
            break
    return Regime(k, eventual, crossover, sl)


def c9_regime_claim(k: int) -> str | None:
    """The C_9 regime stated for large k (None where nothing is claimed)."""
    if k % 5 == 1 and k >= 26:
        return "uniform"
    if k % 5 != 1 and k >= 38:
        return "packing"
    return None


@dataclass(frozen=True)
class RegimeDiscrepancy:
    k: int
    claimed: str
    actual: str | None
    slopes: dict[str, Fraction]


def c9_regime_audit(k_range: Iterable[int], horizon: int = 10000) -> tuple[list[Regime], list[RegimeDiscrepancy]]:
    regimes, bad = [], []
    for k in k_range:
        reg = c9_regime(k, horizon)
        regimes.append(reg)
        claim = c9_regime_claim(k)
        if claim is not None and reg.eventual != claim:
            bad.append(RegimeDiscrepancy(k, claim, reg.eventual, reg.slopes))
    return regimes, bad


def regime_csv(regimes: Iterable[Regime]) -> str:
    lines = ["k,eventual,crossover,slope_linear,slope_uniform,slope_packing,claimed"]
    for r in regimes:
        sl = [r.slopes[str(f)] for f in (Family.LINEAR_C9, Family.UNIFORM_C9, Family.PACKING_C9)]
        claim = c9_regime_claim(r.k) or ""
        lines.append(
            f"{r.k},{r.eventual or ''},{'' if r.crossover is None else r.crossover},"
            + ",".join(str(s) for s in sl)
            + f",{claim}"
        )
    return "\n".join(lines) + "\n"


# --- double Roman comparison ----------------------------------------------------------

class DRComparison(str, Enum):
    MULTIPLE_SMALLER = "MultipleSmaller"
    EQUAL = "Equal"
    RESIDUE_SMALLER = "ResidueSmaller"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class DRResult:
    m: int
    n: int
    outcome: DRComparison | None
    multiple: BoundValue | None
    residue: BoundValue


def compare_double_roman(m: int, n: int) -> DRResult:
    """Best multiple-based double Roman bound against the residue-class one.

    ``outcome`` is None when no r in 3..9 divides m (no multiple bound exists).
    """
    if m < 3 or n < 4:
        raise ParameterDomainError(f"comparison needs m >= 3 and n >= 4, got m={m}, n={n}")
    res = double_roman_mod5(m, n)
    mul = best_double_roman_multiple(m, n)
    if mul is None:
        return DRResult(m, n, None, None, res)
    if mul.value < res.value:
        out = DRComparison.MULTIPLE_SMALLER
    elif mul.value == res.value:
        out = DRComparison.EQUAL
    else:
        out = DRComparison.RESIDUE_SMALLER
    return DRResult(m, n, out, mul, res)


def dr_printed_outcome(m: int, n: int) -> DRComparison | None:
    """Outcome listed for 3 <= m <= 19 (None where nothing is listed)."""
    M, E, R = DRComparison.MULTIPLE_SMALLER, DRComparison.EQUAL, DRComparison.RESIDUE_SMALLER
    if m % 5 == 0:
        return E
    if m in (3, 6, 7, 12):
        return M
    if m in (4, 9):
        return E
    if m == 14:
        return R
    if m == 8:
        if 4 <= n <= 11 or n % 5 in (0, 1):
            return M
        return E
    if m == 16:
        return M if n <= 6 else R
    if m == 18:
        if n in (4, 5, 6, 7, 8, 9, 10, 11, 13, 16):
            return M
        if n in (12, 14, 15, 19):
            return E
        if n in (17, 18) or n >= 20:
            return R
    return None


@dataclass(frozen=True)
class DRDiscrepancy:
    m: int
    n: int
    printed: DRComparison
    computed: DRComparison | None
    multiple: int | None
    residue: int


def dr_outcome_audit(m_range: Iterable[int], n_range: Iterable[int]) -> list[DRDiscrepancy]:
    out = []
    ns = list(n_range)
    for m in m_range:
        for n in ns:
            printed = dr_printed_outcome(m, n)
            if printed is None:
                continue
            r = compare_double_roman(m, n)
            if r.outcome != printed:
                out.append(
                    DRDiscrepancy(m, n, printed, r.outcome, None if r.multiple is None else r.multiple.value, r.residue.value)
                )
    return out
