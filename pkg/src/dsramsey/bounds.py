"""Closed-form Ramsey bounds for double stars, with applicability conditions.

Integer-valued bounds use exact integers, rational ones use
:class:`fractions.Fraction`, and bounds with a square root are doubles that also
carry an exact symbolic string.  Tabulated coefficients are computed with
:mod:`decimal` at 40 digits and cut to 4 places: lower-bound coefficients are
rounded down and upper-bound coefficients rounded up, so the printed digits
never overstate what is proved.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, Decimal, localcontext
from fractions import Fraction
from typing import Any, Optional, Union

from .geometry import is_prime_power

__all__ = [
    "BoundError",
    "BoundRecord",
    "Condition",
    "TableRow",
    "bip_lower",
    "bip_upper",
    "bip3_threshold",
    "complete_lower",
    "cor_ds_upper",
    "family_gs_upper",
    "ghk_exact",
    "main1_upper",
    "render_table",
    "ruotolo_song",
    "sigma_product_max",
    "table_rows",
    "unbalanced_lower",
]

Number = Union[int, Fraction, float]

# Three-color bipartite upper coefficient, exactly as stated (ceiling of the cubic root).
BIP3_COEFF = Fraction(36678, 10000)
BIP3_CUBIC = (4, -20, 19, 2)  # 4a^3 - 20a^2 + 19a + 2


class BoundError(ValueError):
    """Parameters outside a formula's precondition."""


@dataclass(frozen=True)
class Condition:
    """An applicability predicate; ``holds`` is None when it is not checked."""

    name: str
    holds: Optional[bool]

    def to_json(self) -> dict[str, Any]:
        return {"name": self.name, "holds": self.holds}


@dataclass(frozen=True)
class BoundRecord:
    setting: str
    kind: str  # lower | upper | exact | range
    r: Optional[int]
    n: int
    m: Optional[int]
    value: Number
    symbolic: str
    source: str
    conditions: tuple[Condition, ...] = ()
    strict: bool = False
    upper_value: Optional[Number] = None  # only for kind == "range"
    caveat: Optional[str] = None
    note: Optional[str] = None
    candidates: tuple[tuple[str, Number], ...] = ()

    @property
    def is_exact_number(self) -> bool:
        return not isinstance(self.value, float)

    @property
    def integer_value(self) -> int:
        """Smallest integer >= value."""
        return _ceil(self.value)

    def to_json(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "setting": self.setting,
            "kind": self.kind,
            "r": self.r,
            "n": self.n,
            "m": self.m,
            "value": _json_number(self.value),
            "integer_value": self.integer_value,
            "exact": self.is_exact_number,
            "strict": self.strict,
            "symbolic": self.symbolic,
            "source": self.source,
            "conditions": [c.to_json() for c in self.conditions],
        }
        if self.upper_value is not None:
            doc["upper_value"] = _json_number(self.upper_value)
        if self.caveat:
            doc["caveat"] = self.caveat
        if self.note:
            doc["note"] = self.note
        if self.candidates:
            doc["candidates"] = [{"source": s, "value": _json_number(v)} for s, v in self.candidates]
        return doc


def _ceil(x: Number) -> int:
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return math.ceil(x)
    # doubles close to an integer (e.g. 2n+1 through a sqrt) should not jump up
    near = round(x)
    return near if abs(x - near) < 1e-9 else math.ceil(x)


def _json_number(x: Number):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, float):
        return round(x, 6)
    return x


def _need(ok: bool, message: str) -> None:
    if not ok:
        raise BoundError(message)


# --- complete host --------------------------------------------------------


def ghk_exact(n: int, m: int) -> Optional[BoundRecord]:
    """Exact two-color value of R(S_{n,m}), or None in the undecided range sqrt(2)m < n < 3m."""
    _need(n >= m >= 1, f"need n >= m >= 1, got n = {n}, m = {m}")
    if n % 2 == 1 and m <= 2:
        value, sym = max(2 * n + 1, n + 2 * m + 2), "max(2n+1, n+2m+2)"
        cond = Condition("n odd and m <= 2", True)
    elif n * n <= 2 * m * m or n >= 3 * m:
        value, sym = max(2 * n + 2, n + 2 * m + 2), "max(2n+2, n+2m+2)"
        cond = Condition("(n even or m >= 3) and (n <= sqrt(2)m or n >= 3m)", True)
    else:
        return None
    return BoundRecord("complete", "exact", 2, n, m, value, sym, "GHK", (cond,))


def family_gs_upper(r: int, n: int) -> BoundRecord:
    """Upper bound for the family of all double stars on 2n+2 vertices."""
    _need(r >= 2, f"need r >= 2, got r = {r}")
    _need(n >= 1, f"need n >= 1, got n = {n}")
    value = (r - 1 + Fraction(1, r + 1)) * (2 * n + 2) - Fraction(r - 1, r + 1)
    return BoundRecord(
        "complete", "upper", r, n, None, value,
        "(r-1+1/(r+1))(2n+2)-(r-1)/(r+1)", "GS", note="bound for the whole family S_{2n+2}",
    )


def main1_upper(r: int, n: int) -> BoundRecord:
    """R_r(S_{n,n}) <= (r - 1/2)(2n+2) - 1 = (2r-1)(n+1) - 1."""
    _need(r >= 2 and n >= 1, f"need r >= 2 and n >= 1, got r = {r}, n = {n}")
    note = None
    if r == 3:
        note = "summary table prints 5n+1 for r = 3; the formula gives 5n+4"
    return BoundRecord(
        "complete", "upper", r, n, n, (2 * r - 1) * (n + 1) - 1,
        "(r-1/2)(2n+2)-1", "complete-upper-theorem", note=note,
    )


def complete_lower(r: int, n: int) -> BoundRecord:
    """(r-1)2n+2 from an affine blowup when it applies, else (r-1)2n+1."""
    _need(r >= 3, f"need r >= 3, got r = {r}")
    _need(n >= 1, f"need n >= 1, got n = {n}")
    plane = is_prime_power(r - 1)
    divides = (2 * n) % (r - 1) == 0
    conds = (
        Condition(f"affine plane of order {r - 1} exists", plane),
        Condition(f"{r - 1} divides 2n", divides),
    )
    if plane and divides:
        return BoundRecord("complete", "lower", r, n, n, (r - 1) * 2 * n + 2,
                           "(r-1)2n+2", "affine-blowup", conds)
    return BoundRecord("complete", "lower", r, n, n, (r - 1) * 2 * n + 1,
                       "(r-1)2n+1", "two-r-minus-two", conds)


# --- bipartite host -------------------------------------------------------


def _bip_upper_coeff(r: int) -> float:
    return (3 * r - 5 + math.sqrt(r * r - 2 * r + 9)) / 2


def bip3_threshold(tol: Fraction = Fraction(1, 10**12)) -> Fraction:
    """Largest real root of 4a^3 - 20a^2 + 19a + 2, bracketed in [3.6, 3.7] by bisection."""
    def f(a: Fraction) -> Fraction:
        c3, c2, c1, c0 = BIP3_CUBIC
        return ((c3 * a + c2) * a + c1) * a + c0

    lo, hi = Fraction(36, 10), Fraction(37, 10)
    assert f(lo) < 0 < f(hi)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return hi


def bip_upper(r: int, n: int) -> BoundRecord:
    """Bipartite upper bound for S_{n,n}; r = 3 uses the sharper strict bound 3.6678n."""
    _need(r >= 2 and n >= 1, f"need r >= 2 and n >= 1, got r = {r}, n = {n}")
    if r == 3:
        value = BIP3_COEFF * n
        if value >= 3 * n + 1:
            return BoundRecord("bipartite", "upper", 3, n, n, value, "3.6678n",
                               "bipartite-upper-three-colors", strict=True)
        # the argument runs for N >= max(3n+1, 3.6678n); only n = 1 sees the first term
        return BoundRecord(
            "bipartite", "upper", 3, n, n, 3 * n + 1, "max(3n+1, 3.6678n)",
            "bipartite-upper-three-colors",
            (Condition("3.6678n >= 3n+1", False),),
            note="the counting argument assumes N >= rn+1, so the bound is rn+1 here",
        )
    coeff = _bip_upper_coeff(r)
    if r == 2:
        value: Number = 2 * n + 1  # sqrt(9) is exact: coefficient 2
    else:
        value = coeff * n + 1
    return BoundRecord("bipartite", "upper", r, n, n, value,
                       "((3r-5+sqrt(r^2-2r+9))/2)n+1", "bipartite-upper-theorem")


def _small_lower(r: int, n: int) -> tuple[Number, str]:
    if r % 2 == 0:
        return (3 * r // 2 - 1) * n + 1, "(3r/2-1)n+1"
    if r == 3:
        return (2 + math.sqrt(2)) * n - 2, "(2+sqrt(2))n-2"
    return (r - 1 + math.sqrt(r * r - 1) / 2) * n - (r + 1) // 2, "(r-1+sqrt(r^2-1)/2)n-(r+1)/2"


def _dgkrs_lower(r: int, n: int) -> tuple[int, str]:
    if r <= 3:
        return r * n + 1, "rn+1"
    if r == 4:
        return 5 * n + 1, "5n+1"
    return (2 * r - 4) * n + 1, "(2r-4)n+1"


def bip_lower(r: int, n: int) -> BoundRecord:
    """Best bipartite lower bound for S_{n,n} among the known constructions."""
    _need(r >= 2 and n >= 1, f"need r >= 2 and n >= 1, got r = {r}, n = {n}")
    small, small_sym = _small_lower(r, n)
    dgkrs, dgkrs_sym = _dgkrs_lower(r, n)
    options = [
        ("proper-blowup", r * n + 1, "rn+1"),
        ("DGKRS", dgkrs, dgkrs_sym),
        ("small-even" if r % 2 == 0 else "small-odd", small, small_sym),
    ]
    # ties go to the exact (integer) candidate listed first
    best = max(options, key=lambda o: (o[1], isinstance(o[1], int)))
    note = None
    if r % 2 == 1 and r > 3:
        note = f"the odd construction realizes N = floor(alpha n) - {(r + 1) // 2} vertices per side"
    return BoundRecord(
        "bipartite", "lower", r, n, n, best[1], best[2], best[0],
        candidates=tuple((s, v) for s, v, _ in options), note=note,
    )


def cor_ds_upper(r: int, n: int, m: int) -> BoundRecord:
    """Bipartite upper bound for S_{n,m} from the extremal number of double stars."""
    _need(r >= 2, f"need r >= 2, got r = {r}")
    _need(n >= m >= 1, f"need n >= m >= 1, got n = {n}, m = {m}")
    if n >= 2 * m:
        return BoundRecord("bipartite", "upper", r, n, m, r * n + 1, "rn+1", "DS",
                           (Condition("n >= 2m", True),))
    value: Number = 2 * m + 1 if r == 2 else (r + math.sqrt(r * (r - 2))) * m + 1
    return BoundRecord("bipartite", "upper", r, n, m, value, "(r+sqrt(r(r-2)))m+1", "DS",
                       (Condition("m <= n < 2m", True),))


def ruotolo_song(r: int, n: int, m: int) -> BoundRecord:
    """Multicolor R_r(S_{n,m}) for m small against n; the smallness is not checked."""
    _need(r >= 1, f"need r >= 1, got r = {r}")
    _need(n >= m >= 1, f"need n >= m >= 1, got n = {n}, m = {m}")
    caveat = "valid only for m = O(n/r^2); the condition is not effective and is not checked"
    conds = (Condition("m = O(n/r^2)", None),)
    if r % 2 == 1:
        return BoundRecord("complete", "exact", r, n, m, r * n + m + 2, "rn+m+2", "RS",
                           conds, caveat=caveat)
    lower = max(r * n + 1, (r - 1) * n + 2 * m + 2)
    return BoundRecord("complete", "range", r, n, m, lower, "max(rn+1, (r-1)n+2m+2) .. rn+m+2",
                       "RS", conds, upper_value=r * n + m + 2, caveat=caveat)


def unbalanced_lower(r: int, n: int, m: int) -> BoundRecord:
    """Lower bound for R_r(S_{n,m}) collected from the known examples."""
    _need(r >= 3, f"need r >= 3, got r = {r}")
    _need(n >= m >= 1, f"need n >= m >= 1, got n = {n}, m = {m}")
    plane = is_prime_power(r - 1)
    terms: list[tuple[str, int]] = []
    if plane:
        if r % 2 == 1:
            terms.append(("RS", r * n + m + 2))
        else:
            terms.append(("star", r * n + 1))
            terms.append(("RS", (r - 1) * n + 2 * m + 2))
        terms.append(("two-r-minus-two", 2 * (r - 1) * m + 1))
        terms.append(("affine-blowup", (r - 1) * (n + m) + 1))
    else:
        terms.append(("star", r * n + 1))
        terms.append(("two-r-minus-two", 2 * (r - 1) * m + 1))
    source, value = max(terms, key=lambda t: t[1])
    return BoundRecord(
        "complete", "lower", r, n, m, value, "max(" + ", ".join(s for s, _ in terms) + ")", source,
        (Condition(f"affine plane of order {r - 1} exists", plane),),
        candidates=tuple(terms),
        note=None if plane else "plane-dependent terms dropped",
    )


def sigma_product_max(k: int, alpha: float, steps: int = 200_000) -> tuple[float, float]:
    """Max of s(k - alpha s) over an even grid of s in [0, 1]: (max, argmax)."""
    best, arg = -math.inf, 0.0
    for j in range(steps + 1):
        s = j / steps
        v = s * (k - alpha * s)
        if v > best:
            best, arg = v, s
    return best, arg


# --- Table ------------------------------------------------------------------


def _dec_sqrt(x: int) -> Decimal:
    return Decimal(x).sqrt()


def _cut(x: Decimal, up: bool) -> str:
    return str(x.quantize(Decimal("0.0001"), rounding=ROUND_CEILING if up else ROUND_FLOOR))


def _decimal_threshold() -> Decimal:
    t = bip3_threshold()
    return Decimal(t.numerator) / Decimal(t.denominator)


@dataclass(frozen=True)
class TableRow:
    r: str
    setting: str
    lower_coeff: str
    lower_const: str
    lower_source: str
    upper_coeff: str
    upper_const: str
    upper_source: str
    note: str = ""

    FIELDS = ("r", "setting", "lower_coeff", "lower_const", "lower_source",
              "upper_coeff", "upper_const", "upper_source")

    def cells(self) -> list[str]:
        return [getattr(self, f) for f in self.FIELDS]

    def lower(self) -> str:
        return _linear(self.lower_coeff, self.lower_const)

    def upper(self) -> str:
        return _linear(self.upper_coeff, self.upper_const)


def _linear(coeff: str, const: str) -> str:
    if not coeff:
        return ""
    head = coeff + "n" if coeff.replace(".", "").isdigit() else f"({coeff})n"
    if const and const != "0":
        head += const if const.startswith("-") else "+" + const
    return head


def table_rows(setting: str) -> list[TableRow]:
    """Rows r = 2, 3, 4, 5, >=6; numeric entries are derived from the formulas above."""
    with localcontext() as ctx:
        ctx.prec = 40
        if setting == "complete":
            rows = [TableRow("2", setting, "3", "2", "GHK", "3", "2", "GHK")]
            for r in (3, 4, 5):
                # slope and intercept of each linear bound, read off at n = 1
                lo_coeff, up_coeff = 2 * (r - 1), 2 * r - 1
                lo, up = complete_lower(r, 1), main1_upper(r, 1)
                rows.append(TableRow(
                    str(r), setting, str(lo_coeff), str(lo.value - lo_coeff),
                    "GRSS" if r == 3 else "SYXL",
                    str(up_coeff), str(up.value - up_coeff), "complete-upper-theorem",
                    up.note or "",
                ))
            rows.append(TableRow(">=6", setting, "2r-2", "1", "SYXL", "2r-1", "2r-2",
                                 "complete-upper-theorem"))
            rows.append(TableRow(
                ">=3 (family S_{2n+2})", setting, "", "", "",
                "2(r-1+1/(r+1)-eps)", "2(r-1+1/(r+1)-eps)", "Sarkozy",
                "citation only: eps = O(1/r^9) is not effective",
            ))
            return rows
        if setting == "bipartite":
            s2, s6, s17 = _dec_sqrt(2), _dec_sqrt(6), _dec_sqrt(17)
            five_up = (10 + _dec_sqrt(24)) / 2
            return [
                TableRow("2", setting, "2", "1", "HJ", "2", "1", "bipartite-upper-theorem"),
                TableRow("3", setting, _cut(2 + s2, False), "-2", "small-odd",
                         _cut(_decimal_threshold(), True), "", "bipartite-upper-three-colors",
                         "upper bound is strict"),
                TableRow("4", setting, "5", "1", "DGKRS, small-even",
                         _cut((7 + s17) / 2, True), "1", "bipartite-upper-theorem"),
                TableRow("5", setting, _cut(4 + s6, False), "-3", "small-odd",
                         _cut(five_up, True), "1", "bipartite-upper-theorem"),
                TableRow(">=6", setting, "2r-4", "1", "DGKRS",
                         "(3r-5+sqrt(r^2-2r+9))/2", "1", "bipartite-upper-theorem",
                         "upper coefficient is 2r-3+2/r+O(1/r^2)"),
            ]
    raise BoundError(f"unknown setting {setting!r}; expected complete or bipartite")


def render_table(setting: str, fmt: str = "text") -> str:
    rows = table_rows(setting)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(TableRow.FIELDS)
        for row in rows:
            cells = row.cells()
            if row.note:
                cells[-1] = f"{cells[-1]} ({row.note})"
            writer.writerow(cells)
        return buf.getvalue()
    if fmt == "json":
        return json.dumps(
            [dict(zip(TableRow.FIELDS, row.cells()), note=row.note) for row in rows], indent=2
        ) + "\n"
    if fmt != "text":
        raise BoundError(f"unknown format {fmt!r}")
    header = ["r", "lower bound", "source", "upper bound", "source", "note"]
    body = [[row.r, row.lower(), row.lower_source, row.upper(), row.upper_source, row.note]
            for row in rows]
    widths = [max(len(line[i]) for line in [header] + body) for i in range(len(header))]
    lines = [f"R_r(S_n,n), {setting} host"]
    for line in [header] + body:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip())
    return "\n".join(lines) + "\n"
