"""Exact rational arithmetic and small dense linear algebra.

Every number on the exact paths of this package is a `fractions.Fraction`:
arbitrary precision, always in lowest terms, never rounded. The linear
algebra is deliberately small and dense. Systems come from intersecting a
handful of halfspace boundaries, so plain Gaussian elimination with exact
zero tests beats anything fancier.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "RatMatrix",
    "Rational",
    "decimal_str",
    "determinant",
    "parse_rational",
    "rank",
    "rat",
    "rational_from_json",
    "rational_to_json",
    "solve_square_system",
]

Rational = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def rat(num: int, den: int = 1) -> Fraction:
    """Rational from integers, reduced, sign carried on the numerator.

    A zero denominator raises ZeroDivisionError.
    """
    return Fraction(num, den)


def parse_rational(text: str) -> Fraction:
    """Parse "p" or "p/q" with base-10 integer parts.

    Decimal and exponent notation are rejected; exactness would be lost
    silently otherwise.
    """
    token = text.strip()
    if not _RATIONAL_RE.match(token):
        raise ValueError(f"not a rational literal: {text!r}")
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


def rational_to_json(value: Fraction) -> dict[str, str]:
    """JSON form with digit strings, safe for arbitrary precision."""
    value = Fraction(value)
    return {"num": str(value.numerator), "den": str(value.denominator)}


def rational_from_json(obj: dict[str, str]) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def decimal_str(value: Fraction | int, places: int = 6) -> str:
    """Decimal rendering with exactly `places` digits, half-even rounding.

    The rounding happens on the exact rational, so the printed digits are
    the true rounded digits and not a float artifact.
    """
    if places < 0:
        raise ValueError("places must be nonnegative")
    scaled = round(Fraction(value) * 10**places)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**places)
    if places == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{places}d}"


@dataclass(frozen=True)
class RatMatrix:
    """Dense rational matrix, row-major, rectangular."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if self.entries:
            width = len(self.entries[0])
            if any(len(row) != width for row in self.entries):
                raise ValueError("ragged rows")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "RatMatrix":
        return cls(tuple(tuple(Fraction(x) for x in row) for row in rows))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def mul_vector(self, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(x) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(
            sum((a * v for a, v in zip(row, x)), Fraction(0))
            for row in self.entries
        )


def solve_square_system(
    a: RatMatrix, b: Sequence
) -> tuple[Fraction, ...] | None:
    """Exact solution of `a x = b`, or None when the matrix is singular.

    The pivot is the first row with a nonzero entry in the pivot column;
    zero tests are exact, so no magnitude-based pivot strategy is needed.
    """
    d = a.rows
    if a.cols != d:
        raise ValueError("matrix is not square")
    if len(b) != d:
        raise ValueError("right-hand side length mismatch")
    if d == 0:
        return ()
    m = [list(row) + [Fraction(b[i])] for i, row in enumerate(a.entries)]
    for col in range(d):
        piv = next((r for r in range(col, d) if m[r][col] != 0), None)
        if piv is None:
            return None
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
        prow = m[col]
        for r in range(col + 1, d):
            f = m[r][col]
            if f:
                ratio = f / prow[col]
                m[r] = [x - y * ratio for x, y in zip(m[r], prow)]
    x = [Fraction(0)] * d
    for col in reversed(range(d)):
        s = m[col][d]
        for t in range(col + 1, d):
            if m[col][t]:
                s -= m[col][t] * x[t]
        x[col] = s / m[col][col]
    return tuple(x)


def determinant(a: RatMatrix) -> Fraction:
    """Exact determinant via elimination, tracking row-swap signs."""
    d = a.rows
    if a.cols != d:
        raise ValueError("matrix is not square")
    if d == 0:
        return Fraction(1)
    m = [list(row) for row in a.entries]
    det = Fraction(1)
    for col in range(d):
        piv = next((r for r in range(col, d) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        prow = m[col]
        det *= prow[col]
        for r in range(col + 1, d):
            f = m[r][col]
            if f:
                ratio = f / prow[col]
                m[r] = [x - y * ratio for x, y in zip(m[r], prow)]
    return det


def rank(a: RatMatrix) -> int:
    """Row rank over the rationals."""
    work = [list(row) for row in a.entries]
    nrows, ncols = len(work), a.cols
    rnk = 0
    for col in range(ncols):
        piv = next((r for r in range(rnk, nrows) if work[r][col] != 0), None)
        if piv is None:
            continue
        work[rnk], work[piv] = work[piv], work[rnk]
        prow = work[rnk]
        for r in range(rnk + 1, nrows):
            f = work[r][col]
            if f:
                ratio = f / prow[col]
                work[r] = [x - y * ratio for x, y in zip(work[r], prow)]
        rnk += 1
        if rnk == nrows:
            break
    return rnk
