"""Hashimoto-Murabayashi genus-2 families with quaternionic multiplication by B_6 and B_10.

Family 6:  Y^2 = X (X^4 + P X^3 + Q X^2 + R X + 1)            over 4 s^2 t^2 - s^2 + t^2 + 2 = 0
Family 10: Y^2 = X (P^2 X^4 + P^2 (1+R) X^3 + P Q X^2 + P (1-R) X + 1)  over s^2 - t (t-2)(2t+1) = 0
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

from .arith import QuadExtVal, rat_sqrt

Value = Union[int, Fraction, QuadExtVal, str]
FAMILIES = (6, 10)


def _val(x: Value) -> QuadExtVal:
    if isinstance(x, str):
        return QuadExtVal.parse(x)
    return QuadExtVal.coerce(x)


def _check_family(family: int) -> None:
    if family not in FAMILIES:
        raise ValueError(f"family must be 6 or 10, got {family}")


def base_polynomial(family: int, t: Value, s: Value) -> QuadExtVal:
    _check_family(family)
    t, s = _val(t), _val(s)
    if family == 6:
        return 4 * s * s * t * t - s * s + t * t + 2
    return s * s - t * (t - 2) * (2 * t + 1)


def on_base_curve(family: int, t: Value, s: Value) -> bool:
    return base_polynomial(family, t, s).is_zero()


@dataclass(frozen=True)
class HMCoeffs:
    P: QuadExtVal
    Q: QuadExtVal
    R: QuadExtVal


@dataclass(frozen=True)
class Degenerate:
    reason: str


@dataclass(frozen=True)
class HMCurve:
    family: int
    t: QuadExtVal
    s: QuadExtVal
    f_coeffs: tuple[QuadExtVal, ...] | None  # c5, ..., c0
    degenerate: str | None

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "t": str(self.t),
            "s": str(self.s),
            "f": None if self.f_coeffs is None else [str(c) for c in self.f_coeffs],
            "degenerate": self.degenerate,
        }


def _require_on_curve(family: int, t: QuadExtVal, s: QuadExtVal) -> None:
    if not on_base_curve(family, t, s):
        raise ValueError(f"(t, s) = ({t}, {s}) is not on the base curve of family {family}")


def coeffs(family: int, t: Value, s: Value) -> HMCoeffs | Degenerate:
    t, s = _val(t), _val(s)
    _require_on_curve(family, t, s)
    if family == 6:
        den = 3 * (1 - t * t) * (1 - 4 * t * t)
        if den.is_zero():
            return Degenerate("3(1 - t^2)(1 - 4t^2) = 0")
        P = 2 * s + 2 * t
        Q = (1 + 2 * t * t) * (11 - 28 * t * t + 8 * t**4) / den
        R = 2 * s - 2 * t
        return HMCoeffs(P, Q, R)
    if (t - 1).is_zero():
        return Degenerate("(t - 1)^2 = 0")
    P = 4 * (2 * t + 1) * (t * t - t - 1) / (t - 1) ** 2
    if P.is_zero():
        return Degenerate("P = 0, leading coefficient vanishes")
    qden = t * (t - 1) ** 2 * (t + 1) ** 2
    if qden.is_zero():
        return Degenerate("t (t - 1)^2 (t + 1)^2 = 0")
    rden = t * (t + 1) * (2 * t + 1)
    if rden.is_zero():
        return Degenerate("t (t + 1)(2t + 1) = 0")
    Q = (t * t + 1) * (t**4 + 8 * t**3 - 10 * t * t - 8 * t + 1) / qden
    R = (t - 1) * s / rden
    return HMCoeffs(P, Q, R)


def model(family: int, c: HMCoeffs) -> tuple[QuadExtVal, ...]:
    """Coefficients ``c5..c0`` of ``f`` in ``Y^2 = f(X)``."""
    P, Q, R = c.P, c.Q, c.R
    zero, one = QuadExtVal(0), QuadExtVal(1)
    if family == 6:
        return (one, P, Q, R, one, zero)
    return (P * P, P * P * (1 + R), P * Q, P * (1 - R), one, zero)


def _det(m: list[list[QuadExtVal]]) -> QuadExtVal:
    m = [row[:] for row in m]
    n = len(m)
    det = QuadExtVal(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if piv is None:
            return QuadExtVal(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col]
        inv = m[col][col].inverse()
        for r in range(col + 1, n):
            if m[r][col].is_zero():
                continue
            f = m[r][col] * inv
            for k in range(col, n):
                m[r][k] = m[r][k] - f * m[col][k]
    return det


def resultant(f: tuple[QuadExtVal, ...], g: tuple[QuadExtVal, ...]) -> QuadExtVal:
    """Sylvester resultant; coefficient tuples are leading-first."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    zero = QuadExtVal(0)
    rows = []
    for k in range(n):
        rows.append([zero] * k + list(f) + [zero] * (size - m - 1 - k))
    for k in range(m):
        rows.append([zero] * k + list(g) + [zero] * (size - n - 1 - k))
    return _det(rows)


def discriminant(f: tuple[QuadExtVal, ...]) -> QuadExtVal:
    """Discriminant of a polynomial given leading-first with nonzero leading coefficient."""
    n = len(f) - 1
    if f[0].is_zero():
        raise ValueError("leading coefficient is zero")
    df = tuple(c * (n - k) for k, c in enumerate(f[:-1]))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return resultant(f, df) * sign / f[0]


def curve(family: int, t: Value, s: Value) -> HMCurve:
    t, s = _val(t), _val(s)
    c = coeffs(family, t, s)
    if isinstance(c, Degenerate):
        return HMCurve(family, t, s, None, c.reason)
    f = model(family, c)
    if f[0].is_zero():
        return HMCurve(family, t, s, f, "leading coefficient vanishes")
    if discriminant(f).is_zero():
        return HMCurve(family, t, s, f, "discriminant of f vanishes")
    return HMCurve(family, t, s, f, None)


def _height_ok(x: Fraction, H: int) -> bool:
    return abs(x.numerator) <= H and x.denominator <= H


def rational_points(family: int, height_bound: int) -> list[tuple[Fraction, Fraction, bool]]:
    """Rational points of the base curve with numerators and denominators bounded by ``height_bound``."""
    _check_family(family)
    if height_bound < 1:
        raise ValueError("height_bound must be >= 1")
    H = height_bound
    ts = sorted({Fraction(p, q) for q in range(1, H + 1) for p in range(-H, H + 1) if gcd(p, q) == 1})
    out = []
    for t in ts:
        if family == 6:
            den = 1 - 4 * t * t
            if den == 0:
                continue
            s2 = (t * t + 2) / den
        else:
            s2 = t * (t - 2) * (2 * t + 1)
        root = rat_sqrt(s2)
        if root is None or not _height_ok(root, H):
            continue
        for s in sorted({-root, root}):
            out.append((t, s, curve(family, t, s).degenerate is not None))
    return out
