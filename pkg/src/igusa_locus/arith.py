"""Exact integer, rational and single-radicand quadratic arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Union

from sympy import factorint

Rat = Fraction
RatLike = Union[int, Fraction]


@lru_cache(maxsize=None)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(factorint(n).items()))


def factor(n: int) -> dict[int, int]:
    """Prime factorization of ``|n|`` as ``{p: e}`` (empty for 1)."""
    if n == 0:
        raise ValueError("cannot factor 0")
    return dict(_factor(abs(n)))


def prime_factors(n: int) -> list[int]:
    return sorted(factor(n))


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in factor(n).values())


def squarefree_factor(n: int) -> tuple[int, int]:
    """Write ``n = s * f**2`` with ``s`` squarefree, ``f > 0`` and ``sign(s) == sign(n)``."""
    if n == 0:
        raise ValueError("squarefree_factor(0) is undefined")
    s, f = 1, 1
    for p, e in factor(n).items():
        f *= p ** (e // 2)
        if e % 2:
            s *= p
    return (s if n > 0 else -s), f


def squarefree_part(x: RatLike) -> int:
    """Squarefree integer in the square class of the nonzero rational ``x``."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("zero has no square class")
    return squarefree_factor(x.numerator * x.denominator)[0]


def divisors(n: int) -> list[int]:
    if n <= 0:
        raise ValueError(f"divisors expects n >= 1, got {n}")
    divs = [1]
    for p, e in factor(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol for odd positive ``n``."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd n > 0, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = (n & -n).bit_length() - 1
    n >>= v
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * jacobi(a, n)


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def rat_sqrt(x: RatLike) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    x = Fraction(x)
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    if is_square(p) and is_square(q):
        return Fraction(isqrt(p), isqrt(q))
    return None


def format_rat(x: RatLike) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rat(text: str) -> Fraction:
    return Fraction(text.strip())


@dataclass(frozen=True)
class QuadExtVal:
    """Exact value ``base + coef * sqrt(radicand)``.

    ``radicand`` is a squarefree integer other than 0 and 1, or ``None`` when
    the value is rational (``coef == 0``). Arithmetic between values with two
    different radicands raises ``ValueError``.
    """

    base: Fraction
    coef: Fraction = Fraction(0)
    radicand: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", Fraction(self.base))
        object.__setattr__(self, "coef", Fraction(self.coef))
        if self.coef == 0:
            object.__setattr__(self, "radicand", None)
        elif self.radicand is None:
            raise ValueError("nonzero coef needs a radicand")
        elif self.radicand in (0, 1) or not is_squarefree(self.radicand):
            raise ValueError(f"radicand must be squarefree and not 0 or 1, got {self.radicand}")

    @classmethod
    def coerce(cls, x: "QuadExtVal | RatLike") -> "QuadExtVal":
        return x if isinstance(x, QuadExtVal) else cls(Fraction(x))

    @classmethod
    def sqrt(cls, x: RatLike) -> "QuadExtVal":
        """Exact square root of a rational, simplified to ``c * sqrt(d)``."""
        x = Fraction(x)
        if x == 0:
            return cls(Fraction(0))
        d, f = squarefree_factor(x.numerator * x.denominator)
        # sqrt(p/q) = sqrt(p*q)/q = f*sqrt(d)/q
        c = Fraction(f, x.denominator)
        if d == 1:
            return cls(c)
        return cls(Fraction(0), c, d)

    @property
    def is_rational(self) -> bool:
        return self.radicand is None

    def is_zero(self) -> bool:
        return self.base == 0 and self.coef == 0

    def to_rat(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.base

    def _common(self, other: "QuadExtVal") -> int | None:
        if self.radicand is None:
            return other.radicand
        if other.radicand is None or other.radicand == self.radicand:
            return self.radicand
        raise ValueError(f"mixed radicands {self.radicand} and {other.radicand}")

    def __add__(self, other):
        other = QuadExtVal.coerce(other)
        return QuadExtVal(self.base + other.base, self.coef + other.coef, self._common(other))

    __radd__ = __add__

    def __neg__(self):
        return QuadExtVal(-self.base, -self.coef, self.radicand)

    def __sub__(self, other):
        return self + (-QuadExtVal.coerce(other))

    def __rsub__(self, other):
        return QuadExtVal.coerce(other) - self

    def __mul__(self, other):
        other = QuadExtVal.coerce(other)
        d = self._common(other)
        dd = d if d is not None else 0
        return QuadExtVal(
            self.base * other.base + self.coef * other.coef * dd,
            self.base * other.coef + self.coef * other.base,
            d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExtVal":
        return QuadExtVal(self.base, -self.coef, self.radicand)

    def norm(self) -> Fraction:
        d = self.radicand or 0
        return self.base**2 - d * self.coef**2

    def inverse(self) -> "QuadExtVal":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in QuadExtVal")
        c = self.conjugate()
        return QuadExtVal(c.base / n, c.coef / n, c.radicand)

    def __truediv__(self, other):
        return self * QuadExtVal.coerce(other).inverse()

    def __rtruediv__(self, other):
        return QuadExtVal.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadExtVal(Fraction(1))
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadExtVal(Fraction(other))
        if not isinstance(other, QuadExtVal):
            return NotImplemented
        return (self.base, self.coef, self.radicand) == (other.base, other.coef, other.radicand)

    def __hash__(self):
        return hash((self.base, self.coef, self.radicand))

    def __str__(self) -> str:
        if self.coef == 0:
            return format_rat(self.base)
        c = self.coef
        mag = abs(c)
        root = f"sqrt({self.radicand})"
        term = root if mag == 1 else f"{format_rat(mag)}*{root}"
        if self.base == 0:
            return term if c > 0 else f"-{term}"
        return f"{format_rat(self.base)} {'+' if c > 0 else '-'} {term}"

    def __repr__(self) -> str:
        return f"QuadExtVal({self})"

    @classmethod
    def parse(cls, text: str) -> "QuadExtVal":
        """Parse strings produced by ``str``: ``"3/2"``, ``"sqrt(2)"``, ``"1/2 - 3*sqrt(5)"``."""
        s = text.replace(" ", "")
        if "sqrt" not in s:
            return cls(Fraction(s))
        idx = s.index("sqrt(")
        close = s.index(")", idx)
        d = int(s[idx + 5 : close])
        head = s[:idx]
        if close != len(s) - 1:
            raise ValueError(f"cannot parse {text!r}")
        # head is "<base>(+|-)<coef>*" or "<base>(+|-)" or "<coef>*" or "-" or ""
        if head.endswith("*"):
            head = head[:-1]
            split = max(head.rfind("+"), head.rfind("-"))
            if split > 0:
                base, coef = head[:split], head[split:]
            else:
                base, coef = "0", head
        else:
            split = max(head.rfind("+"), head.rfind("-"))
            if split > 0:
                base, coef = head[:split], head[split:] + "1"
            else:
                base, coef = "0", (head or "+") + "1"
        return cls(Fraction(0), Fraction(0)) + cls(Fraction(base)) + cls.sqrt(d) * Fraction(coef)
