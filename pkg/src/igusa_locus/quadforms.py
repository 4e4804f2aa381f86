"""Reduced primitive binary quadratic forms and class numbers of imaginary quadratic orders."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from .arith import is_squarefree


@dataclass(frozen=True, order=True)
class QuadForm:
    """The form ``a x^2 + b x y + c y^2``."""

    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (0 < a and abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def is_ambiguous(self) -> bool:
        # ambiguous reduced forms: b = 0, a = b, or a = c
        return self.b == 0 or self.a == self.b or self.a == self.c

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"


def check_disc(delta: int) -> int:
    if delta >= 0 or delta % 4 not in (0, 1):
        raise ValueError(f"{delta} is not a negative discriminant (need delta < 0, delta = 0,1 mod 4)")
    return delta


@lru_cache(maxsize=None)
def _reduced_forms(delta: int) -> tuple[QuadForm, ...]:
    forms = []
    n = -delta
    amax = isqrt(n // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b - delta) % 2:
                continue
            num = b * b - delta
            if num % (4 * a):
                continue
            c = num // (4 * a)
            f = QuadForm(a, b, c)
            if f.is_reduced() and f.is_primitive():
                forms.append(f)
    return tuple(sorted(forms))


def reduced_forms(delta: int) -> list[QuadForm]:
    """Primitive reduced forms of discriminant ``delta``, sorted by ``(a, b, c)``."""
    return list(_reduced_forms(check_disc(delta)))


def class_number(delta: int) -> int:
    return len(_reduced_forms(check_disc(delta)))


def ambiguous_count(delta: int) -> int:
    """Number of ambiguous reduced classes, i.e. the number of genera."""
    return sum(f.is_ambiguous() for f in _reduced_forms(check_disc(delta)))


def _check_D(D: int) -> None:
    if D <= 0 or not is_squarefree(D):
        raise ValueError(f"D must be a positive squarefree integer, got {D}")


def cm_orders_above(D: int) -> list[int]:
    """Discriminants of the orders between Z[sqrt(-D)] and the maximal order of Q(sqrt(-D))."""
    _check_D(D)
    if (-D) % 4 == 1:
        return [-4 * D, -D]
    return [-4 * D]


def h_tilde(D: int) -> int:
    """``h(-4D) + h(-D)`` if ``-D = 1 mod 4``, else ``h(-4D)``."""
    _check_D(D)
    d = -D
    h = class_number(4 * d)
    if d % 4 == 1:
        h += class_number(d)
    return h
