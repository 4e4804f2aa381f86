"""Quaternion algebras over Q, their ramification, and maximal orders.

An algebra ``(a, b / Q)`` has basis ``1, i, j, ij`` with ``i^2 = a``,
``j^2 = b`` and ``ij = -ji``. Orders are Z-lattices given by four basis
quaternions; coordinates of an element "in O" always refer to that basis.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, isqrt, lcm
from typing import Iterable, Sequence, Union

import numpy as np
from sympy import nextprime

from .arith import (
    RatLike,
    divisors,
    factor,
    is_square,
    kronecker,
    prime_factors,
    squarefree_part,
    valuation,
)

INF = "inf"
Place = Union[int, str]


def place_key(v: Place) -> tuple[int, int]:
    return (1, 0) if v == INF else (0, int(v))


def sorted_places(places: Iterable[Place]) -> list[Place]:
    return sorted(places, key=place_key)


# --------------------------------------------------------------------------
# Hilbert symbols


def _int_class(x: RatLike) -> int:
    x = Fraction(x)
    if x == 0:
        raise ValueError("Hilbert symbol of zero is undefined")
    # x and num*den differ by the square den^2
    return x.numerator * x.denominator


def hilbert_symbol(a: RatLike, b: RatLike, v: Place) -> int:
    """Hilbert symbol ``(a, b)_v`` over Q_v, ``v`` a prime or ``INF``."""
    a, b = _int_class(a), _int_class(b)
    if v == INF:
        return -1 if (a < 0 and b < 0) else 1
    p = int(v)
    alpha, beta = valuation(a, p), valuation(b, p)
    u, w = a // p**alpha, b // p**beta
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omega = lambda x: ((x * x - 1) // 8) % 2
        e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u)
        return -1 if e % 2 else 1
    e = alpha * beta * ((p - 1) // 2)
    s = -1 if e % 2 else 1
    if beta % 2:
        s *= kronecker(u, p)
    if alpha % 2:
        s *= kronecker(w, p)
    return s


def probe_places(a: RatLike, b: RatLike) -> list[Place]:
    """Places where ``(a, b)`` can ramify: 2, primes dividing a or b, infinity."""
    a, b = _int_class(a), _int_class(b)
    primes = {2} | set(prime_factors(a)) | set(prime_factors(b))
    return sorted(primes) + [INF]


def ramified_set(a: RatLike, b: RatLike) -> frozenset:
    return frozenset(v for v in probe_places(a, b) if hilbert_symbol(a, b, v) == -1)


def disc_of(a: RatLike, b: RatLike) -> int:
    d = 1
    for v in ramified_set(a, b):
        if v != INF:
            d *= v
    return d


def is_totally_indefinite_division(a: RatLike, b: RatLike) -> bool:
    ram = ramified_set(a, b)
    return bool(ram) and INF not in ram


@lru_cache(maxsize=None)
def algebra_for_disc(D: int) -> tuple[int, int]:
    """Coprime squarefree ``(a, b)`` with ``(a, b / Q)`` indefinite of discriminant ``D``.

    Prefers ``a, b`` built from the primes of ``2D``; otherwise ``b`` carries
    one auxiliary split prime. Either way every odd prime dividing ``ab``
    outside ``D`` is a single split prime, which keeps saturation cheap.
    """
    target = frozenset(prime_factors(D)) if D > 1 else frozenset()
    if len(target) % 2:
        raise ValueError(f"no indefinite quaternion algebra has discriminant {D}")
    units = sorted((s * d for d in divisors(2 * D) for s in (1, -1)), key=lambda x: (abs(x), x < 0))
    for a in units:
        for b in units:
            if abs(a) <= abs(b) and gcd(a, b) == 1 and ramified_set(a, b) == target:
                return a, b
    q = 2
    while True:
        q = int(nextprime(q))
        if (2 * D) % q == 0:
            continue
        for a in units:
            for b in (q * u for u in units):
                if gcd(a, b) == 1 and ramified_set(a, b) == target:
                    return a, b


# --------------------------------------------------------------------------
# Algebras and elements


@dataclass(frozen=True)
class QAlgebra:
    a: Fraction
    b: Fraction
    ramified: frozenset = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        a, b = Fraction(self.a), Fraction(self.b)
        if a == 0 or b == 0:
            raise ValueError("structure constants must be nonzero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "ramified", ramified_set(a, b))

    @property
    def disc(self) -> int:
        d = 1
        for v in self.ramified:
            if v != INF:
                d *= v
        return d

    def is_totally_indefinite_division(self) -> bool:
        return bool(self.ramified) and INF not in self.ramified

    def isomorphic(self, other: "QAlgebra") -> bool:
        return self.ramified == other.ramified

    def __call__(self, x0: RatLike = 0, x1: RatLike = 0, x2: RatLike = 0, x3: RatLike = 0) -> "Quat":
        return Quat(self, (Fraction(x0), Fraction(x1), Fraction(x2), Fraction(x3)))

    def one(self) -> "Quat":
        return self(1)

    def gens(self) -> tuple["Quat", "Quat", "Quat", "Quat"]:
        return self(1), self(0, 1), self(0, 0, 1), self(0, 0, 0, 1)

    def __str__(self) -> str:
        return f"({self.a}, {self.b} / Q)"


@dataclass(frozen=True)
class Quat:
    algebra: QAlgebra
    coords: tuple[Fraction, Fraction, Fraction, Fraction]

    def _wrap(self, c) -> "Quat":
        return Quat(self.algebra, tuple(c))

    def _coerce(self, other) -> "Quat":
        if isinstance(other, Quat):
            if other.algebra != self.algebra:
                raise ValueError("quaternions from different algebras")
            return other
        return self.algebra(other)

    def __add__(self, other):
        o = self._coerce(other)
        return self._wrap(x + y for x, y in zip(self.coords, o.coords))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-x for x in self.coords)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._wrap(x * other for x in self.coords)
        o = self._coerce(other)
        a, b = self.algebra.a, self.algebra.b
        x0, x1, x2, x3 = self.coords
        y0, y1, y2, y3 = o.coords
        return self._wrap((
            x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
            x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
            x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        ))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._wrap(x * other for x in self.coords)
        return self._coerce(other) * self

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._wrap(x / other for x in self.coords)
        return self * self._coerce(other).inverse()

    def conj(self) -> "Quat":
        x0, x1, x2, x3 = self.coords
        return self._wrap((x0, -x1, -x2, -x3))

    def trd(self) -> Fraction:
        return 2 * self.coords[0]

    def nrd(self) -> Fraction:
        a, b = self.algebra.a, self.algebra.b
        x0, x1, x2, x3 = self.coords
        return x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3

    def inverse(self) -> "Quat":
        n = self.nrd()
        if n == 0:
            raise ZeroDivisionError(f"{self} is not invertible")
        return self.conj() / n

    def is_pure(self) -> bool:
        return self.coords[0] == 0

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_integral(self) -> bool:
        return self.trd().denominator == 1 and self.nrd().denominator == 1

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra(other)
        if not isinstance(other, Quat):
            return NotImplemented
        return self.algebra == other.algebra and self.coords == other.coords

    def __hash__(self):
        return hash((self.algebra, self.coords))

    def __str__(self) -> str:
        parts = []
        for c, name in zip(self.coords, ("", "i", "j", "ij")):
            if c == 0:
                continue
            mag = abs(c)
            coef = "" if (mag == 1 and name) else str(mag)
            term = f"{coef}*{name}" if coef and name else (coef or name)
            parts.append(("-" if c < 0 else "+", term))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text

    __repr__ = __str__


# --------------------------------------------------------------------------
# Exact linear algebra on 4x4 rational matrices


def _det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f:
                for k in range(col, n):
                    m[r][k] -= f * m[col][k]
    return det


def _inverse(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def hnf_rows(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Lower-triangular Hermite basis of the integer row lattice (full rank 4 assumed).

    Row ``k`` has zeros right of column ``k``, a positive pivot in column ``k``,
    and entries ``0 <= row[j] < pivot_j`` for ``j < k``.
    """
    pool = [list(r) for r in rows if any(r)]
    ncols = len(pool[0]) if pool else 4
    pivots: dict[int, list[int]] = {}
    for col in range(ncols - 1, -1, -1):
        while True:
            nz = [r for r in pool if r[col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            for r in nz[1:]:
                q = r[col] // p[col]
                for k in range(ncols):
                    r[k] -= q * p[k]
            pool = [r for r in pool if any(r)]
        nz = [r for r in pool if r[col] != 0]
        if not nz:
            raise ValueError("lattice is not of full rank")
        p = nz[0]
        pool.remove(p)
        if p[col] < 0:
            p = [-x for x in p]
        pivots[col] = p
    if any(any(r) for r in pool):
        raise AssertionError("HNF elimination left a nonzero row")
    basis = [pivots[c] for c in range(ncols)]
    for k in range(ncols):
        for j in range(k - 1, -1, -1):
            q = basis[k][j] // basis[j][j]
            if q:
                basis[k] = [x - q * y for x, y in zip(basis[k], basis[j])]
    return basis


def canonical_basis(algebra: QAlgebra, gens: Iterable[Quat]) -> tuple[Quat, ...]:
    """Hermite basis of the Z-lattice spanned by ``gens`` (full rank)."""
    gens = list(gens)
    den = 1
    for g in gens:
        for c in g.coords:
            den = lcm(den, c.denominator)
    rows = [[int(c * den) for c in g.coords] for g in gens]
    return tuple(algebra(*(Fraction(x, den) for x in row)) for row in hnf_rows(rows))


# --------------------------------------------------------------------------
# Orders


def lattice_disc_squared(basis: Sequence[Quat]) -> Fraction:
    """``|det(trd(e_i e_j))|`` for a lattice basis."""
    return abs(_det([[(x * y).trd() for y in basis] for x in basis]))


def lattice_disc(basis: Sequence[Quat]) -> int:
    d2 = lattice_disc_squared(basis)
    if d2.denominator != 1 or not is_square(d2.numerator):
        raise ValueError(f"|det trd(e_i e_j)| = {d2} is not a perfect square; not an order basis")
    return isqrt(d2.numerator)


class QOrder:
    """A Z-order of full rank in a quaternion algebra over Q."""

    def __init__(self, algebra: QAlgebra, basis: Sequence[Quat], check: bool = True):
        if len(basis) != 4:
            raise ValueError("an order basis has four elements")
        self.algebra = algebra
        self.basis = tuple(basis)
        self.matrix = [list(e.coords) for e in self.basis]
        self._inv = _inverse(self.matrix)
        if check:
            self._validate()
        self.disc = lattice_disc(self.basis)

    def _validate(self) -> None:
        for e in self.basis:
            if not e.is_integral():
                raise ValueError(f"basis element {e} is not integral")
        if not self.contains(self.algebra.one()):
            raise ValueError("1 is not in the span of the basis")
        for x in self.basis:
            for y in self.basis:
                if not self.contains(x * y):
                    raise ValueError(f"span not closed under multiplication: {x} * {y}")

    def coordinates(self, x: Quat) -> tuple[Fraction, ...]:
        """Coordinates of ``x`` with respect to the order basis."""
        inv = self._inv
        return tuple(sum(x.coords[k] * inv[k][j] for k in range(4)) for j in range(4))

    def element(self, coeffs: Sequence[RatLike]) -> Quat:
        out = self.algebra(0)
        for c, e in zip(coeffs, self.basis):
            if c:
                out = out + e * Fraction(c)
        return out

    def contains(self, x: Quat) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(x))

    @cached_property
    def trd_vector(self) -> list[int]:
        return [int(e.trd()) for e in self.basis]

    @cached_property
    def norm_gram(self) -> list[list[int]]:
        """``trd(e_i conj(e_j))``; ``nrd(sum c_i e_i) = c^T G c / 2``."""
        return [[int((x * y.conj()).trd()) for y in self.basis] for x in self.basis]

    def conjugate_by(self, g: Quat) -> "QOrder":
        """The order ``g O g^-1``."""
        gi = g.inverse()
        return QOrder(self.algebra, canonical_basis(self.algebra, (g * e * gi for e in self.basis)))

    def __eq__(self, other):
        if not isinstance(other, QOrder):
            return NotImplemented
        return self.algebra == other.algebra and (
            canonical_basis(self.algebra, self.basis) == canonical_basis(other.algebra, other.basis)
        )

    def __hash__(self):
        return hash((self.algebra, canonical_basis(self.algebra, self.basis)))

    def __repr__(self) -> str:
        return f"QOrder({self.algebra}, [{', '.join(str(e) for e in self.basis)}], disc={self.disc})"


def order_disc(O: QOrder) -> int:
    return O.disc


def is_maximal(O: QOrder) -> bool:
    return O.disc == O.algebra.disc


def standard_order(algebra: QAlgebra) -> QOrder:
    """``Z<1, i, j, ij>``; requires integral structure constants."""
    if algebra.a.denominator != 1 or algebra.b.denominator != 1:
        raise ValueError("standard order needs integral a, b")
    return QOrder(algebra, algebra.gens())


def _ring_closure(algebra: QAlgebra, basis: Sequence[Quat], floor_disc: int) -> tuple[Quat, ...] | None:
    """Smallest ring containing the lattice, or None if it cannot be an order."""
    basis = canonical_basis(algebra, basis)
    while True:
        gram = [[(x * y).trd() for y in basis] for x in basis]
        if any(g.denominator != 1 for row in gram for g in row):
            return None
        d2 = abs(_det(gram))
        if d2 < floor_disc**2:
            return None
        new = canonical_basis(algebra, list(basis) + [x * y for x in basis for y in basis])
        if new == basis:
            return basis
        basis = new


def _saturation_candidates(algebra: QAlgebra, basis: Sequence[Quat], p: int) -> Iterable[Quat]:
    """Integral elements of ``(1/p) O`` outside ``O``; explicit ones first for odd ``p``."""
    one, i, j, _ = algebra.gens()
    if p != 2:
        # if p | b and s^2 = a mod p then (s + i) j / p is integral; symmetric in i, j
        for s in range(p):
            yield (one * s + i) * j / p
            yield (one * s + j) * i / p
    for c in itertools.product(range(p), repeat=4):
        if any(c):
            yield sum((e * c_k for e, c_k in zip(basis, c)), algebra(0)) / p


def saturate_to_maximal(a: RatLike, b: RatLike) -> QOrder:
    """Enlarge ``Z<1, i, j, ij>`` step by step to a maximal order of ``(a, b / Q)``."""
    algebra = QAlgebra(a, b)
    if not algebra.is_totally_indefinite_division():
        raise ValueError(f"{algebra} is not a totally indefinite division algebra")
    D = algebra.disc
    basis = standard_order(algebra).basis
    disc = lattice_disc(basis)
    # each successful step divides the discriminant by at least one prime
    for _ in range(sum(factor(disc // D).values())):
        if disc == D:
            break
        enlarged = None
        for p in sorted(prime_factors(disc // D), reverse=True):
            current = QOrder(algebra, basis, check=False)
            for x in _saturation_candidates(algebra, basis, p):
                if not x.is_integral() or current.contains(x):
                    continue
                enlarged = _ring_closure(algebra, list(basis) + [x], D)
                if enlarged is not None:
                    break
            if enlarged is not None:
                break
        if enlarged is None:
            raise RuntimeError(f"saturation stalled at disc {disc} for {algebra}")
        basis = enlarged
        disc = lattice_disc(basis)
    O = QOrder(algebra, basis)
    if not is_maximal(O):
        raise RuntimeError(f"saturation of {algebra} ended at disc {O.disc}, expected {D}")
    return O


# --------------------------------------------------------------------------
# Normalizer, polarization quaternions and twists


def normalizes(O: QOrder, x: Quat) -> bool:
    if x.is_zero():
        raise ValueError("0 does not normalize anything")
    xi = x.inverse()
    return all(O.contains(x * e * xi) for e in O.basis)


def coord_key(c: Sequence[int]) -> tuple:
    """Search order: L1 norm, then coordinatewise (|c|, negative-after-positive)."""
    return (sum(abs(x) for x in c), tuple((abs(x), x < 0) for x in c))


def _object_or_int(arr_max: int) -> type:
    return np.int64 if arr_max < 2**62 else object


def _complete(O: QOrder, free: np.ndarray, k: int, idx: list[int]) -> tuple[np.ndarray, np.ndarray]:
    """Solve ``trd == 0`` for coordinate ``k`` given the three free coordinates."""
    t = O.trd_vector
    s = sum(free[:, m] * t[i] for m, i in enumerate(idx))
    ok = (s % t[k]) == 0
    return free[ok], -s[ok] // t[k]


def _assemble(free: np.ndarray, ck: np.ndarray, k: int, idx: list[int]) -> np.ndarray:
    coords = np.empty((len(ck), 4), dtype=np.int64)
    coords[:, k] = ck
    for m, i in enumerate(idx):
        coords[:, i] = free[:, m]
    return coords


def _pure_box(O: QOrder, n: int, shell: bool) -> np.ndarray:
    """Integer coordinate vectors of trace-zero elements with max |c_i| <= n.

    With ``shell`` only those with max |c_i| == n are returned.
    """
    t = O.trd_vector
    k = next(i for i in range(4) if t[i] != 0)
    idx = [i for i in range(4) if i != k]
    r = np.arange(-n, n + 1, dtype=np.int64)
    if not shell:
        free = np.stack(np.meshgrid(r, r, r, indexing="ij"), axis=-1).reshape(-1, 3)
        free, ck = _complete(O, free, k, idx)
        ok = np.abs(ck) <= n
        return _assemble(free[ok], ck[ok], k, idx)
    if n == 0:
        return np.zeros((1, 4), dtype=np.int64)
    # free part on the boundary of the 3-cube
    face = np.stack(np.meshgrid(r, r, indexing="ij"), axis=-1).reshape(-1, 2)
    faces = []
    for m in range(3):
        for sign in (-n, n):
            f = np.insert(face, m, sign, axis=1)
            faces.append(f)
    free = np.unique(np.concatenate(faces), axis=0)
    free, ck = _complete(O, free, k, idx)
    ok = np.abs(ck) <= n
    parts = [_assemble(free[ok], ck[ok], k, idx)]
    # free part strictly inside, solved coordinate on the boundary
    nz = [m for m, i in enumerate(idx) if t[i] != 0]
    if nz:
        m0 = nz[0]
        others = [m for m in range(3) if m != m0]
        ri = np.arange(-(n - 1), n, dtype=np.int64)
        inner = np.stack(np.meshgrid(ri, ri, indexing="ij"), axis=-1).reshape(-1, 2)
        for ck_val in (-n, n):
            rest = t[k] * ck_val + sum(inner[:, j] * t[idx[m]] for j, m in enumerate(others))
            ok = (rest % t[idx[m0]]) == 0
            sol = -rest[ok] // t[idx[m0]]
            keep = np.abs(sol) < n
            free = np.empty((int(keep.sum()), 3), dtype=np.int64)
            free[:, m0] = sol[keep]
            for j, m in enumerate(others):
                free[:, m] = inner[ok][keep][:, j]
            parts.append(_assemble(free, np.full(len(free), ck_val, dtype=np.int64), k, idx))
    return np.concatenate(parts)


def _nrd_values(O: QOrder, coords: np.ndarray) -> np.ndarray:
    G = np.array(O.norm_gram, dtype=object)
    bound = int(np.abs(coords).max()) if len(coords) else 0
    if 16 * bound * bound * int(np.abs(G).max()) < 2**62:
        G = G.astype(np.int64)
    else:
        coords = coords.astype(object)
    return np.einsum("ni,ij,nj->n", coords, G, coords) // 2


def find_mu(O: QOrder, D: int, bound: int | None = None) -> Quat | None:
    """Least pure ``mu`` in ``O`` with ``nrd(mu) == D`` inside the coordinate box.

    Returns None when the box ``|c_i| <= bound`` holds no solution.
    """
    if bound is None:
        bound = 8 * D
    found: list[tuple[int, ...]] = []
    for n in range(1, bound + 1):
        coords = _pure_box(O, n, shell=True)
        hits = coords[_nrd_values(O, coords) == D]
        found.extend(tuple(int(x) for x in row) for row in hits)
        if found and min(sum(map(abs, c)) for c in found) <= n:
            break
    if not found:
        return None
    mu = O.element(min(found, key=coord_key))
    assert mu * mu + D == 0
    return mu


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int = 4) -> list[list[int]]:
    """Z-basis of ``{c in Z^n : A c = 0}`` via unimodular column operations."""
    A = [list(r) for r in rows]
    U = [[int(i == j) for j in range(ncols)] for i in range(ncols)]  # columns track operations

    def col_op(dst: int, src: int, q: int) -> None:
        for r in A:
            r[dst] -= q * r[src]
        for r in U:
            r[dst] -= q * r[src]

    def swap(c1: int, c2: int) -> None:
        for r in A + U:
            r[c1], r[c2] = r[c2], r[c1]

    pivot = 0
    for row in range(len(A)):
        if pivot == ncols:
            break
        while True:
            nz = [c for c in range(pivot, ncols) if A[row][c] != 0]
            if not nz:
                break
            c0 = min(nz, key=lambda c: abs(A[row][c]))
            for c in nz:
                if c != c0:
                    col_op(c, c0, A[row][c] // A[row][c0])
            if all(A[row][c] == 0 for c in range(pivot, ncols) if c != c0):
                swap(pivot, c0)
                pivot += 1
                break
    return [[U[i][c] for i in range(ncols)] for c in range(pivot, ncols)]


def _anticommuting_box(O: QOrder, mu: Quat, bound: int) -> np.ndarray:
    """Coordinates of pure ``x`` with ``x mu = -mu x`` and max |c_i| <= bound."""
    # for pure x and mu: x mu + mu x = trd(x mu)
    s = [(e * mu).trd() for e in O.basis]
    den = lcm(*(x.denominator for x in s))
    K = integer_kernel([O.trd_vector, [int(x * den) for x in s]])
    if len(K) != 2:
        raise ValueError("mu must be a nonzero pure quaternion")
    v1, v2 = K
    i, j = max(
        ((i, j) for i in range(4) for j in range(i + 1, 4)),
        key=lambda ij: abs(v1[ij[0]] * v2[ij[1]] - v1[ij[1]] * v2[ij[0]]),
    )
    det = v1[i] * v2[j] - v1[j] * v2[i]
    # (u, w) = M^-1 (c_i, c_j) with M = [[v1_i, v2_i], [v1_j, v2_j]]
    ub = (bound * (abs(v2[j]) + abs(v2[i]))) // abs(det)
    wb = (bound * (abs(v1[j]) + abs(v1[i]))) // abs(det)
    u = np.arange(-ub, ub + 1, dtype=np.int64)
    w = np.arange(-wb, wb + 1, dtype=np.int64)
    U, Wm = np.meshgrid(u, w, indexing="ij")
    coords = U.reshape(-1, 1) * np.array(v1, dtype=np.int64) + Wm.reshape(-1, 1) * np.array(v2, dtype=np.int64)
    keep = (np.abs(coords).max(axis=1) <= bound) & (np.abs(coords).sum(axis=1) > 0)
    return coords[keep]


def find_twists(O: QOrder, mu: Quat, bound: int | None = None) -> list[tuple[Quat, int]]:
    """Pure ``chi`` in ``O`` normalizing ``O`` with ``chi mu = -mu chi``, paired with
    the squarefree part ``m`` of ``|nrd(chi)|``. Coordinates are bounded by ``bound``.
    """
    D = O.algebra.disc
    if bound is None:
        bound = 8 * D
    if bound <= 0:
        return []
    coords = _anticommuting_box(O, mu, bound)
    norms = _nrd_values(O, coords)
    divs = set(divisors(D))
    out = []
    for c, n in zip(coords, norms):
        g = 0
        for x in c:
            g = gcd(g, int(x))
        n = int(n)
        # a primitive normalizing element of O has norm +-m with m | D
        if n % (g * g) or abs(n // (g * g)) not in divs:
            continue
        chi = O.element([int(x) for x in c])
        if not normalizes(O, chi):
            continue
        m = squarefree_part(abs(chi.nrd()))
        assert chi * mu == -(mu * chi) and D % m == 0
        out.append((tuple(int(x) for x in c), chi, m))
    out.sort(key=lambda t: coord_key(t[0]))
    return [(chi, m) for _, chi, m in out]


# --------------------------------------------------------------------------
# Catalog


CATALOG_ENV = "IGUSA_LOCUS_CATALOG"
DEFAULT_CATALOG = os.path.join(os.path.dirname(__file__), "data", "orders.json")


def order_to_entry(D: int, O: QOrder) -> dict:
    return {
        "D": D,
        "a": int(O.algebra.a),
        "b": int(O.algebra.b),
        "basis": [[[c.numerator, c.denominator] for c in e.coords] for e in O.basis],
    }


def order_from_entry(entry: dict) -> QOrder:
    algebra = QAlgebra(entry["a"], entry["b"])
    basis = [algebra(*(Fraction(n, d) for n, d in e)) for e in entry["basis"]]
    return QOrder(algebra, basis)


class OrderCatalog:
    """Maximal orders keyed by discriminant, loaded from JSON and validated."""

    def __init__(self, orders: dict[int, QOrder] | None = None):
        self.orders: dict[int, QOrder] = dict(orders or {})

    @classmethod
    def load(cls, path: str | os.PathLike | None = None) -> "OrderCatalog":
        if path is None:
            path = os.environ.get(CATALOG_ENV, DEFAULT_CATALOG)
        with open(path) as fh:
            data = json.load(fh)
        orders = {}
        for entry in data["entries"]:
            D = int(entry["D"])
            O = order_from_entry(entry)
            if O.algebra.disc != D or not is_maximal(O):
                raise ValueError(f"catalog entry for D={D} is not a maximal order of discriminant {D}")
            orders[D] = O
        return cls(orders)

    def dump(self, path: str | os.PathLike) -> None:
        entries = [order_to_entry(D, O) for D, O in sorted(self.orders.items())]
        lines = ",\n  ".join(json.dumps(e, separators=(",", ":")) for e in entries)
        with open(path, "w") as fh:
            fh.write('{"entries": [\n  ' + lines + "\n]}\n")

    def __contains__(self, D: int) -> bool:
        return D in self.orders

    def __getitem__(self, D: int) -> QOrder:
        return self.orders[D]

    def get_or_build(self, D: int) -> QOrder:
        """Catalog order, or a freshly saturated one for ``D`` not in the catalog."""
        if D in self.orders:
            return self.orders[D]
        return saturate_to_maximal(*algebra_for_disc(D))
