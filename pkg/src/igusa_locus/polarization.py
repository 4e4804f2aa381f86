"""Line bundles on abelian surfaces with quaternionic multiplication, as Riemann forms.

A pure quaternion ``mu`` in the reduced different of a maximal order ``O``
gives the alternating form ``E_mu(x, y) = -trd(mu x conj(y)) / D`` on ``O``.
Its Pfaffian is the degree of the line bundle, and ``beta -> mu^-1 conj(beta) mu``
is the Rosati involution.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .quaternion import QOrder, Quat, coord_key, integer_kernel, normalizes

# Riemann forms divide by the discriminant, not by nrd(mu); see ``riemann_form``.
RIEMANN_DENOMINATOR = "disc"


@dataclass(frozen=True)
class RiemannForm:
    order: QOrder
    mu: Quat
    matrix: tuple[tuple[int, ...], ...]

    def pfaffian(self) -> int:
        return pfaffian4(self.matrix)


@dataclass(frozen=True)
class RosatiGram:
    order: QOrder
    mu: Quat
    gram: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class Witness:
    omega: Quat
    m: Fraction


def in_reduced_different(O: QOrder, x: Quat) -> bool:
    return O.contains(x) and x.nrd() % O.algebra.disc == 0


def sample_theta0(O: QOrder, count: int, rng: random.Random, box: int = 12) -> list[Quat]:
    """``count`` random nonzero pure elements of the reduced different, by rejection
    from random integer combinations of a basis of the trace-zero sublattice.
    """
    D = O.algebra.disc
    pure = integer_kernel([O.trd_vector])
    out: list[Quat] = []
    while len(out) < count:
        k = [rng.randint(-box, box) for _ in pure]
        c = [sum(ki * v[n] for ki, v in zip(k, pure)) for n in range(4)]
        if not any(c):
            continue
        x = O.element(c)
        if x.nrd() % D == 0:
            out.append(x)
    return out


def riemann_form(O: QOrder, mu: Quat) -> RiemannForm:
    """Integral alternating matrix ``-trd(mu e_a conj(e_b)) / D`` on the order basis.

    Dividing by ``D`` rather than ``nrd(mu)`` keeps the map additive in ``mu``;
    both agree for principal ``mu``.
    """
    if not mu.is_pure():
        raise ValueError(f"{mu} is not a pure quaternion")
    D = O.algebra.disc
    rows = []
    for x in O.basis:
        row = []
        for y in O.basis:
            v = -(mu * x * y.conj()).trd() / D
            if v.denominator != 1:
                raise ValueError(f"non-integral Riemann form entry {v}: {mu} is not in the reduced different")
            row.append(int(v))
        rows.append(tuple(row))
    return RiemannForm(O, mu, tuple(rows))


def pfaffian4(m) -> int:
    if any(m[i][i] for i in range(4)) or any(m[i][j] != -m[j][i] for i in range(4) for j in range(4)):
        raise ValueError("matrix is not alternating")
    return m[0][1] * m[2][3] - m[0][2] * m[1][3] + m[0][3] * m[1][2]


def polarization_degree(E: RiemannForm) -> int:
    deg = abs(E.pfaffian())
    expected = abs(E.mu.nrd()) / E.order.algebra.disc
    if deg != expected:
        raise AssertionError(f"|Pf| = {deg} but |nrd(mu)|/D = {expected}")
    return deg


def is_principal(O: QOrder, mu: Quat) -> bool:
    return polarization_degree(riemann_form(O, mu)) == 1


def rosati(O: QOrder, mu: Quat, beta: Quat) -> Quat:
    if mu.is_zero():
        raise ValueError("mu must be invertible")
    return mu.inverse() * beta.conj() * mu


def rosati_gram(O: QOrder, mu: Quat) -> RosatiGram:
    mi = mu.inverse()
    gram = tuple(tuple((x * (mi * y.conj() * mu)).trd() for y in O.basis) for x in O.basis)
    return RosatiGram(O, mu, gram)


def _leading_minors_positive(g) -> bool:
    n = len(g)
    m = [list(row) for row in g]
    # Gaussian elimination without pivoting: pivots are ratios of leading minors
    for k in range(n):
        if m[k][k] <= 0:
            return False
        for r in range(k + 1, n):
            f = m[r][k] / m[k][k]
            for c in range(k, n):
                m[r][c] -= f * m[k][c]
    return True


def rosati_positive(O: QOrder, mu: Quat) -> bool:
    """Positive definiteness of ``(x, y) -> trd(x mu^-1 conj(y) mu)`` on ``O``."""
    if not mu.is_pure() or mu.nrd() <= 0:
        raise ValueError(f"rosati_positive needs pure mu with nrd(mu) > 0, got nrd = {mu.nrd()}")
    return _leading_minors_positive(rosati_gram(O, mu).gram)


def witness_multiplier(mu: Quat, mu2: Quat, omega: Quat) -> Fraction | None:
    """The positive rational ``m`` with ``conj(omega) mu omega = m mu2``, if any."""
    lhs = omega.conj() * mu * omega
    m = None
    for x, y in zip(lhs.coords, mu2.coords):
        if y == 0:
            if x != 0:
                return None
            continue
        r = x / y
        if m is None:
            m = r
        elif r != m:
            return None
    return m if m is not None and m > 0 else None


def al_witnesses(O: QOrder, mu: Quat, mu2: Quat, bound: int, positive_norm: bool = False) -> Iterator[Witness]:
    """All ``omega`` in ``O`` with coordinates in ``[-bound, bound]`` that normalize ``O``
    and carry ``mu`` to a positive multiple of ``mu2``, in search order.

    ``positive_norm`` additionally requires ``nrd(omega) > 0``.
    """
    box = sorted(
        (c for c in itertools.product(range(-bound, bound + 1), repeat=4) if any(c)),
        key=coord_key,
    )
    for c in box:
        omega = O.element(c)
        n = omega.nrd()
        if positive_norm and n <= 0:
            continue
        m = witness_multiplier(mu, mu2, omega)
        if m is None or not normalizes(O, omega):
            continue
        yield Witness(omega, m)


def al_isogeny_witness(O: QOrder, mu: Quat, mu2: Quat, bound: int = 2, positive_norm: bool = False) -> Witness | None:
    """First Atkin-Lehner isogeny witness in the box, or None when the search is exhausted.

    None is not a proof that the two polarizations are inequivalent.
    """
    return next(al_witnesses(O, mu, mu2, bound, positive_norm), None)
