"""Brute-force reference computations used to cross-check the fast paths.

Nothing here shares code with the production routines it checks.
"""

from __future__ import annotations

from collections import defaultdict
from math import isqrt

import numpy as np


def reduce_forms(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized SL2(Z) reduction of positive definite forms (a > 0)."""
    a, b, c = a.copy(), b.copy(), c.copy()
    while True:
        # translate x -> x + k y so that -a < b <= a
        k = (a - b) // (2 * a)
        c = a * k * k + b * k + c
        b = b + 2 * a * k
        swap = (a > c) | ((a == c) & (b < 0))
        if not swap.any():
            return a, b, c
        a_new = np.where(swap, c, a)
        c = np.where(swap, a, c)
        b = np.where(swap, -b, b)
        a = a_new


def brute_class_numbers(delta_min: int) -> dict[int, int]:
    """``h(delta)`` for every discriminant ``delta_min <= delta < 0`` by reducing all
    primitive forms in a box large enough to meet every class, then deduplicating.
    """
    n = -delta_min
    A = isqrt(n // 3) + 2
    trip = []
    for a in range(1, A + 1):
        b = np.arange(-A, A + 1, dtype=np.int64)
        cmax = (n + b * b) // (4 * a)
        for bb, cm in zip(b, cmax):
            if cm < 1:
                continue
            c = np.arange(1, cm + 1, dtype=np.int64)
            trip.append(np.stack([np.full_like(c, a), np.full_like(c, bb), c], axis=1))
    t = np.concatenate(trip)
    g = np.gcd(np.gcd(t[:, 0], t[:, 1]), t[:, 2])
    t = t[g == 1]
    disc = t[:, 1] ** 2 - 4 * t[:, 0] * t[:, 2]
    t = t[(disc < 0) & (disc >= delta_min)]
    a, b, c = reduce_forms(t[:, 0], t[:, 1], t[:, 2])
    reduced = np.unique(np.stack([b * b - 4 * a * c, a, b, c], axis=1), axis=0)
    counts: dict[int, int] = defaultdict(int)
    for d in reduced[:, 0]:
        counts[int(d)] += 1
    return dict(counts)


def hilbert_symbol_brute(a: int, b: int, p: int) -> int:
    """``(a, b)_p`` for squarefree-reduced integers by searching for a primitive zero of
    ``a x^2 + b y^2 - z^2`` modulo ``p^2`` (``2^5`` for p = 2).
    """
    mod = 32 if p == 2 else p * p
    r = np.arange(mod, dtype=np.int64)
    sq = (r * r) % mod
    x2, y2 = np.meshgrid(sq, sq, indexing="ij")
    lhs = (a * x2 + b * y2) % mod
    prim_xy = np.add.outer(r % p != 0, r % p != 0)
    for z in range(mod):
        hit = lhs == (z * z) % mod
        if z % p != 0:
            if hit.any():
                return 1
        elif (hit & prim_xy).any():
            return 1
    return -1


def admissible_brute(D_max: int) -> list[int]:
    """Squarefree D <= D_max with an even number >= 2 of prime factors, by trial division."""
    out = []
    for D in range(2, D_max + 1):
        n, k, primes, ok = D, 2, 0, True
        while k * k <= n:
            if n % k == 0:
                n //= k
                primes += 1
                if n % k == 0:
                    ok = False
                    break
            k += 1
        if not ok:
            continue
        if n > 1:
            primes += 1
        if primes >= 2 and primes % 2 == 0:
            out.append(D)
    return out
