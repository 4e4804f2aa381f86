"""Irreducible components of the quaternionic locus of discriminant D in Igusa's threefold.

Everything here is group and class-number bookkeeping: the Atkin-Lehner
group ``W = {w_m : m | D}``, the algebra-level twisting test
``B = (-D, m / Q)``, the polarization count ``pi0 = h~(-D) / 2`` and the
orbit equation ``sum_k |W / W0_k| = pi0`` over components.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable

from .arith import divisors, is_squarefree, prime_factors
from .quadforms import class_number, cm_orders_above, h_tilde
from .quaternion import ramified_set


class InadmissibleDiscriminant(ValueError):
    pass


class ConsistencyError(RuntimeError):
    """A relation forced by theory failed; indicates a bug, never bad input."""


@dataclass(frozen=True)
class DiscD:
    D: int
    primes: tuple[int, ...]

    @classmethod
    def of(cls, D: int) -> "DiscD":
        if D <= 1:
            raise InadmissibleDiscriminant(f"D={D}: need D > 1")
        if not is_squarefree(D):
            raise InadmissibleDiscriminant(f"D={D} is not squarefree, so it is not the discriminant of a quaternion algebra")
        primes = tuple(prime_factors(D))
        if len(primes) % 2:
            raise InadmissibleDiscriminant(
                f"D={D} has an odd number of prime factors; no indefinite division quaternion algebra over Q has this discriminant"
            )
        return cls(D, primes)

    @property
    def r(self) -> int:
        return len(self.primes) // 2


def is_admissible(D: int) -> bool:
    try:
        DiscD.of(D)
    except InadmissibleDiscriminant:
        return False
    return True


def _as_disc(D: "int | DiscD") -> DiscD:
    return D if isinstance(D, DiscD) else DiscD.of(D)


@dataclass(frozen=True)
class ALGroup:
    """``W = {w_m : m | D}`` with ``w_m w_n = w_{mn / gcd(m, n)^2}``."""

    D: int
    elements: tuple[int, ...]

    @staticmethod
    def mul(m: int, n: int) -> int:
        return m * n // gcd(m, n) ** 2

    def table(self) -> dict[tuple[int, int], int]:
        return {(m, n): self.mul(m, n) for m in self.elements for n in self.elements}

    def order(self) -> int:
        return len(self.elements)

    def generated(self, gens: Iterable[int]) -> frozenset[int]:
        sub = {1}
        for g in gens:
            sub |= {self.mul(g, h) for h in sub}
        return frozenset(sub)


def al_group(D: "int | DiscD") -> ALGroup:
    d = _as_disc(D)
    return ALGroup(d.D, tuple(divisors(d.D)))


@dataclass(frozen=True)
class StableSubgroup:
    generators: tuple[int, ...]
    kind: str  # "twisting" | "non-twisting"
    elements: frozenset[int]

    @property
    def order(self) -> int:
        return len(self.elements)


def twisting_data(D: "int | DiscD") -> tuple[bool, list[int]]:
    """Divisors ``m > 1`` of ``D`` with ``(-D, m / Q)`` ramified exactly at the primes of ``D``."""
    d = _as_disc(D)
    target = frozenset(d.primes)
    ms = [m for m in divisors(d.D) if m > 1 and ramified_set(-d.D, m) == target]
    return bool(ms), ms


def pi0(D: "int | DiscD") -> int:
    """Number of principal polarizations on an abelian surface with QM by a maximal order."""
    d = _as_disc(D)
    ht = h_tilde(d.D)
    via_orders = sum(class_number(delta) for delta in cm_orders_above(d.D))
    if ht != via_orders or ht % 2:
        raise ConsistencyError(f"D={d.D}: h~ = {ht}, sum over CM orders = {via_orders}")
    return ht // 2


def stable_subgroups(D: "int | DiscD", twist_divisors: Iterable[int]) -> list[StableSubgroup]:
    """``<w_D>`` for non-twisting components and ``<w_D, w_m>`` per twisting class."""
    W = al_group(D)
    out = [StableSubgroup((W.D,), "non-twisting", W.generated([W.D]))]
    seen = set()
    for m in twist_divisors:
        elems = W.generated([W.D, m])
        if elems in seen:
            continue
        seen.add(elems)
        out.append(StableSubgroup((m, W.D), "twisting", elems))
    return out


def _orbit_splits(total: int, contributions: dict[tuple[str, int], int]) -> list[dict[tuple[str, int], int]]:
    """All multisets of component types whose contributions sum to ``total`` and
    that contain at least one twisting component.
    """
    types = sorted(contributions)
    out = []

    def rec(idx: int, remaining: int, chosen: dict):
        if idx == len(types):
            if remaining == 0 and any(k[0] == "twisting" and n for k, n in chosen.items()):
                out.append(dict(chosen))
            return
        t = types[idx]
        c = contributions[t]
        for n in range(remaining // c + 1):
            chosen[t] = n
            rec(idx + 1, remaining - n * c, chosen)
        del chosen[t]

    rec(0, total, {})
    return out


@dataclass
class RhoResult:
    rho_exact: int | None
    rho_feasible: list[int]
    rho_bounds: tuple[Fraction, Fraction] | None
    splits: list[list[dict]]


def rho(D: "int | DiscD") -> RhoResult:
    d = _as_disc(D)
    ht = h_tilde(d.D)
    p0 = pi0(d)
    order_W = 2 ** (2 * d.r)
    twisting, ms = twisting_data(d)
    if not twisting:
        if ht % order_W:
            raise ConsistencyError(f"D={d.D}: non-twisting but 2^(2r) = {order_W} does not divide h~ = {ht}")
        value = ht // order_W
        if p0 != (order_W // 2) * value:
            raise ConsistencyError(f"D={d.D}: equidistribution pi0 = |W/W0| rho fails")
        split = [{"kind": "non-twisting", "w0_order": 2, "count": value}]
        return RhoResult(value, [value], None, [split])
    groups = stable_subgroups(d, ms)
    contributions = {(g.kind, g.order): order_W // g.order for g in groups}
    raw = _orbit_splits(p0, contributions)
    if not raw:
        raise ConsistencyError(f"D={d.D}: orbit equation has no solution with a twisting component")
    splits = []
    feasible = set()
    for s in raw:
        feasible.add(sum(s.values()))
        splits.append([
            {"kind": kind, "w0_order": order, "count": n}
            for (kind, order), n in sorted(s.items(), key=lambda kv: (kv[0][0] != "twisting", -kv[0][1]))
            if n
        ])
    splits.sort(key=lambda s: (sum(c["count"] for c in s), [(c["kind"], c["count"]) for c in s]))
    low, high = Fraction(ht, order_W), Fraction(ht, order_W // 2)
    rho_feasible = sorted(feasible)
    if any(not (low < x <= high) for x in rho_feasible):
        raise ConsistencyError(f"D={d.D}: feasible rho {rho_feasible} outside ({low}, {high}]")
    exact = rho_feasible[0] if len(rho_feasible) == 1 else None
    return RhoResult(exact, rho_feasible, (low, high), splits)


def is_irreducible(D: "int | DiscD") -> bool:
    d = _as_disc(D)
    ht = h_tilde(d.D)
    twisting, _ = twisting_data(d)
    return ht == 2 ** (2 * d.r - 1) if twisting else ht == 2 ** (2 * d.r)


def genus_check(D: "int | DiscD") -> None:
    """Divisibility of h~(-D) forced by genus theory; raises on violation."""
    d = _as_disc(D)
    ht = h_tilde(d.D)
    twisting, _ = twisting_data(d)
    if ht % 2 ** (2 * d.r - 1):
        raise ConsistencyError(f"D={d.D}: 2^(2r-1) does not divide h~ = {ht}")
    if not twisting and ht % 2 ** (2 * d.r):
        raise ConsistencyError(f"D={d.D}: non-twisting and 2^(2r) does not divide h~ = {ht}")


ROOTS_OF_UNITY_NOTE = (
    "Q(sqrt(-D)) contains only the roots of unity +-1 for D > 3, so the "
    "odd-order roots of unity hypothesis for equidistribution holds"
)


@dataclass
class LocusReport:
    D: int
    primes: list[int]
    h_tilde: int
    pi0: int
    twisting: bool
    twist_divisors: list[int]
    rho_exact: int | None
    rho_feasible: list[int]
    rho_bounds: tuple[Fraction, Fraction] | None
    irreducible: bool
    splits: list[list[dict]]
    stable_subgroups: list[dict] = field(default_factory=list)
    roots_of_unity_note: str = ROOTS_OF_UNITY_NOTE

    @property
    def rho_min(self) -> int:
        return min(self.rho_feasible)

    @property
    def rho_max(self) -> int:
        return max(self.rho_feasible)

    def to_dict(self) -> dict:
        out = asdict(self)
        if self.rho_bounds is not None:
            out["rho_bounds"] = [str(x) for x in self.rho_bounds]
        return out


def analyze(D: int) -> LocusReport:
    d = DiscD.of(D)
    genus_check(d)
    twisting, ms = twisting_data(d)
    rr = rho(d)
    irreducible = is_irreducible(d)
    if irreducible != (rr.rho_feasible == [1]):
        raise ConsistencyError(f"D={D}: irreducibility criterion disagrees with rho {rr.rho_feasible}")
    groups = [
        {"kind": g.kind, "generators": list(g.generators), "elements": sorted(g.elements)}
        for g in stable_subgroups(d, ms)
        if twisting or g.kind == "non-twisting"
    ]
    return LocusReport(
        D=D,
        primes=list(d.primes),
        h_tilde=h_tilde(D),
        pi0=pi0(d),
        twisting=twisting,
        twist_divisors=ms,
        rho_exact=rr.rho_exact,
        rho_feasible=rr.rho_feasible,
        rho_bounds=rr.rho_bounds,
        irreducible=irreducible,
        splits=rr.splits,
        stable_subgroups=groups,
    )


def admissible_range(D_min: int, D_max: int) -> list[int]:
    return [D for D in range(max(D_min, 2), D_max + 1) if is_admissible(D)]


def tabulate(D_min: int, D_max: int, jobs: int = 1) -> list[LocusReport]:
    Ds = admissible_range(D_min, D_max)
    if jobs <= 1 or len(Ds) < 2:
        return [analyze(D) for D in Ds]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(analyze, Ds, chunksize=16))
