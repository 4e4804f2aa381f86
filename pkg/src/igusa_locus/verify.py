"""Property suites run by ``igusa-locus verify``.

Each suite counts individual checks and collects failure messages; a suite
passes when it records no failures. The ``quick`` level trims ranges and
sample sizes so that it finishes in a few seconds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Callable

from . import arith, hm_families, locus, oracles, polarization, quadforms, quaternion
from .arith import QuadExtVal


@dataclass(frozen=True)
class Level:
    name: str
    D_max: int
    delta_min: int
    samples: int
    mu_samples: int
    catalog_D_max: int
    group_D_max: int
    hm_height: int


LEVELS = {
    "quick": Level("quick", 300, -1000, 100, 40, 30, 210, 6),
    "full": Level("full", 3000, -10000, 1000, 500, 100, 210, 12),
}


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, message: str | Callable[[], str]) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(message() if callable(message) else message)

    def summary(self) -> str:
        status = "ok" if self.passed else "FAIL"
        return f"{self.name:<14} {status:<4} {self.checks - len(self.failures)}/{self.checks}"


def _squarefree_trial(n: int) -> bool:
    n = abs(n)
    return all(n % (k * k) for k in range(2, isqrt(n) + 1))


def suite_arith(level: Level, rng: random.Random) -> SuiteResult:
    res = SuiteResult("exact-arith")
    for n in list(range(1, 2001)) + [rng.randint(-10**6, 10**6) or 1 for _ in range(level.samples)]:
        s, f = arith.squarefree_factor(n)
        res.check(s * f * f == n and _squarefree_trial(s), f"squarefree_factor({n}) = ({s}, {f})")
    for _ in range(level.samples):
        a, b = rng.randint(-500, 500), rng.randint(-500, 500)
        n = rng.randint(1, 500)
        res.check(
            arith.kronecker(a * b, n) == arith.kronecker(a, n) * arith.kronecker(b, n),
            f"kronecker not multiplicative at ({a}, {b}, {n})",
        )
    for _ in range(level.samples):
        p, q, k = rng.randint(-99, 99), rng.randint(1, 99), rng.randint(1, 50)
        x, y = arith.Rat(p, q), arith.Rat(p * k, q * k)
        res.check((x.numerator, x.denominator) == (y.numerator, y.denominator), f"{p}/{q} not normalized")
    return res


def suite_quadforms(level: Level, rng: random.Random) -> SuiteResult:
    res = SuiteResult("quadforms")
    brute = oracles.brute_class_numbers(level.delta_min)
    for delta in range(level.delta_min, 0):
        if delta % 4 not in (0, 1):
            continue
        h = quadforms.class_number(delta)
        res.check(h == brute.get(delta, 0), f"h({delta}) = {h}, oracle {brute.get(delta, 0)}")
        amb = quadforms.ambiguous_count(delta)
        res.check(amb & (amb - 1) == 0 and amb <= h, f"ambiguous_count({delta}) = {amb}, h = {h}")
        for F in quadforms.reduced_forms(delta):
            res.check(F.is_reduced() and F.is_primitive() and F.disc == delta, f"{F} bad for {delta}")
    return res


def _sample_pair(rng: random.Random, size: int) -> tuple[int, int]:
    def one() -> int:
        x = 0
        while x == 0:
            x = rng.randint(-size, size)
        return x

    return one(), one()


def suite_quaternion(level: Level, rng: random.Random, catalog: quaternion.OrderCatalog) -> SuiteResult:
    res = SuiteResult("quaternion")
    hs = quaternion.hilbert_symbol
    for _ in range(level.samples):
        a, b = _sample_pair(rng, 10**4)
        places = quaternion.probe_places(a, b)
        prod = 1
        for v in places:
            prod *= hs(a, b, v)
        res.check(prod == 1, f"product formula fails for ({a}, {b})")
        res.check(len(quaternion.ramified_set(a, b)) % 2 == 0, f"odd ramified set for ({a}, {b})")
        v = rng.choice(places)
        res.check(hs(a, b, v) == hs(b, a, v), f"asymmetric at ({a}, {b}, {v})")
        a2 = rng.randint(1, 10**4) * rng.choice((1, -1))
        res.check(
            hs(a * a2, b, v) == hs(a, b, v) * hs(a2, b, v),
            f"not bimultiplicative at ({a}, {a2}, {b}, {v})",
        )
    admissible = locus.admissible_range(2, level.D_max)
    for D in rng.sample(admissible, min(len(admissible), level.samples // 10 + 1)):
        m = rng.choice(arith.divisors(D))
        base = quaternion.ramified_set(-D, m)
        k = rng.randint(1, 60)
        res.check(quaternion.ramified_set(-D, m * k * k) == base, f"square class of ({-D}, {m}) with k={k}")
    for D in sorted(catalog.orders):
        if D > level.catalog_D_max:
            continue
        O = catalog[D]
        for _ in range(5 if level.name == "quick" else 20):
            g = O.algebra(*(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)))
            if g.is_zero():
                continue
            res.check(quaternion.order_disc(O.conjugate_by(g)) == D, f"conjugation changed disc for D={D}")
        mu = quaternion.find_mu(O, D)
        res.check(mu is not None and mu * mu + D == 0, f"find_mu failed for D={D}")
        if mu is None:
            continue
        for chi, m in quaternion.find_twists(O, mu, bound=2 * D):
            res.check(chi * mu == -(mu * chi) and D % m == 0, f"bad twist {chi} for D={D}")
    return res


def suite_polarization(level: Level, rng: random.Random, catalog: quaternion.OrderCatalog) -> SuiteResult:
    res = SuiteResult("polarization")
    for D in sorted(catalog.orders):
        if D > level.catalog_D_max:
            continue
        O = catalog[D]
        mus = polarization.sample_theta0(O, level.mu_samples, rng)
        forms = []
        for mu in mus:
            E = polarization.riemann_form(O, mu)
            M = E.matrix
            res.check(all(M[a][b] == -M[b][a] for a in range(4) for b in range(4)), f"E not alternating, D={D}")
            res.check(
                abs(E.pfaffian()) == abs(mu.nrd()) / D,
                f"degree law fails for {mu}, D={D}",
            )
            forms.append(E)
        for E1, E2 in zip(forms, forms[1:]):
            s = E1.mu + E2.mu
            if s.is_zero():
                continue
            E3 = polarization.riemann_form(O, s).matrix
            res.check(
                all(E3[a][b] == E1.matrix[a][b] + E2.matrix[a][b] for a in range(4) for b in range(4)),
                f"riemann_form not additive at D={D}",
            )
        for mu in mus[:10]:
            beta = O.element([rng.randint(-5, 5) for _ in range(4)])
            r = polarization.rosati(O, mu, beta)
            res.check(polarization.rosati(O, mu, r) == beta, f"rosati not an involution, D={D}")
            res.check(r.nrd() == beta.nrd(), f"rosati changes nrd, D={D}")
            res.check(polarization.rosati(O, -mu, beta) == r, f"rosati depends on sign of mu, D={D}")
            q = O.algebra(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
            res.check(polarization.rosati(O, mu, q) == q, f"rosati moves a rational, D={D}")
            if quaternion.normalizes(O, mu):
                res.check(O.contains(r), f"rosati leaves O, D={D}")
            if mu.nrd() > 0:
                res.check(
                    polarization.rosati_positive(O, mu) == polarization.rosati_positive(O, -mu),
                    f"positivity depends on sign of mu, D={D}",
                )
        mu = quaternion.find_mu(O, D)
        if mu is None:
            res.check(False, f"no principal mu for D={D}")
            continue
        res.check(polarization.is_principal(O, mu), f"find_mu result not principal, D={D}")
        res.check(polarization.rosati_positive(O, mu), f"Rosati form not positive, D={D}")
        for chi, _m in quaternion.find_twists(O, mu, bound=2)[:3]:
            mu2 = chi.conj() * mu * chi
            for w in polarization.al_witnesses(O, mu, mu2, 1):
                res.check(w.omega.conj() * mu * w.omega == mu2 * w.m, f"unsound witness D={D}")
                back = w.omega
                m_back = w.omega.nrd() ** 2 / w.m
                res.check(back * mu2 * back.conj() == mu * m_back, f"witness not symmetric, D={D}")
                break
    return res


def suite_locus(level: Level, rng: random.Random, jobs: int = 1) -> SuiteResult:
    res = SuiteResult("locus")
    admissible = locus.admissible_range(2, level.D_max)
    res.check(admissible == oracles.admissible_brute(level.D_max), "admissible range disagrees with trial division")
    try:
        reports = locus.tabulate(2, level.D_max, jobs=jobs)
    except (locus.ConsistencyError, ArithmeticError) as exc:
        res.check(False, f"analysis raised: {exc}")
        return res
    for rep in reports:
        D, ht = rep.D, rep.h_tilde
        r = len(rep.primes) // 2
        via_orders = sum(quadforms.class_number(d) for d in quadforms.cm_orders_above(D))
        res.check(2 * rep.pi0 == ht == via_orders, f"pi0 paths disagree at D={D}")
        res.check(ht % 2 ** (2 * r - 1) == 0, f"2^(2r-1) does not divide h~ at D={D}")
        if not rep.twisting:
            res.check(ht % 2 ** (2 * r) == 0, f"2^(2r) does not divide h~ at D={D} (non-twisting)")
            res.check(rep.rho_exact == Fraction(ht, 2 ** (2 * r)), f"rho_exact wrong at D={D}")
            res.check(rep.pi0 == 2 ** (2 * r - 1) * rep.rho_exact, f"equidistribution fails at D={D}")
        else:
            low, high = Fraction(ht, 2 ** (2 * r)), Fraction(ht, 2 ** (2 * r - 1))
            res.check(all(low < x <= high for x in rep.rho_feasible), f"rho outside bounds at D={D}")
        single = rep.rho_exact == 1 or rep.rho_feasible == [1]
        res.check(rep.irreducible == single, f"irreducibility verdict disagrees with rho at D={D}")
    for D in locus.admissible_range(2, level.group_D_max):
        W = locus.al_group(D)
        els = W.elements
        ok = all(W.mul(m, m) == 1 and W.mul(m, n) == W.mul(n, m) for m in els for n in els)
        ok = ok and all(W.mul(W.mul(a, b), c) == W.mul(a, W.mul(b, c)) for a in els for b in els for c in els)
        res.check(ok and len(els) == 2 ** len(locus.DiscD.of(D).primes), f"W not elementary abelian at D={D}")
    return res


def suite_hm(level: Level, rng: random.Random) -> SuiteResult:
    res = SuiteResult("hm-families")
    for family in hm_families.FAMILIES:
        small = hm_families.rational_points(family, level.hm_height)
        large = hm_families.rational_points(family, level.hm_height + 2)
        res.check(set(small) <= set(large), f"rational_points not monotone for family {family}")
        for t, s, _ in large:
            c = hm_families.curve(family, t, s)
            if c.degenerate is None:
                res.check(
                    not c.f_coeffs[0].is_zero() and not hm_families.discriminant(c.f_coeffs).is_zero(),
                    f"family {family} at ({t}, {s}) emitted a singular model",
                )
    # family 6 over quadratic fields: t rational, s = sqrt((t^2 + 2) / (1 - 4 t^2))
    for _ in range(level.samples // 10 + 5):
        t = Fraction(rng.randint(-20, 20), rng.randint(1, 20))
        if 1 - 4 * t * t == 0:
            continue
        s = QuadExtVal.sqrt((t * t + 2) / (1 - 4 * t * t))
        res.check(hm_families.on_base_curve(6, t, s), f"family 6 point ({t}, {s}) off the base curve")
        res.check(hm_families.on_base_curve(6, -t, -s), f"family 6 symmetry fails at ({t}, {s})")
        c1, c2 = hm_families.coeffs(6, t, s), hm_families.coeffs(6, -t, -s)
        if isinstance(c1, hm_families.HMCoeffs) and isinstance(c2, hm_families.HMCoeffs):
            res.check(c2.P == -c1.P and c2.R == -c1.R and c2.Q == c1.Q, f"family 6 P, R not odd at ({t}, {s})")
        c = hm_families.curve(6, t, s)
        if c.degenerate is None:
            res.check(not hm_families.discriminant(c.f_coeffs).is_zero(), f"singular family 6 model at ({t}, {s})")
    return res


def run(level_name: str, jobs: int = 1, seed: int = 0, catalog: quaternion.OrderCatalog | None = None,
        echo: Callable[[str], None] | None = print) -> list[SuiteResult]:
    if level_name not in LEVELS:
        raise ValueError(f"unknown verification level {level_name!r}; choose from {sorted(LEVELS)}")
    level = LEVELS[level_name]
    catalog = catalog or quaternion.OrderCatalog.load()
    suites = [
        lambda: suite_arith(level, random.Random(seed)),
        lambda: suite_quadforms(level, random.Random(seed + 1)),
        lambda: suite_quaternion(level, random.Random(seed + 2), catalog),
        lambda: suite_polarization(level, random.Random(seed + 3), catalog),
        lambda: suite_locus(level, random.Random(seed + 4), jobs),
        lambda: suite_hm(level, random.Random(seed + 5)),
    ]
    results = []
    for suite in suites:
        r = suite()
        results.append(r)
        if echo:
            echo(r.summary())
            for msg in r.failures[:5]:
                echo(f"    {msg}")
    return results
