import random
from fractions import Fraction

import pytest

from igusa_locus.polarization import (
    al_isogeny_witness, al_witnesses, in_reduced_different, is_principal, pfaffian4, polarization_degree,
    riemann_form, rosati, rosati_gram, rosati_positive, sample_theta0, witness_multiplier,
)
from igusa_locus.quaternion import find_mu, find_twists, normalizes

SIX = ((0, -1, 1, 0), (1, 0, 0, 0), (-1, 0, 0, 1), (0, 0, -1, 0))


@pytest.fixture(scope="module")
def six(catalog):
    O = catalog[6]
    return O, find_mu(O, 6)


def test_riemann_form_six(six):
    O, mu = six
    E = riemann_form(O, mu)
    assert E.matrix == SIX
    assert abs(E.pfaffian()) == 1 and is_principal(O, mu)
    assert rosati_positive(O, mu)


def test_degree_of_multiple(six):
    O, _ = six
    one, i, j, k = O.algebra.gens()
    assert polarization_degree(riemann_form(O, 6 * i)) == 6


def test_non_pure_and_non_integral_rejected(six):
    O, _ = six
    one, i, j, k = O.algebra.gens()
    with pytest.raises(ValueError):
        riemann_form(O, one + i)
    with pytest.raises(ValueError):
        riemann_form(O, i)
    assert not in_reduced_different(O, i) and in_reduced_different(O, 3 * i + j)


def test_pfaffian_rejects_symmetric():
    with pytest.raises(ValueError):
        pfaffian4(((1, 0, 0, 0),) * 4)


@pytest.mark.parametrize("D", [6, 10, 15, 22])
def test_sampled_forms(catalog, D):
    O = catalog[D]
    rng = random.Random(D)
    mus = sample_theta0(O, 150, rng)
    forms = [riemann_form(O, mu) for mu in mus]
    for mu, E in zip(mus, forms):
        M = E.matrix
        assert all(M[a][b] == -M[b][a] for a in range(4) for b in range(4))
        assert abs(E.pfaffian()) == abs(mu.nrd()) / D
    for E1, E2 in zip(forms, forms[1:]):
        s = E1.mu + E2.mu
        if not s.is_zero():
            E3 = riemann_form(O, s).matrix
            assert all(E3[a][b] == E1.matrix[a][b] + E2.matrix[a][b] for a in range(4) for b in range(4))


@pytest.mark.parametrize("D", [6, 10, 15])
def test_rosati_properties(catalog, D):
    O = catalog[D]
    rng = random.Random(D + 1)
    for mu in sample_theta0(O, 20, rng):
        beta = O.element([rng.randint(-5, 5) for _ in range(4)])
        r = rosati(O, mu, beta)
        assert rosati(O, mu, r) == beta
        assert r.nrd() == beta.nrd()
        assert rosati(O, -mu, beta) == r
        assert rosati(O, mu, O.algebra(Fraction(3, 7))) == O.algebra(Fraction(3, 7))
        if normalizes(O, mu):
            assert O.contains(r)
        if mu.nrd() > 0:
            assert rosati_positive(O, mu) == rosati_positive(O, -mu)
            assert rosati_gram(O, mu).gram == rosati_gram(O, -mu).gram


def test_rosati_positive_needs_positive_norm(six):
    O, _ = six
    one, i, j, k = O.algebra.gens()
    with pytest.raises(ValueError):
        rosati_positive(O, 3 * (i + j))  # nrd = -6


def test_witness_six(six):
    O, mu = six
    one, i, j, k = O.algebra.gens()
    chi = i + j
    assert witness_multiplier(mu, mu, chi) == 2
    found = {(str(w.omega), w.m) for w in al_witnesses(O, mu, mu, 1)}
    assert (str(chi), 2) in found
    assert al_isogeny_witness(O, mu, mu, bound=1).m == 1  # omega = 1 comes first
    assert al_isogeny_witness(O, mu, mu, bound=1, positive_norm=True).omega.nrd() > 0


def test_witness_soundness_and_symmetry(catalog):
    for D in (6, 10, 15):
        O = catalog[D]
        mu = find_mu(O, D)
        for chi, _ in find_twists(O, mu, bound=2)[:3]:
            mu2 = chi.conj() * mu * chi
            ws = list(al_witnesses(O, mu, mu2, 1))
            assert ws
            for w in ws:
                assert w.omega.conj() * mu * w.omega == mu2 * w.m
                back = w.omega.conj()
                assert witness_multiplier(mu2, mu, back) == w.omega.nrd() ** 2 / w.m


def test_no_witness_for_unrelated_target(six):
    O, mu = six
    one, i, j, k = O.algebra.gens()
    assert al_isogeny_witness(O, mu, one, bound=1) is None
