import pytest

from igusa_locus import oracles
from igusa_locus.quadforms import (
    QuadForm, ambiguous_count, class_number, cm_orders_above, h_tilde, reduced_forms,
)


@pytest.fixture(scope="module")
def brute():
    return oracles.brute_class_numbers(-3000)


def test_matches_reduction_oracle(brute):
    for delta in range(-3000, 0):
        if delta % 4 in (0, 1):
            assert class_number(delta) == brute.get(delta, 0), delta


@pytest.mark.parametrize("delta,h", [(-3, 1), (-4, 1), (-23, 3), (-24, 2), (-40, 2), (-60, 2), (-71, 7), (-84, 4), (-163, 1)])
def test_known_class_numbers(delta, h):
    assert class_number(delta) == h


def test_forms_of_minus_23():
    assert reduced_forms(-23) == [QuadForm(1, 1, 6), QuadForm(2, -1, 3), QuadForm(2, 1, 3)]


def test_reduced_and_genera():
    for delta in range(-1500, 0):
        if delta % 4 not in (0, 1):
            with pytest.raises(ValueError):
                class_number(delta)
            continue
        forms = reduced_forms(delta)
        assert all(f.is_reduced() and f.is_primitive() and f.disc == delta for f in forms)
        amb = ambiguous_count(delta)
        assert amb & (amb - 1) == 0 and amb <= len(forms), delta


@pytest.mark.parametrize("D,expected", [(6, 2), (10, 2), (15, 4), (33, 4), (39, 8), (5, 2), (1, 1)])
def test_h_tilde(D, expected):
    assert h_tilde(D) == expected
    assert h_tilde(D) == sum(class_number(d) for d in cm_orders_above(D))


def test_cm_orders():
    assert cm_orders_above(15) == [-60, -15]
    assert cm_orders_above(6) == [-24]
    with pytest.raises(ValueError):
        cm_orders_above(12)
