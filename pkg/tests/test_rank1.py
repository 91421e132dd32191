from fractions import Fraction

import pytest

from characters import IDENTITY, T1_OVER_T2, T2_OVER_T1
from coefficients import YMode, sample_specialization
from qseries import QSeries
from rank1 import WRequest, no_quotient, verify_nekrasov_okounkov, w_series


def test_w_lowest_terms(spec_23, field, y):
    w = w_series(WRequest(spec_23, IDENTITY, 2))
    assert w.order == 3
    assert w[0] == field.one
    assert w[1] == (field.from_int(2) - y) * (field.from_int(3) - y) / field.from_int(2)


def test_w_substitution_changes_first_term(spec_23, field):
    w = w_series(WRequest(spec_23, T2_OVER_T1, 1))
    expected = field.theta_product([(Fraction(2), 1), (Fraction(3, 2), 1)])
    assert w[1] == expected


def test_w_at_y_one_counts_partitions(partition_numbers):
    spec = sample_specialization(1, 11, YMode.numeric(1))
    w = w_series(WRequest(spec, T1_OVER_T2, 8))
    assert [w[n] for n in range(9)] == partition_numbers[:9]


def test_w_at_y_zero_is_finite():
    spec = sample_specialization(1, 23, YMode.numeric(0))
    w = w_series(WRequest(spec, IDENTITY, 5))
    assert all(isinstance(w[n], Fraction) for n in range(6))


def test_negative_order_rejected(spec_23):
    with pytest.raises(ValueError):
        WRequest(spec_23, IDENTITY, -1)


@pytest.mark.parametrize("order", [0, 1, 5])
def test_product_identity_holds(order):
    outcome = verify_nekrasov_okounkov(sample_specialization(1, 37), order)
    assert outcome["passed"]
    assert outcome["first_failure"] is None
    assert outcome["lhs"].order == order + 1


def test_product_identity_detects_perturbation(caplog):
    spec = sample_specialization(1, 41)
    field = spec.field

    def bump(lhs):
        return lhs + QSeries.monomial(field, field.one, 1, lhs.order)

    outcome = verify_nekrasov_okounkov(spec, 4, lhs_hook=bump)
    assert not outcome["passed"]
    assert outcome["first_failure"] == 1
    assert "fails at q^1" in caplog.text


def test_quotient_is_independent_of_specialization():
    first = no_quotient(sample_specialization(1, 11), 4)
    second = no_quotient(sample_specialization(1, 53), 4)
    assert first == second
