from fractions import Fraction

import pytest

from blowup_factor import (
    YkRequest,
    _as_exponent,
    gottsche_vectors,
    linear_form,
    quadratic_form,
    yk_euler,
    yk_gottsche,
    yk_hol,
    yk_main,
)
from coefficients import RationalField
from errors import IntegralityViolation


def test_rank_one_is_euler_product(field, y):
    yk = yk_main(YkRequest(1, 0, 5))
    assert yk.order == 6
    assert yk.terms() == {0: field.one, 2: y, 4: 2 * y ** 2}


def test_rank_two_lowest_coefficient():
    yk = yk_main(YkRequest(2, 1, 4))
    assert yk.lowest_exponent() == 1
    assert yk.format_terms()["q^1"] == "1 + y"


@pytest.mark.parametrize("r, k", [(2, 0), (2, 1), (3, 0), (3, 1), (3, 2), (4, 2)])
def test_lowest_exponent_is_balanced_form(r, k):
    assert yk_main(YkRequest(r, k, 2 * r)).lowest_exponent() == k * (r - k)


@pytest.mark.parametrize("r, k", [(r, k) for r in (1, 2, 3) for k in range(r)])
def test_gottsche_form_matches_lattice_sum(r, k):
    req = YkRequest(r, k, 8 * r)
    assert yk_main(req).equals_to(yk_gottsche(req))


@pytest.mark.parametrize("r, k", [(2, 1), (3, 1), (3, 2)])
def test_reversed_y_sign_gives_same_series(r, k):
    req = YkRequest(r, k, 4 * r)
    assert yk_main(req, y_sign=-1).equals_to(yk_main(req))


def test_invalid_y_sign():
    with pytest.raises(ValueError):
        yk_main(YkRequest(2, 0, 2), y_sign=0)


@pytest.mark.parametrize("r, k", [(1, 0), (2, 1), (3, 2)])
def test_euler_form_is_main_at_one(r, k):
    req = YkRequest(r, k, 6 * r)
    assert yk_main(req).evaluate_y(RationalField(1), 1).equals_to(yk_euler(req))


def test_euler_form_rank_two():
    yk = yk_euler(YkRequest(2, 1, 4))
    assert yk[1] == 2
    assert yk[0] == 0


def test_holomorphic_branch_k_zero_agrees():
    hol = yk_hol(YkRequest(2, 0, 8))
    assert hol.stated == 1
    assert hol.computed.terms() == {0: 1}
    assert hol.agrees


@pytest.mark.parametrize("r, k, exponent", [(2, 1, 1), (3, 1, 2), (3, 2, 2)])
def test_holomorphic_branch_is_monomial_for_positive_k(r, k, exponent):
    hol = yk_hol(YkRequest(r, k, 6 * r))
    assert hol.stated == 0
    assert hol.computed.terms() == {exponent: 1}
    assert not hol.agrees


def test_half_integral_exponent_rejected():
    assert _as_exponent(Fraction(4, 2), "y") == 2
    with pytest.raises(IntegralityViolation):
        _as_exponent(Fraction(1, 2), "y")
    with pytest.raises(IntegralityViolation):
        _as_exponent(Fraction(-1), "q")


def test_gottsche_vectors_are_shifted():
    vectors = list(gottsche_vectors(3, 1, Fraction(1)))
    assert (Fraction(1, 3), Fraction(1, 3)) in vectors
    assert all(x.denominator == 3 for v in vectors for x in v)
    assert all(quadratic_form(v) <= 1 for v in vectors)


def test_forms_on_a_small_vector():
    v = (Fraction(1), Fraction(-1))
    assert quadratic_form(v) == 1
    assert linear_form(v, 3) == 1


@pytest.mark.parametrize("kwargs", [{"rank": 0, "k": 0}, {"rank": 2, "k": 2}, {"rank": 2, "k": -1}])
def test_invalid_request(kwargs):
    with pytest.raises(ValueError):
        YkRequest(order=4, **kwargs)
