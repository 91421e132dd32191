from fractions import Fraction

import pytest

from characters import (
    IDENTITY,
    T1_OVER_T2,
    T2_OVER_T1,
    Character,
    ExponentMap,
    Weight,
    l_block,
    n_block,
    substitute,
    tangent_blowup,
    tangent_p2,
    theta_eval,
    theta_limit_factor,
)
from coefficients import RationalField, Specialization, YMode, sample_specialization
from errors import DegenerateSpecialization, TrivialWeightError
from partitions import (
    BlowupFixedPoint,
    LatticeVector,
    Partition,
    PartitionTuple,
    enumerate_blowup_fixed_points,
    enumerate_tuples,
)

EMPTY = Partition(())


def chi(*weights):
    return Character((w, 1) for w in weights)


def test_weight_with_equal_indices_is_pure_t():
    assert Weight(1, 2, 3, 3) == Weight(1, 2)
    assert Weight(0, 0, 2, 2).is_trivial
    assert not Weight(0, 0, 2, 1).is_trivial


def test_n_block_single_box():
    assert n_block(Partition((1,)), Partition((1,)), 1, 1) == chi(Weight(1, 0), Weight(0, 1))


def test_n_block_two_boxes_in_a_row():
    two = Partition((2,))
    assert n_block(two, two, 1, 1) == chi(Weight(0, 2), Weight(0, 1), Weight(1, -1), Weight(1, 0))


def test_n_block_empty():
    assert len(n_block(EMPTY, EMPTY, 1, 2)) == 0


def test_n_block_carries_e_part():
    block = n_block(Partition((1,)), EMPTY, 1, 2)
    # box of Y_1 measured against the empty Y_2: leg -1, arm 0
    assert block == chi(Weight(1, 1, 2, 1))


def test_l_block_cases():
    assert len(l_block(LatticeVector((0, 0)), 1, 2)) == 0
    assert l_block(LatticeVector((1, 0)), 1, 2) == chi(Weight(0, 0, 2, 1))
    assert l_block(LatticeVector((0, 2)), 1, 2) == chi(Weight(1, 1, 2, 1))
    # k_b - k_a = 1 falls in neither branch
    assert len(l_block(LatticeVector((0, 1)), 1, 2)) == 0
    assert l_block(LatticeVector((2, 0)), 1, 2).rank == 3


def test_substitutions():
    t1_plus_t2 = chi(Weight(1, 0), Weight(0, 1))
    assert substitute(t1_plus_t2, T2_OVER_T1) == chi(Weight(1, 0), Weight(-1, 1))
    assert substitute(t1_plus_t2, T1_OVER_T2) == chi(Weight(1, -1), Weight(0, 1))
    assert substitute(Character(), T2_OVER_T1) == Character()
    assert substitute(chi(Weight(1, -1)), IDENTITY.twist(0, 2)) == chi(Weight(1, 1))


def test_substitution_collisions_accumulate():
    c = chi(Weight(1, 0), Weight(2, 1))
    assert substitute(c, T2_OVER_T1).multiplicity(Weight(1, 0)) == 1
    assert substitute(c, T2_OVER_T1).multiplicity(Weight(1, 1)) == 1
    drop_t1 = ExponentMap("drop t1", a11=0, a12=0, a21=0, a22=1)
    merged = substitute(chi(Weight(0, 1), Weight(1, 1)), drop_t1)
    assert merged.multiplicity(Weight(0, 1)) == 2


def test_character_format():
    c = chi(Weight(1, 0), Weight(0, 1), Weight(0, 0, 2, 1))
    assert c.format() == [
        "1 * t1^0 * t2^1",
        "1 * t1^1 * t2^0",
        "1 * e_2/e_1 * t1^0 * t2^0",
    ]


def test_tangent_p2_examples():
    assert tangent_p2(PartitionTuple((Partition((1,)),))) == chi(Weight(1, 0), Weight(0, 1))
    assert tangent_p2(PartitionTuple((EMPTY,))).rank == 0
    assert tangent_p2(PartitionTuple((Partition((2,)),))).rank == 4


def test_tangent_blowup_examples():
    one = PartitionTuple((Partition((1,)),))
    none = PartitionTuple((EMPTY,))
    assert len(tangent_blowup(BlowupFixedPoint(none, none, LatticeVector((0,))))) == 0
    assert tangent_blowup(BlowupFixedPoint(one, none, LatticeVector((0,)))) == chi(
        Weight(1, 0), Weight(-1, 1)
    )
    empties = PartitionTuple((EMPTY, EMPTY))
    lattice_only = tangent_blowup(BlowupFixedPoint(empties, empties, LatticeVector((1, 0))))
    assert lattice_only == chi(Weight(0, 0, 2, 1))


@pytest.mark.parametrize("r", [1, 2, 3])
def test_tangent_p2_rank_and_isolation(r):
    for n in range(5):
        for fp in enumerate_tuples(r, n):
            tangent = tangent_p2(fp)
            assert tangent.rank == 2 * r * n
            assert not tangent.contains_trivial()


@pytest.mark.parametrize("r, k", [(1, 0), (2, 0), (2, 1)])
def test_tangent_blowup_rank_and_isolation(r, k):
    for n in range(5):
        for fp in enumerate_blowup_fixed_points(r, k, n):
            tangent = tangent_blowup(fp)
            assert tangent.rank == 2 * r * n + k * (r - k)
            assert not tangent.contains_trivial()


@pytest.mark.slow
@pytest.mark.parametrize("k", [0, 1, 2])
def test_tangent_blowup_rank_three(k):
    for n in range(5):
        for fp in enumerate_blowup_fixed_points(3, k, n):
            assert tangent_blowup(fp).rank == 6 * n + k * (3 - k)


def test_theta_eval_by_hand(spec_23, field, y):
    got = theta_eval(chi(Weight(1, 0), Weight(0, 1)), spec_23)
    assert got == (field.from_int(2) - y) * (field.from_int(3) - y) / field.from_int(2)


def test_theta_eval_empty_is_one(spec_23, field):
    assert theta_eval(Character(), spec_23) == field.one


def test_theta_eval_rejects_trivial_weight(spec_23):
    with pytest.raises(TrivialWeightError):
        theta_eval(chi(Weight(0, 0)), spec_23)


def test_theta_eval_degenerate_specialization():
    spec = Specialization(Fraction(2), Fraction(1, 2), (Fraction(3),), seed=5)
    with pytest.raises(DegenerateSpecialization) as excinfo:
        theta_eval(chi(Weight(1, 1)), spec)
    assert excinfo.value.seed == 5
    assert excinfo.value.weight == Weight(1, 1)


def test_theta_is_multiplicative(field):
    spec = sample_specialization(2, 23)
    c1 = n_block(Partition((2, 1)), Partition((1,)), 1, 2)
    c2 = l_block(LatticeVector((2, -1)), 1, 2)
    assert theta_eval(c1 + c2, spec) == theta_eval(c1, spec) * theta_eval(c2, spec)


def test_theta_at_y_one_is_one():
    spec = sample_specialization(2, 37, YMode.numeric(1))
    for fp in enumerate_blowup_fixed_points(2, 1, 1):
        assert theta_eval(tangent_blowup(fp), spec) == 1


def test_limit_factor_case_table(spec_23, field, y):
    assert theta_limit_factor(chi(Weight(1, 0, 2, 1)), spec_23) == field.one
    assert theta_limit_factor(chi(Weight(1, 0, 1, 2)), spec_23) == y
    assert theta_limit_factor(chi(Weight(1, -1)), spec_23) == 3 * y - 2


def test_limit_factor_of_p2_point_splits_into_rank_one_factors():
    spec = sample_specialization(3, 53)
    field = spec.field
    for fp in enumerate_tuples(3, 2):
        expected = field.one
        for part in fp:
            expected *= field.y_power(2 * part.size) * theta_eval(n_block(part, part, 1, 1), spec)
        assert theta_limit_factor(tangent_p2(fp), spec) == expected


def test_limit_factor_numeric_field_matches_symbolic():
    y0 = Fraction(3, 4)
    spec = sample_specialization(2, 11)
    numeric = spec.with_y_mode(YMode.numeric(y0))
    c = tangent_blowup(enumerate_blowup_fixed_points(2, 1, 1)[3])
    assert spec.field.evaluate(theta_limit_factor(c, spec), y0) == theta_limit_factor(c, numeric)
    assert isinstance(numeric.field, RationalField)
