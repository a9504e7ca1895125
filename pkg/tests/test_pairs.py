"""Pair validation, discrepancy functionals, indices, and minimal values."""

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from toricmld import pairs as tp
from toricmld.errors import (
    DimensionMismatch,
    InvalidParameters,
    LengthMismatch,
    MissingGamma,
    NonPrimitiveRay,
    NonStandardCoefficient,
    NotFullDimensional,
    NotKlt,
    NotLogQGorenstein,
    NotStronglyConvex,
    RedundantRay,
)
from toricmld.lattice import dot


def make_pair(dim, rays, values):
    return tp.ToricLogPair(dim, tuple(rays), tp.standard_coefficients(values))


# Hand-checked instances used throughout: (pair, index, mld, witness)
QUADRANT_PLAIN = make_pair(2, [(1, 0), (0, 1)], [0, 0])
QUADRANT_ONE_AXIS = make_pair(2, [(1, 0), (0, 1)], [1, 0])
QUADRANT_HALF = make_pair(2, [(1, 0), (0, 1)], [Fraction(1, 2), 0])
THIRD_THIRD = make_pair(2, [(0, 1), (3, -1)], [0, 0])  # 1/3(1,1) quotient
LINE_FIFTH = make_pair(1, [(1,)], [Fraction(4, 5)])
ALL_ONES = make_pair(2, [(1, 0), (0, 1)], [1, 1])


# --- coefficients -------------------------------------------------------------


def test_coefficient_values():
    assert tp.BoundaryCoefficient(1).value == 0
    assert tp.BoundaryCoefficient(2).value == Fraction(1, 2)
    assert tp.BoundaryCoefficient(5).value == Fraction(4, 5)
    assert tp.ONE.value == 1


def test_coefficient_from_value_roundtrip():
    for b in [0, Fraction(1, 2), Fraction(2, 3), Fraction(6, 7), 1]:
        assert tp.BoundaryCoefficient.from_value(b).value == b


@pytest.mark.parametrize(
    "bad", [Fraction(1, 3), Fraction(3, 5), Fraction(3, 2), -1, Fraction(-1, 2)]
)
def test_coefficient_rejects_non_standard_values(bad):
    with pytest.raises(NonStandardCoefficient):
        tp.BoundaryCoefficient.from_value(bad)


def test_coefficient_rejects_bad_levels():
    with pytest.raises(NonStandardCoefficient):
        tp.BoundaryCoefficient(0)
    with pytest.raises(NonStandardCoefficient):
        tp.BoundaryCoefficient(-3)


# --- validation ----------------------------------------------------------------


def test_validate_accepts_good_pairs():
    for pair in (QUADRANT_PLAIN, QUADRANT_HALF, THIRD_THIRD, LINE_FIFTH, ALL_ONES):
        assert tp.validate_pair(pair) is pair


def test_validate_accepts_non_simplicial_cone():
    pair = make_pair(3, [(0, 0, 1), (1, 0, 2), (0, 1, 1), (1, 1, 1)], [0, 0, 0, 0])
    assert tp.validate_pair(pair) is pair


@pytest.mark.parametrize(
    "dim, rays, values, err",
    [
        (0, [], [], InvalidParameters),
        (2, [(1, 0, 0), (0, 1)], [0, 0], DimensionMismatch),
        (2, [(1, 0), (0, 1)], [0], LengthMismatch),
        (2, [(2, 0), (0, 1)], [0, 0], NonPrimitiveRay),
        (2, [(0, 0), (0, 1)], [0, 0], NonPrimitiveRay),
        (2, [(1, 0), (-1, 0)], [0, 0], NotFullDimensional),
        (2, [(1, 0), (-1, 0), (0, 1)], [0, 0, 0], NotStronglyConvex),
        (2, [(1, 0), (0, 1), (1, 1)], [0, 0, 0], RedundantRay),
        (2, [(1, 0), (0, 1), (1, 0)], [0, 0, 0], RedundantRay),
        (3, [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 3)], [0] * 4, RedundantRay),
    ],
)
def test_validate_rejects_bad_pairs(dim, rays, values, err):
    with pytest.raises(err):
        tp.validate_pair(make_pair(dim, rays, values))


def test_validate_rejects_raw_coefficient_values():
    pair = tp.ToricLogPair(2, ((1, 0), (0, 1)), (Fraction(1, 2), 0))
    with pytest.raises(NonStandardCoefficient):
        tp.validate_pair(pair)


def test_cone_facets_of_quadrant():
    assert tp.cone_facets(QUADRANT_PLAIN) == ((-1, 0), (0, -1))


# --- solve_psi / compute_index ---------------------------------------------------


def test_solve_psi_known_values():
    assert tp.solve_psi(QUADRANT_PLAIN) == (1, 1)
    assert tp.solve_psi(QUADRANT_ONE_AXIS) == (0, 1)
    assert tp.solve_psi(QUADRANT_HALF) == (Fraction(1, 2), 1)
    assert tp.solve_psi(THIRD_THIRD) == (Fraction(2, 3), 1)
    assert tp.solve_psi(ALL_ONES) == (0, 0)


def test_solve_psi_detects_inconsistent_systems():
    # simplicial part forces psi = (0, 0, 1), which the last ray contradicts;
    # this ray set is not a valid cone description (the last ray is interior)
    # but solve_psi works on the raw data
    inconsistent = make_pair(
        3, [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 3)], [0, 0, 0, 0]
    )
    with pytest.raises(NotLogQGorenstein):
        tp.solve_psi(inconsistent)
    # a genuinely valid non-simplicial cone that is not log Q-Gorenstein
    valid_cone = make_pair(
        3, [(0, 0, 1), (1, 0, 2), (0, 1, 1), (1, 1, 1)], [0, 0, 0, 0]
    )
    tp.validate_pair(valid_cone)
    with pytest.raises(NotLogQGorenstein):
        tp.solve_psi(valid_cone)


def test_compute_index_known_values():
    assert tp.compute_index(QUADRANT_PLAIN) == 1
    assert tp.compute_index(QUADRANT_HALF) == 2
    assert tp.compute_index(THIRD_THIRD) == 3
    assert tp.compute_index(LINE_FIFTH) == 5
    assert tp.compute_index(ALL_ONES) == 1


# --- compute_mld -------------------------------------------------------------------


def test_mld_of_smooth_quadrant():
    rep = tp.compute_mld(QUADRANT_PLAIN)
    assert (rep.index, rep.mld, rep.mld_denominator) == (1, 2, 1)
    assert rep.witness == (1, 1)
    assert rep.klt and rep.value_group_unit


def test_mld_of_cyclic_third():
    rep = tp.compute_mld(THIRD_THIRD)
    assert (rep.index, rep.mld, rep.mld_denominator) == (3, Fraction(2, 3), 3)
    assert rep.witness == (1, 0)
    assert rep.klt and rep.value_group_unit


def test_mld_with_one_coefficient_reduces_to_a_quotient():
    rep = tp.compute_mld(QUADRANT_ONE_AXIS)
    assert (rep.index, rep.mld, rep.mld_denominator) == (1, 1, 1)
    assert rep.witness == (1, 1)
    assert rep.klt


def test_mld_with_half_coefficient():
    rep = tp.compute_mld(QUADRANT_HALF)
    assert (rep.index, rep.mld, rep.mld_denominator) == (2, Fraction(3, 2), 2)
    assert rep.witness == (1, 1)


def test_mld_in_dimension_one():
    rep = tp.compute_mld(LINE_FIFTH)
    assert (rep.index, rep.mld, rep.mld_denominator) == (5, Fraction(1, 5), 5)
    assert rep.witness == (1,)


def test_mld_of_all_ones_boundary_is_zero():
    rep = tp.compute_mld(ALL_ONES)
    assert (rep.index, rep.mld, rep.mld_denominator) == (1, 0, 1)
    assert not rep.klt and not rep.value_group_unit
    assert rep.witness == (1, 1)


def test_du_val_type_a_cones():
    for k in range(1, 6):
        rep = tp.compute_mld(make_pair(2, [(0, 1), (k + 1, -k)], [0, 0]))
        assert (rep.index, rep.mld, rep.mld_denominator) == (1, 1, 1)


# --- the oracle --------------------------------------------------------------------


def test_oracle_agrees_on_hand_checked_pairs():
    for pair in (QUADRANT_PLAIN, QUADRANT_ONE_AXIS, QUADRANT_HALF,
                 THIRD_THIRD, LINE_FIFTH):
        rep = tp.compute_mld(pair)
        val, wit = tp.mld_oracle(pair)
        assert val == rep.mld
        assert all(dot(u, wit) < 0 for u in tp.cone_facets(pair))
        assert dot(tp.solve_psi(pair), wit) == val


def test_oracle_refuses_non_klt_pairs():
    with pytest.raises(NotKlt):
        tp.mld_oracle(ALL_ONES)


@given(
    st.integers(min_value=1, max_value=12),
    st.integers(min_value=0, max_value=11),
    st.sampled_from([0, Fraction(1, 2), Fraction(2, 3), 1]),
    st.sampled_from([0, Fraction(1, 2), Fraction(2, 3), 1]),
)
@settings(deadline=None, max_examples=80)
def test_two_dim_invariants_and_oracle_agreement(r, s, b1, b2):
    assume(s < r and gcd(r, s) == 1)
    assume((b1, b2) != (1, 1))
    pair = tp.validate_pair(make_pair(2, [(0, 1), (r, -s)], [b1, b2]))
    rep = tp.compute_mld(pair)
    assert rep.klt and rep.mld > 0
    assert rep.index % rep.mld_denominator == 0
    assert rep.value_group_unit
    assert all(dot(u, rep.witness) < 0 for u in tp.cone_facets(pair))
    assert dot(rep.psi, rep.witness) == rep.mld
    val, _ = tp.mld_oracle(pair)
    assert val == rep.mld
    # sharp two-dimensional index bound
    assert rep.index <= 2 * rep.mld_denominator**2


# --- bound_check ----------------------------------------------------------------------


def test_bound_check_low_dimensions():
    v1 = tp.bound_check(tp.compute_mld(LINE_FIFTH))
    assert v1.passed and v1.constant == 1 and v1.limit == 5 and v1.ratio == 1
    v2 = tp.bound_check(tp.compute_mld(THIRD_THIRD))
    assert v2.passed and v2.constant == 2 and v2.limit == 18
    assert v2.ratio == Fraction(1, 3)


def test_bound_check_needs_gamma_in_higher_dimension():
    rep = tp.compute_mld(
        make_pair(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)], [0, 0, 0])
    )
    with pytest.raises(MissingGamma):
        tp.bound_check(rep)
    v = tp.bound_check(rep, gamma=Fraction(1, 2))
    assert v.constant == 24 and v.passed
    with pytest.raises(InvalidParameters):
        tp.bound_check(rep, gamma=Fraction(2, 3))
