"""Restriction pairings of full-flag chains against length-two components."""

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chainatlas.components import component_with_delta
from chainatlas.euler import (
    ChainPoint,
    branch_polynomial,
    chainpoint_from_json,
    chainpoint_to_json,
    epsilon,
    fiber_weight,
    infer_mF_rank4,
    m_EF,
    m_FE,
    nonpositivity_check,
    printed_m_EF_rank4,
    rank4_consistency,
    weight_normalized,
)
from chainatlas.exactpoly import (
    FactoredExpression,
    SparseLaurent,
    expand,
    q_int,
)

E31 = component_with_delta(3, 1, 3, 2)


def test_normalized_determinant_weights_rank_four():
    assert [weight_normalized(i, 4) for i in range(4)] == [0, -15, -17, -6]


def test_fiber_weights_rank_four():
    assert [fiber_weight(i, 4, 3) for i in range(4)] == [
        Fraction(3, 4),
        Fraction(-1, 2),
        Fraction(-2, 3),
        Fraction(-3, 4),
    ]
    assert [fiber_weight(i, 4, 2) for i in range(1, 4)] == [
        Fraction(-3, 4),
        Fraction(-11, 12),
        Fraction(-1),
    ]


def test_fiber_weight_zero_mode_only_changes_the_zeroth_slot():
    assert fiber_weight(0, 4, 3, "zero") == 0
    for i in range(1, 4):
        assert fiber_weight(i, 4, 3, "zero") == fiber_weight(i, 4, 3, "equation")


def test_fiber_weight_rejects_unknown_mode():
    with pytest.raises(ValueError):
        fiber_weight(0, 4, 3, "midpoint")


def test_rank_two_fiber_weights():
    assert fiber_weight(0, 2, 1) == Fraction(1, 2)
    assert fiber_weight(1, 2, 1) == 0


@given(st.integers(min_value=2, max_value=10), st.integers(min_value=1, max_value=9))
def test_weights_above_zero_are_nonpositive(n, n0):
    if n0 >= n:
        n0 = n - 1
    assert nonpositivity_check(n, n0)


def test_epsilon_vanishes_when_only_the_zero_slot_is_filled():
    F = ChainPoint(4, 2, (2, 0, 0, 0))
    assert epsilon(E31, F) == 0


def test_epsilon_reference_values():
    assert epsilon(E31, ChainPoint(4, 2, (0, 1, 0, 0))) == Fraction(7, 2)
    assert epsilon(E31, ChainPoint(4, 2, (0, 0, 0, 1))) == Fraction(3, 4)


def test_branch_polynomials_for_unbalanced_rank_four():
    polys = [branch_polynomial(i, 3, 1) for i in range(4)]
    assert polys[0] == SparseLaurent.one()
    assert polys[1] == SparseLaurent.from_dict({0: 3, 1: 1})
    assert polys[2] == SparseLaurent.from_dict({0: 3, 1: 3})
    assert polys[3] == SparseLaurent.from_dict({0: 1, 1: 3})


def test_branch_polynomials_for_balanced_rank_four():
    polys = [branch_polynomial(i, 2, 2) for i in range(4)]
    assert polys[0] == SparseLaurent.one()
    assert polys[1] == SparseLaurent.from_dict({0: 2, 1: 2})
    assert polys[2] == SparseLaurent.from_dict({0: 1, 1: 4, 2: 1})
    assert polys[3] == SparseLaurent.from_dict({0: 2, 1: 2})


@given(st.integers(min_value=2, max_value=8), st.data())
def test_branch_values_at_one_are_binomials(n, data):
    n0 = data.draw(st.integers(min_value=(n + 1) // 2, max_value=n - 1))
    n1 = n - n0
    for i in range(n):
        assert branch_polynomial(i, n0, n1).value_at_one() == math.comb(n, n - i)


def test_empty_chain_pairs_to_one():
    F = ChainPoint(4, 2, (0, 0, 0, 0))
    pairing = m_FE(E31, F)
    ex = expand(pairing)
    assert ex.ok
    assert ex.prefix == 0
    assert ex.body.is_one()


def test_pairing_body_is_a_product_of_branch_factors():
    F = ChainPoint(4, 2, (0, 1, 0, 2))
    pairing = m_FE(E31, F)
    ex = expand(pairing)
    expected_body = branch_polynomial(1, 3, 1) * branch_polynomial(3, 3, 1) ** 2
    assert ex.body.shift(ex.prefix - epsilon(E31, F)) == expected_body


def test_pairing_value_at_one_multiplies_vandermonde_factors():
    m = (0, 2, 1, 0)
    F = ChainPoint(4, 2, m)
    body_at_one = expand(m_FE(E31, F)).body.value_at_one()
    assert body_at_one == math.prod(math.comb(4, 4 - i) ** mi for i, mi in enumerate(m))


def test_chain_must_match_the_component_rank_and_genus():
    with pytest.raises(ValueError):
        m_FE(E31, ChainPoint(3, 2, (0, 1, 0)))
    with pytest.raises(ValueError):
        m_FE(E31, ChainPoint(4, 3, (0, 1, 0, 0)))


def test_chainpoint_json_roundtrip():
    F = ChainPoint(4, 2, (0, 1, 0, 2))
    assert chainpoint_from_json(chainpoint_to_json(F)) == F


def test_reverse_pairing_divides_out_the_chain_multiplicity():
    F = ChainPoint(4, 2, (0, 1, 0, 0))
    m_F = FactoredExpression(0, ((q_int(2), 3), (q_int(4), 1)))
    reverse = m_EF(E31, F, m_F)
    from chainatlas.multiplicity import m_E_closed

    assert reverse == m_E_closed(E31) * m_FE(E31, F) * m_F.inverse()


def test_reverse_pairing_requires_a_factored_document():
    F = ChainPoint(4, 2, (0, 1, 0, 0))
    with pytest.raises(TypeError):
        m_EF(E31, F, q_int(2))


# ---- rank-4 printed tables ----------------------------------------------


def test_printed_tables_at_the_origin_reduce_to_pure_brackets():
    for partition in ((2, 2), (3, 1)):
        delta = 2 if partition == (2, 2) else 3
        f = printed_m_EF_rank4(partition, delta, 2, (0, 0, 0, 0))
        by_base = {str(base): power for base, power in f.factors}
        assert by_base.get("1 + t + t^2") == 5
        assert by_base.get("1 + t + t^2 + t^3") == 7


def test_printed_exponents_track_the_chain_degrees():
    base = printed_m_EF_rank4((2, 2), 2, 2, (0, 0, 0, 0))
    bumped = printed_m_EF_rank4((2, 2), 2, 2, (0, 1, 0, 0))
    ratio = bumped * base.inverse()
    # raising m1 by one multiplies by [2]/[4]
    assert ratio == FactoredExpression(0, ((q_int(2), 1), (q_int(4), -1)))


def test_inference_is_delta_independent_within_each_partition():
    for partition in ((2, 2), (3, 1)):
        seen = None
        for delta in (0, 2, 4) if partition == (2, 2) else (3, 4, 5):
            inferred = infer_mF_rank4(partition, delta, 2, (0, 1, 0))
            if seen is None:
                seen = inferred
            else:
                assert inferred == seen


def test_consistency_report_shape():
    report = rank4_consistency(g_values=(2,), m_entries=(0, 1))
    assert report["delta_independent"] == {"2,2": True, "3,1": True}
    assert report["status"] in ("consistent", "discrepancy")
    if report["status"] == "discrepancy":
        assert report["witness"] is not None
        assert "inferred_from_22" in report["witness"]


def test_cross_partition_comparison_finds_the_known_mismatch():
    report = rank4_consistency(g_values=(2, 3), m_entries=(0, 1, 2))
    assert report["status"] == "discrepancy"
    w = report["witness"]
    assert w["m"] == [0, 0, 0, 0]
    assert w["inferred_from_22"] == "(1+t)^-7"
    assert w["inferred_from_31"] == "(1+t)^-5"
    assert report["variant_found"] is None
