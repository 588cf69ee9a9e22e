"""Closed-form multiplicities against the weight-table route."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainatlas.components import (
    admissible_deltas,
    component_with_delta,
    make_component,
    weight_table,
)
from chainatlas.exactpoly import eval_at_one, expand, is_polynomial, q_int
from chainatlas.multiplicity import (
    detection_partitions,
    e_exponent,
    is_mult_polynomial_analytic,
    m_E_closed,
    m_from_weights,
    mult_report_row,
    p_poly,
)

# brute-force detection table, frozen after checking against the search
DETECTION_TABLE = {
    2: [],
    3: [1],
    4: [2],
    5: [2],
    6: [3],
    7: [2, 3],
    8: [3, 4],
    9: [3, 4],
    10: [4, 5],
    11: [3, 4, 5],
    12: [4, 5, 6],
}


def test_exponent_examples():
    assert e_exponent(component_with_delta(2, 1, 2, 2)) == -1
    assert e_exponent(component_with_delta(2, 1, 3, 2)) == 0


def test_exponent_is_symmetric_under_duality():
    c = component_with_delta(3, 2, 7, 2)
    assert e_exponent(c.dual()) == e_exponent(c)


def test_low_rank_bracket_products():
    # rank 2 has no bracket content at all
    assert p_poly(2, 5).factors == ()
    assert p_poly(2, 5).prefix_exponent == 0
    ex = expand(p_poly(3, 2))
    assert ex.ok
    assert ex.body.shift(ex.prefix) == q_int(3) ** 5


def test_rank_four_bracket_product_contains_the_even_correction():
    # [4] carries a (1+t) factor; the closed form strips it
    f = p_poly(4, 2)
    bases = {str(base): power for base, power in f.factors}
    assert bases.get("1 + t + t^2") == 5
    assert bases.get("1 + t + t^2 + t^3") == 7
    assert bases.get("1 + t") == -7


def test_smallest_component_multiplicity_is_one_plus_t():
    c = component_with_delta(1, 1, 1, 2)
    ex = expand(m_E_closed(c))
    assert ex.ok
    assert ex.body.shift(ex.prefix) == q_int(2)


def test_polynomial_multiplicity_value_at_one():
    c = component_with_delta(2, 1, 3, 2)
    assert eval_at_one(m_E_closed(c)) == 243


def test_closed_form_matches_weight_table_samples():
    samples = [
        (1, 1, 1, 2),
        (2, 1, 2, 2),
        (2, 1, 3, 2),
        (2, 2, 2, 3),
        (3, 1, 4, 2),
        (3, 2, 8, 2),
        (4, 3, 15, 3),
    ]
    for n0, n1, delta, g in samples:
        c = component_with_delta(n0, n1, delta, g)
        closed = m_E_closed(c)
        oracle = m_from_weights(weight_table(c))
        assert closed == oracle


@settings(max_examples=30, deadline=None)
@given(
    st.integers(min_value=1, max_value=3),
    st.integers(min_value=1, max_value=3),
    st.integers(min_value=2, max_value=3),
    st.data(),
)
def test_closed_form_matches_weight_table_randomized(n0, n1, g, data):
    if n0 < n1:
        n0, n1 = n1, n0
    deltas = admissible_deltas(n0, n1, g)
    delta = data.draw(st.sampled_from(deltas))
    c = component_with_delta(n0, n1, delta, g)
    assert m_E_closed(c) == m_from_weights(weight_table(c))


def test_multiplicity_polynomial_exactly_above_the_delta_threshold():
    # split (2,1): the closed form is [3]^{5(g-1)} (1+t)^{delta-3(g-1)}
    for g in (2, 3):
        for delta in admissible_deltas(2, 1, g):
            c = component_with_delta(2, 1, delta, g)
            analytic = is_mult_polynomial_analytic(c)
            assert analytic == (delta >= 3 * (g - 1))
            assert analytic == is_polynomial(m_E_closed(c))


def test_weight_route_requires_a_valid_component():
    with pytest.raises(ValueError):
        weight_table(make_component(2, 1, 9, -9, 2))


def test_detection_matches_frozen_table():
    for n, expected in DETECTION_TABLE.items():
        assert detection_partitions(n) == expected


def test_detection_is_empty_in_rank_two():
    assert detection_partitions(2) == []


def test_report_row_shapes():
    poly_row = mult_report_row(component_with_delta(2, 1, 3, 2))
    assert poly_row["polynomial"] is True
    assert poly_row["m_E_at_1"] == "243"
    assert poly_row["e_exponent"] == 0
    assert poly_row["m_E"] == "[3]^5"

    wobbly_row = mult_report_row(component_with_delta(2, 1, 2, 2))
    assert wobbly_row["polynomial"] is False
    assert wobbly_row["m_E_at_1"] is None
