"""Component descriptors: invariants, validity, enumeration, weights."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chainatlas.components import (
    OutOfScope,
    Wobbly,
    WobblyIffNonPolynomial,
    admissible_deltas,
    classification_to_json,
    classify,
    component_with_delta,
    delta_bounds,
    descriptor_from_json,
    descriptor_to_json,
    dim_fixed,
    dim_z,
    enumerate_components,
    generic_h0,
    in_wobbly_divisor_range,
    is_valid,
    make_component,
    toledo_bound_check,
    weight_table,
    wobbly_divisor_range,
)

# a small wobbly representative used throughout: rank 3, split (2,1)
C212 = make_component(2, 1, 0, 1, 2)


def test_invariants_of_the_reference_component():
    assert C212.n == 3
    assert C212.d == 1
    assert C212.delta == 2
    assert C212.tau == Fraction(-4, 3)
    assert C212.orientation == "standard"


def test_reference_dimensions():
    assert dim_fixed(C212) == 6
    assert dim_z(C212) == 6
    assert generic_h0(C212) == 1


def test_reference_weight_table():
    wt = weight_table(C212)
    assert wt.t_plus == ((1, 6), (2, 4))
    assert wt.base == ((1, 2), (2, 3), (3, 5))
    assert wt.t_plus_total == wt.base_total == 3 * 3 * (2 - 1) + 1


def test_dual_swaps_and_negates():
    dual = C212.dual()
    assert (dual.n0, dual.n1, dual.d0, dual.d1) == (1, 2, -1, 0)
    assert dual.orientation == "dual"
    assert dual.delta == C212.delta
    assert dual.tau == C212.tau
    assert dual.standard() == C212


def test_standard_of_a_standard_component_is_itself():
    assert C212.standard() == C212


def test_descriptor_rejects_bad_input():
    with pytest.raises(ValueError):
        make_component(0, 1, 0, 0, 2)
    with pytest.raises(ValueError):
        make_component(1, 1, 0, 0, 1)


def test_toledo_bound_on_valid_components():
    for c in enumerate_components(3, 1, 2):
        assert toledo_bound_check(c)


def test_delta_window_is_strict_only_for_unequal_ranks():
    lo, hi = delta_bounds(2, 1, 2)
    assert lo == 1 * 1 * 1 + 1  # left end excluded when n0 > n1
    assert hi == 2 * 2 * 1 * 1 - 1
    lo_eq, hi_eq = delta_bounds(2, 2, 3)
    assert lo_eq == 0  # left end included when n0 = n1
    assert hi_eq == 2 * 4 * 2 - 1


def test_validity_includes_window_and_congruence():
    assert is_valid(C212)
    assert not is_valid(make_component(2, 1, 5, -4, 2))  # delta too large
    # the other splitting in the same window
    assert is_valid(make_component(2, 1, 1, 1, 2))
    assert make_component(2, 1, 1, 1, 2).delta == 3


def test_admissible_deltas_are_multiples_of_the_rank_gcd():
    assert admissible_deltas(2, 1, 2) == [2, 3]
    assert all(delta % 2 == 0 for delta in admissible_deltas(4, 2, 2))
    assert all(delta % 3 == 0 for delta in admissible_deltas(3, 3, 2))


@given(
    st.integers(min_value=1, max_value=4),
    st.integers(min_value=1, max_value=4),
    st.integers(min_value=2, max_value=4),
)
def test_every_admissible_delta_is_realized(n0, n1, g):
    if n0 < n1:
        n0, n1 = n1, n0
    for delta in admissible_deltas(n0, n1, g):
        c = component_with_delta(n0, n1, delta, g)
        assert c.delta == delta
        assert is_valid(c)


def test_unrealizable_delta_is_rejected():
    with pytest.raises(ValueError):
        component_with_delta(2, 2, 1, 2)  # odd delta, gcd 2
    with pytest.raises(ValueError):
        component_with_delta(2, 1, 0, 2)  # below the window


def test_enumeration_frozen_cells():
    rank2 = enumerate_components(2, 1, 2)
    assert len(rank2) == 1
    assert (rank2[0].n0, rank2[0].n1, rank2[0].delta) == (1, 1, 1)

    rank3 = enumerate_components(3, 1, 2)
    assert [(c.n0, c.n1, c.delta) for c in rank3] == [(1, 2, 3), (2, 1, 2)]

    rank2_even = enumerate_components(2, 0, 2)
    assert [(c.d0, c.d1, c.delta) for c in rank2_even] == [(-1, 1, 0)]


def test_enumeration_is_sorted_and_duplicate_free():
    for n, d, g in [(4, 0, 2), (4, 3, 3), (5, -2, 2), (6, 1, 2)]:
        comps = enumerate_components(n, d, g)
        keys = [(c.n0, c.delta) for c in comps]
        assert keys == sorted(keys)
        full = [(c.n0, c.d0) for c in comps]
        assert len(set(full)) == len(full)


@given(st.integers(min_value=2, max_value=5), st.integers(min_value=-4, max_value=4), st.integers(min_value=2, max_value=3))
def test_enumerated_components_carry_the_requested_cell(n, d, g):
    for c in enumerate_components(n, d, g):
        assert c.n == n
        assert c.d == d
        assert c.g == g
        assert is_valid(c)


def test_wobbly_divisor_range_reference():
    assert wobbly_divisor_range(2, 1, 2) == (2, 3)
    assert in_wobbly_divisor_range(C212)


def test_classification_labels_by_rank():
    rank2 = classify(enumerate_components(2, 1, 2)[0])
    assert isinstance(rank2.wobbly_status, OutOfScope)

    rank3 = classify(C212)
    assert isinstance(rank3.wobbly_status, WobblyIffNonPolynomial)
    assert rank3.wobbly_status.resolved is True  # delta below the threshold

    big = classify(component_with_delta(3, 2, 7, 2))
    assert isinstance(big.wobbly_status, Wobbly)


def test_case_two_hint_drops_one_from_each_rank():
    # high delta: no lower-delta limit exists, the flow leaves length two
    deltas = admissible_deltas(3, 2, 2)
    rec = classify(component_with_delta(3, 2, deltas[-1], 2))
    assert rec.wobbly_status.case == "II"
    assert rec.wobbly_type_hint == (2, 1, 1, 1)


def test_rank4_equal_split_needs_genus_above_two():
    rec = classify(component_with_delta(2, 2, 0, 2))
    assert isinstance(rec.wobbly_status, OutOfScope)
    rec3 = classify(component_with_delta(2, 2, 0, 3))
    assert isinstance(rec3.wobbly_status, Wobbly)


def test_descriptor_json_roundtrip():
    for c in (C212, C212.dual()):
        doc = descriptor_to_json(c)
        assert descriptor_from_json(doc) == c
    doc = descriptor_to_json(C212)
    assert doc["tau"] == "-4/3"
    assert doc["orientation"] == "standard"


def test_classification_json_is_flat_and_stringly_safe():
    doc = classification_to_json(classify(C212))
    assert doc["component"]["delta"] == 2
    assert doc["wobbly_status"]["kind"] == "wobbly_iff_non_polynomial"
    assert doc["dim_fixed"] == 6
