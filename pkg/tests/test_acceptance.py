"""Acceptance gate: one test per criterion, one printed line each.

Verdict lines are emitted outside pytest's capture so they stay visible
in the run log.  Every assertion is exact; the timing budgets are part
of the contract and a run over budget fails the criterion.
"""

from chainatlas.selftest import (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    format_result,
)


def _report(result, capsys):
    line = format_result(result)
    with capsys.disabled():
        print(line, flush=True)
    assert result.passed, line
    assert result.duration < result.budget, line


def test_closed_form_multiplicity_equals_weight_table_oracle(capsys):
    _report(criterion_1(), capsys)


def test_upward_weight_dimensions_satisfy_the_lagrangian_identity(capsys):
    _report(criterion_2(), capsys)


def test_polynomiality_predicates_agree_across_routes(capsys):
    _report(criterion_3(), capsys)


def test_detection_range_matches_brute_force(capsys):
    _report(criterion_4(), capsys)


def test_pairing_bodies_are_nonnegative_with_vandermonde_values(capsys):
    _report(criterion_5(), capsys)


def test_rank4_inference_is_delta_independent_with_recorded_verdict(capsys):
    _report(criterion_6(), capsys)


def test_component_enumeration_matches_degree_scan(capsys):
    _report(criterion_7(), capsys)
