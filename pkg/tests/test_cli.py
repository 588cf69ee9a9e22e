"""End-to-end runs of the command line interface."""

import csv
import io
import json

from chainatlas import selftest as selftest_module
from chainatlas.cli import main
from chainatlas.components import enumerate_components
from chainatlas.selftest import CriterionResult
from chainatlas.sweep import flatten_record


def run_cli(capsys, *args):
    try:
        code = main(list(args))
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def test_component_reports_all_invariants(capsys):
    code, out, err = run_cli(
        capsys, "component", "--n0", "2", "--n1", "1", "--delta", "2", "--g", "2"
    )
    assert code == 0, err
    doc = json.loads(out)
    assert doc["component"]["delta"] == 2
    assert doc["dim_fixed"] == 6
    assert doc["weight_table"]["t_plus"] == [[1, 6], [2, 4]]
    assert doc["classification"]["wobbly_status"]["kind"] == "wobbly_iff_non_polynomial"


def test_component_rejects_out_of_window_delta(capsys):
    code, _, err = run_cli(
        capsys, "component", "--n0", "2", "--n1", "1", "--delta", "40", "--g", "2"
    )
    assert code == 1
    assert "delta" in err


def test_component_with_degree_recovers_the_splitting(capsys):
    code, out, _ = run_cli(
        capsys,
        "component", "--n0", "2", "--n1", "1", "--delta", "2", "--g", "2", "--d", "1",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["component"]["d"] == 1
    assert doc["component"]["delta"] == 2


def test_component_unrealizable_degree_pairing_fails(capsys):
    code, _, err = run_cli(
        capsys,
        "component", "--n0", "2", "--n1", "1", "--delta", "2", "--g", "2", "--d", "0",
    )
    assert code == 1
    assert "not realized" in err


def test_enumerate_matches_the_library(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "--n", "3", "--d", "1", "--g", "2")
    assert code == 0
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert len(lines) == len(enumerate_components(3, 1, 2)) == 2


def test_multiplicity_includes_the_expanded_polynomial(capsys):
    code, out, _ = run_cli(
        capsys, "multiplicity", "--n0", "2", "--n1", "1", "--delta", "3", "--g", "2"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["polynomial"] is True
    assert doc["m_E"] == "[3]^5"
    assert doc["m_E_expanded"].startswith("1 + 5*t")
    assert doc["m_E_at_1"] == "243"


def test_euler_pairing_reports_weights_and_pairing(capsys):
    code, out, _ = run_cli(
        capsys,
        "euler-pairing",
        "--n0", "3", "--n1", "1", "--delta", "3", "--g", "2",
        "--chain", "0,1,0,0",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["epsilon"] == "7/2"
    assert doc["fiber_weights"] == ["3/4", "-1/2", "-2/3", "-3/4"]
    assert doc["m_FE_at_1"] == "4"


def test_euler_pairing_with_chain_side_document(capsys, tmp_path):
    from chainatlas.exactpoly import FactoredExpression, factored_to_json, q_int

    doc_path = tmp_path / "mf.json"
    doc_path.write_text(json.dumps(factored_to_json(FactoredExpression(0, ((q_int(2), 3), (q_int(4), 1))))))
    code, out, _ = run_cli(
        capsys,
        "euler-pairing",
        "--n0", "3", "--n1", "1", "--delta", "3", "--g", "2",
        "--chain", "0,1,0,0",
        "--mf", str(doc_path),
    )
    assert code == 0
    doc = json.loads(out)
    assert "m_EF" in doc
    assert doc["m_EF_expanded"] is not None


def test_euler_pairing_rejects_wrong_chain_length(capsys):
    code, _, err = run_cli(
        capsys,
        "euler-pairing",
        "--n0", "3", "--n1", "1", "--delta", "3", "--g", "2",
        "--chain", "0,1",
    )
    assert code == 1
    assert "chain" in err


def test_zero_weight_mode_changes_the_prefix(capsys):
    _, out_eq, _ = run_cli(
        capsys,
        "euler-pairing",
        "--n0", "3", "--n1", "1", "--delta", "3", "--g", "2",
        "--chain", "1,0,0,0", "--w0-mode", "equation",
    )
    _, out_zero, _ = run_cli(
        capsys,
        "euler-pairing",
        "--n0", "3", "--n1", "1", "--delta", "3", "--g", "2",
        "--chain", "1,0,0,0", "--w0-mode", "zero",
    )
    assert json.loads(out_eq)["epsilon"] == "0"
    # with the zeroth weight forced to 0 the compensating term drops out
    assert json.loads(out_zero)["epsilon"] == "3"


def test_sweep_formats_carry_the_same_rows(capsys):
    args = ["sweep", "--n", "2:3", "--d", "0:1", "--g", "2",
            "--outputs", "classification,multiplicity"]
    code, out_json, _ = run_cli(capsys, *args, "--format", "json")
    assert code == 0
    code, out_csv, _ = run_cli(capsys, *args, "--format", "csv")
    assert code == 0

    json_rows = [flatten_record(json.loads(line)) for line in out_json.strip().splitlines()]
    reader = csv.DictReader(io.StringIO(out_csv))
    csv_rows = []
    for row in reader:
        csv_rows.append({k: v for k, v in row.items() if v != ""})
    json_rows = [{k: v for k, v in row.items() if v != ""} for row in json_rows]
    assert csv_rows == json_rows


def test_sweep_is_deterministic(capsys):
    args = ["sweep", "--n", "2:4", "--d", "-1:1", "--g", "2:3"]
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second


def test_sweep_resumes_from_an_index(capsys):
    args = ["sweep", "--n", "2:3", "--d", "0:2", "--g", "2"]
    _, full, _ = run_cli(capsys, *args)
    _, tail, _ = run_cli(capsys, *args, "--start-index", "4")
    assert tail.splitlines() == full.splitlines()[4:]


def test_sweep_worker_count_does_not_change_output(capsys, monkeypatch):
    args = ["sweep", "--n", "2:4", "--d", "0:1", "--g", "2"]
    _, serial, _ = run_cli(capsys, *args)
    monkeypatch.setenv("CHAINATLAS_WORKERS", "3")
    _, parallel, _ = run_cli(capsys, *args)
    assert serial == parallel


def test_sweep_euler_output_needs_a_chain(capsys):
    code, _, err = run_cli(capsys, "sweep", "--n", "4", "--d", "0", "--g", "2",
                           "--outputs", "euler")
    assert code == 1
    assert "--chain" in err


def test_sweep_writes_to_a_file(capsys, tmp_path):
    out_path = tmp_path / "records.jsonl"
    code, out, _ = run_cli(capsys, "sweep", "--n", "2", "--d", "0", "--g", "2",
                           "--out", str(out_path))
    assert code == 0
    assert out == ""
    lines = out_path.read_text().strip().splitlines()
    assert len(lines) == 1
    assert json.loads(lines[0])["kind"] == "classification"


def test_selftest_single_criterion_passes(capsys):
    code, out, _ = run_cli(capsys, "selftest", "--only", "7")
    assert code == 0
    assert out.startswith("[7/7] PASS")


def test_selftest_json_format(capsys):
    code, out, _ = run_cli(capsys, "selftest", "--only", "4", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload[0]["number"] == 4
    assert payload[0]["passed"] is True


def test_selftest_failure_exits_two(capsys, monkeypatch):
    broken = CriterionResult(7, "forced failure", False, 0.0, 5.0, {})
    monkeypatch.setitem(selftest_module.CRITERIA, 7, lambda: broken)
    code, out, _ = run_cli(capsys, "selftest", "--only", "7")
    assert code == 2
    assert "FAIL" in out


def test_unknown_flag_exits_one(capsys):
    code, _, err = run_cli(capsys, "enumerate", "--n", "3", "--d", "1", "--g", "2",
                           "--frobnicate")
    assert code == 1
    assert "error" in err
