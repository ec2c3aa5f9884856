import json
import math
import os

import pytest

from qcplan import cli
from qcplan.cli import SWEEP_COLUMNS, main
from qcplan.schema import load_schema, validate
from qcplan.scaling import ScalingParams, logical_error_rate

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def read(path):
    with open(path) as fh:
        return fh.read()


def test_version_and_usage_exit_codes(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    with pytest.raises(SystemExit) as exc:
        main(["estimate", "--platform", "mainframe"])  # not a choice
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_estimate_missing_required_is_usage_error(capsys):
    assert main(["estimate", "--p", "0.001"]) == 2
    assert "requires" in capsys.readouterr().err


def test_estimate_above_threshold_is_domain_error(capsys):
    code = main([
        "estimate", "--c1", "0.1", "--c2", "100", "--p", "0.02",
        "--target-pl", "1e-4", "--platform", "iontrap",
    ])
    assert code == 1
    assert "threshold" in capsys.readouterr().err


def test_estimate_report_json(tmp_path, capsys):
    out = tmp_path / "est.json"
    code = main([
        "estimate", "--c1", "0.1", "--c2", "100", "--p", "0.001",
        "--target-pl", "1e-4", "--platform", "superconducting",
        "--json", str(out),
    ])
    assert code == 0
    doc = json.loads(read(out))
    validate(doc, load_schema("envelope"))
    validate(doc["result"], load_schema("estimate_result"))
    res = doc["result"]
    assert res["required_distance"] == 5
    assert res["physical_qubits_per_logical"] == 81
    assert res["platform_plan"]["physical_qubits_bilinear_total"] == 90
    assert doc["config"]["p"] == 0.001
    assert "user: explicit c1/c2" in doc["provenance"]["scaling_params"]
    # every cost line is recomputable from the echoed config
    for line in res["cost_lines"]:
        assert line["total_cents"] == res["total_physical_qubits"] * line["ppq_cents"]


def test_estimate_iontrap_anchor(tmp_path):
    out = tmp_path / "est.json"
    assert main([
        "estimate", "--preset", "circuit-level-anchor", "--p", "0.001",
        "--target-pl", "1e-10", "--platform", "iontrap", "--json", str(out),
    ]) == 0
    doc = json.loads(read(out))
    assert doc["result"]["platform_plan"]["trap_area_m2"] == pytest.approx(
        doc["result"]["total_physical_qubits"] * 25e-6
    )


def test_estimate_iontrap_million_qubits_is_25_m2(tmp_path):
    # d=3 patch is 25 qubits; 40000 logical patches -> one million physical
    out = tmp_path / "est.json"
    assert main([
        "estimate", "--c1", "0.1", "--c2", "10", "--p", "0.01",
        "--target-pl", "1e-3", "--logical", "40000",
        "--platform", "iontrap", "--json", str(out),
    ]) == 0
    doc = json.loads(read(out))
    assert doc["result"]["required_distance"] == 3
    assert doc["result"]["total_physical_qubits"] == 10**6
    assert doc["result"]["platform_plan"]["trap_area_m2"] == pytest.approx(25.0)


def test_estimate_nv_requires_qubits_per_cell(capsys):
    assert main([
        "estimate", "--preset", "fitted", "--p", "0.001", "--target-pl", "1e-8",
        "--platform", "nv",
    ]) == 2
    assert "qubits-per-cell" in capsys.readouterr().err


def test_simulate_golden_csv(tmp_path):
    out = tmp_path / "sweep.csv"
    code = main([
        "simulate", "--distances", "3,5", "--p-values", "0.05,0.1",
        "--trials", "400", "--seed", "31", "--csv", str(out),
    ])
    assert code == 0
    assert read(out) == read(os.path.join(GOLDEN, "sweep_small.csv"))
    meta = json.loads(read(str(out) + ".meta.json"))
    validate(meta, load_schema("envelope"))
    validate(meta["result"], load_schema("sweep_result"))
    assert meta["seed"] == 31
    assert meta["result"]["csv_columns"] == SWEEP_COLUMNS


def test_simulate_zero_rate_and_stdout(capsys):
    assert main([
        "simulate", "--distances", "3", "--p-values", "0",
        "--trials", "500", "--seed", "1",
    ]) == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert lines[0] == ",".join(SWEEP_COLUMNS)
    assert lines[1].startswith("3,0,500,0,0,0,")


def test_simulate_worker_invariance(tmp_path):
    outs = []
    for workers in ("1", "4"):
        path = tmp_path / f"w{workers}.csv"
        assert main([
            "simulate", "--distances", "3", "--p-values", "0.08",
            "--trials", "6000", "--seed", "7", "--workers", workers,
            "--csv", str(path),
        ]) == 0
        outs.append(read(path))
    assert outs[0] == outs[1]


def test_simulate_rejects_even_distance(capsys):
    assert main([
        "simulate", "--distances", "4", "--p-values", "0.05", "--trials", "10",
    ]) == 2


def test_simulate_phenomenological_and_x_only(tmp_path, capsys):
    out = tmp_path / "phen.csv"
    assert main([
        "simulate", "--distances", "3", "--p-values", "0.03",
        "--noise", "phenomenological", "--trials", "2000", "--seed", "2",
        "--csv", str(out),
    ]) == 0
    row = read(out).strip().splitlines()[1].split(",")
    assert int(row[3]) > 0  # measurement noise produces failures at this p

    assert main([
        "simulate", "--distances", "3", "--p-values", "0.08",
        "--pauli", "x-only", "--trials", "2000", "--seed", "2",
    ]) == 0
    captured = capsys.readouterr()
    row = captured.out.strip().splitlines()[1].split(",")
    failures, x_failures, z_failures = int(row[3]), int(row[6]), int(row[7])
    assert z_failures == 0 and failures == x_failures > 0
    assert "p_l=" not in captured.out  # progress goes to stderr only
    assert "p_l=" in captured.err


def test_config_file_merged_under_flags(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"distances": "3", "p_values": "0.05",
                               "trials": 200, "seed": 5}))
    out1 = tmp_path / "a.csv"
    assert main(["simulate", "--config", str(cfg), "--csv", str(out1)]) == 0
    # flag overrides the config file value
    out2 = tmp_path / "b.csv"
    assert main(["simulate", "--config", str(cfg), "--trials", "300",
                 "--csv", str(out2)]) == 0
    assert ",200," in read(out1) and ",300," in read(out2)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"trails": 5}))
    assert main(["simulate", "--config", str(bad), "--p-values", "0.01"]) == 2


def synthetic_sweep_csv(path, c1, c2, trials=10**6):
    params = ScalingParams(c1, c2)
    rows = []
    for d in (3, 5, 7):
        for p in (0.005, 0.01, 0.02, 0.04):
            pl = logical_error_rate(p, d, params)
            fails = max(1, round(pl * trials))
            se = math.sqrt(pl * (1 - pl) / trials)
            rows.append(f"{d},{p},{trials},{fails},{pl!r},{se!r},{fails},{0},0")
    path.write_text(",".join(SWEEP_COLUMNS) + "\n" + "\n".join(rows) + "\n")


def test_fit_recovers_synthetic_constants(tmp_path):
    csv_path = tmp_path / "synth.csv"
    synthetic_sweep_csv(csv_path, c1=0.1, c2=10.0)
    fit_json = tmp_path / "fit.json"
    preset = tmp_path / "preset.json"
    assert main(["fit", "--csv", str(csv_path), "--json", str(fit_json),
                 "--preset-out", str(preset)]) == 0
    doc = json.loads(read(fit_json))
    validate(doc, load_schema("envelope"))
    validate(doc["result"], load_schema("fit_result"))
    assert doc["result"]["c1_hat"] == pytest.approx(0.1, rel=1e-6)
    assert doc["result"]["c2_hat"] == pytest.approx(10.0, rel=1e-6)
    assert doc["result"]["r2"] > 0.999999
    pdoc = json.loads(read(preset))
    validate(pdoc, load_schema("scaling_preset"))
    # the written preset feeds straight back into estimate
    assert main([
        "estimate", "--preset-file", str(preset), "--p", "0.01",
        "--target-pl", "1e-6", "--platform", "iontrap",
    ]) == 0


def test_fit_rejects_malformed_csv(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n")
    assert main(["fit", "--csv", str(bad)]) == 2
    missing = tmp_path / "nope.csv"
    assert main(["fit", "--csv", str(missing)]) == 2
    assert main(["fit"]) == 2


def test_plan_commands(tmp_path, capsys):
    out = tmp_path / "plan.json"
    assert main(["plan", "iontrap", "--qubits", "1e8", "--json", str(out)]) == 0
    doc = json.loads(read(out))
    validate(doc, load_schema("envelope"))
    validate(doc["result"], load_schema("plan_result"))
    assert doc["result"]["plan"]["trap_area_m2"] == pytest.approx(2500.0)

    assert main(["plan", "superconducting", "--distance", "15",
                 "--json", str(out)]) == 0
    doc = json.loads(read(out))
    plan = doc["result"]["plan"]
    assert plan["airbridges_per_resonator_max"] == 15
    assert plan["within_validated_airbridge_budget"] is True
    assert plan["chip_anchor_discrepancy"] is True

    assert main(["plan", "nv", "--cells-x", "10000", "--cells-y", "10000"]) == 2
    assert main(["plan", "nv", "--cells-x", "10000", "--cells-y", "10000",
                 "--qubits-per-cell", "5", "--json", str(out)]) == 0
    doc = json.loads(read(out))
    assert doc["result"]["plan"]["total_cells"] == 10**8

    assert main(["plan", "grid", "--rows", "39", "--cols", "39",
                 "--json", str(out)]) == 0
    doc = json.loads(read(out))
    assert doc["result"]["plan"]["coupler_count_raw"] == 2964
    assert doc["result"]["plan"]["achievable_distance"] == 20


def test_plan_with_overrides(tmp_path):
    params = tmp_path / "hw.json"
    params.write_text(json.dumps({"iontrap": {"junctions_per_section": 8}}))
    out = tmp_path / "plan.json"
    assert main(["plan", "iontrap", "--qubits", "16", "--params", str(params),
                 "--json", str(out)]) == 0
    doc = json.loads(read(out))
    assert doc["result"]["plan"]["sections"] == 2
    assert doc["result"]["overridden_params"] == ["junctions_per_section"]
    assert "junctions_per_section" in doc["provenance"]["hardware_params"]
    params.write_text(json.dumps({"iontrap": {"junctions_per_sectionn": 8}}))
    assert main(["plan", "iontrap", "--qubits", "16",
                 "--params", str(params)]) == 2


def test_table_golden_text(capsys):
    assert main(["table"]) == 0
    out = capsys.readouterr().out
    assert out == read(os.path.join(GOLDEN, "table_default.txt"))


def test_table_json_and_custom_points(tmp_path, capsys):
    out = tmp_path / "table.json"
    assert main(["table", "--counts", "100", "--ppqs", "2.50",
                 "--json", str(out)]) == 0
    doc = json.loads(read(out))
    validate(doc, load_schema("envelope"))
    validate(doc["result"], load_schema("table_result"))
    assert len(doc["result"]["cells"]) == 1
    assert doc["result"]["cells"][0]["total_cents"] == 25_000
    assert main(["table", "--ppqs", ""]) == 2


def test_table_csv_output(tmp_path):
    out = tmp_path / "cells.csv"
    assert main(["table", "--csv", str(out)]) == 0
    lines = read(out).strip().splitlines()
    assert lines[0].startswith("qubits,ppq_cents,")
    assert len(lines) == 7  # header + six cells
