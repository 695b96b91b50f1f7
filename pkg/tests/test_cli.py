"""End-to-end tests of the command-line harness."""

import json
import math

import numpy as np
import pytest

from qantenna.cli import (
    EXIT_DATA,
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_USAGE,
    METRICS_COLUMNS,
    main,
    read_csv,
)
from qantenna.geometry import load_sites


@pytest.fixture()
def instance_file(tmp_path):
    """Small unconstrained instance generated through the CLI itself."""
    sites = tmp_path / "sites.json"
    inst = tmp_path / "inst.json"
    code = main([
        "generate", "--n", "8", "--bbox", "0,0,5,5", "--rmax", "1.0",
        "--seed", "7", "--out", str(sites),
        "--instance-out", str(inst), "--lam", "0",
    ])
    assert code == EXIT_OK
    return inst


class TestGenerate:
    def test_writes_sites(self, tmp_path):
        out = tmp_path / "sites.json"
        code = main(["generate", "--n", "5", "--bbox", "0,0,2,2", "--rmax", "0.5",
                     "--seed", "3", "--out", str(out)])
        assert code == EXIT_OK
        sites = load_sites(out)
        assert len(sites) == 5

    def test_deterministic(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for out in (a, b):
            main(["generate", "--n", "6", "--bbox", "0,0,2,2", "--rmax", "0.5",
                  "--seed", "11", "--out", str(out)])
        assert a.read_bytes() == b.read_bytes()

    def test_bad_bbox_is_usage_error(self, tmp_path):
        code = main(["generate", "--n", "5", "--bbox", "0,0,2", "--rmax", "0.5",
                     "--seed", "3", "--out", str(tmp_path / "x.json")])
        assert code == EXIT_USAGE


class TestSolveExact:
    def test_output_fields(self, instance_file, tmp_path):
        out = tmp_path / "exact.json"
        code = main(["solve-exact", "--instance", str(instance_file), "--out", str(out)])
        assert code == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["n"] == 8
        assert doc["h_min"] < 0
        assert doc["degeneracy"] == len(doc["ground_strings"])
        assert all(len(s) == 8 for s in doc["ground_strings"])
        assert doc["gap"] >= 0

    def test_missing_instance_is_data_error(self, tmp_path):
        code = main(["solve-exact", "--instance", str(tmp_path / "nope.json"),
                     "--out", str(tmp_path / "out.json")])
        assert code == EXIT_DATA


class TestQaaCommand:
    def test_metrics_schema_and_determinism(self, instance_file, tmp_path):
        out1, out2 = tmp_path / "r1", tmp_path / "r2"
        for out in (out1, out2):
            code = main(["qaa", "--instance", str(instance_file), "--p", "5,10",
                         "--delta", "0.5", "--out", str(out),
                         "--emit-cp", "--emit-histogram"])
            assert code == EXIT_OK
        assert (out1 / "metrics.csv").read_bytes() == (out2 / "metrics.csv").read_bytes()
        assert (out1 / "cp.csv").read_bytes() == (out2 / "cp.csv").read_bytes()
        assert (out1 / "histogram.csv").read_bytes() == (out2 / "histogram.csv").read_bytes()
        header, rows = read_csv(out1 / "metrics.csv")
        assert header == METRICS_COLUMNS
        assert [r["p"] for r in rows] == ["5", "10"]
        assert all(float(r["alpha"]) <= 1 + 1e-12 for r in rows)

    def test_shot_mode_repetitions(self, instance_file, tmp_path):
        out = tmp_path / "shots"
        code = main(["qaa", "--instance", str(instance_file), "--p", "5",
                     "--delta", "0.5", "--shots", "2000", "--seed", "4",
                     "--repetitions", "3", "--out", str(out)])
        assert code == EXIT_OK
        _, rows = read_csv(out / "metrics.csv")
        assert len(rows) == 3
        assert [r["seed"] for r in rows] == ["0", "1", "2"]
        assert [r["n_meas"] for r in rows] == ["2000"] * 3
        # repetitions differ through their measurement substreams
        assert len({r["alpha"] for r in rows}) > 1

    def test_twenty_repetitions_protocol(self, instance_file, tmp_path):
        # the finite-shot benchmarking protocol: 20 seeds of 10^4 shots each
        out = tmp_path / "protocol"
        code = main(["qaa", "--instance", str(instance_file), "--p", "20",
                     "--delta", "0.5", "--shots", "10000", "--seed", "9",
                     "--repetitions", "20", "--out", str(out)])
        assert code == EXIT_OK
        _, rows = read_csv(out / "metrics.csv")
        assert len(rows) == 20
        assert {r["n_meas"] for r in rows} == {"10000"}
        alphas = [float(r["alpha"]) for r in rows]
        assert np.std(alphas) > 0  # independent measurement substreams

    def test_manifest_written(self, instance_file, tmp_path):
        out = tmp_path / "run"
        main(["qaa", "--instance", str(instance_file), "--p", "5",
              "--delta", "0.5", "--out", str(out)])
        manifests = list(out.glob("*.manifest.json"))
        assert len(manifests) == 1
        doc = json.loads(manifests[0].read_text())
        assert doc["outputs"] == ["metrics.csv"]
        assert doc["flags"]["delta"] == 0.5
        assert "qantenna" in doc["versions"]

    def test_cp_curve_is_monotone(self, instance_file, tmp_path):
        out = tmp_path / "cp"
        main(["qaa", "--instance", str(instance_file), "--p", "20",
              "--delta", "0.5", "--out", str(out), "--emit-cp"])
        _, rows = read_csv(out / "cp.csv")
        values = [float(r["cp"]) for r in rows]
        assert all(b <= a + 1e-15 for a, b in zip(values, values[1:]))


class TestQaoaCommand:
    def test_ladder_rows(self, instance_file, tmp_path):
        out = tmp_path / "qaoa"
        code = main(["qaoa", "--instance", str(instance_file), "--pmax", "2",
                     "--walkers", "1", "--iters", "10", "--out", str(out)])
        assert code == EXIT_OK
        _, rows = read_csv(out / "metrics.csv")
        assert [r["p"] for r in rows] == ["1", "2"]
        assert all(r["algo"] == "qaoa" for r in rows)
        assert all(r["delta"] == "" for r in rows)
        values = [float(r["alpha"]) for r in rows]
        assert values[1] >= values[0] - 1e-12  # exact-mode ladder is monotone


class TestDeltaSweep:
    def test_row_count_is_grid_product(self, instance_file, tmp_path):
        out = tmp_path / "sweep"
        code = main(["delta-sweep", "--instance", str(instance_file),
                     "--p", "2,4", "--deltas", "0.2:0.6:0.2", "--out", str(out)])
        assert code == EXIT_OK
        _, rows = read_csv(out / "sweep.csv")
        assert len(rows) == 2 * 3
        assert {r["p"] for r in rows} == {"2", "4"}


class TestPmin:
    def test_qaa_pmin(self, instance_file, tmp_path):
        out = tmp_path / "pmin"
        code = main(["pmin", "--instance", str(instance_file), "--solver", "qaa",
                     "--alpha", "0.5", "--pgrid", "2,5,10,20", "--delta", "0.5",
                     "--out", str(out)])
        assert code == EXIT_OK
        _, rows = read_csv(out / "pmin.csv")
        assert rows[0]["alpha_threshold"] == "0.5"
        assert rows[0]["p_min"] != ""

    def test_unattainable_writes_empty(self, instance_file, tmp_path):
        out = tmp_path / "pmin2"
        main(["pmin", "--instance", str(instance_file), "--solver", "qaa",
              "--alpha", "1.5", "--pgrid", "2,5", "--delta", "0.5",
              "--out", str(out)])
        _, rows = read_csv(out / "pmin.csv")
        assert rows[0]["p_min"] == ""

    def test_qaa_without_delta_is_usage_error(self, instance_file, tmp_path):
        code = main(["pmin", "--instance", str(instance_file), "--solver", "qaa",
                     "--alpha", "0.5", "--pgrid", "2,5",
                     "--out", str(tmp_path / "x")])
        assert code == EXIT_USAGE


class TestResources:
    def test_formula_mode_with_budget_note(self, tmp_path, capsys):
        out = tmp_path / "res"
        code = main(["resources", "--n", "100", "--lambda-case", "full",
                     "--p", "1", "--budget", "2880", "--out", str(out)])
        assert code == EXIT_OK
        printed = capsys.readouterr().out
        assert "g1=200 g2=4950 total=5150" in printed
        assert "74 (full)" in printed
        assert "quote 75" in printed  # documented divergence from the published bound
        _, rows = read_csv(out / "resources.csv")
        assert rows[0] == {"n": "100", "lambda_case": "full", "p": "1",
                           "g1": "200", "g2": "4950", "total": "5150"}

    def test_instance_mode(self, instance_file, tmp_path):
        out = tmp_path / "res2"
        code = main(["resources", "--instance", str(instance_file), "--p", "2",
                     "--out", str(out)])
        assert code == EXIT_OK
        _, rows = read_csv(out / "resources.csv")
        assert rows[0]["lambda_case"] == "sparse"
        assert int(rows[0]["g1"]) == 2 * 8 * 2


class TestSample:
    def test_counts_json_and_state_round_trip(self, instance_file, tmp_path):
        counts_path = tmp_path / "counts.json"
        state_path = tmp_path / "state.qsv"
        code = main(["sample", "--instance", str(instance_file), "--p", "10",
                     "--delta", "0.5", "--shots", "3000", "--seed", "2",
                     "--out", str(counts_path), "--state-out", str(state_path)])
        assert code == EXIT_OK
        doc = json.loads(counts_path.read_text())
        assert doc["n_meas"] == 3000
        assert sum(doc["counts"].values()) == 3000
        assert all(len(k) == 8 for k in doc["counts"])
        # sampling the dumped state reproduces the same counts
        again = tmp_path / "again.json"
        code = main(["sample", "--state", str(state_path), "--shots", "3000",
                     "--seed", "2", "--out", str(again)])
        assert code == EXIT_OK
        assert json.loads(again.read_text())["counts"] == doc["counts"]


class TestReport:
    def test_summarises_run(self, instance_file, tmp_path, capsys):
        out = tmp_path / "run"
        main(["qaa", "--instance", str(instance_file), "--p", "5,10",
              "--delta", "0.5", "--out", str(out)])
        run_id = next(out.glob("*.manifest.json")).name.split(".")[0]
        capsys.readouterr()
        code = main(["report", "--dir", str(out), "--run", run_id])
        assert code == EXIT_OK
        printed = capsys.readouterr().out
        assert "alpha" in printed and "p_gs" in printed
        assert run_id in printed

    def test_missing_run_is_data_error(self, tmp_path):
        code = main(["report", "--dir", str(tmp_path), "--run", "deadbeef"])
        assert code == EXIT_DATA

    def test_report_matches_csv_aggregates(self, instance_file, tmp_path, capsys):
        out = tmp_path / "run"
        main(["qaa", "--instance", str(instance_file), "--p", "5",
              "--delta", "0.5", "--shots", "1000", "--repetitions", "2",
              "--out", str(out)])
        _, rows = read_csv(out / "metrics.csv")
        expected = np.mean([float(r["alpha"]) for r in rows])
        run_id = next(out.glob("*.manifest.json")).name.split(".")[0]
        capsys.readouterr()
        main(["report", "--dir", str(out), "--run", run_id])
        printed = capsys.readouterr().out
        assert f"{expected:.6f}" in printed


class TestExitCodes:
    def test_resource_cap(self, tmp_path):
        # 40 sites exceed the brute-force/statevector caps
        sites = tmp_path / "big.json"
        inst = tmp_path / "big_inst.json"
        main(["generate", "--n", "40", "--bbox", "0,0,9,9", "--rmax", "0.8",
              "--seed", "1", "--out", str(sites), "--instance-out", str(inst)])
        code = main(["qaa", "--instance", str(inst), "--p", "5", "--delta", "0.5",
                     "--out", str(tmp_path / "x")])
        assert code == EXIT_RESOURCE

    def test_malformed_instance_is_data_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"xi": 0.25}')
        code = main(["qaa", "--instance", str(bad), "--p", "5", "--delta", "0.5",
                     "--out", str(tmp_path / "x")])
        assert code == EXIT_DATA

    def test_bad_shots_is_usage_error(self, instance_file, tmp_path):
        code = main(["qaa", "--instance", str(instance_file), "--p", "5",
                     "--delta", "0.5", "--shots", "0", "--out", str(tmp_path / "x")])
        assert code == EXIT_USAGE
