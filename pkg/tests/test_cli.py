"""Command-line interface: outputs, exit codes, determinism, report merging."""

import json

import pytest

from dwb.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCurve:
    def test_text_output(self, capsys):
        code, out, _ = run(capsys, "curve", "--n", "1", "--family", "minus")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "F = (b+1)*x + (-1)*y"
        assert lines[1] == "K = (-1)*x + (-1)*y + 1"
        assert lines[2] == "residual_is_zero: true"

    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "curve", "--n", "2", "--family", "minus", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["schema"] == 1
        assert doc["F"] == "(b^2+3*b+2)*x^2 + (-(b+2))*x*y + y"
        assert doc["K"] == "(-2)*x + (-1)*y + 2"
        assert doc["residual_is_zero"] is True

    def test_n_zero_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["curve", "--n", "0", "--family", "minus"])
        assert exc.value.code == 2

    def test_unknown_family_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["curve", "--n", "1", "--family", "sideways"])
        assert exc.value.code == 2


class TestVerify:
    def test_row_count_n_max_one(self, capsys):
        code, out, _ = run(capsys, "verify", "--n-max", "1", "--format", "json",
                           "--lemma1-samples", "5")
        assert code == 0
        doc = json.loads(out)
        assert len(doc["invariance"]) == 2
        assert doc["pass"] is True

    def test_full_sections(self, capsys):
        code, out, _ = run(capsys, "verify", "--n-max", "3", "--format", "json",
                           "--lemma1-samples", "10")
        assert code == 0
        doc = json.loads(out)
        assert len(doc["invariance"]) == 6
        assert len(doc["lemma2"]) == 3
        assert len(doc["euler_y"]) == 6
        assert doc["lemma1"]["ok"] is True
        assert all(r["residual_is_zero"] for r in doc["invariance"])
        assert "wall_time" not in doc["invariance"][0]

    def test_timings_opt_in(self, capsys):
        _, out, _ = run(capsys, "verify", "--n-max", "1", "--format", "json",
                        "--lemma1-samples", "1", "--timings")
        doc = json.loads(out)
        assert "wall_time" in doc["invariance"][0]

    def test_perturb_cofactor_all_rows_false(self, capsys):
        code, out, _ = run(capsys, "verify", "--n-max", "3", "--format", "json",
                           "--perturb-cofactor")
        assert code == 1
        doc = json.loads(out)
        assert doc["perturbation"] == "cofactor"
        assert len(doc["invariance"]) == 6
        assert all(not r["residual_is_zero"] for r in doc["invariance"])
        assert doc["pass"] is False
        assert doc["harness_all_rows_false"] is True
        assert "lemma2" not in doc

    def test_perturb_coefficient(self, capsys):
        code, out, _ = run(capsys, "verify", "--n-max", "2", "--format", "json",
                           "--perturb-coefficient")
        assert code == 1
        doc = json.loads(out)
        assert all(not r["residual_is_zero"] for r in doc["invariance"])

    def test_single_family(self, capsys):
        _, out, _ = run(capsys, "verify", "--n-max", "2", "--families", "plus",
                        "--format", "json", "--lemma1-samples", "1")
        doc = json.loads(out)
        assert [r["family"] for r in doc["invariance"]] == ["plus", "plus"]

    def test_deterministic_output(self, capsys):
        args = ("verify", "--n-max", "2", "--format", "json", "--lemma1-samples", "25")
        _, first, _ = run(capsys, *args)
        _, second, _ = run(capsys, *args)
        assert first == second

    def test_thread_fanout_matches_serial(self, capsys, monkeypatch):
        args = ("verify", "--n-max", "2", "--format", "json", "--lemma1-samples", "3")
        _, serial, _ = run(capsys, *args)
        monkeypatch.setenv("DWB_THREADS", "2")
        _, parallel, _ = run(capsys, *args)
        assert serial == parallel

    def test_out_file(self, capsys, tmp_path):
        out_path = tmp_path / "verify.json"
        run(capsys, "verify", "--n-max", "1", "--out", str(out_path),
            "--lemma1-samples", "1")
        doc = json.loads(out_path.read_text())
        assert doc["command"] == "verify" and doc["pass"] is True


class TestDarboux:
    def test_kernel_rendering(self, capsys):
        code, out, _ = run(capsys, "darboux", "--n", "2", "--family", "minus")
        assert code == 0
        assert "kernel: (0, 1, b+2, -1)" in out

    def test_rational_classification(self, capsys):
        code, out, _ = run(capsys, "darboux", "--n", "2", "--family", "minus",
                           "--b", "1/2", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["integer_exponents"] == [0, 2, 5, -2]
        assert doc["classification"] == "RationalIntegral"

    def test_irrational_marker(self, capsys):
        code, out, _ = run(capsys, "darboux", "--n", "2", "--family", "minus",
                           "--b", "irrational")
        assert code == 0
        assert "classification: NonRational" in out

    def test_bad_b_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["darboux", "--n", "2", "--family", "minus", "--b", "sqrt2"])
        assert exc.value.code == 2


class TestSimulate:
    def test_on_curve_run(self, capsys, tmp_path):
        csv = tmp_path / "t.csv"
        code, out, _ = run(
            capsys, "simulate", "--n", "1", "--family", "minus", "--b", "0",
            "--x0", "0.5", "--t-end", "5", "--h", "1e-3",
            "--out", str(csv), "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["steps"] == 5000
        assert doc["max_abs_F_residual"] < 1e-6
        assert doc["audited"] == ["F_residual"]
        lines = csv.read_text().splitlines()
        assert len(lines) == 5002 and lines[0] == "t,x,y,F_resid,logH"

    def test_equilibrium_rows_constant(self, capsys, tmp_path):
        csv = tmp_path / "eq.csv"
        code, out, _ = run(
            capsys, "simulate", "--n", "2", "--family", "minus", "--b", "1",
            "--x0", "0", "--y0", "0", "--t-end", "1", "--h", "1e-2",
            "--out", str(csv), "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["max_abs_F_residual"] == 0.0
        assert doc["max_logH_drift"] == 0.0
        assert doc["degenerate"] is True
        rows = {line.split(",", 1)[1] for line in csv.read_text().splitlines()[1:]}
        assert len(rows) == 1  # every sample identical

    def test_degenerate_b_warns_but_completes(self, capsys, tmp_path):
        csv = tmp_path / "d.csv"
        code, out, err = run(
            capsys, "simulate", "--n", "2", "--family", "minus", "--b", "-1",
            "--x0", "0.5", "--t-end", "1", "--h", "1e-2",
            "--out", str(csv), "--format", "json",
        )
        assert code == 0
        assert "warning" in err and "(b+1)_2" in err
        doc = json.loads(out)
        assert doc["warnings"]
        assert doc["degenerate"] is True
        assert csv.exists()

    def test_off_curve_audits_drift(self, capsys, tmp_path):
        code, out, _ = run(
            capsys, "simulate", "--n", "2", "--family", "minus", "--b", "1/2",
            "--x0", "0.5", "--y0", "1", "--t-end", "5", "--h", "1e-3",
            "--out", str(tmp_path / "o.csv"), "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["audited"] == ["logH_drift"]
        assert doc["max_logH_drift"] < 1e-6

    def test_degenerate_start_is_config_error(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "simulate", "--n", "2", "--family", "minus", "--b", "0",
            "--x0", "0.5", "--t-end", "1", "--h", "1e-2",
            "--out", str(tmp_path / "x.csv"),
        )
        assert code == 2
        assert "S(x" in err

    def test_phase_plot_emitted(self, capsys, tmp_path):
        svg = tmp_path / "p.svg"
        code, _, _ = run(
            capsys, "simulate", "--n", "1", "--family", "minus", "--b", "1",
            "--x0", "0.2", "--t-end", "2", "--h", "1e-2",
            "--out", str(tmp_path / "p.csv"), "--plot", str(svg),
        )
        assert code == 0
        body = svg.read_text()
        assert body.startswith("<svg") and "polyline" in body

    def test_deterministic_csv(self, capsys, tmp_path):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for p in paths:
            run(capsys, "simulate", "--n", "3", "--family", "minus", "--b", "1/2",
                "--x0", "0.3", "--t-end", "1", "--h", "1e-2", "--out", str(p))
        assert paths[0].read_bytes() == paths[1].read_bytes()


class TestReport:
    def make_fragment(self, capsys, tmp_path, name, *argv):
        path = tmp_path / name
        run(capsys, *argv, "--out", str(path))
        return path

    def test_merge_passing(self, capsys, tmp_path):
        frag = self.make_fragment(capsys, tmp_path, "v.json", "verify", "--n-max", "1",
                                  "--lemma1-samples", "1")
        code, out, _ = run(capsys, "report", str(frag), "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["pass"] is True and len(doc["fragments"]) == 1

    def test_merge_with_failing_row(self, capsys, tmp_path):
        good = self.make_fragment(capsys, tmp_path, "good.json", "verify", "--n-max", "1",
                                  "--lemma1-samples", "1")
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"schema": 1, "command": "verify", "pass": False}))
        code, out, _ = run(capsys, "report", str(good), str(bad), "--format", "json")
        assert code == 1
        assert json.loads(out)["pass"] is False

    def test_empty_inputs_vacuously_true_with_warning(self, capsys):
        code, out, err = run(capsys, "report", "--format", "json")
        assert code == 0
        assert json.loads(out)["pass"] is True
        assert "warning" in err

    def test_malformed_fragment_named(self, capsys, tmp_path):
        broken = tmp_path / "broken.json"
        broken.write_text("{not json")
        code, _, err = run(capsys, "report", str(broken))
        assert code == 2
        assert "broken.json" in err

    def test_foreign_json_rejected(self, capsys, tmp_path):
        alien = tmp_path / "alien.json"
        alien.write_text(json.dumps({"hello": "world"}))
        code, _, err = run(capsys, "report", str(alien))
        assert code == 2
        assert "alien.json" in err
