import csv
import io
import json

import pytest

from exchange_purification.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def table(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def header(text):
    return [ln for ln in text.splitlines() if ln.startswith("#")]


class TestMapEval:
    def test_quarter_is_constant(self, capsys):
        code, out, _ = run(capsys, "map-eval", "--kind", "heisenberg", "--f", "0.25",
                           "--alpha", "1.1", "--beta", "0.3")
        assert code == 0
        (row,) = table(out)
        assert float(row["f_prime_closed"]) == pytest.approx(0.25, abs=1e-12)
        assert float(row["abs_diff"]) <= 1e-10

    @pytest.mark.parametrize("kind", ["heisenberg", "xy"])
    def test_optimal_value(self, capsys, kind):
        code, out, _ = run(capsys, "map-eval", "--kind", kind, "--f", "0.7",
                           "--alpha", "1.5707963", "--beta", "-1.5707963")
        assert code == 0
        (row,) = table(out)
        assert float(row["f_prime_closed"]) == pytest.approx(0.716216216, abs=1e-9)
        assert float(row["f_prime_sim"]) == pytest.approx(0.716216216, abs=1e-9)

    def test_columns_and_header(self, capsys):
        _, out, _ = run(capsys, "map-eval", "--f", "0.7")
        assert header(out)[0] == "# schema_version: 1"
        assert list(table(out)[0]) == ["f", "alpha", "beta", "f_prime_closed",
                                       "f_prime_sim", "abs_diff", "success_prob"]

    def test_twelve_significant_digits(self, capsys):
        _, out, _ = run(capsys, "map-eval", "--kind", "optimal", "--f", "0.7")
        assert table(out)[0]["f_prime_closed"] == "0.716216216216"

    def test_degrees(self, capsys):
        _, deg, _ = run(capsys, "map-eval", "--f", "0.7", "--alpha", "90", "--beta", "-90",
                        "--degrees")
        assert float(table(deg)[0]["f_prime_closed"]) == pytest.approx(53 / 74, abs=1e-11)

    @pytest.mark.parametrize("f", ["1.5", "-0.1"])
    def test_out_of_range(self, capsys, f):
        code, out, err = run(capsys, "map-eval", "--f", f)
        assert code == 2
        assert out == ""
        assert "error" in err

    def test_bad_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["map-eval", "--f", "0.7", "--bogus"])
        assert exc.value.code == 2


class TestSweep:
    def test_inverse_rows(self, capsys):
        code, out, _ = run(capsys, "sweep", "--betas=-alpha", "--alpha-points", "25")
        assert code == 0
        rows = table(out)
        assert len(rows) == 25
        filled = [r for r in rows if r["f_min"]]
        assert len(filled) >= 20
        for r in filled:
            assert float(r["f_min"]) == pytest.approx(0.5, abs=1e-9)
            assert float(r["f_max"]) == pytest.approx(1.0, abs=1e-9)
            assert float(r["residual"]) <= 1e-9

    def test_degenerate_points_are_gaps(self, capsys):
        _, out, _ = run(capsys, "sweep", "--betas=-alpha", "--alpha-points", "3")
        rows = table(out)
        # alpha = 0, pi, 2 pi are identity maps
        assert all(r["f_min"] == "" and r["f_max"] == "" for r in rows)

    def test_several_betas(self, capsys):
        _, out, _ = run(capsys, "sweep", "--betas=-alpha,-1.5707963,-0.7853982",
                        "--alpha-points", "9")
        rows = table(out)
        assert len(rows) == 27
        for r in rows:
            if r["residual"]:
                assert float(r["residual"]) <= 1e-9

    def test_bad_beta(self, capsys):
        code, _, err = run(capsys, "sweep", "--betas", "abc")
        assert code == 2 and "beta" in err

    def test_bad_grid(self, capsys):
        code, _, _ = run(capsys, "sweep", "--alpha-points", "1")
        assert code == 2


class TestIterate:
    def test_optimal_orbit(self, capsys):
        code, out, _ = run(capsys, "iterate", "--f0", "0.7", "--target", "0.99",
                           "--kind", "exchange-optimal", "--mode", "werner")
        assert code == 0
        rows = table(out)
        assert float(rows[0]["fidelity"]) == pytest.approx(0.716216216216, abs=1e-11)
        assert float(rows[1]["fidelity"]) == pytest.approx(0.733122875182, abs=1e-11)
        assert float(rows[-1]["fidelity"]) > 0.99
        assert all(float(r["residual"]) <= 1e-10 for r in rows)

    def test_constant_quarter(self, capsys):
        code, out, err = run(capsys, "iterate", "--f0", "0.25", "--target", "0.99")
        assert code == 3
        assert "non-purifiable" in err
        rows = table(out)
        assert rows and all(float(r["fidelity"]) == pytest.approx(0.25) for r in rows)

    def test_compare_series(self, capsys):
        code, out, _ = run(capsys, "iterate", "--f0", "0.7", "--compare")
        assert code == 0
        rows = table(out)
        werner = [r for r in rows if r["series"] == "werner"]
        dejmps = [r for r in rows if r["series"] == "dejmps"]
        assert len(dejmps) <= len(werner)
        assert float(werner[-1]["fidelity"]) > 0.99
        assert float(dejmps[-1]["fidelity"]) > 0.99

    def test_bbpssw(self, capsys):
        code, out, _ = run(capsys, "iterate", "--kind", "bbpssw", "--f0", "0.7")
        assert code == 0
        assert float(table(out)[0]["fidelity"]) == pytest.approx(25 / 34, abs=1e-11)

    def test_max_steps_not_reached(self, capsys):
        code, _, _ = run(capsys, "iterate", "--f0", "0.6", "--max-steps", "2")
        assert code == 3

    @pytest.mark.parametrize("argv", [["--f0", "0"], ["--f0", "0.7", "--target", "1"],
                                      ["--f0", "0.7", "--max-steps", "0"]])
    def test_bad_arguments(self, capsys, argv):
        code, _, _ = run(capsys, "iterate", *argv)
        assert code == 2


class TestRobustness:
    def test_rows(self, capsys):
        code, out, _ = run(capsys, "robustness", "--j", "1",
                           "--delta-tau", "0,0.1,0.12")
        assert code == 0
        rows = {float(r["delta_tau_ns"]): r for r in table(out)}
        assert float(rows[0.0]["f_max"]) == pytest.approx(1.0, abs=1e-12)
        assert float(rows[0.1]["f_max"]) >= 0.99
        assert float(rows[0.12]["f_max"]) < 0.99
        assert float(rows[0.12]["delta_alpha_rad"]) == pytest.approx(0.1823, abs=1e-4)

    def test_bad_j(self, capsys):
        code, _, _ = run(capsys, "robustness", "--j", "0")
        assert code == 2


class TestCompare:
    def test_spot_values(self, capsys):
        code, out, _ = run(capsys, "compare", "--f", "0.5,0.7,1")
        assert code == 0
        rows = {float(r["f"]): r for r in table(out)}
        assert float(rows[0.7]["f_prime_bbpssw"]) == pytest.approx(0.735294, abs=1e-6)
        assert float(rows[0.7]["f_prime_optimal"]) == pytest.approx(0.716216, abs=1e-6)
        for f in (0.5, 1.0):
            values = [float(v) for k, v in rows[f].items() if k.startswith("f_prime")]
            assert values == pytest.approx([f] * len(values), abs=1e-10)
        assert all(float(r["residual"]) <= 1e-10 for r in rows.values())

    def test_out_of_range(self, capsys):
        code, _, _ = run(capsys, "compare", "--f", "0.5,1.2")
        assert code == 2


class TestFixedPoints:
    def test_optimal(self, capsys):
        code, out, _ = run(capsys, "fixed-points")
        assert code == 0
        rows = {r["name"]: r for r in table(out)}
        assert float(rows["f_c"]["value"]) == pytest.approx(0.25)
        assert float(rows["f_min"]["value"]) == pytest.approx(0.5)
        assert float(rows["f_max"]["value"]) == pytest.approx(1.0)
        assert [rows[n]["stability"] for n in ("f_c", "f_min", "f_max")] == \
            ["attractive", "repulsive", "attractive"]

    def test_degenerate(self, capsys):
        code, _, err = run(capsys, "fixed-points", "--alpha", "0", "--beta", "0")
        assert code == 3
        assert "identity" in err

    def test_complex_pair_leaves_empty_cells(self, capsys):
        _, out, _ = run(capsys, "fixed-points", "--alpha", "1.5707963",
                        "--beta", "-0.7853982")
        rows = {r["name"]: r for r in table(out)}
        assert rows["f_min"]["value"] == "" and rows["f_max"]["value"] == ""


class TestOutput:
    @pytest.mark.parametrize("argv", [
        ["sweep", "--betas=-alpha,0.5", "--alpha-points", "13"],
        ["iterate", "--f0", "0.6", "--compare"],
        ["compare"],
        ["robustness"],
    ])
    def test_byte_identical(self, capsys, argv):
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second

    def test_json(self, capsys):
        code, out, _ = run(capsys, "fixed-points", "--format", "json")
        assert code == 0
        obj = json.loads(out)
        assert obj["schema_version"] == "1"
        assert obj["command"] == "fixed-points"
        assert obj["columns"] == ["name", "value", "stability", "residual"]
        assert obj["rows"][1][0] == "f_min"
        assert obj["rows"][1][1] == pytest.approx(0.5)

    def test_json_keeps_integers(self, capsys):
        _, out, _ = run(capsys, "iterate", "--f0", "0.9", "--format", "json")
        steps = [row[1] for row in json.loads(out)["rows"]]
        assert steps == list(range(1, len(steps) + 1))
        assert all(isinstance(s, int) for s in steps)

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "out.csv"
        code, out, _ = run(capsys, "compare", "--f", "0.7", "-o", str(path))
        assert code == 0 and out == ""
        text = path.read_text()
        assert text.splitlines()[1] == "# command: compare"
        assert len(table(text)) == 1

    def test_no_negative_zero(self, capsys):
        _, out, _ = run(capsys, "sweep", "--betas=-alpha", "--alpha-points", "2",
                        "--alpha-min", "0", "--alpha-max", "1")
        assert "-0," not in out and ",-0\n" not in out
