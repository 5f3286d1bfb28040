import json
import math
import subprocess
import sys

import pytest

from optstab.cli import run_cli
from optstab.optimal import disc_optimal, hyperbolic_optimal, parabolic_optimal
from optstab.stability import stability_width

SUBCOMMANDS = ("gen", "interval", "region", "verify", "simulate", "tableau")


def run(capsys, *argv):
    code = run_cli(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def gen_file(tmp_path, capsys, family, m):
    path = tmp_path / f"{family}{m}.json"
    assert run(capsys, "gen", "--family", family, "--m", str(m), "--out", str(path))[0] == 0
    return path


class TestGen:
    def test_parabolic_m3(self, capsys):
        code, out, _ = run(capsys, "gen", "--family", "parabolic", "--m", "3")
        assert code == 0
        obj = json.loads(out)
        assert obj["degree"] == 3
        assert obj["coeffs"] == [1.0, 1.0, 4 / 27, 4 / 729]

    def test_substeps(self, capsys):
        code, out, _ = run(capsys, "gen", "--family", "parabolic-substeps", "--m", "2")
        xi = json.loads(out)["xi"]
        assert code == 0
        assert xi == pytest.approx([4 - 2 * math.sqrt(2), 4 + 2 * math.sqrt(2)], rel=1e-14)

    def test_hyperbolic_m1_rejected(self, capsys):
        code, out, err = run(capsys, "gen", "--family", "hyperbolic", "--m", "1")
        assert code == 1
        assert out == ""
        lines = err.strip().splitlines()
        assert len(lines) == 1
        assert json.loads(lines[0])["error"] == "m_too_small"

    def test_second_order(self, capsys):
        _, out, _ = run(capsys, "gen", "--family", "second-order", "--m", "2")
        assert json.loads(out)["coeffs"] == [1.0, -0.5, 1 / 32]


class TestInterval:
    def test_disc_has_no_imaginary_width(self, tmp_path, capsys):
        f = gen_file(tmp_path, capsys, "disc", 4)
        code, out, _ = run(capsys, "interval", "--poly", str(f), "--axis", "imag")
        assert code == 0
        assert json.loads(out) == {"width": 0.0}

    @pytest.mark.parametrize("family,m,axis,ctor,lib_axis", [
        ("parabolic", 7, "real", parabolic_optimal, "negative_real"),
        ("hyperbolic", 6, "imag", hyperbolic_optimal, "imaginary"),
        ("disc", 3, "real", disc_optimal, "negative_real"),
    ])
    def test_round_trip_bit_identical(self, tmp_path, capsys, family, m, axis, ctor, lib_axis):
        f = gen_file(tmp_path, capsys, family, m)
        _, out, _ = run(capsys, "interval", "--poly", str(f), "--axis", axis)
        assert json.loads(out)["width"] == stability_width(ctor(m), lib_axis)

    def test_missing_file(self, tmp_path, capsys):
        code, _, err = run(capsys, "interval", "--poly", str(tmp_path / "nope.json"), "--axis", "real")
        assert code == 1
        assert json.loads(err)["error"] == "unreadable_input"

    def test_bad_json(self, tmp_path, capsys):
        f = tmp_path / "bad.json"
        f.write_text("{not json")
        assert run(capsys, "interval", "--poly", str(f), "--axis", "real")[0] == 1

    def test_plain_coeffs_accepted(self, tmp_path, capsys):
        f = tmp_path / "p.json"
        f.write_text(json.dumps({"degree": 2, "coeffs": [1, 1, 0.125]}))
        _, out, _ = run(capsys, "interval", "--poly", str(f), "--axis", "real")
        assert json.loads(out)["width"] == pytest.approx(8.0, abs=1e-6)


class TestRegion:
    def test_csv(self, tmp_path, capsys):
        f = gen_file(tmp_path, capsys, "disc", 1)
        code, out, _ = run(capsys, "region", "--poly", str(f), "--box=-2.5,0.5,-1.5,1.5", "--nx", "4", "--ny", "3")
        lines = out.strip().splitlines()
        assert code == 0
        assert lines[0] == "re,im,absP"
        assert len(lines) == 1 + 12
        re, im, v = map(float, lines[1].split(","))
        assert v == pytest.approx(abs(complex(re, im) + 1), rel=1e-15)

    def test_pgm(self, tmp_path, capsys):
        f = gen_file(tmp_path, capsys, "disc", 1)
        out_file = tmp_path / "r.pgm"
        code, _, _ = run(capsys, "region", "--poly", str(f), "--box=-2.5,0.5,-1.5,1.5", "--nx", "5", "--ny", "5",
                         "--format", "pgm", "--out", str(out_file))
        lines = out_file.read_text().splitlines()
        assert code == 0
        assert lines[:3] == ["P2", "5 5", "255"]
        # the cell centred on z = -1 is inside the disc
        assert lines[3 + 2].split()[2] == "0"

    def test_degenerate_box(self, tmp_path, capsys):
        f = gen_file(tmp_path, capsys, "disc", 1)
        assert run(capsys, "region", "--poly", str(f), "--box", "1,0,0,1", "--nx", "2", "--ny", "2")[0] == 1


class TestVerify:
    def test_markov_m7(self, capsys):
        code, out, _ = run(capsys, "verify", "--check", "markov", "--m", "7")
        assert code == 0
        assert json.loads(out) == {"ratio": 1.0, "pass": True}

    def test_bernstein(self, capsys):
        _, out, _ = run(capsys, "verify", "--check", "bernstein", "--m", "5")
        obj = json.loads(out)
        assert obj["pass"] is True
        assert obj["ratio"] == pytest.approx(1.0, abs=1e-10)

    def test_alpha(self, capsys):
        _, out, _ = run(capsys, "verify", "--check", "alpha", "--m", "5")
        obj = json.loads(out)
        assert obj["alpha"] == 0.5
        assert obj["q_linear"] == 0.0
        assert obj["pass"] is True

    def test_q_identity(self, capsys):
        _, out, _ = run(capsys, "verify", "--check", "q-identity", "--m", "9")
        obj = json.loads(out)
        assert obj["pass"] is True
        assert obj["max_error"] <= 1e-10

    def test_oracle_coarse(self, capsys):
        _, out, _ = run(capsys, "verify", "--check", "oracle", "--target", "real", "--box", "0.05:0.5",
                        "--step", "0.025")
        obj = json.loads(out)
        assert obj["pass"] is True
        assert obj["best_coeffs"] == [1.0, 1.0, 0.125]

    def test_missing_m(self, capsys):
        code, _, err = run(capsys, "verify", "--check", "markov")
        assert code == 1
        assert json.loads(err)["error"] == "missing_m"


class TestSimulate:
    def test_composed_heat_csv(self, capsys):
        code, out, _ = run(capsys, "simulate", "--scheme", "composed", "--system", "heat", "--n", "16", "--m", "3",
                           "--h-frac", "0.9", "--steps", "5")
        lines = out.strip().splitlines()
        assert code == 0
        assert lines[0] == "step,norm"
        assert len(lines) == 7

    def test_abort_line(self, capsys):
        _, out, _ = run(capsys, "simulate", "--scheme", "composed", "--system", "advection", "--n", "16",
                        "--m", "3", "--h-frac", "2.0", "--steps", "100000")
        assert out.strip().splitlines()[-1].startswith("# aborted_at=")

    def test_tableau_scheme(self, tmp_path, capsys):
        t = tmp_path / "rk4.json"
        t.write_text(json.dumps({"A": [[0, 0, 0, 0], ["1/2", 0, 0, 0], [0, "1/2", 0, 0], [0, 0, 1, 0]],
                                 "b": ["1/6", "1/3", "1/3", "1/6"], "c": [0, "1/2", "1/2", 1]}))
        code, out, _ = run(capsys, "simulate", "--scheme", "tableau", "--tableau", str(t), "--system", "advection",
                           "--n", "32", "--h-frac", "0.95", "--steps", "200")
        assert code == 0
        norms = [float(l.split(",")[1]) for l in out.strip().splitlines()[1:]]
        assert norms[-1] <= norms[0] * (1 + 1e-4)

    def test_tableau_scheme_needs_file(self, capsys):
        code, _, err = run(capsys, "simulate", "--scheme", "tableau", "--system", "heat", "--n", "8",
                           "--h-frac", "0.5", "--steps", "2")
        assert code == 1
        assert json.loads(err)["error"] == "missing_tableau"

    def test_deterministic_files(self, tmp_path, capsys):
        argv = ["simulate", "--scheme", "composed", "--system", "heat", "--n", "32", "--m", "4",
                "--h-frac", "0.99", "--steps", "50", "--seed", "11"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(capsys, *argv, "--out", str(a))
        run(capsys, *argv, "--out", str(b))
        assert a.read_bytes() == b.read_bytes()


class TestTableau:
    def test_rk4(self, tmp_path, capsys):
        t = tmp_path / "rk4.json"
        t.write_text(json.dumps({"A": [[0, 0, 0, 0], [0.5, 0, 0, 0], [0, 0.5, 0, 0], [0, 0, 1, 0]],
                                 "b": ["1/6", "1/3", "1/3", "1/6"], "c": [0, 0.5, 0.5, 1]}))
        code, out, _ = run(capsys, "tableau", "--file", str(t))
        obj = json.loads(out)
        assert code == 0
        assert obj["polynomial"]["exact"] == ["1", "1", "1/2", "1/6", "1/24"]
        assert obj["report"]["imag_width"] == pytest.approx(2 * math.sqrt(2), abs=1e-6)

    def test_implicit_rejected(self, tmp_path, capsys):
        t = tmp_path / "be.json"
        t.write_text(json.dumps({"A": [[1]], "b": [1], "c": [1]}))
        code, _, err = run(capsys, "tableau", "--file", str(t))
        assert code == 1
        assert json.loads(err)["error"] == "implicit_tableau"


class TestUsage:
    @pytest.mark.parametrize("sub", SUBCOMMANDS)
    def test_help(self, capsys, sub):
        code, out, _ = run(capsys, sub, "--help")
        assert code == 0
        assert "--out" in out

    def test_unknown_flag(self, capsys):
        assert run(capsys, "gen", "--family", "disc", "--m", "2", "--bogus")[0] == 2

    def test_no_subcommand(self, capsys):
        assert run(capsys)[0] == 2

    def test_usage_error_writes_no_file(self, tmp_path, capsys):
        out = tmp_path / "never.json"
        assert run(capsys, "gen", "--family", "nope", "--m", "2", "--out", str(out))[0] == 2
        assert not out.exists()

    def test_module_entry_point(self):
        r = subprocess.run([sys.executable, "-m", "optstab", "gen", "--family", "disc", "--m", "2"],
                           capture_output=True, text=True, check=True)
        assert json.loads(r.stdout)["exact"] == ["1", "1", "1/4"]
