import csv
import json

import numpy as np
import pytest

from qdiscord.cli import main
from qdiscord.io import CSV_HEADER, write_state_file
from qdiscord.states import Family, make_family


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


class TestPoint:
    def test_alpha_half_json(self, capsys):
        code, out, _ = run(capsys, "point", "--family", "alpha", "--param", "0.5")
        assert code == 0
        obj = json.loads(out)
        assert obj["discord"] == pytest.approx(0.311278, abs=1e-4)
        assert obj["eof"] == 0.0
        assert obj["family"] == "alpha"
        assert obj["param1"] == 0.5

    def test_param_out_of_range_exit_2(self, capsys, tmp_path):
        dest = tmp_path / "out.json"
        code, out, err = run(
            capsys, "point", "--family", "alpha", "--param", "1.5",
            "--out", str(dest),
        )
        assert code == 2
        assert "validation error" in err
        assert not dest.exists()

    def test_state_file_maximally_mixed(self, capsys, tmp_path):
        path = tmp_path / "mm.json"
        write_state_file(np.eye(4) / 4, path)
        code, out, _ = run(capsys, "point", "--in", str(path))
        assert code == 0
        obj = json.loads(out)
        assert obj["linear_entropy"] == pytest.approx(1.0, abs=1e-12)
        assert obj["discord"] == pytest.approx(0.0, abs=1e-9)

    def test_state_file_bad_trace_exit_2(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        rho = np.eye(4) * 0.225  # trace 0.9
        obj = {"rho": [[[rho[i, j].real, 0.0] for j in range(4)] for i in range(4)]}
        path.write_text(json.dumps(obj))
        code, _, err = run(capsys, "point", "--in", str(path))
        assert code == 2
        assert "trace" in err.lower()

    def test_state_file_pimple(self, capsys, tmp_path):
        path = tmp_path / "pimple.json"
        write_state_file(make_family(Family("twoparam", 1 / 3, 0.0)), path)
        code, out, _ = run(capsys, "point", "--in", str(path))
        assert code == 0
        assert json.loads(out)["discord"] == pytest.approx(1 / 3, abs=1e-4)

    def test_missing_file_exit_2(self, capsys):
        code, _, err = run(capsys, "point", "--in", "/nonexistent/x.json")
        assert code == 2

    def test_family_and_in_conflict_exit_1(self, capsys, tmp_path):
        path = tmp_path / "mm.json"
        write_state_file(np.eye(4) / 4, path)
        code, _, err = run(
            capsys, "point", "--family", "alpha", "--param", "0.5",
            "--in", str(path),
        )
        assert code == 1
        assert "usage error" in err

    def test_family_without_param_exit_1(self, capsys):
        code, _, err = run(capsys, "point", "--family", "werner")
        assert code == 1

    def test_csv_format(self, capsys):
        code, out, _ = run(
            capsys, "point", "--family", "beta", "--param", "0.8",
            "--format", "csv",
        )
        assert code == 0
        rows = list(csv.reader(out.splitlines()))
        assert rows[0] == CSV_HEADER
        assert len(rows) == 2
        row = dict(zip(CSV_HEADER, rows[1]))
        assert row["family"] == "beta"
        assert float(row["discord"]) == pytest.approx(0.278072, abs=1e-4)


class TestCsvContract:
    def test_header_and_round_trip(self, capsys, tmp_path):
        dest = tmp_path / "batch.csv"
        code, _, _ = run(
            capsys, "sample", "--n", "4", "--seed", "7", "--out", str(dest)
        )
        assert code == 0
        text = dest.read_bytes().decode()
        assert "\r\n" in text
        rows = list(csv.reader(text.splitlines()))
        assert rows[0] == CSV_HEADER
        assert len(rows) == 5
        # 17-significant-digit formatting must round-trip bitwise
        for row in rows[1:]:
            rec = dict(zip(CSV_HEADER, row))
            x = float(rec["discord"])
            assert format(x, ".17g") == rec["discord"]
            assert float(format(x, ".17g")) == x

    def test_sweep_curve_csv(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "--family", "beta", "--plane", "eof-q", "--n", "9"
        )
        assert code == 0
        rows = list(csv.reader(out.splitlines()))
        assert rows[0] == CSV_HEADER
        assert len(rows) == 10
        last = dict(zip(CSV_HEADER, rows[-1]))
        assert last["provenance"] == "curve:eof-q"
        assert float(last["eof"]) == pytest.approx(1.0)
        assert float(last["discord"]) == pytest.approx(1.0)
        assert last["S_L"] == ""  # off-plane columns stay empty

    def test_near_batch_has_family_columns(self, capsys):
        code, out, _ = run(
            capsys, "near", "--family", "werner", "--n", "3",
            "--epsilon", "0.001", "--seed", "1",
        )
        assert code == 0
        rows = list(csv.reader(out.splitlines()))
        assert len(rows) == 4
        for row in rows[1:]:
            rec = dict(zip(CSV_HEADER, row))
            assert rec["family"] == "werner"
            assert -1 / 3 <= float(rec["param1"]) <= 1


class TestVerify:
    def test_eof_q_small(self, capsys):
        code, out, _ = run(capsys, "verify", "--n", "20", "--seed", "3")
        assert code == 0
        obj = json.loads(out)
        assert obj["n_checked"] == 20
        assert obj["n_violations"] == 0
        assert obj["plane"] == "eof-q"
        assert obj["seed"] == 3

    def test_sl_q_gates_on_entropy(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--plane", "sl-q", "--n", "20", "--seed", "3"
        )
        assert code == 0
        obj = json.loads(out)
        assert obj["n_violations"] == 0
        assert "informational_above_8_9" in obj

    def test_deterministic_output(self, capsys):
        _, out1, _ = run(capsys, "verify", "--n", "10", "--seed", "5")
        _, out2, _ = run(capsys, "verify", "--n", "10", "--seed", "5")
        assert out1 == out2


class TestCrossover:
    def test_values(self, capsys):
        code, out, _ = run(capsys, "crossover")
        assert code == 0
        obj = json.loads(out)
        assert obj["alpha_werner"]["eof"] == pytest.approx(0.620, abs=0.01)
        assert obj["alpha_werner"]["discord"] == pytest.approx(0.644, abs=0.01)
        assert obj["werner_pure"]["eof"] == pytest.approx(0.746, abs=0.01)


class TestUsage:
    def test_no_command(self, capsys):
        assert run(capsys, )[0] == 1

    def test_unknown_command(self, capsys):
        assert run(capsys, "frobnicate")[0] == 1

    def test_bad_plane(self, capsys):
        code, _, _ = run(capsys, "sweep", "--family", "beta", "--plane", "xy")
        assert code == 1

    def test_no_partial_output_on_usage_error(self, capsys, tmp_path):
        dest = tmp_path / "never.csv"
        code, _, _ = run(
            capsys, "sweep", "--plane", "eof-q", "--out", str(dest)
        )  # missing required --family
        assert code == 1
        assert not dest.exists()

    def test_unwritable_out_exit_3(self, capsys):
        code, _, err = run(
            capsys, "point", "--family", "alpha", "--param", "0.5",
            "--out", "/nonexistent-dir/x.json",
        )
        assert code == 3
        assert "i/o error" in err
