"""Command-line interface: outputs, exit codes, determinism."""

import io
import json
from fractions import Fraction as F

import pytest

from hddiamond.cli import main


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def worst4(tmp_path, capsys):
    path = tmp_path / "worst4.json"
    code, _, _ = run(capsys, "generate", "--family", "worst-case", "--n", "4", "-o", str(path))
    assert code == 0
    return str(path)


class TestCapacity:
    def test_hd_json_shape(self, capsys, worst4):
        code, out, _ = run(capsys, "capacity", "--network", worst4)
        data = json.loads(out)
        assert code == 0
        assert data["mode"] == "hd"
        assert data["value"] == pytest.approx(1.0, abs=1e-9)
        assert isinstance(data["tight_cuts"], list)
        assert all(isinstance(c, str) and len(c) == 4 for c in data["tight_cuts"])
        assert "schedule" not in data

    def test_exact_mode(self, capsys, worst4):
        code, out, _ = run(capsys, "capacity", "--network", worst4, "--exact")
        data = json.loads(out)
        assert code == 0
        assert data["value"] == 1  # exact rational, rendered as a JSON number

    def test_emit_schedule(self, capsys, worst4):
        code, out, _ = run(
            capsys, "capacity", "--network", worst4, "--exact", "--emit-schedule"
        )
        data = json.loads(out)
        sched = data["schedule"]
        assert sched["n"] == 4
        total = sum(F(str(e["prob"])) if isinstance(e["prob"], str) else F(e["prob"]) for e in sched["states"])
        assert float(total) == pytest.approx(1.0, abs=1e-9)

    def test_fd_mode(self, capsys, worst4):
        code, out, _ = run(
            capsys, "capacity", "--network", worst4, "--mode", "fd", "--emit-schedule"
        )
        data = json.loads(out)
        assert code == 0
        assert data["mode"] == "fd"
        assert "schedule" not in data  # FD has no schedule to emit
        assert data["value"] == pytest.approx(1.0)

    def test_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr(
            "sys.stdin", io.StringIO('{"l": [1], "r": [0.5]}')
        )
        code, out, _ = run(capsys, "capacity", "--network", "-", "--exact")
        data = json.loads(out)
        assert code == 0
        assert data["value"] == "1/3"

    def test_big_l_substitution(self, capsys, tmp_path):
        path = tmp_path / "ht3.json"
        run(capsys, "generate", "--family", "half-tight", "--n", "3", "-o", str(path))
        code, out, _ = run(
            capsys, "capacity", "--network", str(path), "--big-l", "1000000"
        )
        data = json.loads(out)
        assert code == 0
        assert data["value"] == pytest.approx(1.0, abs=1e-4)

    def test_deterministic_output(self, capsys, worst4):
        _, out1, _ = run(capsys, "capacity", "--network", worst4, "--emit-schedule")
        _, out2, _ = run(capsys, "capacity", "--network", worst4, "--emit-schedule")
        assert out1 == out2

    def test_bad_network_exits_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("not json")
        code, out, err = run(capsys, "capacity", "--network", str(bad))
        assert code == 2
        assert out == ""
        assert "error:" in err

    def test_missing_file_exits_2(self, capsys, tmp_path):
        code, _, err = run(capsys, "capacity", "--network", str(tmp_path / "nope.json"))
        assert code == 2
        assert "error:" in err

    def test_guard_exits_3(self, capsys, tmp_path):
        path = tmp_path / "big.json"
        run(capsys, "generate", "--family", "random", "--n", "17", "-o", str(path))
        code, _, err = run(capsys, "capacity", "--network", str(path))
        assert code == 3
        assert "guard:" in err


class TestSelect:
    def test_exhaustive_single_relay_report(self, capsys, tmp_path):
        path = tmp_path / "two.json"
        path.write_text('{"l": [1, "2/5"], "r": [0.5, "14/5"]}')
        code, out, _ = run(
            capsys, "select", "--network", str(path), "-k", "1", "--exact"
        )
        data = json.loads(out)
        assert code == 0
        assert data["strategy"] == "exhaustive"
        assert data["selected"] == [2]
        assert data["value"] == "7/20"
        assert data["value_kind"] == "capacity"
        # exhaustive search with k=1 guarantees max(k/n, 1/4); here k/n wins
        assert data["bound"] == 0.5

    def test_worst_case_drop_one(self, capsys, worst4):
        code, out, _ = run(
            capsys, "select", "--network", worst4, "-k", "3", "--exact"
        )
        data = json.loads(out)
        assert code == 0
        assert data["fraction"] == 0.75
        assert data["full_value"] == 1

    def test_force_remove_voids_bound(self, capsys, tmp_path):
        path = tmp_path / "ht4.json"
        run(capsys, "generate", "--family", "half-tight", "--n", "4", "-o", str(path))
        code, out, _ = run(
            capsys,
            "select",
            "--network",
            str(path),
            "-k",
            "3",
            "--strategy",
            "worst-drop",
            "--force-remove",
            "4",
            "--exact",
        )
        data = json.loads(out)
        assert code == 0  # no bound, so no bound check to fail
        assert data["bound"] is None
        assert data["fraction"] == 0.5
        assert data["selected"] == [1, 2, 3]
        assert data["notes"]

    def test_strategies_all_run(self, capsys, worst4):
        for strategy, k in [
            ("worst-drop", "2"),
            ("schedule-reuse", "3"),
            ("iterative", "2"),
            ("exhaustive", "2"),
        ]:
            code, out, _ = run(
                capsys, "select", "--network", worst4, "-k", k, "--strategy", strategy
            )
            data = json.loads(out)
            assert code == 0
            assert data["strategy"] == strategy
            assert float(data["fraction"]) >= float(data["bound"]) - 1e-9

    def test_bad_k_exits_2(self, capsys, worst4):
        code, _, err = run(capsys, "select", "--network", worst4, "-k", "9")
        assert code == 2
        assert "error:" in err

    def test_deterministic(self, capsys, worst4):
        _, out1, _ = run(capsys, "select", "--network", worst4, "-k", "2")
        _, out2, _ = run(capsys, "select", "--network", worst4, "-k", "2")
        assert out1 == out2


class TestGenerate:
    def test_worst_case_to_stdout(self, capsys):
        code, out, _ = run(capsys, "generate", "--family", "worst-case", "--n", "4")
        data = json.loads(out)
        assert code == 0
        assert data["name"] == "worst-case-4"
        assert data["l"] == [0.5, 1, 0.5, 1]
        assert data["r"] == [1, 0.5, 1, 0.5]

    def test_odd_worst_case_big_l(self, capsys):
        code, out, _ = run(
            capsys, "generate", "--family", "worst-case", "--n", "5", "--big-l", "64"
        )
        data = json.loads(out)
        assert code == 0
        assert data["l"][-1] == 64
        _, out_inf, _ = run(capsys, "generate", "--family", "worst-case", "--n", "5")
        assert json.loads(out_inf)["l"][-1] == "inf"

    def test_half_tight(self, capsys):
        code, out, _ = run(capsys, "generate", "--family", "half-tight", "--n", "3")
        data = json.loads(out)
        assert data["l"] == [0.5, 0.5, "inf"]
        assert data["r"] == ["inf", "inf", 0.5]

    def test_random_seeded(self, capsys):
        _, out1, _ = run(
            capsys, "generate", "--family", "random", "--n", "5", "--seed", "7"
        )
        _, out2, _ = run(
            capsys, "generate", "--family", "random", "--n", "5", "--seed", "7"
        )
        _, out3, _ = run(
            capsys, "generate", "--family", "random", "--n", "5", "--seed", "8"
        )
        assert out1 == out2
        assert out1 != out3

    def test_random_range(self, capsys):
        _, out, _ = run(
            capsys,
            "generate", "--family", "random", "--n", "6",
            "--seed", "0", "--lo", "1.5", "--hi", "2.5",
        )
        data = json.loads(out)
        assert all(1.5 <= v < 2.5 for v in data["l"] + data["r"])


class TestVerify:
    def test_suite_runs_green(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--suite", "submodular", "--trials", "5"
        )
        data = json.loads(out)
        assert code == 0
        assert data["suite"] == "submodular"
        assert data["failures"] == []
        assert data["passes"] == data["instances"] > 0

    def test_unknown_suite_exits_2_via_argparse(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--suite", "nonsense"])
        assert exc.value.code == 2

    def test_seeded_reports_match(self, capsys):
        args = ("verify", "--suite", "partition", "--trials", "4", "--seed", "3")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        # wall time differs; everything else must not
        d1, d2 = json.loads(out1), json.loads(out2)
        d1.pop("seconds"), d2.pop("seconds")
        assert d1 == d2


class TestSweep:
    def test_worst_case_csv(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "--family", "worst-case", "--n-range", "2:5"
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "N,C_full,best_value,fraction"
        assert len(lines) == 5
        for line in lines[1:]:
            n, c_full, best, frac = line.split(",")
            n = int(n)
            assert F(c_full) == 1
            assert F(best) == F(n - 1, n)
            assert F(frac) == F(n - 1, n)

    def test_integer_k(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "--family", "worst-case", "--n-range", "4:4", "--k", "1"
        )
        lines = out.splitlines()
        # best single relay of the even family at n=4: fraction 1/3
        n, c_full, best, frac = lines[1].split(",")
        assert (n, F(c_full), F(best), F(frac)) == ("4", F(1), F(1, 3), F(1, 3))

    def test_to_file_and_deterministic(self, capsys, tmp_path):
        out_path = tmp_path / "sweep.csv"
        args = ("sweep", "--family", "half-tight", "--n-range", "2:4", "--out", str(out_path))
        code, _, _ = run(capsys, *args)
        assert code == 0
        first = out_path.read_bytes()
        run(capsys, *args)
        assert out_path.read_bytes() == first

    def test_bad_range_exits_2(self, capsys):
        code, _, err = run(capsys, "sweep", "--family", "worst-case", "--n-range", "5")
        assert code == 2
        assert "error:" in err

    def test_guard_exits_3(self, capsys):
        code, _, err = run(
            capsys, "sweep", "--family", "half-tight", "--n-range", "11:11", "--k", "3"
        )
        assert code == 3
        assert "guard:" in err
