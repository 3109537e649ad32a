import json
import subprocess
import sys

import numpy as np
import pytest

from graph_selftest import cli
from graph_selftest.devices import QuantumBoxSet
from graph_selftest.graph import format_graph

from conftest import CORPUS


@pytest.fixture
def gfile(tmp_path):
    def write(name, text=None):
        p = tmp_path / f"{name}.txt"
        p.write_text(text if text is not None else format_graph(CORPUS[name]))
        return str(p)

    return write


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


class TestCertificate:
    def test_c5(self, capsys, gfile):
        code, d, err = run(capsys, "certificate", "--graph", gfile("C5"), "--kind", "1")
        assert code == 0 and len(d["rows"]) == 6
        assert d["rows"][-1] == {"settings": "XXXXX", "expected": "-1"}
        assert "6 rows" in err

    def test_edge(self, capsys, gfile):
        code, d, _ = run(capsys, "certificate", "--graph", gfile("P2"), "--kind", "2")
        assert code == 0 and len(d["rows"]) == 5

    def test_bipartite_kind1(self, capsys, gfile):
        code, d, err = run(capsys, "certificate", "--graph", gfile("P3"), "--kind", "1")
        assert code == 3 and d is None and "bipartite" in err

    def test_disconnected(self, capsys, gfile):
        code, _, _ = run(capsys, "certificate", "--graph", gfile("dis", "0 1\n2 3\n"), "--kind", "2")
        assert code == 2

    def test_bad_file(self, capsys, gfile, tmp_path):
        assert run(capsys, "certificate", "--graph", gfile("bad", "0 0\n"))[0] == 2
        assert run(capsys, "certificate", "--graph", str(tmp_path / "missing.txt"))[0] == 2

    def test_bad_anchor(self, capsys, gfile):
        assert run(capsys, "certificate", "--graph", gfile("C5"), "--anchor", "0,1,2")[0] == 3
        assert run(capsys, "certificate", "--graph", gfile("C5"), "--anchor", "a,b")[0] == 3

    def test_out_file(self, capsys, gfile, tmp_path):
        out = tmp_path / "cert.json"
        code, d, _ = run(capsys, "certificate", "--graph", gfile("C3"), "--out", str(out))
        assert code == 0 and d is None
        assert json.loads(out.read_text())["kind"] == 1


class TestVerify:
    def test_ok(self, capsys, gfile):
        code, d, _ = run(capsys, "verify", "--graph", gfile("grid2x3"), "--kind", "2")
        assert code == 0 and d["passed"]


class TestCheck:
    def test_honest(self, capsys, gfile):
        code, d, _ = run(capsys, "check", "--graph", gfile("C3"), "--kind", "1")
        assert code == 0 and d["epsilon"] < 1e-10

    def test_lhv_c3(self, capsys, gfile):
        code, d, _ = run(capsys, "check", "--graph", gfile("C3"), "--kind", "1", "--provider", "lhv")
        assert code == 1 and d["epsilon"] == 2.0

    def test_rotated(self, capsys, gfile):
        code, d, _ = run(capsys, "check", "--graph", gfile("C3"), "--noise", "rotated:0.05")
        assert code == 1 and 0 < d["epsilon"] < 1
        code, d, _ = run(capsys, "check", "--graph", gfile("C3"), "--noise", "rotated:0.05", "--threshold", "0.5")
        assert code == 0

    def test_embedded(self, capsys, gfile):
        code, d, _ = run(capsys, "check", "--graph", gfile("P3"), "--kind", "2", "--dim", "3", "--pad", "-1")
        assert code == 0 and d["epsilon"] < 1e-10

    @pytest.mark.parametrize(
        "extra",
        [
            ["--kind", "2", "--provider", "lhv"],  # D rows
            ["--provider", "lhv", "--noise", "rotated:0.1"],
            ["--noise", "bogus:0.1"],
            ["--dim", "1"],
            ["--trials", "10"],
        ],
    )
    def test_provider_errors(self, capsys, gfile, extra):
        assert run(capsys, "check", "--graph", gfile("C3"), *extra)[0] == 4

    def test_size_cap(self, capsys, gfile, monkeypatch):
        monkeypatch.setenv("GRAPH_SELFTEST_MAX_QUBITS", "2")
        assert run(capsys, "check", "--graph", gfile("C3"))[0] == 2

    def test_sampled_lhv_records_seed(self, capsys, gfile):
        code, d, _ = run(capsys, "check", "--graph", gfile("C5"), "--provider", "lhv", "--trials", "100", "--seed", "4")
        assert d["seed"] == 4 and d["trials"] == 100


class TestExtract:
    def test_honest_edge(self, capsys, gfile):
        code, d, _ = run(capsys, "extract", "--graph", gfile("P2"), "--kind", "2")
        assert code == 0 and d["bound_satisfied"]
        assert max([d["state_distance"]] + [r["distance"] for r in d["rows"]]) < 1e-9

    def test_rotated_c3(self, capsys, gfile):
        code, d, _ = run(capsys, "extract", "--graph", gfile("C3"), "--noise", "rotated:0.02")
        assert code == 0 and d["bound_satisfied"] and d["epsilon"] > 0

    def test_lhv_rejected(self, capsys, gfile):
        assert run(capsys, "extract", "--graph", gfile("C3"), "--provider", "lhv")[0] == 4

    def test_degenerate(self, capsys, gfile, monkeypatch):
        real = cli.build_quantum_box

        def broken(cert, *args, **kwargs):
            box = real(cert, *args, **kwargs)
            obs = [dict(o, Z=-np.eye(2)) for o in box.observables]
            return QuantumBoxSet(box.state, obs, "broken")

        monkeypatch.setattr(cli, "build_quantum_box", broken)
        assert run(capsys, "extract", "--graph", gfile("C3"))[0] == 5


class TestLhv:
    def test_p4(self, capsys, gfile):
        code, d, _ = run(capsys, "lhv", "--graph", gfile("P4"))
        assert code == 0 and d["complete"] and d["settings_checked"] == 81

    def test_c4(self, capsys, gfile):
        assert run(capsys, "lhv", "--graph", gfile("C4"))[1]["complete"]

    def test_c5(self, capsys, gfile):
        _, d, _ = run(capsys, "lhv", "--graph", gfile("C5"))
        assert (d["violation_row"], d["lhv"], d["quantum"]) == ("XXXXX", 1.0, -1.0)


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ["certificate", "--kind", "1"],
            ["check", "--provider", "lhv", "--trials", "500", "--seed", "11"],
            ["extract", "--noise", "skew:0.03"],
        ],
    )
    def test_byte_identical(self, gfile, argv):
        path = gfile("tri+pendant")
        cmd = [sys.executable, "-m", "graph_selftest", argv[0], "--graph", path, *argv[1:]]
        outs = [subprocess.run(cmd, capture_output=True, check=False).stdout for _ in range(2)]
        assert outs[0] == outs[1] and outs[0].startswith(b"{")
