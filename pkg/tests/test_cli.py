from __future__ import annotations

import json
import shutil
import subprocess
import sys

import pytest

from hamiltonica import io
from hamiltonica.cli import main, threads, verify_certificate
from hamiltonica.constructions import build_t_delta, cartesian_product, path_graph, star
from hamiltonica.graph import InputError


@pytest.fixture
def graph_file(tmp_path):
    def write(g, name="g.json", fmt="json"):
        p = tmp_path / name
        p.write_text(io.dumps(g, fmt))
        return str(p)

    return write


class TestGen:
    def test_tdelta_json(self, capsys):
        assert main(["gen", "tdelta", "--delta", "3"]) == 0
        assert io.from_json(capsys.readouterr().out) == build_t_delta(3)

    @pytest.mark.parametrize("kind,n,edges", [("path", "4", 3), ("cycle", "5", 5), ("star", "3", 3)])
    def test_basic_families(self, capsys, kind, n, edges):
        assert main(["gen", kind, n, "--format", "graph6"]) == 0
        assert io.from_graph6(capsys.readouterr().out).m == edges

    def test_dot(self, capsys):
        assert main(["gen", "path", "2", "--format", "dot"]) == 0
        assert "0 -- 1;" in capsys.readouterr().out

    def test_product(self, tmp_path, graph_file):
        out = tmp_path / "prod.json"
        code = main(["gen", "product", "--left", graph_file(star(3), "l.json"),
                     "--right", graph_file(path_graph(2), "r.g6", "graph6"), "-o", str(out)])
        assert code == 0
        assert io.from_json(out.read_text()).m == cartesian_product(star(3), path_graph(2)).m


class TestSolveAndVerify:
    def test_found_cycle_round_trip(self, tmp_path, graph_file, capsys):
        g = graph_file(cartesian_product(path_graph(2), path_graph(5)))
        assert main(["solve", g, "--out", str(tmp_path / "cert")]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["verdict"] == "found"
        cert = tmp_path / "cert" / "ham-certificate.json"
        assert main(["verify", str(cert), "--graph", g]) == 0
        assert "valid" in capsys.readouterr().out

    def test_not_hamiltonian(self, graph_file, capsys):
        g = graph_file(cartesian_product(star(3), path_graph(2)))
        assert main(["solve", g]) == 1
        assert json.loads(capsys.readouterr().out)["verdict"] == "not_hamiltonian"

    def test_budget_exhausted(self, graph_file, capsys):
        g = graph_file(cartesian_product(build_t_delta(3), path_graph(6)))
        assert main(["solve", g, "--budget", "5"]) == 2

    def test_factor_and_witness(self, tmp_path, graph_file, capsys):
        assert main(["solve", graph_file(path_graph(6)), "--problem", "factor"]) == 0
        capsys.readouterr()
        claw = graph_file(star(3), "claw.json")
        assert main(["solve", claw, "--problem", "factor", "--out", str(tmp_path)]) == 1
        doc = json.loads(capsys.readouterr().out)
        assert doc["witness"] == {"s": [0], "isolated_after": 3}
        assert main(["verify", str(tmp_path / "factor-certificate.json"), "--graph", claw]) == 0

    def test_toughness(self, tmp_path, graph_file, capsys):
        claw = graph_file(star(3))
        assert main(["solve", claw, "--problem", "tough", "--out", str(tmp_path)]) == 1
        assert json.loads(capsys.readouterr().out)["witness"]["omega"] == 3
        assert main(["verify", str(tmp_path / "tough-certificate.json"), "--graph", claw]) == 0

    def test_tampered_certificate(self, tmp_path, graph_file, capsys):
        g = graph_file(path_graph(4))
        cert = tmp_path / "bad.json"
        cert.write_text(json.dumps({"cycle": [0, 1, 2, 3]}))
        assert main(["verify", str(cert), "--graph", g]) == 1
        assert "INVALID" in capsys.readouterr().out

    def test_unrecognised_certificate(self):
        with pytest.raises(InputError):
            verify_certificate(path_graph(3), {"colour": 1})


class TestErrors:
    def test_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 3

    def test_missing_file(self, tmp_path, capsys):
        assert main(["solve", str(tmp_path / "nope.json")]) == 4
        assert "error" in capsys.readouterr().err

    def test_malformed_graph(self, tmp_path, capsys):
        p = tmp_path / "bad.json"
        p.write_text("{broken")
        assert main(["solve", str(p)]) == 4

    def test_check_input_error(self, capsys):
        assert main(["check", "strip-odd-endpoint", "--n", "5", "--k", "2"]) == 4

    def test_threads(self, monkeypatch):
        monkeypatch.setenv("HAMILTONICA_THREADS", "3")
        assert threads() == 3
        monkeypatch.setenv("HAMILTONICA_THREADS", "many")
        with pytest.raises(InputError):
            threads()


class TestCheck:
    def test_single_check_bundle(self, tmp_path, capsys):
        assert main(["check", "component-counts", "--delta", "3", "--m", "5", "--out", str(tmp_path), "--json"]) == 0
        out = capsys.readouterr().out
        assert "component-counts" in out and '"verdict": "pass"' in out
        assert (tmp_path / "000-component-counts.json").exists()

    @pytest.mark.parametrize(
        "argv",
        [
            ["strip-odd-endpoint", "--n", "5", "--k", "3"],
            ["strip-endpoint-patterns", "--n", "5"],
            ["no-factor-product", "--max-n", "4", "--factors", "P2"],
            ["tdelta-product", "--delta", "3", "--m", "2", "3"],
            ["positive-side", "--tree", "P4", "--n", "6"],
            ["tree-times-cycle", "--max-tree-n", "4", "--n", "3"],
        ],
    )
    def test_each_check_passes(self, argv, capsys):
        assert main(["check", *argv]) == 0

    def test_skipped_exit_code(self, capsys):
        assert main(["check", "tdelta-product", "--delta", "3", "--m", "6", "--budget", "10"]) == 2


def test_installed_entrypoint():
    exe = shutil.which("hamiltonica")
    cmd = [exe] if exe else [sys.executable, "-m", "hamiltonica.cli"]
    res = subprocess.run(cmd + ["gen", "path", "3", "--format", "graph6"], capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.strip() == io.to_graph6(path_graph(3))
    res = subprocess.run(cmd + ["check", "bogus"], capture_output=True, text=True, check=False)
    assert res.returncode == 3
