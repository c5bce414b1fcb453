import csv
import json

import pytest

from builders import CGC_EXAMPLE, complete, cycle, edgeless, path, star
from cli.commands import solve as solve_command
from domain.models import CnfFormula
from main import main
from utils.dimacs import write_dimacs_cnf, write_dimacs_graph


def _write_graph(tmp_path, name, g):
    target = tmp_path / f"{name}.col"
    target.write_text(write_dimacs_graph(g), encoding="utf-8")
    return str(target)


def _write_cnf(tmp_path, name, f):
    target = tmp_path / f"{name}.cnf"
    target.write_text(write_dimacs_cnf(f), encoding="utf-8")
    return str(target)


def _last_json(capsys):
    return json.loads(capsys.readouterr().out.strip().splitlines()[-1])


class TestSolve:

    @staticmethod
    def test_grundy_with_certificate(tmp_path, capsys):
        graph = _write_graph(tmp_path, "p4", path(4))
        assert main(["solve", "grundy", graph, "--certificate"]) == 0
        result = _last_json(capsys)
        assert result["answer"] == "Solved"
        assert result["value"] == 3
        assert sorted(result["certificate"]["ordering"]) == [1, 2, 3, 4]
        assert "k" not in result and result["elapsed_ms"] >= 0

    @staticmethod
    def test_grundy_decision(tmp_path, capsys):
        graph = _write_graph(tmp_path, "p4", path(4))
        assert main(["solve", "grundy", graph, "--k", "4", "--certificate"]) == 0
        result = _last_json(capsys)
        assert result["answer"] == "No" and result["k"] == 4
        assert "certificate" not in result

    @staticmethod
    @pytest.mark.parametrize("env_default, flags, expected", [
        (False, [], False),
        (True, [], True),
        (True, ["--no-store-choices"], False),
        (False, ["--store-choices"], True),
    ])
    def test_store_choices_follows_setting(tmp_path, capsys, monkeypatch, env_default, flags, expected):
        seen = []
        real = solve_command.grundy_number_dp

        def recording(g, store_choices):
            seen.append(store_choices)
            return real(g, store_choices=store_choices)

        monkeypatch.setattr(solve_command, "DP_STORE_CHOICES", env_default)
        monkeypatch.setattr(solve_command, "grundy_number_dp", recording)
        graph = _write_graph(tmp_path, "p4", path(4))
        assert main(["solve", "grundy", graph, *flags]) == 0
        assert seen == [expected]
        assert _last_json(capsys)["value"] == 3

    @staticmethod
    def test_weak_certificate(tmp_path, capsys):
        graph = _write_graph(tmp_path, "star", star(3))
        assert main(["solve", "weak", graph, "--certificate", "--store-choices"]) == 0
        result = _last_json(capsys)
        assert result["value"] == 2
        assert len(result["certificate"]["assignment"]) == 4

    @staticmethod
    def test_weak_triangle(tmp_path, capsys):
        graph = _write_graph(tmp_path, "k3", complete(3))
        assert main(["solve", "weak", graph]) == 0
        assert _last_json(capsys)["value"] == 3

    @staticmethod
    def test_connected_bipartite_decision(tmp_path, capsys):
        graph = _write_graph(tmp_path, "c6", cycle(6))
        assert main(["solve", "connected", graph, "--k", "3"]) == 0
        assert _last_json(capsys)["answer"] == "No"

    @staticmethod
    def test_connected(tmp_path, capsys):
        graph = _write_graph(tmp_path, "c5", cycle(5))
        assert main(["solve", "connected", graph, "--certificate"]) == 0
        result = _last_json(capsys)
        assert result["value"] == 3
        assert len(result["certificate"]["ordering"]) == 5
        assert main(["solve", "connected", graph, "--k", "3"]) == 0
        assert _last_json(capsys)["answer"] == "Yes"

    @staticmethod
    def test_connected_budget_exit_code(tmp_path, capsys):
        graph = _write_graph(tmp_path, "k5", complete(5))
        assert main(["solve", "connected", graph, "--k", "5", "--budget", "1"]) == 2
        assert _last_json(capsys)["answer"] == "BudgetExceeded"

    @staticmethod
    def test_connected_rejects_disconnected_graph(tmp_path):
        graph = _write_graph(tmp_path, "empty", edgeless(3))
        assert main(["solve", "connected", graph]) == 1

    @staticmethod
    def test_xp_witness(tmp_path, capsys):
        graph = _write_graph(tmp_path, "p4", path(4))
        assert main(["solve", "xp", graph, "--k", "3", "--certificate"]) == 0
        result = _last_json(capsys)
        assert result["answer"] == "Yes"
        certificate = result["certificate"]
        assert certificate["assignment"][certificate["top"] - 1] == 3

    @staticmethod
    def test_local_number(tmp_path, capsys):
        graph = _write_graph(tmp_path, "c6", cycle(6))
        assert main(["solve", "local", graph]) == 0
        assert _last_json(capsys)["value"] == 3

    @staticmethod
    def test_color_coding(tmp_path, capsys):
        graph = _write_graph(tmp_path, "k3", complete(3))
        assert main(["solve", "colorcoding", graph, "--k", "3", "--seed", "1", "--certificate"]) == 0
        result = _last_json(capsys)
        assert result["answer"] == "Yes"
        assert result["seed"] == 1 and result["trials"] >= 1
        assert max(result["certificate"]["assignment"]) == 3

    @staticmethod
    def test_color_coding_needs_k(tmp_path):
        graph = _write_graph(tmp_path, "k3", complete(3))
        assert main(["solve", "colorcoding", graph]) == 1

    @staticmethod
    def test_input_errors(tmp_path):
        assert main(["solve", "grundy", str(tmp_path / "missing.col")]) == 1
        broken = tmp_path / "broken.col"
        broken.write_text("p edge 2 1\ne 1 1\n", encoding="utf-8")
        assert main(["solve", "grundy", str(broken)]) == 1


class TestGenAndValidate:

    @staticmethod
    def test_binomial_round_trip(tmp_path, capsys):
        prefix = str(tmp_path / "out" / "t4")
        assert main(["gen", "binomial", "--k", "4", "--out", prefix]) == 0
        sidecar = json.loads((tmp_path / "out" / "t4.json").read_text(encoding="utf-8"))
        assert sidecar["k"] == 4 and sidecar["root"] == 1 and sidecar["n"] == 8
        dimacs = (tmp_path / "out" / "t4.col").read_text(encoding="utf-8")
        assert "c target k 4" in dimacs and "p edge 8 7" in dimacs
        assert main(["validate", prefix + ".col", prefix + ".json"]) == 0
        report = _last_json(capsys)
        assert report == {"variant": "proper", "valid": True, "colors": 4}

    @staticmethod
    def test_pruned_parents(tmp_path):
        prefix = str(tmp_path / "pruned")
        assert main(["gen", "pruned", "--s", "4", "--l", "2", "--m", "1", "--out", prefix]) == 0
        sidecar = json.loads((tmp_path / "pruned.json").read_text(encoding="utf-8"))
        assert sidecar["n"] == 6
        assert sidecar["parents"] == [5]
        assert sidecar["labels"][4] == "r.3"

    @staticmethod
    def test_random_has_no_target(tmp_path):
        prefix = str(tmp_path / "gnp")
        assert main(["gen", "random", "--n", "10", "--p", "0.3", "--seed", "4", "--out", prefix]) == 0
        sidecar = json.loads((tmp_path / "gnp.json").read_text(encoding="utf-8"))
        assert "k" not in sidecar and "root" not in sidecar

    @staticmethod
    def test_nae_witness(tmp_path, capsys):
        cnf = _write_cnf(tmp_path, "nae", CnfFormula(3, ((1, 2, 3), (1, 2))))
        prefix = str(tmp_path / "nae")
        assert main(["gen", "nae", cnf, "--assignment", "1,0,0", "--out", prefix]) == 0
        assert main(["validate", prefix + ".col", prefix + ".json", "--variant", "weak"]) == 0
        assert _last_json(capsys)["colors"] == 6

    @staticmethod
    def test_nae_rejects_bad_assignment(tmp_path):
        cnf = _write_cnf(tmp_path, "nae", CnfFormula(3, ((1, 2, 3),)))
        assert main(["gen", "nae", cnf, "--assignment", "TTT", "--out", str(tmp_path / "x")]) == 1
        assert main(["gen", "nae", cnf, "--assignment", "TF", "--out", str(tmp_path / "x")]) == 1

    @staticmethod
    def test_fvs_feedback_set(tmp_path, capsys):
        cnf = _write_cnf(tmp_path, "sat", CnfFormula(2, ((1, 2),)))
        prefix = str(tmp_path / "fvs")
        assert main(["gen", "fvs", cnf, "--q", "2", "--t", "2", "--assignment", "TF", "--out", prefix]) == 0
        sidecar = json.loads((tmp_path / "fvs.json").read_text(encoding="utf-8"))
        assert len(sidecar["feedback_set"]) == 4
        assert sidecar["k"] == 8
        assert main(["validate", prefix + ".col", prefix + ".json"]) == 0
        assert _last_json(capsys)["colors"] == 8

    @staticmethod
    def test_cgc_connected_ordering(tmp_path, capsys):
        cnf = _write_cnf(tmp_path, "cgc", CGC_EXAMPLE)
        prefix = str(tmp_path / "cgc")
        assert main(["gen", "cgc", cnf, "--assignment", "1111", "--out", prefix]) == 0
        assert main(["validate", prefix + ".col", prefix + ".json", "--variant", "connected"]) == 0
        report = _last_json(capsys)
        assert report["valid"] and report["connected"] and report["colors"] == 7

    @staticmethod
    def test_invalid_certificate(tmp_path, capsys):
        graph = _write_graph(tmp_path, "edge", path(2))
        certificate = tmp_path / "bad.json"
        certificate.write_text(json.dumps({"assignment": [2, 2]}), encoding="utf-8")
        assert main(["validate", graph, str(certificate)]) == 3
        assert _last_json(capsys)["valid"] is False
        assert main(["validate", graph, str(certificate), "--variant", "weak"]) == 3

    @staticmethod
    def test_solve_result_validates(tmp_path, capsys):
        graph = _write_graph(tmp_path, "c5", cycle(5))
        assert main(["solve", "grundy", graph, "--certificate"]) == 0
        result = tmp_path / "result.json"
        result.write_text(capsys.readouterr().out, encoding="utf-8")
        assert main(["validate", graph, str(result)]) == 0
        assert _last_json(capsys)["colors"] == 3

    @staticmethod
    def test_disconnected_prefix_fails_connected_variant(tmp_path, capsys):
        graph = _write_graph(tmp_path, "p3", path(3))
        certificate = tmp_path / "order.json"
        certificate.write_text(json.dumps({"ordering": [1, 3, 2]}), encoding="utf-8")
        assert main(["validate", graph, str(certificate)]) == 0
        assert main(["validate", graph, str(certificate), "--variant", "connected"]) == 3
        assert _last_json(capsys)["connected"] is False


class TestBench:

    MANIFEST = {
        "instances": [
            {"family": "binomial", "params": {"k": 4}},
            {"family": "gnp", "params": {"n": 14, "p": 0.5}},
            {"family": "tree", "params": {"n": 12}, "seed": 3},
            {"name": "big", "family": "complete", "params": {"n": 12}},
        ],
        "algorithms": ["grundy-dp", "weak-dp", "sparse-bound", "ordering-oracle"],
        "seed": 5,
    }

    @staticmethod
    def _run(tmp_path, name):
        manifest = tmp_path / "manifest.json"
        manifest.write_text(json.dumps(TestBench.MANIFEST), encoding="utf-8")
        out = tmp_path / f"{name}.csv"
        assert main(["bench", str(manifest), "--out", str(out), "--repeats", "1"]) == 0
        with open(out, newline="", encoding="utf-8") as f:
            return list(csv.DictReader(f))

    @staticmethod
    def test_rows_and_columns(tmp_path):
        rows = TestBench._run(tmp_path, "first")
        assert len(rows) == 16
        assert list(rows[0]) == ["instance", "algorithm", "value", "elapsed_ms", "peak_table_bytes"]
        by_key = {(r["instance"], r["algorithm"]): r for r in rows}
        assert by_key[("binomial-k4-s5", "grundy-dp")]["value"] == "4"
        assert by_key[("binomial-k4-s5", "grundy-dp")]["peak_table_bytes"] == "256"
        assert by_key[("big", "grundy-dp")]["value"] == "12"
        # 12 개 정점은 순서 오라클 한도 밖
        assert by_key[("big", "ordering-oracle")]["value"] == ""

    @staticmethod
    def test_values_are_reproducible(tmp_path):
        first = TestBench._run(tmp_path, "first")
        second = TestBench._run(tmp_path, "second")
        assert [(r["instance"], r["algorithm"], r["value"]) for r in first] == [
            (r["instance"], r["algorithm"], r["value"]) for r in second
        ]

    @staticmethod
    def test_unknown_algorithm(tmp_path):
        manifest = tmp_path / "manifest.json"
        manifest.write_text(json.dumps({"instances": [], "algorithms": ["magic"]}), encoding="utf-8")
        assert main(["bench", str(manifest)]) == 1

    @staticmethod
    @pytest.mark.parametrize("content", ["{", json.dumps({"instances": [{"family": "gnp", "params": {}}], "algorithms": ["grundy-dp"]})])
    def test_bad_manifest(tmp_path, content):
        manifest = tmp_path / "manifest.json"
        manifest.write_text(content, encoding="utf-8")
        assert main(["bench", str(manifest)]) == 1

    @staticmethod
    def test_binomial_family_agrees_across_solvers(tmp_path):
        manifest = tmp_path / "binomial.json"
        manifest.write_text(json.dumps({
            "instances": [{"family": "binomial", "params": {"k": k}} for k in range(1, 6)],
            "algorithms": ["grundy-dp", "weak-dp", "local"],
            "repeats": 1,
        }), encoding="utf-8")
        out = tmp_path / "binomial.csv"
        assert main(["bench", str(manifest), "--out", str(out)]) == 0
        with open(out, newline="", encoding="utf-8") as f:
            rows = list(csv.DictReader(f))
        assert len(rows) == 15
        for row in rows:
            assert row["value"] == row["instance"].split("-")[1][1:]
