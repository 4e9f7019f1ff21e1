import json
import subprocess
import sys

import pytest

from treeramsey.cli import main
from treeramsey.coloring import coloring_from_json
from treeramsey.ramsey_bridge import IntTupleColoring, brute_force_rt, is_homogeneous
from treeramsey.tree_core import Embedding, TruncatedTree, enumerate_chains


def run(*argv):
    return main([str(a) for a in argv])


def write(path, obj):
    path.write_text(json.dumps(obj))
    return path


def read(path):
    return json.loads(path.read_text())


@pytest.fixture
def seeded(tmp_path):
    path = tmp_path / "f.json"
    assert run("gen", "coloring", "--n", 2, "--k", 2, "--depth", 10, "--seed", 3,
               "--out", path) == 0
    return path


def test_gen_kinds(tmp_path):
    for kind, extra in (("seeded", []), ("constant", ["--color", 1]), ("table", []),
                        ("tuple-seeded", ["--domain", 6]), ("tuple-table", ["--domain", 5])):
        out = tmp_path / f"{kind}.json"
        assert run("gen", "coloring", "--kind", kind, "--depth", 3, *extra, "--out", out) == 0
        doc = read(out)
        assert doc["k"] == 2 and "source" in doc


def test_constant_solve_verifies(tmp_path):
    f = tmp_path / "c.json"
    run("gen", "coloring", "--kind", "constant", "--n", 2, "--depth", 6, "--color", 1, "--out", f)
    res = tmp_path / "r.json"
    assert run("tt", "solve", "--coloring", f, "--target-depth", 2, "--out", res) == 0
    assert read(res)["color"] == 1
    assert run("verify", "--coloring", f, "--embedding", res, "--out", tmp_path / "v.json") == 0
    report = read(tmp_path / "v.json")
    assert report["embedding-valid"] and report["monochromatic"]


def test_no_pairs_in_single_node(tmp_path, capsys):
    f = tmp_path / "c.json"
    run("gen", "coloring", "--kind", "constant", "--n", 2, "--depth", 0, "--out", f)
    assert run("tt", "solve", "--coloring", f, "--depth", 0, "--target-depth", 0) == 2
    assert "depth exhausted" in capsys.readouterr().err


def test_seeded_suite_verifies(tmp_path):
    for seed in range(50):
        f = tmp_path / f"f{seed}.json"
        res = tmp_path / f"r{seed}.json"
        assert run("gen", "coloring", "--n", 2, "--k", 2, "--depth", 10, "--seed", seed,
                   "--out", f) == 0
        assert run("tt", "solve", "--coloring", f, "--target-depth", 1, "--out", res) == 0
        assert run("verify", "--coloring", f, "--embedding", res,
                   "--out", tmp_path / "v.json") == 0


def test_brute_method(tmp_path):
    f = tmp_path / "f.json"
    run("gen", "coloring", "--n", 1, "--depth", 3, "--seed", 8, "--out", f)
    res = tmp_path / "r.json"
    assert run("tt", "solve", "--method", "brute", "--coloring", f, "--target-depth", 1,
               "--out", res) == 0
    assert run("verify", "--coloring", f, "--embedding", res, "--out", tmp_path / "v.json") == 0
    assert run("tt", "solve", "--method", "brute", "--cap", 5, "--coloring", f,
               "--target-depth", 2) == 1


def test_verify_planted_defect(tmp_path):
    chains = enumerate_chains(TruncatedTree(2), 2)
    entries = [[list(c), int(c == ("0", "01"))] for c in chains]
    f = write(tmp_path / "t.json", {"n": 2, "k": 2, "depth": 2,
                                    "source": {"kind": "table", "entries": entries}})
    w = write(tmp_path / "w.json", Embedding.identity(2).to_json())
    out = tmp_path / "v.json"
    assert run("verify", "--coloring", f, "--embedding", w, "--out", out) == 2
    report = read(out)
    assert report["embedding-valid"] and not report["monochromatic"]
    assert run("verify", "--coloring", f, "--embedding", w, "--color", 0, "--out", out) == 2
    assert read(out)["violations"] == [[["0", "01"], 1]]


def test_verify_agrees_with_library(tmp_path, seeded):
    f = coloring_from_json(read(seeded))
    for images in ({"": "0", "0": "00", "1": "01"}, {"": "", "0": "010", "1": "1"}):
        w = write(tmp_path / "w.json", {"depth": 1, "images": images})
        chains = enumerate_chains(Embedding(1, images), 2)
        mono = len({f.color(c) for c in chains}) == 1
        code = run("verify", "--coloring", seeded, "--embedding", w, "--out", tmp_path / "v.json")
        assert code == (0 if mono else 2)


def test_verify_invalid_embedding(tmp_path, seeded):
    w = write(tmp_path / "w.json", {"depth": 1, "images": {"": "", "0": "0", "1": "00"}})
    out = tmp_path / "v.json"
    assert run("verify", "--coloring", seeded, "--embedding", w, "--out", out) == 2
    assert read(out)["embedding-valid"] is False


def test_rt_constant_and_parity(tmp_path):
    for name, fn, N in (("c", lambda i, j: 0, 7), ("p", lambda i, j: (i + j) % 2, 11)):
        f = IntTupleColoring.from_function(2, 2, N, fn)
        path = write(tmp_path / f"{name}.json", f.to_json())
        out = tmp_path / f"{name}-r.json"
        assert run("rt", "solve", "--coloring", path, "--size", 3, "--out", out) == 0
        doc = read(out)
        assert is_homogeneous(f, doc["set"], doc["color"])
        assert run("rt", "solve", "--method", "brute", "--coloring", path, "--size", 3,
                   "--out", out) == 0
        if name == "c":
            assert read(out)["set"] == [0, 1, 2]


def test_rt_nothing_to_find(tmp_path):
    f = IntTupleColoring.from_function(2, 2, 3, lambda i, j: int(i == 0))
    assert brute_force_rt(f, 3) is None
    path = write(tmp_path / "f.json", f.to_json())
    assert run("rt", "solve", "--coloring", path, "--size", 3) == 2
    assert run("rt", "solve", "--method", "brute", "--coloring", path, "--size", 3) == 2


def test_reduce_step_outputs(tmp_path, seeded):
    out, ledger = tmp_path / "s.json", tmp_path / "l.json"
    assert run("reduce", "step", "--coloring", seeded, "--target-depth", 2, "--out", out,
               "--ledger", ledger) == 0
    doc = read(out)
    assert doc["ledger"] == read(ledger)
    assert doc["ledger"]["jump-levels"] == 2
    g = write(tmp_path / "g.json", doc["coloring"])
    assert coloring_from_json(read(g)).n == 1


def test_jump_approx(tmp_path):
    out = tmp_path / "j.json"
    assert run("jump", "approx", "--stage", 0, "--out", out) == 0
    assert read(out)["members"] == []
    assert run("jump", "approx", "--base", "list:1,4", "--level", 0, "--stage", 6,
               "--out", out) == 0
    assert read(out) == {"level": 0, "stage": 6, "members": [1, 4]}
    assert run("jump", "approx", "--base", "bogus", "--stage", 3) == 1


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("tt", "solve", "--coloring", bad, "--target-depth", 1) == 1
    assert "error" in capsys.readouterr().err
    assert run("tt", "solve", "--coloring", tmp_path / "missing.json", "--target-depth", 1) == 1
    wrong = write(tmp_path / "w.json", {"n": 2, "k": 2, "depth": 3, "source": {"kind": "?"}})
    assert run("tt", "solve", "--coloring", wrong, "--target-depth", 1) == 1
    assert run("tt", "solve") == 1
    assert run("gen", "coloring", "--n", 0) == 1


def test_exit_codes_are_bounded(tmp_path, seeded):
    codes = {
        run("tt", "solve", "--coloring", seeded, "--target-depth", 1, "--out", tmp_path / "a"),
        run("tt", "solve", "--coloring", seeded, "--depth", 3, "--target-depth", 3),
        run("tt", "solve", "--coloring", seeded, "--depth", 99, "--target-depth", 1),
        run("nonsense"),
    }
    assert codes <= {0, 1, 2}


COMMANDS = [
    ["gen", "coloring", "--kind", "table", "--n", 2, "--depth", 4, "--seed", 5],
    ["tt", "solve", "--coloring", "{seeded}", "--target-depth", 1],
    ["reduce", "step", "--coloring", "{seeded}", "--target-depth", 2],
    ["verify", "--coloring", "{seeded}", "--embedding", "{witness}"],
    ["jump", "approx", "--base", "even", "--level", 2, "--stage", 9],
]


def test_outputs_round_trip(tmp_path, seeded):
    res = tmp_path / "r.json"
    run("tt", "solve", "--coloring", seeded, "--target-depth", 1, "--out", res)
    for i, cmd in enumerate(COMMANDS):
        out = tmp_path / f"o{i}.json"
        argv = [str(a).format(seeded=seeded, witness=res) for a in cmd]
        run(*argv, "--out", out)
        text = out.read_text()
        assert json.dumps(json.loads(text), indent=2) + "\n" == text


def test_module_entry_point(seeded):
    proc = subprocess.run([sys.executable, "-m", "treeramsey.cli", "tt", "solve", "--coloring",
                           str(seeded), "--target-depth", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert set(json.loads(proc.stdout)) == {"color", "witness", "ledger", "stages"}
