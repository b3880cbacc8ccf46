import json

import pytest

from hfree.cli import main
from hfree.fixtures import complete, cycle, odd_cycle_blowup, path
from hfree.graph import Coloring
from hfree.io import parse_graph, parse_terminals, write_graph


@pytest.fixture
def files(tmp_path):
    def put(name, g, c=None):
        p = tmp_path / name
        write_graph(p, g, c)
        return str(p)

    blowup, col = odd_cycle_blowup(9, 2)
    return {
        "dir": tmp_path,
        "p5": put("p5.el", path(5)),
        "k3": put("k3.el", complete(3)),
        "c6": put("c6.el", cycle(6), Coloring(3, [0, 1, 2, 0, 1, 2])),
        "edge": put("edge.el", path(2), Coloring(3, [0, 1])),
        "blowup": put("blowup.el", blowup, col),
        "chord": put("chord.el", blowup.add_edges([(0, 4)])),
    }


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_augment(files, capsys):
    code, out, err = run(capsys, "augment", "--pattern", files["p5"])
    g, _ = parse_graph(out)
    assert code == 0 and g.n == 17
    assert err.startswith("config: ")
    assert json.loads(err.splitlines()[0][len("config: ") :])["seed"] == 0


def test_gadget_with_terminals(files, capsys):
    side = files["dir"] / "x.terms"
    code, out, _ = run(capsys, "gadget", "--kind", "X", "--terminals", str(side))
    assert code == 0 and parse_graph(out)[0].n == 39
    assert set(parse_terminals(side.read_text())) >= {"u", "x1", "z2"}


def test_gadget_dot(files, capsys):
    code, out, _ = run(capsys, "gadget", "--kind", "eq", "--format", "dot")
    assert code == 0 and out.startswith("graph G {") and 'label="u"' in out


def test_colored_augment(files, capsys):
    out_path = files["dir"] / "hs.el"
    code, _, err = run(capsys, "colored-augment", "--pattern", files["edge"], "--out", str(out_path))
    assert code == 0 and out_path.exists()
    assert "empty color classes [2]" in err


def test_colored_augment_needs_colors(files, capsys):
    code, _, err = run(capsys, "colored-augment", "--pattern", files["p5"])
    assert code == 1 and "colors" in err


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "--all")
    assert code == 0
    lines = out.splitlines()
    assert lines and all(line.startswith("PASS") for line in lines)


def test_verify_gadget_file(files, capsys):
    g, t = files["dir"] / "neq.el", files["dir"] / "neq.terms"
    assert main(["gadget", "--kind", "neq", "--out", str(g), "--terminals", str(t)]) == 0
    code, out, _ = run(capsys, "verify", "--gadget", str(g), "--terminals", str(t), "--check", "neq")
    assert code == 0 and out.startswith("PASS")
    code, out, _ = run(capsys, "verify", "--gadget", str(g), "--terminals", str(t), "--check", "eq")
    assert code == 1 and out.startswith("FAIL")


def test_verify_pattern(files, capsys):
    code, _, _ = run(capsys, "verify", "--pattern", files["c6"], "--check", "hstar-soundness")
    assert code == 0
    code, _, _ = run(capsys, "verify", "--pattern", files["p5"])
    assert code == 0


def test_verify_needs_target(capsys):
    code, _, _ = run(capsys, "verify")
    assert code == 2


def test_degenerate_color(files, capsys):
    code, out, _ = run(capsys, "degenerate-color", "--pattern", files["c6"])
    assert (code, out.strip()) == (1, "not degenerate")
    code, out, _ = run(capsys, "degenerate-color", "--pattern", files["c6"], "--search")
    g, c = parse_graph(out)
    assert code == 0 and c is not None


def test_colorcode_stats(files, capsys):
    stats = files["dir"] / "cc.json"
    out_dir = files["dir"] / "inst"
    code, out, _ = run(
        capsys, "colorcode", "--host", files["blowup"], "--check-partition",
        "--stats-json", str(stats), "--out-dir", str(out_dir),
    )
    assert code == 0 and out.startswith("classes")
    payload = json.loads(stats.read_text())
    assert {"seed", "n", "m", "instance_count", "max_instance_size", "triangle_partition_ok", "wall_ms"} <= set(payload)
    assert payload["triangle_partition_ok"] is True
    assert len(list(out_dir.glob("*.el"))) == payload["instance_count"]
    assert len(list(out_dir.glob("*.map"))) == payload["instance_count"]


def test_sieve(files, capsys):
    code, out, _ = run(capsys, "sieve", "--host", files["blowup"], "--seed", "3")
    assert code == 0 and out.startswith("outputs")
    code, _, _ = run(capsys, "sieve", "--host", files["p5"])
    assert code == 1


def test_detect(files, capsys):
    code, out, _ = run(capsys, "detect", "--pattern", files["c6"], "--host", files["blowup"])
    assert (code, out.strip()) == (0, "triangle_free")
    stats = files["dir"] / "d.json"
    code, out, _ = run(
        capsys, "detect", "--pattern", files["c6"], "--host", files["chord"], "--seed", "4", "--stats-json", str(stats)
    )
    assert code == 0 and out.startswith("triangle_found")
    payload = json.loads(stats.read_text())
    assert payload["verdict"] == "triangle_found" and payload["seed"] == 4


def test_detect_deterministic(files, capsys):
    a = run(capsys, "detect", "--pattern", files["p5"], "--host", files["chord"], "--seed", "7")
    b = run(capsys, "detect", "--pattern", files["p5"], "--host", files["chord"], "--seed", "7")
    assert a[:2] == b[:2]


def test_detect_audit(files, capsys):
    code, _, err = run(capsys, "detect", "--pattern", files["p5"], "--host", files["p5"], "--audit-promise")
    assert code == 1 and "induced copy" in err


def test_seed_from_env(files, capsys, monkeypatch):
    monkeypatch.setenv("HFREE_SEED", "42")
    _, _, err = run(capsys, "augment", "--pattern", files["k3"])
    assert '"seed": 42' in err
    monkeypatch.setenv("HFREE_SEED", "x")
    code, _, _ = run(capsys, "augment", "--pattern", files["k3"])
    assert code == 2


def test_gen(capsys):
    code, out, _ = run(capsys, "gen", "--family", "odd_cycle_blowup", "--param", "k=9", "--param", "block=2", "--with-coloring")
    g, c = parse_graph(out)
    assert code == 0 and g.n == 18 and c is not None
    code, _, _ = run(capsys, "gen", "--family", "random_gnp", "--param", "n=5")
    assert code == 1
    code, _, _ = run(capsys, "gen", "--family", "path", "--param", "n")
    assert code == 2


def test_bench(files, capsys):
    out_json = files["dir"] / "bench.json"
    code, out, _ = run(capsys, "bench", "--ladder", "64,256", "--json", str(out_json))
    assert code == 0 and "exponent" in out
    rows = json.loads(out_json.read_text())["rows"]
    assert [r["n"] for r in rows] == [64, 256] and all(r["bounds_ok"] for r in rows)
    code, _, _ = run(capsys, "bench", "--ladder", "a,b")
    assert code == 2


def test_export(files, capsys):
    code, out, _ = run(capsys, "export", "--graph", files["c6"], "--format", "dot")
    assert code == 0 and "colorclass=2" in out


def test_missing_file(files, capsys):
    code, _, err = run(capsys, "augment", "--pattern", str(files["dir"] / "none.el"))
    assert code == 2 and "error" in err


def test_malformed_file(files, capsys):
    bad = files["dir"] / "bad.el"
    bad.write_text("3 1\n0 7\n")
    code, _, _ = run(capsys, "detect", "--pattern", files["p5"], "--host", str(bad))
    assert code == 2


def test_bad_arguments():
    with pytest.raises(SystemExit) as e:
        main(["detect", "--pattern", "x"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["gadget", "--kind", "widget"])
    assert e.value.code == 2


def test_bad_config_value(files, capsys):
    code, _, _ = run(capsys, "detect", "--pattern", files["p5"], "--host", files["k3"], "--sieve-reps", "0")
    assert code == 2
