import json
import random
import subprocess
import sys

import pytest

from ptflip import io
from ptflip.cli import main
from ptflip.generate import generate, random_general


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def pair(tmp_path):
    ps = generate(7, 3)
    rng = random.Random(0)
    a, b = random_general(ps, rng), random_general(ps, rng)
    pa, pb = tmp_path / "a.json", tmp_path / "b.json"
    io.write_json(pa, io.pt_to_json(a))
    io.write_json(pb, io.pt_to_json(b))
    return pa, pb


def test_gen_is_deterministic(capsys, tmp_path):
    _, one, _ = run(capsys, "gen", "--n", 8, "--seed", 5)
    _, two, _ = run(capsys, "gen", "--n", 8, "--seed", 5)
    _, other, _ = run(capsys, "gen", "--n", 8, "--seed", 6)
    assert one == two != other
    assert len(json.loads(one)["points"]) == 8
    out = tmp_path / "p.json"
    assert run(capsys, "gen", "--n", 6, "--mode", "convex", "--out", out)[0] == 0
    assert len(io.read_json(out)["points"]) == 6


def test_leftshell_and_canon(capsys, tmp_path, set_a):
    p = tmp_path / "a.json"
    io.write_json(p, io.points_to_json(set_a))
    code, out, _ = run(capsys, "leftshell", p)
    assert code == 0 and len(json.loads(out)["edges"]) == 7
    code, out, _ = run(capsys, "canon", p)
    assert json.loads(out)["labels"] == {"0-2": 1, "0-4": 2, "2-4": 3}


def test_transform_then_verify(capsys, tmp_path, pair):
    pa, pb = pair
    tr = tmp_path / "t.json"
    assert run(capsys, "transform", pa, pb, "--out", tr)[0] == 0
    doc = io.read_json(tr)
    assert doc["stats"]["length"] == len(doc["events"])
    code, out, _ = run(capsys, "verify", tr, "--expect", pb)
    assert code == 0 and json.loads(out)["matches_expected"] is True
    code, _, err = run(capsys, "verify", tr, "--expect", pa)
    assert code == 2 and json.loads(err)["exit"] == 2


def _mutations(ev, n):
    yield {**ev, "label": (ev["label"] or 0) + 1}
    for key in ("removed", "inserted"):
        if key in ev:
            u, v = ev[key]
            yield {**ev, key: [u, (v + 1) % n if (v + 1) % n != u else (v + 2) % n]}


def test_every_single_event_mutation_is_rejected(capsys, tmp_path, pair):
    pa, pb = pair
    tr = tmp_path / "t.json"
    run(capsys, "transform", pa, pb, "--out", tr)
    doc = io.read_json(tr)
    n = len(doc["initial"]["points"])
    bad = tmp_path / "bad.json"
    tried = 0
    for i in range(0, len(doc["events"]), 7):
        for mut in _mutations(doc["events"][i], n):
            events = list(doc["events"])
            events[i] = mut
            io.write_json(bad, {**doc, "events": events})
            code, _, err = run(capsys, "verify", bad, "--expect", pb)
            assert code in (1, 2), (i, mut)
            tried += 1
    assert tried > 10


def test_pointed_mode_rejects_non_pointed(capsys, tmp_path, minimal_non_pointed):
    p = tmp_path / "m.json"
    io.write_json(p, io.pt_to_json(minimal_non_pointed))
    code, _, err = run(capsys, "transform", p, p, "--mode", "pointed")
    assert code == 1 and json.loads(err)["error"] == "PipelineError"


def test_oracle_command(capsys, tmp_path, set_a):
    p = tmp_path / "a.json"
    io.write_json(p, io.points_to_json(set_a))
    code, out, _ = run(capsys, "oracle", p, "--all-pairs")
    st = json.loads(out)
    assert code == 0 and st["nodes"] == 48 and st["diameter"] == 7 and st["connected"]
    code, _, err = run(capsys, "oracle", p, "--mode", "general", "--max-states", 20)
    assert code == 3 and json.loads(err)["error"] == "OracleCapExceeded"
    big = tmp_path / "big.json"
    io.write_json(big, io.points_to_json(generate(9, 0)))
    assert run(capsys, "oracle", big)[0] == 3


def test_render(capsys, tmp_path, set_a, pair):
    p = tmp_path / "set_a.json"
    io.write_json(p, io.points_to_json(set_a))
    code, out, _ = run(capsys, "render", p)
    assert code == 0 and out.startswith("<svg") and out.count('class="edge') == 7
    pa, pb = pair
    tr = tmp_path / "t.json"
    run(capsys, "transform", pa, pb, "--out", tr)
    frames = tmp_path / "frames"
    code, out, _ = run(capsys, "render", tr, "--every", 50, "--out", frames)
    assert code == 0 and json.loads(out)["frames"] == len(list(frames.glob("*.svg"))) > 1


def test_trials(capsys):
    code, out, _ = run(capsys, "trials", "--count", 3, "--n", 6, "--seed", 1)
    doc = json.loads(out)
    assert code == 0 and doc["all_ok"] and [r["trial"] for r in doc["trials"]] == [0, 1, 2]
    code, out, _ = run(capsys, "trials", "--count", 2, "--n", 6, "--mode", "general",
                       "--points-mode", "grid-jittered")
    assert code == 0 and json.loads(out)["all_ok"]


@pytest.mark.parametrize("content", ["{oops", '{"points": [[0, 0], [1, 1], [2, 2]]}'])
def test_input_errors(capsys, tmp_path, content):
    p = tmp_path / "x.json"
    p.write_text(content)
    code, _, err = run(capsys, "canon", p)
    assert code == 1 and json.loads(err)["exit"] == 1
    assert run(capsys, "canon", tmp_path / "missing.json")[0] == 1


def test_console_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "ptflip.cli", "gen", "--n", "5"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and len(json.loads(res.stdout)["points"]) == 5
