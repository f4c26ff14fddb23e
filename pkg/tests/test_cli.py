import json
import subprocess
import sys

import pytest

from blocksmith.cli import main, parse_code, parse_graph
from blocksmith.config import Caps, RunConfig


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_verify(tmp_path, capsys):
    cert = tmp_path / "out.json"
    code, _, _ = run(["construct", "--code", "rs:q=5,n=6,k=3", "--graph", "cycle:6", "--out", str(cert)], capsys)
    assert code == 0
    data = json.loads(cert.read_text())
    assert data["checked"]["strong"] is True
    assert 12 <= len(data["points"]) <= 30
    code, out, _ = run(["verify", "--cert", str(cert)], capsys)
    assert code == 0 and json.loads(out)["strong"] is True


def test_construct_hypothesis_fails(capsys):
    code, _, err = run(["construct", "--code", "rs:q=5,n=6,k=3", "--graph", "empty:6"], capsys)
    assert code == 2
    assert json.loads(err)["error"] == "IntegrityHypothesisUnmet"


def test_construct_size_mismatch(capsys):
    code, _, err = run(["construct", "--code", "rs:q=5,n=6,k=3", "--graph", "petersen"], capsys)
    assert code == 1 and json.loads(err)["exit"] == 1


def test_bad_arguments(capsys):
    assert run(["nonsense"], capsys)[0] == 1
    assert run(["construct", "--code", "rs:q=6,n=4,k=2", "--graph", "cycle:4"], capsys)[0] == 1
    assert run(["construct", "--code", "xx:q=5", "--graph", "cycle:4"], capsys)[0] == 1


def test_verify_detects_tampering(tmp_path, capsys):
    cert = tmp_path / "c.json"
    run(["construct", "--code", "rs:q=5,n=6,k=3", "--graph", "cycle:6", "--out", str(cert)], capsys)
    data = json.loads(cert.read_text())
    data["points"] = data["points"][:5]
    cert.write_text(json.dumps(data))
    assert run(["verify", "--cert", str(cert)], capsys)[0] == 4


def test_derive(tmp_path, capsys):
    code, out, _ = run(["derive", "--code", "identity:q=4,k=3", "--graph", "complete:3"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["ambient"]["k"] == 6 and data["checked"]["strong"] is True

    src = tmp_path / "src.json"
    run(["construct", "--code", "identity:q=4,k=3", "--graph", "complete:3", "--out", str(src)], capsys)
    code, out, _ = run(["derive", "--cert", str(src), "--steps", "1"], capsys)
    assert code == 0
    chain = json.loads(out)
    assert len(chain["chain"]) == 2 and chain["chain"][1]["source"]["sha256"] == chain["hashes"][0]


def test_graph_report(capsys):
    code, out, _ = run(["graph", "--spec", "petersen", "--spectrum", "--integrity"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["integrity"]["value"] == 6 and rep["ramanujan"] is True
    assert rep["integrity_lower_bound"] == 2


def test_tables(capsys):
    code, out, _ = run(["tables", "--table", "2"], capsys)
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 13
    code, out, _ = run(["tables", "--table", "1", "--format", "json"], capsys)
    assert json.loads(out)[0]["q"] == "9"


def test_parsers():
    assert parse_code("rs:q=5,n=6,k=3").n == 6
    assert parse_code("concat:q=4,e=2,n=4,k=2,inner=parity").n == 12
    assert parse_graph("regular:n=10,d=3,seed=2").regular_degree() == 3
    assert parse_graph("path:5").m == 4


def test_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 5, "caps": {"max_hyperplanes": 10}}))
    code, _, err = run(["--config", str(cfg), "construct", "--code", "rs:q=5,n=6,k=3", "--graph", "cycle:6"], capsys)
    assert code == 1 and "SpaceTooLarge" in err
    assert RunConfig.load(cfg).seed == 5
    with pytest.raises(ValueError):
        Caps(max_codim2=0)


def test_seed_recorded_and_env_threads(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("BLOCKSMITH_THREADS", "3")
    code, out, _ = run(["construct", "--code", "rs:q=5,n=6,k=3", "--graph", "cycle:6", "--seed", "11"], capsys)
    assert json.loads(out)["seed"] == 11
    from blocksmith.config import default_threads
    assert default_threads() == 3


def test_console_entry():
    res = subprocess.run([sys.executable, "-m", "blocksmith.cli", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip()
