import subprocess
import sys
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def run(name, *args):
    return subprocess.run([sys.executable, str(SCRIPTS / name), *args], capture_output=True, text=True, check=True)


def test_reproduce_tables():
    out = run("reproduce_tables.py", "--table", "2").stdout
    assert out.count("\n") == 14


def test_appendix_a():
    res = run("appendix_a.py", "--n", "100", "--samples", "3", "--exact-n", "14", "--exact-seeds", "2")
    assert res.stdout.splitlines()[0].startswith("seed,n,d")
    assert len(res.stdout.splitlines()) == 3
    assert "sound 3/3" in res.stderr


def test_lps_report():
    out = run("lps_report.py", "5", "13").stdout
    assert '"ramanujan": true' in out
