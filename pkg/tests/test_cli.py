from __future__ import annotations

import json
import subprocess
import sys

import pytest

from astower.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_s_set(capsys):
    code, out, _ = run(capsys, "s-set", "--s", "1")
    assert code == 0 and out.splitlines() == ["S={0}", "|S|=1"]
    code, out, _ = run(capsys, "s-set", "--s", "3", "--output", "json")
    assert json.loads(out)["size"] == 1


@pytest.mark.parametrize("argv", [
    ["s-set", "--s", "0"],
    ["s-set", "--s", "33"],
    ["census", "--s", "2", "--depth", "-1"],
    ["census", "--s", "2", "--precision", "8"],
    ["s-set", "--s", "4", "--modulus", "0x11"],
    ["census"],
    ["verify", "--s", "2", "--which", "odd"],
    ["verify", "--s", "3", "--which", "even"],
    ["bogus"],
])
def test_config_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_env_precision(capsys, monkeypatch):
    monkeypatch.setenv("ASTOWER_PRECISION", "4")
    code, _, err = run(capsys, "census", "--s", "1", "--depth", "2")
    assert code == 2 and "precision" in err


def test_precision_abort(capsys, monkeypatch):
    import astower.engine

    monkeypatch.setattr(astower.engine, "MAX_RETRIES", 0)
    code, _, err = run(capsys, "census", "--s", "2", "--depth", "8", "--precision", "16")
    assert code == 3 and "aborted" in err


def test_census_tsv(capsys):
    code, out, _ = run(capsys, "census", "--s", "1", "--depth", "4")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "i\tN\tinert2\tg\tnu\tgamma\tlambda"
    assert lines[1].split("\t")[:4] == ["0", "3", "0", "0"]
    assert lines[1].split("\t")[6] == "—"
    assert lines[2].split("\t") == ["1", "4", "1", "1", "2", "1/2", "4"]


def test_census_json_and_determinism(capsys):
    a = run(capsys, "census", "--s", "2", "--depth", "5", "--output", "json")
    b = run(capsys, "census", "--s", "2", "--depth", "5", "--output", "json")
    assert a == b
    doc = json.loads(a[1])
    assert doc["s"] == 2 and [r["N"] for r in doc["levels"]] == [5, 8, 14, 24, 40, 72]
    assert all(doc["verdicts"].values())


def test_genus(capsys):
    code, out, _ = run(capsys, "genus", "--s", "2", "--depth", "4", "--output", "json")
    assert code == 0
    assert [r["g"] for r in json.loads(out)["levels"]] == [0, 1, 3, 9, 25]


@pytest.mark.parametrize("which,s", [("odd", 1), ("even", 2), ("locus", 2), ("weakram", 2)])
def test_verify(capsys, which, s):
    code, out, _ = run(capsys, "verify", "--s", str(s), "--which", which, "--depth", "6")
    assert code == 0 and out.splitlines()[0].endswith("PASS")


def test_identities(capsys):
    code, out, _ = run(capsys, "identities")
    assert code == 0 and out.splitlines()[-1] == "5/5 PASS"


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--s", "3", "--depth", "4")
    assert code == 0 and out.splitlines()[-1] == "# oracle\tPASS"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "astower", "s-set", "--s", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "|S|=1" in proc.stdout
