from __future__ import annotations

import json
from pathlib import Path

import pytest

from geowom.cli import run

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "rates.txt": ["rates"],
    "rates_csv.txt": ["rates", "--csv"],
    "encode_rs_q4_a.txt": ["encode", "--code", "rs", "--q", "4", "--strategy", "a", "--messages", "11,00,01,10,11,01"],
    "encode_rs_q4_b.txt": ["encode", "--code", "rs", "--q", "4", "--strategy", "b", "--messages", "11,00,01,10,11,01"],
    "encode_pg22.txt": ["encode", "--code", "pg22", "--messages", "3,5,7,3"],
    "verify_eg3.txt": ["verify", "--code", "eg3"],
    "construct_rs.json": ["construct", "--family", "rs"],
    "concat_hamming7.txt": ["concat", "--outer", "hamming7", "--inner", "rep3", "--q", "4", "--trials", "200"],
    "simulate_rs.txt": ["simulate", "--code", "rs", "--q", "2..3", "--trials", "2000", "--seed", "7"],
}


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys):
    assert run(CASES[name]) == 0
    assert capsys.readouterr().out == (GOLDEN / name).read_text()


def test_construct_decode_roundtrip(tmp_path, capsys):
    path = tmp_path / "eg3.json"
    assert run(["construct", "--family", "eg", "--m", "3", "--out", str(path)]) == 0
    desc = json.loads(path.read_text())
    assert desc["format"] == "geowom-code/1"
    assert desc["messages_per_write"] == [8, 8, 8, 4]
    capsys.readouterr()
    assert run(["decode", "--table", str(path)]) == 0
    rows = capsys.readouterr().out.splitlines()[2:]
    expected = [(st, label) for col in desc["table"] for label, states in col.items() for st in states]
    assert [tuple(r.split(",")) for r in rows] == expected


def test_decode_table_golden(capsys):
    assert run(["decode", "--table", str(GOLDEN / "construct_rs.json")]) == 0
    assert capsys.readouterr().out == (GOLDEN / "decode_rs_table.txt").read_text()


def test_decode_single(capsys):
    assert run(["decode", "--code", "rs", "--q", "4", "--strategy", "a", "--state", "213"]) == 0
    assert capsys.readouterr().out == "01\n"
    assert run(["decode", "--code", "pg22", "--state", "1110101"]) == 0
    assert capsys.readouterr().out == "3\n"


def test_exit_codes(capsys):
    assert run(["encode", "--code", "rs", "--messages", "00,01,10"]) == 3
    assert run(["encode", "--code", "rs", "--q", "2", "--strategy", "a", "--messages", "01,10,11"]) == 4
    assert run(["verify", "--code", "eg4"]) == 5
    assert run(["encode", "--code", "rs", "--messages", "22"]) == 2
    assert run(["decode", "--code", "pg22", "--state", "0000000"]) == 2
    with pytest.raises(SystemExit) as exc:
        run(["encode", "--bogus"])
    assert exc.value.code == 2
    err = capsys.readouterr().err
    assert "unwritable" in err and "block erasure required" in err


def test_simulate_out_file(tmp_path):
    out = tmp_path / "sweep.csv"
    assert run(["simulate", "--q", "2,3", "--strategies", "a", "--trials", "300", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[1] == "code,strategy,q,trials,mean_writes,stderr"
    assert len(lines) == 4
