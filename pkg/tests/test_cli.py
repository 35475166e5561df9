import json
import subprocess
import sys
from pathlib import Path

import pytest

from uhecke import cli


def run_cli(tmp_path, cfg, *args):
    cfg_path = tmp_path / "config.json"
    cfg_path.write_text(json.dumps(cfg))
    return cli.main(["--config", str(cfg_path), *args])


def test_char_table_g2(tmp_path, capsys):
    cfg = {"algebra": {"type": "G2", "long": "1", "short": "3"}, "command": "char-table"}
    code = run_cli(tmp_path, cfg, "--format", "json")
    out = capsys.readouterr().out
    assert code == 0
    payload = json.loads(out)
    assert len(payload["rows"]) == 6
    labels = [r[0] for r in payload["rows"]]
    assert labels == ["1_1", "1_2", "1_3", "1_4", "2_1", "2_2"]


def test_char_table_f4_has_paper_labels(tmp_path, capsys):
    cfg = {"algebra": {"type": "F4", "long": "1", "short": "2"}, "command": "char-table"}
    code = run_cli(tmp_path, cfg, "--format", "csv")
    out = capsys.readouterr().out
    assert code == 0
    assert out.count("\n") == 26  # header + 25 rows
    for name in ("9_1", "9_2", "9_3", "9_4", "16_1"):
        assert name in out


def test_scan_g2_emits_polygons(tmp_path, capsys):
    cfg = {
        "algebra": {"type": "G2", "long": "2", "short": "1"},
        "command": "scan",
        "args": {"samples": 1},
    }
    code = run_cli(tmp_path, cfg)
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["unitary_count"] >= 1
    assert all("verdict" in r for r in out["regions"])


def test_operator_points_and_pole(tmp_path, capsys):
    cfg = {
        "algebra": {"type": "G2", "long": "1", "short": "3"},
        "command": "operator",
        "args": {"points": [["1", "1", "-2"]]},
    }
    code = run_cli(tmp_path, cfg)
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["rows"]
    # a non-dominant point that hits a pole of the normalizer
    cfg_pole = {
        "algebra": {"type": "G2", "long": "1", "short": "3"},
        "command": "operator",
        "args": {"points": [["-3", "3/2", "3/2"]]},
    }
    code = run_cli(tmp_path, cfg_pole)
    assert code == cli.EXIT_POLE


def test_config_error(tmp_path):
    code = run_cli(tmp_path, {"command": "scan"})
    assert code == cli.EXIT_CONFIG
    code = run_cli(tmp_path, {"algebra": {"type": "F4", "long": 1, "short": 2}, "command": "bogus"})
    assert code == cli.EXIT_CONFIG


def test_golden_mismatch_exit_code(tmp_path, monkeypatch):
    monkeypatch.setitem(
        cli.GOLDEN_SETS,
        "always-fails",
        lambda args: {"fixture": "x", "checks": [{"name": "n", "ok": False, "detail": "d"}], "ok": False},
    )
    cfg = {"algebra": {"type": "G2", "long": "1", "short": "3"}, "command": "golden",
           "args": {"set": "always-fails"}}
    code = run_cli(tmp_path, cfg)
    assert code == cli.EXIT_FIXTURE


def test_im_dual_command(tmp_path, capsys):
    cfg = {
        "algebra": {"type": "F4", "long": "1", "short": "2"},
        "command": "im-dual",
        "args": {"character": {"1_1": 1, "9_2": 2}},
    }
    code = run_cli(tmp_path, cfg)
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["im_dual"]["1_4"] == 1
    assert out["double_is_identity"]


def test_byte_determinism(tmp_path):
    cfg = {
        "algebra": {"type": "G2", "long": "2", "short": "1"},
        "command": "scan",
        "args": {"samples": 2},
        "seed": 5,
    }
    cfg_path = tmp_path / "c.json"
    cfg_path.write_text(json.dumps(cfg))
    outs = []
    for d in ("o1", "o2"):
        out_dir = tmp_path / d
        code = cli.main(["--config", str(cfg_path), "--out", str(out_dir)])
        assert code == 0
        outs.append((out_dir / "scan-G2.json").read_bytes())
    assert outs[0] == outs[1]


def test_decompose_command(tmp_path, capsys):
    cfg = {
        "algebra": {"type": "G2", "long": "1", "short": "3"},
        "command": "decompose",
        "args": {"levi": [0, 1], "lambda": ["3", "-3/2", "-3/2"]},
        "seed": 4,
    }
    code = run_cli(tmp_path, cfg)
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert sum(r[1] for r in out["rows"]) == 12
