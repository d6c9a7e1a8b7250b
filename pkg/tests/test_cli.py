import json
import os

import pytest

from scholz.cli import run
from scholz.config import Bounds, load_bounds


def _capture(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, out


def test_single_pair_commands(capsys):
    code, out = _capture(capsys, ["reciprocity", "5", "41"])
    assert code == 0
    rec = json.loads(out.strip().splitlines()[0])
    assert rec["equal"] and rec["lhs"] == -1

    code, out = _capture(capsys, ["pell", "5", "29"])
    assert code == 0
    rec = json.loads(out.strip().splitlines()[0])
    assert rec["case"] == 3 and rec["match"]

    code, out = _capture(capsys, ["rayclass", "-20", "29"])
    assert code == 0
    assert json.loads(out.strip().splitlines()[0])["ray_class_number"] == 28

    code, out = _capture(capsys, ["addchain", "15", "--verify"])
    assert code == 0
    rec = json.loads(out.strip().splitlines()[0])
    assert rec["length"] == 5 and rec["valid"]

    code, out = _capture(capsys, ["scholz-brauer", "4"])
    assert code == 0
    assert json.loads(out.strip().splitlines()[0])["holds"]


def test_scan_commands_and_exit_codes(capsys):
    code, out = _capture(capsys, ["reciprocity", "--max", "60"])
    assert code == 0
    lines = out.strip().splitlines()
    summary = json.loads(lines[-1])["summary"]
    assert summary["violations"] == [] and summary["total"] >= 3

    code, out = _capture(capsys, ["reflect", "--range", "2..40"])
    assert code == 0

    code, out = _capture(capsys, ["knot", "--max", "60"])
    assert code == 0


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["reflect", "--range", "nonsense"])
    assert "malformed range" in str(exc.value)
    with pytest.raises(SystemExit):
        run(["not-a-command"])
    # domain precondition -> exit code 2
    assert run(["rayclass", "-20", "5"]) == 2
    assert run(["plan-d4", "7"]) == 2


def test_table_and_tsv_modes(capsys):
    code, out = _capture(capsys, ["pell", "5", "41", "--table"])
    assert code == 0 and "case" in out.splitlines()[0]
    code, out = _capture(capsys, ["mindisc", "2", "--tsv"])
    assert code == 0
    header, row = out.strip().splitlines()[:2]
    assert header.split("\t")[0] == "degree"
    assert row.split("\t")[1] == "-3"


def test_worker_count_independence(capsys):
    outs = {}
    for jobs in ("1", "8"):
        code, out = _capture(capsys, ["reflect", "--range", "2..60", "--jobs", jobs])
        assert code == 0
        body = []
        for line in out.strip().splitlines():
            d = json.loads(line)
            if "summary" in d:
                d["summary"]["elapsed_ms"] = 0
            body.append(json.dumps(d, sort_keys=True))
        outs[jobs] = body
    assert outs["1"] == outs["8"]


def test_plan_and_misc_commands(capsys):
    code, out = _capture(capsys, ["plan-d4", "5"])
    assert code == 0
    payload = json.loads(out.strip())
    assert payload["base_data"]["q"] == 29 and payload["complete"]

    code, out = _capture(capsys, ["cubic-from-unit", "182"])
    assert code == 0
    rec = json.loads(out.strip().splitlines()[0])
    assert rec["disc"] == -53071200 and rec["unramified_claim"]

    code, out = _capture(capsys, ["rd", "5"])
    assert code == 0
    assert json.loads(out.strip().splitlines()[0])["disc"] == 125

    code, out = _capture(capsys, ["rd", "--minkowski", "2", "1"])
    assert code == 0

    code, out = _capture(capsys, ["wieferich", "--max", "2000"])
    assert code == 0
    assert json.loads(out.strip().splitlines()[0])["primes"] == [1093]

    code, out = _capture(capsys, ["count-v4", "100000"])
    assert code == 0
    rec = json.loads(out.strip().splitlines()[0])
    assert rec["count"] > 0

    code, out = _capture(capsys, ["cubicsym", "7", "13", "--oracle"])
    assert code == 0
    rec = json.loads(out.strip().splitlines()[0])
    assert rec["oracle_agrees"]

    code, out = _capture(capsys, ["recip3", "79", "97"])
    assert code == 0
    assert json.loads(out.strip().splitlines()[0])["holds"]


def test_config_loading(tmp_path, monkeypatch):
    assert load_bounds(None) == Bounds()
    cfg = tmp_path / "scholz.json"
    cfg.write_text(json.dumps({
        "quad_field": {"class_group_bound": 12345, "unknown_key": 7},
        "addchain": {"chain_bound": 99},
        "unknown_section": {"x": 1},
    }))
    b = load_bounds(str(cfg))
    assert b.class_group_bound == 12345
    assert b.chain_bound == 99
    assert b.unit_height_bound == Bounds().unit_height_bound
    monkeypatch.setenv("SCHOLZ_SCAN_BOUND", "777")
    assert load_bounds(None).class_group_bound == 777
