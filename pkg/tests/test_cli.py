import json
import subprocess
import sys

import pytest

from starpath.cli import main

CLASSIC = "c5-f8-c8-h3-b3-g8-g3-b8-b2-g2-a8-a1-h1-h8-d4"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def ndjson(out):
    return [json.loads(line) for line in out.splitlines()]


def test_verify_classic(capsys):
    code, out = run(capsys, "verify", "--path", CLASSIC, "--start", "c5", "--end", "d4",
                    "--strokes", "14")
    assert code == 0
    assert out.startswith('{"verdict":"valid","covered":64,')


def test_verify_defaults_are_the_classic_instance(capsys):
    code, out = run(capsys, "verify", "--path", CLASSIC)
    assert code == 0
    code, out = run(capsys, "verify", "--path", "d4-c5")
    assert code == 1 and json.loads(out)["endpoints_ok"] is False


def test_verify_free_rules(capsys):
    code, out = run(capsys, "verify", "--board", "2", "--path", "a1-b2-a2-b1")
    assert code == 0
    code, out = run(capsys, "verify", "--path", "a1-h8", "--start", "free", "--end", "free",
                    "--strokes", "free")
    assert code == 1 and json.loads(out)["covered"] == 8


def test_truncated_classic_exit_code(capsys):
    code, out = run(capsys, "verify", "--path", CLASSIC[:-3])
    assert code == 1
    assert json.loads(out)["uncovered"] == ["d4", "f6"]


def test_solve_k8_infeasible(capsys):
    code, out = run(capsys, "solve", "--start", "c5", "--end", "d4", "--max-strokes", "8")
    assert code == 1
    assert ndjson(out) == [{"status": "complete", "solutions": 0, "nodes": 0}]


def test_solve_all_round_trips_through_verify(capsys):
    code, out = run(capsys, "solve", "--board", "3", "--mode", "all", "--max-strokes", "5")
    assert code == 0
    lines = ndjson(out)
    assert lines[-1]["status"] == "complete" and lines[-1]["solutions"] == 12
    for rec in lines[:-1]:
        assert rec["strokes"] <= 5
        c, _ = run(capsys, "verify", "--board", "3", "--path", rec["path"])
        assert c == 0


def test_solve_count_and_min(capsys):
    code, out = run(capsys, "solve", "--board", "3", "--mode", "count", "--max-strokes", "5")
    assert code == 0 and ndjson(out)[-1]["count"] == 12
    code, out = run(capsys, "solve", "--board", "2", "--mode", "min", "--max-strokes", "6")
    assert code == 0 and ndjson(out)[-1]["best_k"] == 3


def test_solve_budget_exhausted_count_exits_1(capsys):
    code, out = run(capsys, "solve", "--board", "4", "--mode", "count", "--max-strokes", "8",
                    "--node-limit", "20")
    assert code == 1 and ndjson(out)[-1]["status"] == "budget_exhausted"


def test_nine_dots_cli(capsys):
    code, out = run(capsys, "solve", "--board", "3", "--margin", "1", "--policy", "general",
                    "--mode", "min", "--max-strokes", "5")
    assert code == 0
    assert ndjson(out)[0]["strokes"] == 4


def test_render_ascii_default(capsys):
    code, out = run(capsys, "render", "--format", "ascii")
    assert code == 0 and out == ("*" * 8 + "\n") * 8


def test_render_svg_to_file(tmp_path, capsys):
    target = tmp_path / "classic.svg"
    code, out = run(capsys, "render", "--path", CLASSIC, "-o", str(target))
    assert code == 0 and out == ""
    assert target.read_text().count("<circle") == 64


@pytest.mark.parametrize("argv", [
    ["verify"],
    ["verify", "--path", "z9"],
    ["verify", "--path", CLASSIC, "--strokes", "many"],
    ["solve", "--board", "0"],
    ["solve", "--board", "3", "--start", "(0,0)"],
    ["solve", "--mode", "sideways"],
    ["solve", "--board", "5", "--mode", "count", "--max-strokes", "6"],
    ["render", "--format", "png"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_engine_error_is_json(capsys):
    code, out = run(capsys, "solve", "--board", "9", "--start", "free", "--end", "free",
                    "--node-limit", "5")
    assert code == 1 and "error" in json.loads(out)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "starpath", "verify", "--path", CLASSIC],
                         capture_output=True, text=True)
    assert res.returncode == 0 and '"verdict":"valid"' in res.stdout
