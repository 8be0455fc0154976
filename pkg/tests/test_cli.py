import io
import json

import pytest

from poissonlab.cli import main
from poissonlab.report import SEED_ENV, ConfigError, build_config, parse_config_text


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_pattern_ascii():
    code, text = run("gt", "pattern", "--partition", "3,2,1", "--format", "ascii")
    assert code == 0
    assert text.split() == ["WWWRRR", "WRRGG", "RGGG", "GGG", "GG", "G"]


def test_pattern_svg_and_json():
    code, text = run("gt", "pattern", "--partition", "4,1", "--format", "svg")
    assert code == 0 and text.count("<rect") == 15
    code, text = run("gt", "pattern", "--partition", "4,1", "--format", "json")
    assert json.loads(text)["cells"]["0,1"] == "white"


def test_strong_nilpotent_outputs():
    code, text = run("gt", "strong-nilpotent", "--partition", "2,1", "--format", "json")
    cert = json.loads(text)
    assert code == 0 and cert["dim_span"] == 5 and cert["dim_intersection_with_centralizer"] == 3
    code, _ = run("gt", "strong-nilpotent", "--partition", "2,1", "--algebra", "so:3")
    assert code == 3


@pytest.mark.parametrize("argv", [
    ("mf", "verify", "--algebra", "gl:3", "--orbit", "nilpotent:2,1"),
    ("mf", "verify", "--algebra", "sl:2", "--a", "nilpotent:f", "--orbit", "nilpotent:2"),
    ("gt", "verify", "--algebra", "so:4", "--orbit", "random-semisimple"),
    ("gt", "verify", "--algebra", "gl:3", "--orbit", "strong:2,1"),
    ("elashvili", "--algebra", "gl:3"),
    ("corank", "--pair", "gl:3/gl:2", "--orbit", "semisimple:2,2,1"),
    ("commute", "--algebra", "gl:3", "--family", "gt", "--points", "5"),
])
def test_passing_commands(argv):
    code, text = run(*argv, "--budget", "10")
    assert code == 0, text
    assert "status: pass" in text


def test_usage_and_unsupported_codes(tmp_path):
    assert run("gt", "verify", "--algebra", "xx:3", "--orbit", "point")[0] == 2
    assert run("gt", "verify", "--algebra", "sl:3", "--orbit", "point")[0] == 3
    assert run("mf", "verify", "--algebra", "gl:2", "--orbit", "[[1,2]]")[0] == 2
    bad = tmp_path / "p.json"
    bad.write_text(json.dumps({"dim": 2, "A": [["1", "0"], ["0", "0"]], "B": [["0", "0"], ["0", "0"]]}))
    assert run("pencil", str(bad))[0] == 2
    assert run("elashvili", "--algebra", "gl:9")[0] == 3
    with pytest.raises(SystemExit) as exc:
        run("nonsense")
    assert exc.value.code == 2


def test_pencil_command(tmp_path):
    f = tmp_path / "sl2.json"
    f.write_text(json.dumps({"dim": 3, "A": [["0", "0", "1"], ["0", "0", "0"], ["-1", "0", "0"]],
                             "B": [["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "0"]]}))
    code, text = run("pencil", str(f), "--format", "json")
    census = json.loads(text)
    assert code == 0 and census["kronecker_sizes"] == [3] and census["m"] == 2
    assert len(census["L_basis"]) == 2


def test_reports_are_deterministic(tmp_path):
    path = tmp_path / "r.jsonl"
    argv = ("gt", "verify", "--algebra", "gl:3", "--orbit", "random-regular", "--seed", "7",
            "--report", str(path))
    assert run(*argv)[0] == 0
    assert run(*argv)[0] == 0
    lines = path.read_text().splitlines()
    assert len(lines) == 2 and lines[0] == lines[1]
    rec = json.loads(lines[0])
    assert rec["config"]["seed"] == 7 and rec["status"] == "pass"


def test_seed_changes_samples(tmp_path):
    outs = set()
    for seed in ("1", "2"):
        _, text = run("gt", "verify", "--algebra", "gl:3", "--orbit", "random-regular",
                      "--seed", seed, "--format", "json")
        outs.add(json.dumps(json.loads(text)["records"]))
    assert len(outs) == 2


def test_config_precedence(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("# run settings\nseed = 5\nbudget = 3  # small\n")
    assert parse_config_text(cfg.read_text()) == {"seed": 5, "sample_budget": 3}
    assert build_config(env={SEED_ENV: "9"}).seed == 9
    assert build_config(str(cfg), env={SEED_ENV: "9"}).seed == 5
    c = build_config(str(cfg), env={SEED_ENV: "9"}, seed=11, sample_budget=None)
    assert (c.seed, c.sample_budget) == (11, 3)
    with pytest.raises(ConfigError):
        parse_config_text("colour = red")
    with pytest.raises(ConfigError):
        build_config(env={SEED_ENV: "x"})
    code, _ = run("elashvili", "--algebra", "gl:2", "--config", str(tmp_path / "missing"))
    assert code == 2
