import json

from click.testing import CliRunner

from specgame.cli import main

from conftest import GETMAX_SRC, GETMAX_STRONG_SRC, GETMAX_WEAK_SRC


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def run(*args):
    return CliRunner().invoke(main, list(args))


FAST = ("--trials", "2500", "--no-smt")


def test_check_self_is_equivalent(tmp_path):
    spec = write(tmp_path, "getmax.spec", GETMAX_SRC)
    result = run("check", spec, spec, *FAST)
    assert result.exit_code == 0, result.output
    assert "Equivalent" in result.output


def test_check_weakened_exits_one_with_json(tmp_path):
    model = write(tmp_path, "getmax.spec", GETMAX_SRC)
    weak = write(tmp_path, "weak.spec", GETMAX_WEAK_SRC)
    result = run("check", model, weak, "--json", *FAST)
    assert result.exit_code == 1
    verdict = json.loads(result.output)
    assert verdict["post"]["status"] == "TooWeak"
    assert verdict["pre"]["status"] == "Equivalent"


def test_check_strengthened_pre(tmp_path):
    model = write(tmp_path, "getmax.spec", GETMAX_SRC)
    strong = write(tmp_path, "strong.spec", GETMAX_STRONG_SRC)
    result = run("check", model, strong, *FAST)
    assert result.exit_code == 1
    assert "TooStrong" in result.output


def test_check_undetermined_exits_two(tmp_path):
    spec = write(tmp_path, "getmax.spec", GETMAX_SRC)
    result = run("check", spec, spec, "--trials", "5", "--no-smt")
    assert result.exit_code == 2


def test_check_json_deterministic(tmp_path):
    model = write(tmp_path, "getmax.spec", GETMAX_SRC)
    weak = write(tmp_path, "weak.spec", GETMAX_WEAK_SRC)
    out1 = run("check", model, weak, "--json", "--seed", "3", *FAST).output
    out2 = run("check", model, weak, "--json", "--seed", "3", *FAST).output
    assert out1 == out2


def test_check_signature_mismatch_exits_three(tmp_path):
    model = write(tmp_path, "getmax.spec", GETMAX_SRC)
    other = write(tmp_path, "other.spec",
                  "method getMax(a: int[], n: int) -> int; pre(n > 0);")
    result = run("check", model, other, *FAST)
    assert result.exit_code == 3


def test_check_missing_file_exits_three(tmp_path):
    model = write(tmp_path, "getmax.spec", GETMAX_SRC)
    result = run("check", model, str(tmp_path / "absent.spec"), *FAST)
    assert result.exit_code == 3


def test_validate_ok(tmp_path):
    spec = write(tmp_path, "getmax.spec", GETMAX_SRC)
    result = run("validate", spec)
    assert result.exit_code == 0
    assert "2 pre, 2 post" in result.output


def test_validate_broken_exits_three(tmp_path):
    broken = write(tmp_path, "broken.spec",
                   "method f(x: int) -> int;\npre(x > );")
    result = run("validate", broken)
    assert result.exit_code == 3
    assert "2:" in result.stderr


def test_replay_round_trip(tmp_path):
    from specgame.blobs import BlobEntry, BlobPlan
    from specgame.session import Session

    plan = BlobPlan(entries=(BlobEntry("redMarked", {"x": 1}, "input", True),),
                    mix={})
    s = Session("s", plan, seed=5)
    s.apply("placeTower", {"kind": "zapper", "cell": [4, 3]})
    s.apply("startWave", {})
    while not s.ended:
        s.advance()
    log = write(tmp_path, "session.log", "\n".join(s.log_lines()) + "\n")
    result = run("replay", log)
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["score"] == s.report().score


def test_replay_bad_file_exits_three(tmp_path):
    bad = write(tmp_path, "bad.log", "not json\n")
    assert run("replay", bad).exit_code == 3
    assert run("replay", str(tmp_path / "none.log")).exit_code == 3
