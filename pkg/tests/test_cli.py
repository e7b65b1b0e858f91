import random
import subprocess
import sys

import pytest

from cbgames import codings, constructions, games, sampling
from cbgames.cli import run
from cbgames.machines import dump_machine, parse_machine


@pytest.fixture
def zso(tmp_path):
    p = tmp_path / "zeroStarOne.cm"
    p.write_text(dump_machine(constructions.zero_star_one_omega()))
    return str(p)


def cli(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_encode_golden(capsys):
    assert cli(capsys, "encode", "--coding", "phi", "--param", "2", "--word", "(ab)", "--prefix", "8") \
        == (0, "FFaFFbFF\n", "")
    code, out, _ = cli(capsys, "encode", "--coding", "theta", "--param", "2", "--word", "a(b)", "--prefix", "9")
    assert out == "aEEbEEEEb\n"


def test_encode_rules_agrees(capsys):
    a = cli(capsys, "encode", "--coding", "h", "--param", "2", "--word", "(ab)", "--prefix", "120")
    b = cli(capsys, "encode", "--coding", "h", "--param", "2", "--word", "(ab)", "--prefix", "120", "--rules")
    assert a == b and a[0] == 0


def test_member_golden(capsys, zso):
    assert cli(capsys, "--quiet", "member", "--machine", zso, "--word", "(01)")[1] == "ACCEPT\n"
    code, out, _ = cli(capsys, "member", "--machine", zso, "--word", "1(0)")
    assert code == 0 and out == "REJECT\n"
    code, out, _ = cli(capsys, "member", "--machine", zso, "--word", "(01)")
    assert out.startswith("ACCEPT\nstem ")


@pytest.mark.parametrize("gadget,word,param,expected", [
    ("prefTheta", "aEEE", "2", "NO"),
    ("prefTheta", "aEE", "2", "YES"),
    ("prefH", "CC", None, "YES"),
    ("prefPhi", "FFa", "2", "YES"),
    ("ClosureH", "CC(C)", None, "YES"),
    ("Lprime", "aEEE(E)", "2", "YES"),
])
def test_classify(capsys, gadget, word, param, expected):
    argv = ["classify", "--gadget", gadget, "--word", word] + (["--param", param] if param else [])
    assert cli(capsys, *argv) == (0, expected + "\n", "")


def test_gadget_and_validate(capsys, tmp_path):
    out_file = tmp_path / "lp.cm"
    assert cli(capsys, "gadget", "--kind", "Lprime", "--param", "2", "--out", str(out_file))[0] == 0
    m = parse_machine(out_file.read_text())
    assert m.counter_count == 2
    code, out, _ = cli(capsys, "validate", "--machine", str(out_file))
    assert code == 0 and out.startswith("OK ") and "real-time=yes" in out


def test_validate_reports_violation(capsys, tmp_path):
    bad = tmp_path / "bad.cm"
    bad.write_text("counters 1\nalphabet a\nstates q\ninitial q\ntrans q a 0 q -1\n")
    code, out, err = cli(capsys, "validate", "--machine", str(bad))
    assert code == 1
    assert "zero test" in out and "error:" in err


def test_combine(capsys, tmp_path, zso):
    out_file = tmp_path / "u.cm"
    assert cli(capsys, "combine", "--op", "union", "--left", zso, "--right", zso, "--out", str(out_file))[0] == 0
    assert cli(capsys, "--quiet", "member", "--machine", str(out_file), "--word", "(001)")[1] == "ACCEPT\n"
    code, out, _ = cli(capsys, "combine", "--op", "intersect", "--left", zso, "--right", zso)
    assert code == 0 and out.startswith("machine ")


def _strategy(tmp_path, name, t, header=()):
    p = tmp_path / name
    p.write_text(games.dump_strategy(t, header))
    return str(p)


def test_play_gs(capsys, tmp_path, zso):
    p1 = _strategy(tmp_path, "p1.strat", games.constant_transducer("0", ("^", "0", "1")))
    p2 = _strategy(tmp_path, "p2.strat", games.constant_transducer("1", ("0", "1")))
    code, out, _ = cli(capsys, "play", "--game", "gs", "--winset", zso, "--p1", p1, "--p2", p2)
    assert code == 0 and out == "play (01)\nwinner 1\n"


def test_play_wadge(capsys, tmp_path, zso):
    p1 = _strategy(tmp_path, "p1.strat", games.constant_transducer("1", ("^", "0", "1", "s")))
    p2 = _strategy(tmp_path, "p2.strat", games.constant_transducer("s", ("0", "1")))
    code, out, _ = cli(capsys, "play", "--game", "wadge", "--winset", zso, "--p1", p1, "--p2", p2)
    assert code == 0
    assert out.splitlines() == ["a (1)", "moves2 (s)", "b - infinite=False", "winner 1"]


def test_lift_and_play_lifted(capsys, tmp_path, zso):
    spec = codings.CodingSpec("phi", 2, ("0", "1"))
    t = games.copy_transducer(spec.alphabet)
    outer = _strategy(tmp_path, "outer.strat", t)
    lifted = tmp_path / "lifted.strat"
    code, _, _ = cli(capsys, "lift", "--game", "wadge", "--reduction", "phi", "--param", "2", "--player", "2",
                     "--strategy", outer, "--out", str(lifted))
    assert code == 0 and lifted.read_text().startswith("lift wadge phi 2 2\n")
    p1 = _strategy(tmp_path, "p1.strat", games.constant_transducer("1", ("^", "0", "1", "s")))
    code, out, _ = cli(capsys, "play", "--game", "wadge", "--winset", zso, "--p1", p1, "--p2", str(lifted),
                       "--horizon", "6")
    assert code == 0 and "b 111111 infinite=None" in out


def test_lift_domain_errors(capsys, tmp_path):
    outer = _strategy(tmp_path, "outer.strat", games.copy_transducer(("a", "b")))
    assert cli(capsys, "lift", "--reduction", "theta", "--param", "3", "--player", "1", "--strategy", outer)[0] == 1
    assert cli(capsys, "lift", "--game", "wadge", "--reduction", "h", "--param", "2", "--player", "1",
               "--strategy", outer)[0] == 1


def test_exit_codes(capsys, tmp_path):
    assert cli(capsys)[0] == 2
    assert cli(capsys, "encode", "--coding", "nope", "--param", "2", "--word", "(a)", "--prefix", "3")[0] == 2
    code, _, err = cli(capsys, "encode", "--coding", "theta", "--param", "2", "--word", "ab", "--prefix", "3")
    assert code == 1 and "u(v)" in err
    assert cli(capsys, "validate", "--machine", str(tmp_path / "missing.cm"))[0] == 1
    assert cli(capsys, "classify", "--gadget", "prefTheta", "--word", "aE")[0] == 1


def test_selfcheck_command(capsys):
    code, out, _ = cli(capsys, "--seed", "3", "selfcheck", "--budget", "2")
    assert code == 0
    assert [line.split(":")[0] for line in out.splitlines()] == \
        ["words", "machines", "membership", "codings", "constructions", "games"]
    assert cli(capsys, "selfcheck", "--budget", "0") == (0, "", "")


def test_determinism(capsys):
    a = cli(capsys, "selfcheck", "--budget", "2", "--seed", "11")
    b = cli(capsys, "--seed", "11", "selfcheck", "--budget", "2")
    assert a == b


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "cbgames", "encode", "--coding", "hk", "--param", "2",
                        "--word", "(ab)", "--prefix", "16"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "ACCaBCCCCACCCCbB\n"


def test_random_machine_file_round_trip_via_cli(capsys, tmp_path):
    m = sampling.random_machine(random.Random(4))
    p = tmp_path / "r.cm"
    p.write_text(dump_machine(m))
    assert cli(capsys, "validate", "--machine", str(p))[0] == 0
