import pytest

from entropad.commands.attack import AttackInstance
from entropad.commands.base import all_commands
from entropad.exceptions import ConfigParseException
from entropad.main import build_parser, main

HELSTROM_SPEC = """
n = 1
t_k = 0
components = ["basis:0", "basis:1"]
weights = [0.5, 0.5]
f = [0, 1]
epsilon = 0.25
"""

WIDE_SPEC = """
n = 2
t_k = 0
components = ["basis:0", "basis:1", "basis:2", "basis:3"]
f = [0, 1, 2, 3]
f_width = 2
"""


def test_every_command_is_registered():
    assert list(all_commands()) == [
        "attack",
        "channel",
        "decompose",
        "sweep",
        "verify-family",
    ]


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
    with pytest.raises(SystemExit):
        main(["attack", "--kind", "brute-force", "--spec", "x.conf"])


def test_verify_family(capsys):
    assert main(["verify-family", "--m", "2"]) == 0
    out = capsys.readouterr().out
    assert "max averaged offset probability: 1/4" in out
    assert "bound 2^-m: 1/4" in out
    assert "literal worst case over fixed x != y: 1/3" in out
    assert out.rstrip().endswith("PASS")


def test_verify_family_short_keys(capsys):
    assert main(["verify-family", "--m", "4", "--t-k", "2"]) == 0
    assert "key bits: 2" in capsys.readouterr().out


def test_verify_family_too_wide():
    assert main(["verify-family", "--m", "14"]) == 1


def test_decompose(capsys):
    assert main(["decompose", "--weights", "0.5,0.25,0.25,0", "--t", "1"]) == 0
    out = capsys.readouterr().out
    assert "0.5 x uniform{0,1}" in out
    assert "0.5 x uniform{0,2}" in out
    assert "2 term(s)" in out


def test_decompose_rejects_low_entropy():
    assert main(["decompose", "--weights", "0.6,0.4", "--t", "1"]) == 1


def test_channel_unkeyed(capsys):
    assert main(["channel", "--n", "1", "--t-k", "0", "--source", "basis:0"]) == 0
    out = capsys.readouterr().out
    assert "i=3 0.5" in out
    assert "indist_distance 0.5" in out
    assert "implied_epsilon 1" in out


def test_channel_full_key(capsys):
    args = ["channel", "--n", "2", "--t-k", "4", "--source", "random-diagonal:1:7"]
    assert main(args + ["--workers", "2"]) == 0
    assert "i=15 " in capsys.readouterr().out


def test_channel_index_limit(capsys):
    assert main(["channel", "--n", "2", "--t-k", "1", "--index-limit", "2"]) == 0
    out = capsys.readouterr().out
    assert "i=2 " in out
    assert "i=3 " not in out


def test_channel_flat_split(capsys):
    uniform = "diag:0.25,0.25,0.25,0.25"
    args = ["channel", "--n", "2", "--t-k", "2", "--source", uniform]
    assert main(args + ["--flat-split", "2"]) == 0
    assert "flat (t-1)-split" in capsys.readouterr().out


def test_channel_rejects_bad_input():
    assert main(["channel", "--n", "6", "--t-k", "0"]) == 1
    assert main(["channel", "--n", "1", "--t-k", "0", "--source", "bogus"]) == 1
    args = ["channel", "--n", "1", "--t-k", "0", "--source", "basis:0"]
    assert main(args + ["--flat-split", "0"]) == 1


def test_attack_helstrom(tmp_path, capsys):
    spec = tmp_path / "attack.conf"
    spec.write_text(HELSTROM_SPEC, encoding="utf-8")
    assert main(["attack", "--kind", "helstrom", "--spec", str(spec)]) == 0
    out = capsys.readouterr().out
    assert "adversary: Helstrom" in out
    assert "gap 0.5" in out
    assert "family: 204 adversaries" in out
    assert "witness:" in out
    assert "under-keyed: t_k=0 < 2 required; gap exceeds eps=0.25" in out


def test_attack_gl(tmp_path, capsys):
    spec = tmp_path / "wide.conf"
    spec.write_text(WIDE_SPEC, encoding="utf-8")
    args = ["attack", "--kind", "gl", "--spec", str(spec), "--random-adversaries", "3"]
    assert main(args) == 0
    out = capsys.readouterr().out
    assert "family: 6 adversaries" in out
    assert "adversary: likelihood" in out
    assert "gap 0.75" in out
    assert "GL predicate r=01" in out


def test_attack_random_instance(tmp_path, capsys):
    spec = tmp_path / "random.conf"
    spec.write_text("n = 2\nt_k = 3\nt = 1\ncomponents_count = 3\n", encoding="utf-8")
    args = ["attack", "--kind", "helstrom", "--spec", str(spec), "--seed", "5"]
    assert main(args) == 0
    assert "components=" in capsys.readouterr().out


def test_attack_bad_spec(tmp_path):
    assert main(["attack", "--kind", "gl", "--spec", str(tmp_path / "absent")]) == 1
    spec = tmp_path / "incomplete.conf"
    spec.write_text("n = 1\n", encoding="utf-8")
    assert main(["attack", "--kind", "gl", "--spec", str(spec)]) == 1


def test_attack_weights_must_match_components(tmp_path):
    spec = tmp_path / "mismatch.conf"
    spec.write_text(
        HELSTROM_SPEC.replace("f = [0, 1]\n", "").replace("[0.5, 0.5]", "[1.0]"),
        encoding="utf-8",
    )
    with pytest.raises(ConfigParseException):
        AttackInstance.read_file(str(spec), 0)
    assert main(["attack", "--kind", "helstrom", "--spec", str(spec)]) == 1


def test_sweep_command(tmp_path, capsys):
    config = tmp_path / "sweep.conf"
    config.write_text(
        "n = [1]\nt = [0, 1]\nt_k = required\nepsilon = [0.5]\n"
        "generators = [flat-random-support]\nsources_per_cell = 2\nseed = 3\n",
        encoding="utf-8",
    )
    out_path = tmp_path / "rows.csv"
    assert main(["sweep", "--config", str(config), "--out", str(out_path)]) == 0
    assert out_path.read_text(encoding="utf-8").startswith("# rng=")
    assert "4 rows, 4 within target distance" in capsys.readouterr().out


def test_sweep_command_flags_missed_targets(tmp_path):
    config = tmp_path / "sweep.conf"
    config.write_text(
        "n = [1]\nt = [0]\nt_k = [0]\nepsilon = [0.1]\n"
        "generators = [flat-random-support]\nsources_per_cell = 1\nseed = 3\n",
        encoding="utf-8",
    )
    assert main(["sweep", "--config", str(config)]) == 1
