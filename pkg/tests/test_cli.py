"""CLI behaviour and golden outputs.

Golden files live in tests/golden/<name>.txt and hold stdout, stderr and the
exit code.  Set POISSON_ORE_REGOLD=1 to rewrite them after an intended change.
"""

import os
import subprocess
import sys

import pytest

from conftest import FIXTURES, GOLDEN
from poisson_ore.cli import main, run

CASES = {
    "bracket_a2": ["bracket", "a2.table", "x1", "x2"],
    "bracket_running": ["bracket", "example.tower", "x", "t^2"],
    "verify_poisson_running": ["verify", "poisson", "example.tower"],
    "verify_poisson_quantum2": ["verify", "poisson", "quantum2.tower"],
    "verify_poisson_table": ["verify", "poisson", "a2.table"],
    "verify_poisson_bad_delta": ["verify", "poisson", "bad_alpha.tower"],
    "verify_poisson_broken": ["verify", "poisson", "broken.tower"],
    "verify_de_running": ["verify", "de", "example.tower"],
    "verify_de_quantum2": ["verify", "de", "quantum2.tower", "--samples", "5", "--seed", "1"],
    "verify_de_invalid": ["verify", "de", "bad_alpha.tower"],
    "env_nf_running": ["env", "nf", "example.tower", "h[x]*m[t]"],
    "env_nf_ordered": ["env", "nf", "example.tower", "m[t]*h[x] - h[x]*m[t]"],
    "env_nf_syntax": ["env", "nf", "example.tower", "h[x"],
    "env_verify_running": ["env", "verify", "example.tower", "--samples", "10", "--triples", "10"],
    "env_verify_quantum2": ["env", "verify", "quantum2.tower", "--samples", "5", "--triples", "5", "--seed", "3"],
    "classify_discrete": ["classify", "discrete4.mat"],
    "classify_parametric": ["classify", "param5_a3.mat"],
    "classify_extra": ["classify", "extra3.mat"],
    "classify_irrational": ["classify", "irrational.mat"],
    "classify_rank4": ["classify", "rank4.mat"],
    "classify_missing": ["classify", "missing.mat"],
    "iso_check_flip": ["iso-check", "param4_a2.mat", "param4_am2.mat", "flip4.mat", "1"],
    "iso_check_fail": ["iso-check", "param4_a1.mat", "param4_a2.mat", "id4.mat", "1"],
    "iso_check_singular": ["iso-check", "param4_a1.mat", "param4_a1.mat", "singular4.mat", "1"],
    "quantum_matrices_n2": ["semiclassical", "quantum-matrices", "--n", "2", "--lambda", "2"],
    "quantum_matrices_n3": ["semiclassical", "quantum-matrices", "--n", "3", "--p", "q3.params"],
    "quantum_matrices_bad_lambda": ["semiclassical", "quantum-matrices", "--n", "2", "--lambda", "0"],
    "compare_n2": ["semiclassical", "compare", "--n", "2", "--lambda", "2"],
    "compare_n3": ["semiclassical", "compare", "--n", "3", "--p", "q3.params"],
    "prop35_n3": ["prop35", "--n", "3", "--a", "1"],
    "prop35_n4_i": ["prop35", "--n", "4", "--a", "i"],
    "prop35_bad_n": ["prop35", "--n", "1", "--a", "1"],
}

SUBCOMMANDS = [
    ("bracket",),
    ("verify", "poisson"),
    ("verify", "de"),
    ("env", "nf"),
    ("env", "verify"),
    ("classify",),
    ("iso-check",),
    ("semiclassical", "quantum-matrices"),
    ("semiclassical", "compare"),
    ("prop35",),
]


def render(argv) -> str:
    out, err, code = run(argv)
    return f"{out}--- stderr\n{err}--- exit {code}\n"


@pytest.fixture
def in_fixtures(monkeypatch):
    monkeypatch.chdir(FIXTURES)


@pytest.mark.parametrize("name", CASES)
def test_golden(name, in_fixtures):
    got = render(CASES[name])
    path = GOLDEN / f"{name}.txt"
    if os.environ.get("POISSON_ORE_REGOLD"):
        path.write_text(got)
    assert path.read_text() == got
    assert render(CASES[name]) == got


def test_every_subcommand_has_a_golden():
    for sub in SUBCOMMANDS:
        assert any(tuple(argv[: len(sub)]) == sub for argv in CASES.values()), sub


@pytest.mark.parametrize(
    "name, code",
    [
        ("bracket_a2", 0),
        ("verify_poisson_bad_delta", 1),
        ("verify_poisson_broken", 2),
        ("classify_rank4", 1),
        ("classify_missing", 2),
        ("iso_check_fail", 1),
        ("iso_check_singular", 2),
        ("quantum_matrices_bad_lambda", 2),
        ("prop35_bad_n", 2),
    ],
)
def test_exit_codes(name, code, in_fixtures):
    assert run(CASES[name])[2] == code


def test_documented_outputs(in_fixtures):
    assert run(["env", "nf", "example.tower", "h[x]*m[t]"])[0] == "m[t]*h[x] + m[t]*m[x] + 1\n"
    assert run(["classify", "discrete4.mat"])[0] == "class=DiscreteNilpotent rank=2 trC2=0 rankC2=0\n"
    assert run(["bracket", "a2.table", "x1", "x2"])[0] == "x1^2 + x2^2\n"


def test_errors_name_file_and_line(in_fixtures):
    _, err, code = run(["verify", "poisson", "broken.tower"])
    assert code == 2 and err.startswith("error: broken.tower:3:16: ")


def test_unknown_variable_in_arguments(in_fixtures):
    _, err, code = run(["bracket", "example.tower", "x", "q"])
    assert code == 2 and "<arg 2>:1:1: unknown variable 'q'" in err


def test_seed_changes_samples_but_not_verdicts(in_fixtures):
    a = run(["env", "verify", "example.tower", "--samples", "5", "--triples", "5", "--seed", "1"])
    b = run(["env", "verify", "example.tower", "--samples", "5", "--triples", "5", "--seed", "2"])
    assert a[2] == b[2] == 0


def test_verify_de_single_step(in_fixtures):
    out, _, code = run(["verify", "de", "quantum2.tower", "--step", "x22", "--samples", "2"])
    assert code == 0 and all(line.startswith("step x22: ") for line in out.splitlines())


def test_argparse_usage_errors():
    assert run([])[2] == 2
    assert run(["classify"])[2] == 2
    assert run(["--help"])[2] == 0


def test_main_writes_streams(in_fixtures, capsys):
    assert main(["classify", "discrete4.mat"]) == 0
    assert capsys.readouterr().out.startswith("class=DiscreteNilpotent")
    assert main(["classify", "missing.mat"]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "poisson_ore.cli", "classify", "discrete4.mat"],
        cwd=FIXTURES,
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "class=DiscreteNilpotent rank=2 trC2=0 rankC2=0\n"
