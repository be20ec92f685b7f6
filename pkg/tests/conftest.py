from __future__ import annotations

from pathlib import Path

import pytest
import sympy
from hypothesis import settings

from poisson_ore.formats import read_tower
from poisson_ore.linalg import Matrix
from poisson_ore.quantum import quantum_matrix_tower
from poisson_ore.rank2 import a_param_tower
from poisson_ore.scalar import GScalar

settings.register_profile("repo", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("repo")

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

# criterion number -> (ok, detail); filled by test_acceptance, printed at the end
ACCEPTANCE: dict = {}


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


def to_sympy(z) -> sympy.Expr:
    z = z if isinstance(z, GScalar) else GScalar(z)
    return sympy.Rational(z.re.numerator, z.re.denominator) + sympy.I * sympy.Rational(
        z.im.numerator, z.im.denominator
    )


def sympy_matrix(m: Matrix) -> sympy.Matrix:
    return sympy.Matrix([[to_sympy(x) for x in row] for row in m.rows])


def poly_to_sympy(p, symbols=None):
    names = p.registry.names
    syms = symbols or sympy.symbols(names)
    out = sympy.Integer(0)
    for mono, c in p.terms.items():
        term = to_sympy(c)
        for s, e in zip(syms, mono):
            term *= s**e
        out += term
    return sympy.expand(out)


@pytest.fixture(scope="session")
def t1():
    """k[t][x; t d/dt, d/dt]_P."""
    return read_tower(fixture_path("example.tower"))


@pytest.fixture(scope="session")
def t2():
    return quantum_matrix_tower(2, 2)


@pytest.fixture(scope="session")
def t3():
    return a_param_tower(4, 1)


_SWEEP = {}


@pytest.fixture(scope="session")
def full_sweep():
    """The exhaustive 9^6 sweep; computed once per session."""
    if "full" not in _SWEEP:
        from poisson_ore.rank2 import sweep_skew4

        _SWEEP["full"] = sweep_skew4()
    return _SWEEP["full"]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} {detail}")
