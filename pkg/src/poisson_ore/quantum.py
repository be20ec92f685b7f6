"""Semiclassical limits of multiparameter quantum matrices and quantum affine spaces.

The deformation parameter is truncated at first order: ``e(a) = 1 + a*hbar``
modulo ``hbar^2``.  The skew parameter matrix ``p`` is stored additively
(the exponents fed to ``e``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameter, NonvanishingClassicalPart
from .linalg import SkewMatrix
from .poisson import BracketTable, PoissonStep, PoissonTower, jacobi_check
from .poly import CPoly, Registry
from .scalar import ONE, ZERO, GScalar, as_scalar

__all__ = [
    "DualNumber",
    "dual_exp",
    "QuantumRelationSet",
    "quantum_matrix_relations",
    "semiclassical_table",
    "quantum_matrix_tower",
    "printed_bracket_table",
    "quantum_affine_tower",
    "relation_case",
    "TableDifference",
    "compare_semiclassical",
    "difference_problems",
]


@dataclass(frozen=True)
class DualNumber:
    """``a0 + a1*hbar`` modulo ``hbar^2``."""

    a0: GScalar
    a1: GScalar

    @staticmethod
    def lift(x) -> DualNumber:
        if isinstance(x, DualNumber):
            return x
        return DualNumber(as_scalar(x), ZERO)

    def __add__(self, other):
        o = DualNumber.lift(other)
        return DualNumber(self.a0 + o.a0, self.a1 + o.a1)

    __radd__ = __add__

    def __neg__(self):
        return DualNumber(-self.a0, -self.a1)

    def __sub__(self, other):
        return self + (-DualNumber.lift(other))

    def __rsub__(self, other):
        return DualNumber.lift(other) - self

    def __mul__(self, other):
        o = DualNumber.lift(other)
        return DualNumber(self.a0 * o.a0, self.a0 * o.a1 + self.a1 * o.a0)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            o = DualNumber.lift(other)
        except TypeError:
            return NotImplemented
        return self.a0 == o.a0 and self.a1 == o.a1

    def __hash__(self):
        return hash((self.a0, self.a1))

    def __str__(self):
        if not self.a1:
            return str(self.a0)
        return f"{self.a0} + ({self.a1})*hbar"


def dual_exp(alpha) -> DualNumber:
    return DualNumber(ONE, as_scalar(alpha))


def _gen_name(i: int, j: int) -> str:
    return f"x{i}{j}"


def relation_case(l: int, m: int, i: int, j: int) -> str:
    """Which branch of the defining relations a pair ``X_lm X_ij`` falls in."""
    if l > i and m > j:
        return "l>i,m>j"
    if l > i:
        return "l>i,m<=j"
    if l == i and m > j:
        return "l=i,m>j"
    raise ValueError(f"({l},{m}) does not follow ({i},{j})")


@dataclass(frozen=True)
class QuantumRelationSet:
    """Straightening rules ``X_b X_a = sum coeff * X_c X_d`` for ``b > a``, ``c <= d``."""

    n: int
    names: tuple
    rules: dict

    def index(self, i: int, j: int) -> int:
        return (i - 1) * self.n + (j - 1)


def _check_params(n: int, lam, p: SkewMatrix | None):
    lam = as_scalar(lam)
    if not lam:
        raise InvalidParameter("lambda must be nonzero")
    if not 1 <= n <= 9:
        raise InvalidParameter("n must be between 1 and 9 (generator names are x<i><j>)")
    if p is None:
        p = SkewMatrix([[ZERO] * n for _ in range(n)])
    if p.n != n:
        raise InvalidParameter(f"parameter matrix must be {n}x{n}")
    return lam, p


def _ordered_pairs(n: int):
    """All ``((l, m), (i, j))`` with ``(i, j) < (l, m)`` lexicographically."""
    cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    for b, (l, m) in enumerate(cells):
        for (i, j) in cells[:b]:
            yield (l, m), (i, j)


def quantum_matrix_relations(n: int, lam, p: SkewMatrix | None = None) -> QuantumRelationSet:
    lam, p = _check_params(n, lam, p)
    e = lambda a: dual_exp(a)  # noqa: E731
    idx = lambda i, j: (i - 1) * n + (j - 1)  # noqa: E731
    rules = {}
    for (l, m), (i, j) in _ordered_pairs(n):
        case = relation_case(l, m, i, j)
        rhs = []
        if case == "l>i,m>j":
            rhs.append((e(p.c(l, i)) * e(p.c(j, m)), (idx(i, j), idx(l, m))))
            rhs.append(((e(lam) - 1) * e(p.c(l, i)), (idx(i, m), idx(l, j))))
        elif case == "l>i,m<=j":
            rhs.append((e(lam) * e(p.c(l, i)) * e(p.c(j, m)), (idx(i, j), idx(l, m))))
        else:
            rhs.append((e(p.c(j, m)), (idx(i, j), idx(l, m))))
        rules[(idx(l, m), idx(i, j))] = rhs
    names = tuple(_gen_name(i, j) for i in range(1, n + 1) for j in range(1, n + 1))
    return QuantumRelationSet(n, names, rules)


def semiclassical_table(rels: QuantumRelationSet) -> BracketTable:
    """``{x_b, x_a}`` as the first-order part of ``[X_b, X_a]``."""
    reg = Registry(rels.names)
    entries = {}
    for (b, a), rhs in sorted(rels.rules.items()):
        classical = {}
        bracket = reg.zero()
        commutator = list(rhs) + [(DualNumber(-ONE, ZERO), (a, b))]
        for coeff, (c, d) in commutator:
            classical[(c, d)] = classical.get((c, d), ZERO) + coeff.a0
            bracket = bracket + reg.var(c) * reg.var(d) * coeff.a1
        if any(classical.values()):
            raise NonvanishingClassicalPart(
                f"[{rels.names[b]}, {rels.names[a]}] does not vanish modulo hbar"
            )
        entries[(b, a)] = bracket
    table = BracketTable(reg, entries, graded=True)
    w = jacobi_check(table)
    if w is not None:
        raise NonvanishingClassicalPart("semiclassical bracket violates Jacobi: " + w.describe(reg))
    return table


def quantum_matrix_tower(n: int, lam, p: SkewMatrix | None = None, coefficient: str = "printed") -> PoissonTower:
    """``k[x11][x12; a_12, d_12]_P ... [x_nn; a_nn, d_nn]_P``.

    ``coefficient="printed"`` uses ``delta_lm(x_ij) = (lambda - 1) x_im x_lj``;
    ``coefficient="oracle"`` uses ``lambda`` instead, matching the
    first-order expansion of the quantum relations.  For ``n >= 3`` and
    ``lambda != 1`` only the latter satisfies the derivation axioms, and the
    printed variant raises InvalidStep.
    """
    lam, p = _check_params(n, lam, p)
    if coefficient not in ("printed", "oracle"):
        raise ValueError("coefficient must be 'printed' or 'oracle'")
    cross = lam - 1 if coefficient == "printed" else lam
    names = tuple(_gen_name(i, j) for i in range(1, n + 1) for j in range(1, n + 1))
    reg = Registry(names)
    idx = lambda i, j: (i - 1) * n + (j - 1)  # noqa: E731
    cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    steps = []
    for b, (l, m) in enumerate(cells[1:], start=1):
        alpha, delta = {}, {}
        for (i, j) in cells[:b]:
            x = reg.var(idx(i, j))
            case = relation_case(l, m, i, j)
            if case == "l>i,m>j":
                alpha[idx(i, j)] = x * (p.c(l, i) + p.c(j, m))
                delta[idx(i, j)] = reg.var(idx(i, m)) * reg.var(idx(l, j)) * cross
            elif case == "l>i,m<=j":
                alpha[idx(i, j)] = x * (lam + p.c(l, i) + p.c(j, m))
            else:
                alpha[idx(i, j)] = x * p.c(j, m)
        steps.append(PoissonStep(idx(l, m), alpha, delta))
    return PoissonTower(reg, [0], steps)


def printed_bracket_table(n: int, lam, p: SkewMatrix | None = None) -> BracketTable:
    """The three-case bracket table written out directly (with ``lambda - 1``)."""
    lam, p = _check_params(n, lam, p)
    names = tuple(_gen_name(i, j) for i in range(1, n + 1) for j in range(1, n + 1))
    reg = Registry(names)
    idx = lambda i, j: (i - 1) * n + (j - 1)  # noqa: E731
    v = lambda i, j: reg.var(idx(i, j))  # noqa: E731
    entries = {}
    for (l, m), (i, j) in _ordered_pairs(n):
        case = relation_case(l, m, i, j)
        if case == "l>i,m>j":
            val = v(i, j) * v(l, m) * (p.c(l, i) + p.c(j, m)) + v(i, m) * v(l, j) * (lam - 1)
        elif case == "l>i,m<=j":
            val = v(i, j) * v(l, m) * (lam + p.c(l, i) + p.c(j, m))
        else:
            val = v(i, j) * v(l, m) * p.c(j, m)
        entries[(idx(l, m), idx(i, j))] = val
    return BracketTable(reg, entries, graded=True)


def quantum_affine_tower(q: SkewMatrix) -> PoissonTower:
    """``{x_j, x_i} = q_ji x_i x_j``: steps ``alpha_j(x_i) = q_ji x_i``, ``delta = 0``."""
    n = q.n
    reg = Registry([f"x{i}" for i in range(1, n + 1)])
    steps = []
    for j in range(2, n + 1):
        alpha = {i - 1: reg.var(i - 1) * q.c(j, i) for i in range(1, j)}
        steps.append(PoissonStep(j - 1, alpha, {}))
    return PoissonTower(reg, [0], steps)


@dataclass(frozen=True)
class TableDifference:
    later: str
    earlier: str
    case: str
    oracle: CPoly
    printed: CPoly

    @property
    def difference(self) -> CPoly:
        return self.oracle - self.printed

    def line(self) -> str:
        return (
            f"diff {{{self.later}, {self.earlier}}} case={self.case} "
            f"oracle={self.oracle} printed={self.printed} oracle-printed={self.difference}"
        )


def compare_semiclassical(n: int, lam, p: SkewMatrix | None = None):
    """Compare the hbar-oracle table with the printed three-case table.

    Returns ``(agreements, differences)``: a list of ``(later, earlier, case)``
    for agreeing pairs and a list of TableDifference for the rest.
    """
    oracle = semiclassical_table(quantum_matrix_relations(n, lam, p))
    printed = printed_bracket_table(n, lam, p)
    names = oracle.registry.names
    agree, diffs = [], []
    if printed.registry != oracle.registry:
        raise ValueError("tables over different registries")
    for (l, m), (i, j) in _ordered_pairs(n):
        b, a = (l - 1) * n + (m - 1), (i - 1) * n + (j - 1)
        case = relation_case(l, m, i, j)
        o, pr = oracle.gen_bracket(b, a), printed.gen_bracket(b, a)
        if o == pr:
            agree.append((names[b], names[a], case))
        else:
            diffs.append(TableDifference(names[b], names[a], case, o, pr))
    return agree, diffs


def difference_problems(n: int, diffs) -> list:
    """Anything in ``diffs`` other than the expected ``x_im x_lj`` shift in case l>i,m>j."""
    problems = []
    for d in diffs:
        if d.case != "l>i,m>j":
            problems.append(f"{{{d.later}, {d.earlier}}} differs in case {d.case}")
            continue
        (l, m), (i, j) = (int(c) for c in d.later[1:]), (int(c) for c in d.earlier[1:])
        reg = d.oracle.registry
        expect = reg.var(_gen_name(i, m)) * reg.var(_gen_name(l, j))
        if d.difference != expect:
            problems.append(f"{{{d.later}, {d.earlier}}}: oracle-printed = {d.difference}, expected {expect}")
    return problems
