"""Quadratic Poisson structures ``{x_i, x_j} = c_ij (x_1^2 + ... + x_n^2)``.

Rank test for the coefficient matrix, classification up to similarity,
isomorphism witnesses, and the Poisson-Ore presentation of the parametric
family.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidWitness, NoRationalRoot, NotPoisson
from .linalg import Matrix, SkewMatrix, identity, mat_mul, mat_rank, mat_trace
from .poisson import BracketTable, PoissonStep, PoissonTower, extend_bracket
from .poly import CPoly, Registry
from .scalar import I, ZERO, GScalar, as_scalar

__all__ = [
    "omega",
    "a_matrix_table",
    "parametric_matrix",
    "discrete_matrix",
    "Cond3Witness",
    "Lemma32Result",
    "lemma32_check",
    "NormalFormClass",
    "classify",
    "normal_form_matrix",
    "IsoResult",
    "iso_witness_check",
    "a_param_tower",
    "Prop35Witness",
    "prop35_verify",
    "GAUSSIAN_UNITS_BOX",
    "SweepResult",
    "sweep_skew4",
]


def omega(reg: Registry) -> CPoly:
    return sum((v * v for v in reg.gens()), reg.zero())


def a_matrix_table(c: SkewMatrix, names=None) -> BracketTable:
    n = c.n
    reg = Registry(names or [f"x{i}" for i in range(1, n + 1)])
    w = omega(reg)
    entries = {(i, j): w * c.rows[i][j] for i in range(n) for j in range(i + 1, n) if c.rows[i][j]}
    return BracketTable(reg, entries, graded=True)


def parametric_matrix(n: int, a) -> SkewMatrix:
    """Zero except ``c_{n-1,n} = a``."""
    if n < 2:
        raise ValueError("the parametric family needs n >= 2")
    return SkewMatrix.from_upper(n, {(n - 1, n): as_scalar(a)})


_DISCRETE4 = ((0, -1, I, 0), (1, 0, 0, -I), (-I, 0, 0, -1), (0, I, 1, 0))


def discrete_matrix(n: int) -> SkewMatrix:
    """The nilpotent normal form in the bottom-right 4x4 corner."""
    if n < 4:
        raise ValueError("the discrete class needs n >= 4")
    rows = [[ZERO] * n for _ in range(n)]
    off = n - 4
    for i in range(4):
        for j in range(4):
            rows[off + i][off + j] = as_scalar(_DISCRETE4[i][j])
    return SkewMatrix(rows)


@dataclass(frozen=True)
class Cond3Witness:
    i: int
    j: int
    k: int
    s: int
    value: GScalar

    def describe(self) -> str:
        return f"({self.i},{self.j},{self.k},{self.s}) value {self.value}"


@dataclass(frozen=True)
class Lemma32Result:
    witness: Cond3Witness | None
    rank: int

    @property
    def cond3(self) -> bool:
        return self.witness is None

    @property
    def agree(self) -> bool:
        return self.cond3 == (self.rank <= 2)


def _cond3_witness(c: SkewMatrix):
    r = c.rows
    for i, j, k, s in itertools.combinations(range(c.n), 4):
        v = r[i][j] * r[k][s] + r[j][k] * r[i][s] + r[k][i] * r[j][s]
        if v:
            return Cond3Witness(i + 1, j + 1, k + 1, s + 1, v)
    return None


def lemma32_check(c: SkewMatrix) -> Lemma32Result:
    return Lemma32Result(_cond3_witness(c), mat_rank(c))


@dataclass(frozen=True)
class NormalFormClass:
    tag: str
    rank: int
    trC2: GScalar
    rankC2: int
    a: GScalar | None = None

    @property
    def invariants(self) -> tuple:
        return (self.rank, self.trC2, self.rankC2)

    def line(self) -> str:
        out = f"class={self.tag} rank={self.rank} trC2={self.trC2} rankC2={self.rankC2}"
        if self.a is not None:
            out += f" a={self.a}"
        return out


def classify(c: SkewMatrix) -> NormalFormClass:
    """Similarity class from ``(rank C, tr C^2, rank C^2)``.

    For the parametric family, ``a`` is the square root of ``-tr(C^2)/2``
    with non-negative real part, then non-negative imaginary part.
    """
    w = _cond3_witness(c)
    if w is not None:
        raise NotPoisson(f"condition (3) fails at {w.describe()}")
    c2 = mat_mul(c, c)
    rank, tr, rank2 = mat_rank(c), mat_trace(c2), mat_rank(c2)
    if rank == 0:
        return NormalFormClass("Zero", 0, tr, rank2)
    if rank != 2:
        raise AssertionError(f"rank {rank} passed condition (3)")
    if tr:
        try:
            a = (-tr / 2).sqrt()
        except NoRationalRoot as exc:
            raise NoRationalRoot(
                f"-tr(C^2)/2 = {-tr / 2} is not a square in Q(i)",
                -tr / 2,
                NormalFormClass("Parametric", rank, tr, rank2),
            ) from exc
        return NormalFormClass("Parametric", rank, tr, rank2, a)
    if rank2 == 0:
        return NormalFormClass("DiscreteNilpotent", rank, tr, rank2)
    return NormalFormClass("ExtraNilpotent", rank, tr, rank2)


def normal_form_matrix(n: int, cls: NormalFormClass) -> SkewMatrix | None:
    """A representative of the class, or None for ExtraNilpotent."""
    if cls.tag == "Zero":
        return SkewMatrix([[ZERO] * n for _ in range(n)])
    if cls.tag == "Parametric":
        return parametric_matrix(n, cls.a)
    if cls.tag == "DiscreteNilpotent":
        return discrete_matrix(n)
    return None


@dataclass(frozen=True)
class IsoResult:
    failed: str | None = None
    residual: Matrix | None = None

    @property
    def ok(self) -> bool:
        return self.failed is None

    def line(self) -> str:
        if self.ok:
            return "iso: pass"
        return f"iso: FAIL eq ({self.failed}) residual\n{self.residual.to_text()}".rstrip("\n")


def iso_witness_check(m: Matrix, lam, c: SkewMatrix, d: SkewMatrix) -> IsoResult:
    """Does ``x_i -> sum_j m_ij y_j`` define a graded Poisson map ``A(C) -> A(D)``?

    Checks ``M^T M = lam Id`` then ``M D M^T = lam C``.
    """
    n = c.n
    lam = as_scalar(lam)
    if not lam:
        raise InvalidWitness("lambda must be nonzero")
    if m.shape != (n, n) or d.n != n:
        raise InvalidWitness(f"witness and matrices must all be {n}x{n}")
    if mat_rank(m) < n:
        raise InvalidWitness("witness matrix is singular")
    res = mat_mul(m.T, m) - identity(n) * lam
    if not res.is_zero():
        return IsoResult("3.1", res)
    res = mat_mul(mat_mul(m, d), m.T) - c * lam
    if not res.is_zero():
        return IsoResult("3.2", res)
    return IsoResult()


def a_param_tower(n: int, a) -> PoissonTower:
    """``k[y_1..y_{n-1}][y_n; 2ai y_{n-1} d/dy_{n-1}, 2ai(y_1^2+...+y_{n-2}^2) d/dy_{n-1}]_P``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    a = as_scalar(a)
    reg = Registry([f"y{j}" for j in range(1, n + 1)])
    k = 2 * a * I
    last = n - 2
    y = reg.var(last)
    tail = sum((reg.var(j) ** 2 for j in range(last)), reg.zero())
    step = PoissonStep(n - 1, {last: y * k}, {last: tail * k} if tail else {})
    return PoissonTower(reg, list(range(n - 1)), [step])


@dataclass(frozen=True)
class Prop35Witness:
    i: int
    j: int
    expected: CPoly
    got: CPoly

    def describe(self) -> str:
        return f"{{x{self.i}, x{self.j}}}: expected {self.expected}, got {self.got}"


def prop35_verify(n: int, a):
    """Pull the tower bracket back along the substitution and compare with A(a).

    ``y_j = x_j`` for ``j <= n-2``, ``y_{n-1} = x_{n-1} + i x_n``,
    ``y_n = x_{n-1} - i x_n``.  Returns None or the first failing pair.
    """
    tower = a_param_tower(n, a)
    ytab = tower.table()
    target = a_matrix_table(parametric_matrix(n, a))
    xreg, yreg = target.registry, tower.registry
    xs, ys = xreg.gens(), yreg.gens()
    to_x = {j: xs[j] for j in range(n - 2)}
    to_x[n - 2] = xs[n - 2] + xs[n - 1] * I
    to_x[n - 1] = xs[n - 2] - xs[n - 1] * I
    to_y = {j: ys[j] for j in range(n - 2)}
    to_y[n - 2] = (ys[n - 2] + ys[n - 1]) * Fraction(1, 2)
    to_y[n - 1] = (ys[n - 2] - ys[n - 1]) * (1 / (2 * I))
    for i in range(n):
        for j in range(i + 1, n):
            want = target.gen_bracket(i, j)
            got = extend_bracket(ytab, to_y[i], to_y[j]).substitute(to_x, xreg)
            if got != want:
                return Prop35Witness(i + 1, j + 1, want, got)
    return None


GAUSSIAN_UNITS_BOX = tuple(GScalar(a, b) for a in (-1, 0, 1) for b in (-1, 0, 1))


@dataclass
class SweepResult:
    total: int
    cond3_pass: int
    mismatches: list
    classes: list  # (entries, NormalFormClass) for every cond3-passing matrix

    def counts(self) -> dict:
        out = {}
        for _, cls in self.classes:
            out[cls.tag] = out.get(cls.tag, 0) + 1
        return dict(sorted(out.items()))


_UPPER4 = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


def _skew4(e, neg):
    a, b, c, d, f, g = e
    na, nb, nc, nd, nf, ng = (neg[x] for x in e)
    return SkewMatrix._trusted(((ZERO, a, b, c), (na, ZERO, d, f), (nb, nd, ZERO, g), (nc, nf, ng, ZERO)))


def _sweep_chunk(args):
    first, values = args
    neg = {v: -v for v in values}
    total, passed, bad, classes = 0, 0, [], []
    for rest in itertools.product(values, repeat=5):
        entries = (first,) + rest
        c = _skew4(entries, neg)
        res = lemma32_check(c)
        total += 1
        if not res.agree:
            bad.append(entries)
        if res.cond3:
            passed += 1
            try:
                cls = classify(c)
            except NoRationalRoot as exc:
                cls = exc.verdict
            classes.append((entries, cls))
    return total, passed, bad, classes


def sweep_skew4(values=GAUSSIAN_UNITS_BOX, workers: int | None = None) -> SweepResult:
    """lemma32_check and classify on every skew 4x4 matrix with upper entries in ``values``.

    Chunks are split on the ``c_12`` entry; results come back in input order.
    """
    values = tuple(as_scalar(v) for v in values)
    chunks = [(v, values) for v in values]
    if workers == 1:
        parts = list(map(_sweep_chunk, chunks))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sweep_chunk, chunks))
    out = SweepResult(0, 0, [], [])
    for total, passed, bad, classes in parts:
        out.total += total
        out.cond3_pass += passed
        out.mismatches += bad
        out.classes += classes
    return out
