"""Poisson brackets on polynomial algebras and iterated Poisson-Ore towers.

A bracket is stored as a table of generator brackets ``{x_i, x_j}`` for
``i < j`` and extended to all polynomials as the unique antisymmetric
biderivation.  A tower adjoins variables one at a time with
``{x, r} = alpha(r)*x + delta(r)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import InvalidStep, RegistryMismatch
from .poly import CPoly, Registry

__all__ = [
    "BracketTable",
    "PoissonStep",
    "PoissonTower",
    "JacobiWitness",
    "PairWitness",
    "extend_bracket",
    "jacobi_check",
    "jacobiator",
    "apply_derivation",
    "check_poisson_derivation",
    "check_poisson_alpha_derivation",
    "tower_to_table",
    "bracket_closed_form",
]


@dataclass(frozen=True)
class JacobiWitness:
    i: int
    j: int
    k: int
    residual: CPoly

    def describe(self, registry: Registry) -> str:
        n = registry.names
        return f"jacobi fails at ({n[self.i]}, {n[self.j]}, {n[self.k]}): residual {self.residual}"


@dataclass(frozen=True)
class PairWitness:
    """A generator pair ``(r, s)`` on which an axiom fails, ``residual = LHS - RHS``."""

    r: int
    s: int
    residual: CPoly

    def describe(self, registry: Registry) -> str:
        n = registry.names
        return f"fails at ({n[self.r]}, {n[self.s]}): residual {self.residual}"


class BracketTable:
    """Generator brackets ``{x_i, x_j}`` (i < j) on a polynomial algebra."""

    def __init__(self, registry: Registry, table: Mapping | None = None, graded: bool = False):
        self.registry = registry
        entries = {}
        for (i, j), p in (table or {}).items():
            i = i if isinstance(i, int) else registry.index(i)
            j = j if isinstance(j, int) else registry.index(j)
            if p.registry != registry:
                raise RegistryMismatch("bracket entry over a different registry")
            if i == j:
                if p:
                    raise ValueError("{x, x} must vanish")
                continue
            if i > j:
                i, j, p = j, i, -p
            if p:
                entries[(i, j)] = p
        self.table = entries
        self.graded = graded
        if graded:
            bad = self.inhomogeneous_entry()
            if bad is not None:
                i, j = bad
                raise ValueError(
                    f"graded bracket entry {{{registry.names[i]}, {registry.names[j]}}} is not homogeneous"
                )

    def inhomogeneous_entry(self):
        degs = self.registry.degrees
        for (i, j), p in sorted(self.table.items()):
            if not p.is_homogeneous(degs[i] + degs[j]):
                return (i, j)
        return None

    def is_graded(self) -> bool:
        return self.inhomogeneous_entry() is None

    def gen_bracket(self, i: int, j: int) -> CPoly:
        if i == j:
            return self.registry.zero()
        if i < j:
            return self.table.get((i, j)) or self.registry.zero()
        p = self.table.get((j, i))
        return -p if p is not None else self.registry.zero()

    def bracket(self, a: CPoly, b: CPoly) -> CPoly:
        return extend_bracket(self, a, b)

    def restrict(self, variables: Sequence[int]) -> BracketTable:
        keep = set(variables)
        return BracketTable(
            self.registry, {k: v for k, v in self.table.items() if k[0] in keep and k[1] in keep}
        )

    def __eq__(self, other):
        if not isinstance(other, BracketTable):
            return NotImplemented
        return self.registry == other.registry and self.table == other.table

    def lines(self) -> list:
        """One ``bracket xi xj = ...`` line per nonzero entry, in index order."""
        n = self.registry.names
        return [f"bracket {n[i]} {n[j]} = {p}" for (i, j), p in sorted(self.table.items())]


def extend_bracket(table: BracketTable, a: CPoly, b: CPoly) -> CPoly:
    """``{a, b} = sum_{i,j} (da/dx_i)(db/dx_j) {x_i, x_j}``."""
    reg = table.registry
    if a.registry != reg or b.registry != reg:
        raise RegistryMismatch("bracket arguments over a different registry")
    result = reg.zero()
    if not a or not b or not table.table:
        return result
    va, vb = a.variables(), b.variables()
    da = {i: a.partial(i) for i in va}
    db = {j: b.partial(j) for j in vb}
    for (i, j), p in table.table.items():
        if i in va and j in vb:
            result = result + da[i] * db[j] * p
        if j in va and i in vb:
            result = result - da[j] * db[i] * p
    return result


def jacobiator(table: BracketTable, a: CPoly, b: CPoly, c: CPoly) -> CPoly:
    br = table.bracket
    return br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))


def jacobi_check(table: BracketTable, variables: Sequence[int] | None = None):
    """First generator triple ``i<j<k`` with nonzero Jacobiator, or None.

    The Jacobiator of a biderivation is a derivation in each slot, so
    generator triples suffice.
    """
    reg = table.registry
    idx = sorted(variables) if variables is not None else range(len(reg))
    idx = list(idx)
    gens = {i: reg.var(i) for i in idx}
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            for c in range(b + 1, len(idx)):
                i, j, k = idx[a], idx[b], idx[c]
                res = jacobiator(table, gens[i], gens[j], gens[k])
                if res:
                    return JacobiWitness(i, j, k, res)
    return None


def apply_derivation(images: Mapping[int, CPoly], p: CPoly) -> CPoly:
    """Extend generator images to a derivation; missing generators map to 0."""
    result = p.registry.zero()
    for v in p.variables():
        img = images.get(v)
        if img is not None and img:
            result = result + p.partial(v) * img
    return result


def _generator_pairs(keys):
    keys = sorted(keys)
    # (later, earlier) so witnesses read like {x, r}
    for a in range(len(keys)):
        for b in range(a):
            yield keys[a], keys[b]


def check_poisson_derivation(lower: BracketTable, alpha: Mapping[int, CPoly], variables=None):
    """Check ``alpha({r,s}) = {alpha(r), s} + {r, alpha(s)}`` on generator pairs.

    ``variables`` defaults to the keys of ``alpha``.  Returns a PairWitness
    for the first failing pair, or None.
    """
    reg = lower.registry
    keys = variables if variables is not None else alpha.keys()
    for r, s in _generator_pairs(keys):
        xr, xs = reg.var(r), reg.var(s)
        lhs = apply_derivation(alpha, lower.bracket(xr, xs))
        ar = alpha.get(r) or reg.zero()
        as_ = alpha.get(s) or reg.zero()
        rhs = lower.bracket(ar, xs) + lower.bracket(xr, as_)
        if lhs != rhs:
            return PairWitness(r, s, lhs - rhs)
    return None


def alpha_derivation_defect(lower, alpha, delta, a: CPoly, b: CPoly) -> CPoly:
    """LHS - RHS of the alpha-derivation compatibility condition on ``(a, b)``."""
    br = lower.bracket
    da, db = apply_derivation(delta, a), apply_derivation(delta, b)
    aa, ab = apply_derivation(alpha, a), apply_derivation(alpha, b)
    lhs = apply_derivation(delta, br(a, b))
    rhs = br(da, b) + br(a, db) + aa * db - da * ab
    return lhs - rhs


def derivation_defect(lower, alpha, a: CPoly, b: CPoly) -> CPoly:
    br = lower.bracket
    lhs = apply_derivation(alpha, br(a, b))
    return lhs - br(apply_derivation(alpha, a), b) - br(a, apply_derivation(alpha, b))


def check_poisson_alpha_derivation(
    lower: BracketTable, alpha: Mapping[int, CPoly], delta: Mapping[int, CPoly], variables=None
):
    """Check the delta compatibility condition on generator pairs; see check_poisson_derivation."""
    reg = lower.registry
    keys = variables if variables is not None else set(alpha) | set(delta)
    for r, s in _generator_pairs(keys):
        res = alpha_derivation_defect(lower, alpha, delta, reg.var(r), reg.var(s))
        if res:
            return PairWitness(r, s, res)
    return None


@dataclass(frozen=True)
class PoissonStep:
    """Adjoin ``var`` with ``{var, g} = alpha[g]*var + delta[g]`` for earlier ``g``."""

    var: int
    alpha: Mapping[int, CPoly] = field(default_factory=dict)
    delta: Mapping[int, CPoly] = field(default_factory=dict)

    def alpha_of(self, p: CPoly) -> CPoly:
        return apply_derivation(self.alpha, p)

    def delta_of(self, p: CPoly) -> CPoly:
        return apply_derivation(self.delta, p)


class PoissonTower:
    """``k[base][x_1; a_1, d_1]_P ... [x_s; a_s, d_s]_P`` over a single registry.

    The registry must list the base variables first, then the step variables
    in step order.  Construction validates every step.
    """

    def __init__(self, registry: Registry, base: Sequence, steps: Sequence[PoissonStep], validate=True):
        self.registry = registry
        self.base = tuple(v if isinstance(v, int) else registry.index(v) for v in base)
        self.steps = tuple(steps)
        order = list(self.base) + [s.var for s in self.steps]
        if order != list(range(len(registry))):
            raise ValueError("registry order must be base variables followed by step variables")
        for step in self.steps:
            for name, images in (("alpha", step.alpha), ("delta", step.delta)):
                for g, img in images.items():
                    if g >= step.var:
                        raise InvalidStep(f"{name} of {registry.names[step.var]} defined on a later variable")
                    if img.registry != registry:
                        raise RegistryMismatch(f"{name} image over the wrong registry")
                    if any(v >= step.var for v in img.variables()):
                        raise InvalidStep(
                            f"{name}({registry.names[g]}) for step {registry.names[step.var]} "
                            "involves a non-earlier variable"
                        )
        self._tables = {}
        if validate:
            self.validate()

    @classmethod
    def build(cls, base: Sequence[str], steps: Sequence, degrees: Mapping[str, int] | None = None):
        """Convenience constructor.

        ``steps`` is a list of ``(name, alpha, delta)`` where alpha/delta map
        earlier variable names to callables ``reg -> CPoly`` or CPoly-valued
        callables taking a dict of generator polynomials.
        """
        names = list(base) + [s[0] for s in steps]
        degrees = degrees or {}
        reg = Registry(names, [degrees.get(n, 1) for n in names])
        g = {n: reg.var(n) for n in names}
        built = []
        for name, alpha, delta in steps:
            a = {reg.index(k): (v(g) if callable(v) else _const(reg, v)) for k, v in (alpha or {}).items()}
            d = {reg.index(k): (v(g) if callable(v) else _const(reg, v)) for k, v in (delta or {}).items()}
            built.append(PoissonStep(reg.index(name), a, d))
        return cls(reg, base, built)

    @property
    def variables(self) -> list:
        return list(range(len(self.registry)))

    def step_index(self, var) -> int:
        var = var if isinstance(var, int) else self.registry.index(var)
        for k, s in enumerate(self.steps):
            if s.var == var:
                return k
        raise KeyError(var)

    def lower_variables(self, k: int) -> list:
        """Variables strictly below step ``k``."""
        return list(range(self.steps[k].var))

    def lower_table(self, k: int) -> BracketTable:
        """Bracket of the subalgebra generated by the variables below step ``k``."""
        return self._table_upto(k)

    def _table_upto(self, k: int) -> BracketTable:
        if k not in self._tables:
            reg = self.registry
            entries = {}
            for step in self.steps[:k]:
                x = reg.var(step.var)
                for g in range(step.var):
                    val = step.alpha_of(reg.var(g)) * x + step.delta_of(reg.var(g))
                    if val:
                        entries[(g, step.var)] = -val
            self._tables[k] = BracketTable(reg, entries)
        return self._tables[k]

    def table(self) -> BracketTable:
        return self._table_upto(len(self.steps))

    def validate(self):
        for k, step in enumerate(self.steps):
            lower = self.lower_table(k)
            lower_vars = self.lower_variables(k)
            w = check_poisson_derivation(lower, step.alpha, lower_vars)
            if w is not None:
                raise InvalidStep(
                    f"alpha of step {self.registry.names[step.var]} is not a Poisson derivation: "
                    + w.describe(self.registry),
                    w,
                )
            w = check_poisson_alpha_derivation(lower, step.alpha, step.delta, lower_vars)
            if w is not None:
                raise InvalidStep(
                    f"delta of step {self.registry.names[step.var]} is not a Poisson alpha-derivation: "
                    + w.describe(self.registry),
                    w,
                )

    def is_graded(self) -> bool:
        return all(d >= 1 for d in self.registry.degrees) and self.table().is_graded()


def _const(reg, v):
    if isinstance(v, CPoly):
        return v
    return reg.const(v)


def tower_to_table(tower: PoissonTower) -> BracketTable:
    table = tower.table()
    w = jacobi_check(table)
    if w is not None:
        raise InvalidStep("tower bracket violates the Jacobi identity: " + w.describe(tower.registry), w)
    return table


def bracket_closed_form(tower: PoissonTower, r: CPoly, p: int, s: CPoly, q: int, step: int = -1) -> CPoly:
    """``{r x^p, s x^q}`` for ``x`` the variable of ``step`` (default: the top one)."""
    k = step % len(tower.steps)
    st = tower.steps[k]
    lower = tower.lower_table(k)
    x = tower.registry.var(st.var)
    for poly in (r, s):
        if any(v >= st.var for v in poly.variables()):
            raise ValueError("closed form needs r, s below the step variable")
    head = lower.bracket(r, s) + r * st.alpha_of(s) * p - st.alpha_of(r) * s * q
    result = head * x ** (p + q)
    if p + q >= 1:
        result = result + (r * st.delta_of(s) * p - st.delta_of(r) * s * q) * x ** (p + q - 1)
    return result
