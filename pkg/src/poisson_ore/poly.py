"""Commutative multivariate polynomials over Q(i) with weighted degrees."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import RegistryMismatch
from .scalar import ONE, GScalar, as_scalar

__all__ = ["Registry", "CPoly", "poly_arith", "poly_partial", "format_term"]


@dataclass(frozen=True)
class Registry:
    """Ordered variable names with their degrees.

    Registration order is the variable order used for every exponent vector.
    """

    names: tuple
    degrees: tuple

    def __init__(self, names: Iterable[str], degrees: Iterable[int] | None = None):
        names = tuple(names)
        degrees = tuple(degrees) if degrees is not None else (1,) * len(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if len(degrees) != len(names):
            raise ValueError("one degree per variable required")
        if any(d < 0 for d in degrees):
            raise ValueError("variable degrees must be non-negative")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "degrees", degrees)

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(name) from None

    def var(self, name_or_index) -> CPoly:
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        exps = [0] * len(self.names)
        exps[i] = 1
        return CPoly(self, {tuple(exps): ONE})

    def gens(self) -> list:
        return [self.var(i) for i in range(len(self.names))]

    def zero(self) -> CPoly:
        return CPoly(self, {})

    def one(self) -> CPoly:
        return self.const(ONE)

    def const(self, c) -> CPoly:
        return CPoly(self, {(0,) * len(self.names): as_scalar(c)})


class CPoly:
    """Sparse map from exponent vectors to nonzero GScalar coefficients."""

    __slots__ = ("registry", "terms", "_hash")

    def __init__(self, registry: Registry, terms: Mapping | None = None):
        self.registry = registry
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    # -- construction helpers ----------------------------------------------

    def _new(self, terms):
        p = CPoly.__new__(CPoly)
        p.registry = self.registry
        p.terms = terms
        p._hash = None
        return p

    def _check(self, other):
        if self.registry != other.registry:
            raise RegistryMismatch(
                f"polynomials over different registries: {self.registry.names} vs {other.registry.names}"
            )

    def _lift(self, other):
        if isinstance(other, CPoly):
            self._check(other)
            return other
        return self.registry.const(other)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s = s + c
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, CPoly):
            c = as_scalar(other)
            if not c:
                return self._new({})
            return self._new({m: v * c for m, v in self.terms.items()})
        self._check(other)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = terms.get(m)
                terms[m] = c1 * c2 if s is None else s + c1 * c2
        return self._new({m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = self.registry.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- calculus and structure ----------------------------------------------

    def partial(self, v: int) -> CPoly:
        terms = {}
        for m, c in self.terms.items():
            e = m[v]
            if e:
                m2 = m[:v] + (e - 1,) + m[v + 1 :]
                terms[m2] = c * e
        return self._new(terms)

    def substitute(self, images: Mapping[int, CPoly], target: Registry | None = None) -> CPoly:
        """Algebra map sending variable ``v`` to ``images[v]``.

        Variables missing from ``images`` are sent to themselves, which then
        requires ``target`` to equal this registry.
        """
        target = target or self.registry
        result = target.zero()
        power_cache = {}
        for m, c in self.terms.items():
            term = target.const(c)
            for v, e in enumerate(m):
                if not e:
                    continue
                key = (v, e)
                if key not in power_cache:
                    img = images[v] if v in images else self.registry.var(v)
                    if img.registry != target:
                        raise RegistryMismatch("substitution image over the wrong registry")
                    power_cache[key] = img ** e
                term = term * power_cache[key]
            result = result + term
        return result

    def coefficient(self, exps) -> GScalar:
        from .scalar import ZERO

        return self.terms.get(tuple(exps), ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def variables(self) -> set:
        return {v for m in self.terms for v, e in enumerate(m) if e}

    def term_degree(self, m) -> int:
        return sum(e * d for e, d in zip(m, self.registry.degrees))

    def degree(self) -> int:
        """Largest weighted degree of a term; -1 for the zero polynomial."""
        return max((self.term_degree(m) for m in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {self.term_degree(m) for m in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mc[0], reverse=True)

    def __eq__(self, other):
        if isinstance(other, CPoly):
            return self.registry == other.registry and self.terms == other.terms
        try:
            other = self.registry.const(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.registry, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"CPoly({self})"

    def __str__(self):
        names = self.registry.names
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                names[v] if e == 1 else f"{names[v]}^{e}" for v, e in enumerate(m) if e
            )
            parts.append(format_term(c, mono))
        return join_terms(parts)


def format_term(c: GScalar, mono: str) -> str:
    """Render ``c*mono``; ``mono == ""`` means the unit monomial."""
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    if c.is_real or not c.re:
        return f"{c}*{mono}"
    return f"({c})*{mono}"


def join_terms(parts) -> str:
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def poly_arith(p: CPoly, q: CPoly, op: str) -> CPoly:
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_partial(p: CPoly, v) -> CPoly:
    i = v if isinstance(v, int) else p.registry.index(v)
    return p.partial(i)
