"""Normal-form arithmetic in the Poisson enveloping algebra of a tower.

For a tower ``k[base][x_1; a_1, d_1]_P ... [x_s; a_s, d_s]_P`` the enveloping
algebra is generated by ``m[v]`` and ``h[v]`` for every variable ``v``.  The
generators are totally ordered (per variable: ``m`` then ``h``, variables in
registration order) and every element is stored as a combination of ordered
monomials ``g_0^e_0 g_1^e_1 ...`` with scalars and lower generators on the
left.

Each step generator ``g_k`` carries Ore data ``(sigma_k, eta_k)`` on the
subalgebra generated by ``g_0 .. g_{k-1}``:

    g_k * a = sigma_k(a) * g_k + eta_k(a)

For the step variable ``x`` with ``y1 = m[x]`` and ``y2 = h[x]``:

    sigma(y1): m_r -> m_r,                 h_r -> h_r + m_{alpha r}
    eta(y1):   m_r -> 0,                   h_r -> m_{delta r}
    sigma(y2): same as sigma(y1) on lower generators, y1 -> y1
    eta(y2):   m_r -> m_{alpha r} y1 + m_{delta r}
               h_r -> (h_{alpha r} + m_{alpha^2 r}) y1 + h_{delta r} + m_{delta alpha r}
               y1  -> 0

Base generators commute with everything below them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..errors import NotGraded
from ..poly import CPoly, format_term, join_terms
from ..poisson import PoissonTower, apply_derivation
from ..scalar import ONE, as_scalar

__all__ = [
    "GenSym",
    "EnvElement",
    "EnvAlgebra",
    "LayerRules",
    "build_env",
    "env_mul",
    "expand_m",
    "expand_h",
    "expand_h_closed_form",
    "hilbert_count",
]


@dataclass(frozen=True, order=True)
class GenSym:
    kind: str  # "M" or "H"
    var: int


@dataclass(frozen=True)
class LayerRules:
    """Ore data of the two generators adjoined for one tower step.

    Images are keyed by generator index; ``sigma2``/``eta2`` additionally
    carry the entry for ``y1``.
    """

    y1: int
    y2: int
    sigma1: Mapping[int, "EnvElement"]
    eta1: Mapping[int, "EnvElement"]
    sigma2: Mapping[int, "EnvElement"]
    eta2: Mapping[int, "EnvElement"]


def _add_into(acc: dict, terms: Mapping, coef=None):
    for m, c in terms.items():
        if coef is not None:
            c = c * coef
        s = acc.get(m)
        if s is None:
            acc[m] = c
        else:
            s = s + c
            if s:
                acc[m] = s
            else:
                del acc[m]
    return acc


def _merge(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


class EnvElement:
    """Element of an EnvAlgebra in normal form."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: EnvAlgebra, terms: Mapping | None = None):
        self.alg = alg
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    def _wrap(self, terms):
        e = EnvElement.__new__(EnvElement)
        e.alg = self.alg
        e.terms = terms
        return e

    def _lift(self, other):
        if isinstance(other, EnvElement):
            if other.alg is not self.alg:
                raise ValueError("elements of different enveloping algebras")
            return other
        return self.alg.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        return self._wrap(_add_into(dict(self.terms), other.terms))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, EnvElement):
            return self.alg.mul(self, other)
        c = as_scalar(other)
        if not c:
            return self._wrap({})
        return self._wrap({m: v * c for m, v in self.terms.items()})

    def __rmul__(self, other):
        c = as_scalar(other)
        if not c:
            return self._wrap({})
        return self._wrap({m: c * v for m, v in self.terms.items()})

    def __pow__(self, n: int):
        result = self.alg.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, EnvElement):
            return self.alg is other.alg and self.terms == other.terms
        try:
            return self.terms == self.alg.scalar(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        """Terms with the highest generator dominant, largest first."""
        return sorted(self.terms.items(), key=lambda mc: mc[0][::-1], reverse=True)

    def degree(self) -> int:
        degs = self.alg.gen_degrees
        return max((sum(e * d for e, d in zip(m, degs)) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = self.alg.gen_degrees
        return len({sum(e * d for e, d in zip(m, degs)) for m in self.terms}) <= 1

    def max_generator(self) -> int:
        """Index of the highest generator occurring, -1 for scalars."""
        top = -1
        for m in self.terms:
            for k in range(len(m) - 1, top, -1):
                if m[k]:
                    top = k
                    break
        return top

    def __repr__(self):
        return f"EnvElement({self})"

    def __str__(self):
        names = self.alg.gen_names
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(names[k] if e == 1 else f"{names[k]}^{e}" for k, e in enumerate(m) if e)
            parts.append(format_term(c, mono))
        return join_terms(parts)


class EnvAlgebra:
    """Enveloping algebra of a PoissonTower as an iterated Ore extension.

    Immutable once built.  Monomial products and Ore-map images are memoised
    per instance; the memo tables only ever gain entries with deterministic
    values.
    """

    def __init__(self, tower: PoissonTower):
        self.tower = tower
        self.registry = reg = tower.registry
        gens = []
        for v in range(len(reg)):
            gens += [GenSym("M", v), GenSym("H", v)]
        self.gens = tuple(gens)
        self.ngens = len(gens)
        self.gen_index = {g: k for k, g in enumerate(gens)}
        self.gen_names = tuple(
            f"{'m' if g.kind == 'M' else 'h'}[{reg.names[g.var]}]" for g in gens
        )
        self.gen_degrees = tuple(reg.degrees[g.var] for g in gens)
        self._unit = (0,) * self.ngens
        self._base_gens = {self.gen_index[GenSym(kind, v)] for v in tower.base for kind in "MH"}
        self._sigma_images: dict = {}
        self._eta_images: dict = {}
        self._mono_cache: dict = {}
        self._sigma_cache: dict = {}
        self._eta_cache: dict = {}
        self._h_cache: dict = {}
        self.layers: list = []
        for step in tower.steps:
            self._install_step(step)

    # -- generators and constructors -------------------------------------------

    def m_index(self, v: int) -> int:
        return 2 * v

    def h_index(self, v: int) -> int:
        return 2 * v + 1

    def _mono(self, k: int, e: int = 1) -> tuple:
        m = [0] * self.ngens
        m[k] = e
        return tuple(m)

    def gen(self, k: int) -> EnvElement:
        return EnvElement(self, {self._mono(k): ONE})

    def one(self) -> EnvElement:
        return EnvElement(self, {self._unit: ONE})

    def zero(self) -> EnvElement:
        return EnvElement(self, {})

    def scalar(self, c) -> EnvElement:
        return EnvElement(self, {self._unit: as_scalar(c)})

    def element(self, terms) -> EnvElement:
        return EnvElement(self, {m: as_scalar(c) for m, c in terms.items()})

    def _var(self, v) -> int:
        return v if isinstance(v, int) else self.registry.index(v)

    def M(self, v) -> EnvElement:
        return self.gen(self.m_index(self._var(v)))

    def H(self, v) -> EnvElement:
        return self.gen(self.h_index(self._var(v)))

    def is_base_generator(self, k: int) -> bool:
        return k in self._base_gens

    def ore_images(self, k: int):
        """``(sigma_images, eta_images)`` of step generator ``k`` as term dicts."""
        return self._sigma_images[k], self._eta_images[k]

    # -- multiplication -----------------------------------------------------------

    def mul(self, a: EnvElement, b: EnvElement) -> EnvElement:
        if a.alg is not self or b.alg is not self:
            raise ValueError("elements belong to a different enveloping algebra")
        return EnvElement(self, self._mul_terms(a.terms, b.terms))

    def _mul_terms(self, a: Mapping, b: Mapping) -> dict:
        acc = {}
        for u, cu in a.items():
            for w, cw in b.items():
                _add_into(acc, self._mono_mul(u, w), cu * cw)
        return acc

    def _mono_mul(self, u: tuple, w: tuple) -> Mapping:
        key = (u, w)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        top = -1
        for k in range(self.ngens - 1, -1, -1):
            if u[k]:
                top = k
                break
        if top < 0:
            result = {w: ONE}
        else:
            low = -1
            for k in range(self.ngens):
                if w[k]:
                    low = k
                    break
            if low < 0 or top <= low:
                result = {_merge(u, w): ONE}
            else:
                # u = u' * g_top, so u*w = u' * (g_top * w)
                rest = list(u)
                rest[top] -= 1
                rest = tuple(rest)
                gw = self._gen_mul(top, w)
                if rest == self._unit:
                    result = gw
                else:
                    result = {}
                    for v, c in gw.items():
                        _add_into(result, self._mono_mul(rest, v), c)
        self._mono_cache[key] = result
        return result

    def _gen_mul(self, k: int, w: tuple) -> Mapping:
        """``g_k * w`` for a normal monomial ``w``."""
        if k in self._base_gens or not any(w[:k]):
            m = list(w)
            m[k] += 1
            return {tuple(m): ONE}
        low = w[:k] + (0,) * (self.ngens - k)
        high = (0,) * k + w[k:]
        high_plus = list(high)
        high_plus[k] += 1
        high_plus = tuple(high_plus)
        out = {}
        for m, c in self._sigma_of(k, low).items():
            _add_into(out, {_merge(m, high_plus): c})
        for m, c in self._eta_of(k, low).items():
            _add_into(out, {_merge(m, high): c})
        return out

    def _split_lowest(self, mono: tuple):
        for j in range(self.ngens):
            if mono[j]:
                rest = list(mono)
                rest[j] -= 1
                return j, tuple(rest)
        return None, mono

    def _sigma_of(self, k: int, mono: tuple) -> Mapping:
        cache = self._sigma_cache.setdefault(k, {})
        hit = cache.get(mono)
        if hit is not None:
            return hit
        j, rest = self._split_lowest(mono)
        if j is None:
            result = {self._unit: ONE}
        else:
            img = self._sigma_images[k][j]
            result = img if rest == self._unit else self._mul_terms(img, self._sigma_of(k, rest))
        cache[mono] = result
        return result

    def _eta_of(self, k: int, mono: tuple) -> Mapping:
        cache = self._eta_cache.setdefault(k, {})
        hit = cache.get(mono)
        if hit is not None:
            return hit
        j, rest = self._split_lowest(mono)
        if j is None:
            result = {}
        else:
            # eta(g rest) = sigma(g) eta(rest) + eta(g) rest
            result = self._mul_terms(self._sigma_images[k][j], self._eta_of(k, rest))
            _add_into(result, self._mul_terms(self._eta_images[k][j], {rest: ONE}))
        cache[mono] = result
        return result

    # -- the maps m and h -------------------------------------------------------------

    def _m_terms(self, p: CPoly) -> dict:
        out = {}
        for exps, c in p.terms.items():
            m = [0] * self.ngens
            for v, e in enumerate(exps):
                m[2 * v] = e
            out[tuple(m)] = c
        return out

    def _h_mono(self, exps: tuple) -> Mapping:
        hit = self._h_cache.get(exps)
        if hit is not None:
            return hit
        v = next((i for i, e in enumerate(exps) if e), None)
        if v is None:
            result = {}
        else:
            rest = list(exps)
            rest[v] -= 1
            rest = tuple(rest)
            if not any(rest):
                result = {self._mono(self.h_index(v)): ONE}
            else:
                # h_{v*rest} = m_v h_rest + m_rest h_v
                mv = {self._mono(self.m_index(v)): ONE}
                m_rest = self._m_of_exps(rest)
                result = self._mul_terms(mv, self._h_mono(rest))
                _add_into(result, self._mul_terms(m_rest, {self._mono(self.h_index(v)): ONE}))
        self._h_cache[exps] = result
        return result

    def _m_of_exps(self, exps: tuple) -> dict:
        m = [0] * self.ngens
        for v, e in enumerate(exps):
            m[2 * v] = e
        return {tuple(m): ONE}

    def _h_terms(self, p: CPoly) -> dict:
        out = {}
        for exps, c in p.terms.items():
            _add_into(out, self._h_mono(exps), c)
        return out

    def m(self, p) -> EnvElement:
        return EnvElement(self, self._m_terms(self._poly(p)))

    def h(self, p) -> EnvElement:
        return EnvElement(self, self._h_terms(self._poly(p)))

    def _poly(self, p) -> CPoly:
        if isinstance(p, CPoly):
            if p.registry != self.registry:
                from ..errors import RegistryMismatch

                raise RegistryMismatch("polynomial over a different registry")
            return p
        if isinstance(p, str):
            return self.registry.var(p)
        return self.registry.const(p)

    # -- construction of the Ore data ------------------------------------------------

    def _install_step(self, step):
        reg = self.registry
        x = step.var
        y1, y2 = self.m_index(x), self.h_index(x)
        s1, e1, s2, e2 = {}, {}, {}, {}
        y1_mono = self._mono(y1)

        def times_y1(terms):
            return {_merge(m, y1_mono): c for m, c in terms.items()}

        for v in range(x):
            pv = reg.var(v)
            a = apply_derivation(step.alpha, pv)
            d = apply_derivation(step.delta, pv)
            aa = apply_derivation(step.alpha, a)
            da = apply_derivation(step.delta, a)
            mv = {self._mono(self.m_index(v)): ONE}
            hv = {self._mono(self.h_index(v)): ONE}
            m_a, h_a = self._m_terms(a), self._h_terms(a)
            m_d, h_d = self._m_terms(d), self._h_terms(d)
            m_aa, m_da = self._m_terms(aa), self._m_terms(da)

            sig_h = _add_into(dict(hv), m_a)
            s1[self.m_index(v)] = mv
            s1[self.h_index(v)] = sig_h
            e1[self.m_index(v)] = {}
            e1[self.h_index(v)] = m_d

            s2[self.m_index(v)] = mv
            s2[self.h_index(v)] = sig_h
            e2[self.m_index(v)] = _add_into(times_y1(m_a), m_d)
            eta2_h = times_y1(_add_into(dict(h_a), m_aa))
            _add_into(eta2_h, h_d)
            _add_into(eta2_h, m_da)
            e2[self.h_index(v)] = eta2_h
        s2[y1] = {y1_mono: ONE}
        e2[y1] = {}
        self._sigma_images[y1], self._eta_images[y1] = s1, e1
        self._sigma_images[y2], self._eta_images[y2] = s2, e2

        wrap = lambda d: {k: EnvElement(self, t) for k, t in d.items()}  # noqa: E731
        self.layers.append(LayerRules(y1, y2, wrap(s1), wrap(e1), wrap(s2), wrap(e2)))

    def layer(self, step) -> LayerRules:
        k = step if isinstance(step, int) else self.tower.step_index(step)
        return self.layers[k]

    def lower_generators(self, k: int) -> list:
        """Generator indices below the generators of step ``k``."""
        return list(range(self.layers[k].y1))


def build_env(tower: PoissonTower) -> EnvAlgebra:
    return EnvAlgebra(tower)


def env_mul(alg: EnvAlgebra, a: EnvElement, b: EnvElement) -> EnvElement:
    return alg.mul(a, b)


def expand_m(alg: EnvAlgebra, p) -> EnvElement:
    return alg.m(p)


def expand_h(alg: EnvAlgebra, p) -> EnvElement:
    return alg.h(p)


def expand_h_closed_form(alg: EnvAlgebra, r: CPoly, i: int, step: int = -1) -> EnvElement:
    """``h(r x^i)`` written directly in ``y1 = m[x]``, ``y2 = h[x]``.

    ``i m_r y1^(i-1) y2 + (h_r + i m_{alpha r}) y1^i + i m_{delta r} y1^(i-1)``
    for ``r`` below the step variable ``x``.
    """
    tower = alg.tower
    k = step % len(tower.steps)
    st = tower.steps[k]
    x = st.var
    y1, y2 = alg.M(x), alg.H(x)
    if i == 0:
        return alg.h(r)
    a, d = st.alpha_of(r), st.delta_of(r)
    return (
        i * (alg.m(r) * y1 ** (i - 1) * y2)
        + (alg.h(r) + i * alg.m(a)) * y1**i
        + i * (alg.m(d) * y1 ** (i - 1))
    )


def hilbert_count(alg: EnvAlgebra, d: int) -> int:
    """Number of normal monomials of weighted degree ``d``."""
    if not alg.tower.is_graded():
        raise NotGraded("hilbert counts need positive variable degrees and a graded bracket")
    counts = [1] + [0] * d
    for w in alg.gen_degrees:
        for total in range(w, d + 1):
            counts[total] += counts[total - w]
    return counts[d]
