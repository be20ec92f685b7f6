"""Matrix-valued algebra maps and sigma-derivations on an enveloping algebra.

Maps are given by images of generators and extended to normal monomials by
splitting off the lowest generator: an algebra map ``f`` into ``r x r``
matrices satisfies ``f(g w) = f(g) f(w)`` and a sigma-derivation ``d`` into
column vectors satisfies ``d(g w) = sigma(g) d(w) + d(g) w``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .algebra import EnvAlgebra, EnvElement

__all__ = [
    "MatrixMap",
    "SigmaDerivation",
    "mat2_mul",
    "sigma_matrix_images",
    "eta_vector_images",
    "phi_images",
    "verify_sigma_invertible",
    "PhiWitness",
]


def mat2_mul(a, b):
    r = len(a)
    inner = len(b)
    cols = len(b[0])
    return [[sum((a[i][k] * b[k][j] for k in range(inner)), a[0][0].alg.zero()) for j in range(cols)] for i in range(r)]


class MatrixMap:
    """Algebra map ``A_lower -> M_r(A)`` extended from generator images."""

    def __init__(self, alg: EnvAlgebra, images: Mapping[int, Sequence[Sequence[EnvElement]]], size: int = 2):
        self.alg = alg
        self.size = size
        self.images = {k: [list(row) for row in v] for k, v in images.items()}
        self._cache = {}

    def identity(self):
        z, o = self.alg.zero(), self.alg.one()
        return [[o if i == j else z for j in range(self.size)] for i in range(self.size)]

    def _mono(self, mono: tuple):
        hit = self._cache.get(mono)
        if hit is not None:
            return hit
        j, rest = self.alg._split_lowest(mono)
        if j is None:
            result = self.identity()
        else:
            if j not in self.images:
                raise KeyError(f"map undefined on generator {self.alg.gen_names[j]}")
            result = mat2_mul(self.images[j], self._mono(rest))
        self._cache[mono] = result
        return result

    def __call__(self, a: EnvElement):
        z = self.alg.zero()
        out = [[z for _ in range(self.size)] for _ in range(self.size)]
        for mono, c in a.terms.items():
            img = self._mono(mono)
            out = [[out[i][j] + c * img[i][j] for j in range(self.size)] for i in range(self.size)]
        return out

    def entry(self, i: int, j: int):
        """The scalar-valued map ``a -> f(a)[i][j]`` (0-based)."""
        return lambda a: self(a)[i][j]


class SigmaDerivation:
    """Column-vector map ``d`` with ``d(ab) = sigma(a) d(b) + d(a) b``."""

    def __init__(self, alg: EnvAlgebra, sigma: MatrixMap, images: Mapping[int, Sequence[EnvElement]]):
        self.alg = alg
        self.sigma = sigma
        self.size = sigma.size
        self.images = {k: list(v) for k, v in images.items()}
        self._cache = {}

    def _mono(self, mono: tuple):
        hit = self._cache.get(mono)
        if hit is not None:
            return hit
        j, rest = self.alg._split_lowest(mono)
        if j is None:
            result = [self.alg.zero() for _ in range(self.size)]
        else:
            if j not in self.images:
                raise KeyError(f"derivation undefined on generator {self.alg.gen_names[j]}")
            s = self.sigma.images[j]
            d_rest = self._mono(rest)
            rest_el = self.alg.element({rest: 1})
            result = [
                sum((s[i][k] * d_rest[k] for k in range(self.size)), self.alg.zero())
                + self.images[j][i] * rest_el
                for i in range(self.size)
            ]
        self._cache[mono] = result
        return result

    def __call__(self, a: EnvElement):
        out = [self.alg.zero() for _ in range(self.size)]
        for mono, c in a.terms.items():
            img = self._mono(mono)
            out = [out[i] + c * img[i] for i in range(self.size)]
        return out

    def entry(self, i: int):
        return lambda a: self(a)[i]


def _step_data(alg: EnvAlgebra, step: int):
    tower = alg.tower
    st = tower.steps[step]
    reg = tower.registry
    for v in range(st.var):
        pv = reg.var(v)
        a = st.alpha_of(pv)
        yield v, a, st.delta_of(pv), st.alpha_of(a), st.delta_of(a)


def sigma_matrix_images(alg: EnvAlgebra, step: int):
    """Generator images of the matrix map sigma of the given step.

    ``sigma(m_r) = [[m_r, 0], [m_{a r}, m_r]]`` and
    ``sigma(h_r) = [[h_r + m_{a r}, 0], [h_{a r} + m_{a^2 r}, h_r + m_{a r}]]``.
    """
    z = alg.zero()
    out = {}
    for v, a, _d, aa, _da in _step_data(alg, step):
        mv, hv = alg.M(v), alg.H(v)
        out[alg.m_index(v)] = [[mv, z], [alg.m(a), mv]]
        out[alg.h_index(v)] = [[hv + alg.m(a), z], [alg.h(a) + alg.m(aa), hv + alg.m(a)]]
    return out


def eta_vector_images(alg: EnvAlgebra, step: int):
    """``eta(m_r) = (0, m_{d r})`` and ``eta(h_r) = (m_{d r}, h_{d r} + m_{d a r})``."""
    out = {}
    for v, _a, d, _aa, da in _step_data(alg, step):
        out[alg.m_index(v)] = [alg.zero(), alg.m(d)]
        out[alg.h_index(v)] = [alg.m(d), alg.h(d) + alg.m(da)]
    return out


def phi_images(alg: EnvAlgebra, step: int):
    """Generator images of the inverse candidate phi of sigma.

    ``phi(m_r) = [[m_r, -m_{a r}], [0, m_r]]`` and
    ``phi(h_r) = [[h_r - m_{a r}, -h_{a r} + m_{a^2 r}], [0, h_r - m_{a r}]]``.
    """
    z = alg.zero()
    out = {}
    for v, a, _d, aa, _da in _step_data(alg, step):
        mv, hv = alg.M(v), alg.H(v)
        out[alg.m_index(v)] = [[mv, -alg.m(a)], [z, mv]]
        out[alg.h_index(v)] = [[hv - alg.m(a), -alg.h(a) + alg.m(aa)], [z, hv - alg.m(a)]]
    return out


@dataclass(frozen=True)
class PhiWitness:
    product: str
    generator: str
    entry: tuple
    residual: EnvElement


def verify_sigma_invertible(alg: EnvAlgebra, step: int, sigma: MatrixMap | None = None):
    """Check that phi is a two-sided inverse of sigma on every lower generator.

    Both products use the transposed layout ``S = [[s11, s21], [s12, s22]]``
    and compose entries pointwise: ``(phi S)_ij(g) = sum_k phi_ik(S_kj(g))``
    and ``(S phi)_ij(g) = sum_k S_ik(phi_kj(g))``.  Returns a PhiWitness for
    the first failing entry, or None.
    """
    sigma = sigma or MatrixMap(alg, sigma_matrix_images(alg, step))
    phi = MatrixMap(alg, phi_images(alg, step))

    def s_t(i, j):  # transposed layout
        return lambda a: sigma(a)[j][i]

    def ph(i, j):
        return lambda a: phi(a)[i][j]

    for k in alg.lower_generators(step):
        g = alg.gen(k)
        for label, left, right in (("phi*sigma", ph, s_t), ("sigma*phi", s_t, ph)):
            for i in range(2):
                for j in range(2):
                    val = sum((left(i, l)(right(l, j)(g)) for l in range(2)), alg.zero())
                    expect = g if i == j else alg.zero()
                    if val != expect:
                        return PhiWitness(label, alg.gen_names[k], (i + 1, j + 1), val - expect)
    return None
