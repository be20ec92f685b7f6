"""Right double Ore extension data and the axioms (D1)-(D3).

A DEData packages ``{P, sigma, eta, tau}`` for the two generators
``y1 = m_x``, ``y2 = h_x`` adjoined by one tower step.  All identities are
evaluated pointwise on test elements of the lower algebra.

Composition convention for (D3): ``s_ab s_cd`` is the map
``a -> s_ab(s_cd(a))`` (the right factor is applied first), and a product
such as ``s22 s11 t1`` means ``s22(s11(a)) * t1`` while ``t1 s11`` means
``t1 * s11(a)``: maps are composed first, then tau multiplies on the side
where it is written.  ``s10 = eta1`` and ``s20 = eta2``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace

from .envelope.algebra import EnvAlgebra, EnvElement, LayerRules
from .envelope.maps import (
    MatrixMap,
    SigmaDerivation,
    eta_vector_images,
    sigma_matrix_images,
    verify_sigma_invertible,
)
from .envelope.verify import Report
from .errors import InvalidStep, NotIterated
from .sampling import random_env_element
from .scalar import ONE, ZERO, GScalar

__all__ = [
    "DEData",
    "de_from_step",
    "default_testset",
    "check_D1",
    "check_D2",
    "check_D3",
    "de_to_iterated",
    "corrupt",
    "de_suite",
]


@dataclass(frozen=True)
class DEData:
    alg: EnvAlgebra
    step: int
    sigma: MatrixMap
    eta: SigmaDerivation
    p12: GScalar = ONE
    p11: GScalar = ZERO
    tau: tuple = (None, None, None)

    @property
    def y1(self) -> EnvElement:
        return self.alg.gen(self.alg.layers[self.step].y1)

    @property
    def y2(self) -> EnvElement:
        return self.alg.gen(self.alg.layers[self.step].y2)

    def lower_generators(self) -> list:
        return self.alg.lower_generators(self.step)

    def taus(self):
        z = self.alg.zero()
        return tuple(z if t is None else t for t in self.tau)

    def s(self, i: int, j: int):
        """Entry map ``s_ij`` (1-based); ``j = 0`` gives ``eta_i``."""
        if j == 0:
            return self.eta.entry(i - 1)
        return self.sigma.entry(i - 1, j - 1)


def _resolve_step(alg: EnvAlgebra, step) -> int:
    if isinstance(step, int):
        k = step if step >= 0 else len(alg.layers) + step
        if not 0 <= k < len(alg.layers):
            raise InvalidStep(f"no step {step} in this tower")
        return k
    return alg.tower.step_index(step)


def de_from_step(alg: EnvAlgebra, step=-1) -> DEData:
    k = _resolve_step(alg, step)
    sigma = MatrixMap(alg, sigma_matrix_images(alg, k))
    eta = SigmaDerivation(alg, sigma, eta_vector_images(alg, k))
    return DEData(alg, k, sigma, eta)


def corrupt(data: DEData, which: str) -> DEData:
    """Copy of ``data`` with one component zeroed on every generator.

    ``which`` is ``"sigma21"`` or ``"eta1"``.
    """
    alg = data.alg
    z = alg.zero()
    if which == "sigma21":
        images = {k: [list(r) for r in v] for k, v in data.sigma.images.items()}
        for v in images.values():
            v[1][0] = z
        sigma = MatrixMap(alg, images)
        eta = SigmaDerivation(alg, sigma, data.eta.images)
    elif which == "eta1":
        sigma = data.sigma
        images = {k: [z, v[1]] for k, v in data.eta.images.items()}
        eta = SigmaDerivation(alg, sigma, images)
    else:
        raise ValueError(f"unknown corruption {which!r}")
    return replace(data, sigma=sigma, eta=eta)


def default_testset(data: DEData, extra: int = 20, seed: int = 0, max_degree: int = 2) -> list:
    """All lower generators plus ``extra`` seeded random lower elements."""
    alg = data.alg
    gens = data.lower_generators()
    rng = random.Random(seed)
    out = [alg.gen(k) for k in gens]
    out += [random_env_element(rng, alg, gens, max_degree, max_terms=3) for _ in range(extra)]
    return out


def check_D1(data: DEData, samples) -> Report:
    """sigma multiplicative, eta a sigma-derivation, and the defining commutation."""
    alg = data.alg
    rep = Report()
    samples = [alg.one()] + list(samples)
    for a in samples:
        for b in samples[:8] if len(samples) > 8 else samples:
            lab = f"(a={a}, b={b})"
            ab = a * b
            sa, sb, sab = data.sigma(a), data.sigma(b), data.sigma(ab)
            prod = [[sa[i][0] * sb[0][j] + sa[i][1] * sb[1][j] for j in range(2)] for i in range(2)]
            for i in range(2):
                for j in range(2):
                    rep["D1 sigma(ab)=sigma(a)sigma(b)"].record(f"{lab} entry {i + 1}{j + 1}", sab[i][j] - prod[i][j])
            ea, eb, eab = data.eta(a), data.eta(b), data.eta(ab)
            for i in range(2):
                rhs = sa[i][0] * eb[0] + sa[i][1] * eb[1] + ea[i] * b
                rep["D1 eta(ab)=sigma(a)eta(b)+eta(a)b"].record(f"{lab} entry {i + 1}", eab[i] - rhs)
    y = (data.y1, data.y2)
    for a in samples:
        sa, ea = data.sigma(a), data.eta(a)
        for i in range(2):
            rhs = sa[i][0] * y[0] + sa[i][1] * y[1] + ea[i]
            rep["D1 y*a=sigma(a)y+eta(a)"].record(f"(a={a}) row {i + 1}", y[i] * a - rhs)
    return rep


def check_D2(data: DEData) -> Report:
    y1, y2 = data.y1, data.y2
    t0, t1, t2 = data.taus()
    rhs = data.p12 * (y1 * y2) + data.p11 * (y1 * y1) + t1 * y1 + t2 * y2 + t0
    rep = Report()
    rep["D2 y2y1=p12y1y2+p11y1^2+t1y1+t2y2+t0"].record("(y1, y2)", y2 * y1 - rhs)
    return rep


def _d3_sides(data: DEData, a: EnvElement):
    s = data.s
    p11, p12 = data.p11, data.p12
    t0, t1, t2 = data.taus()

    def c(i, j, k, l):  # s_ij after s_kl
        return s(i, j)(s(k, l)(a))

    conds = []
    # 1
    lhs = c(2, 1, 1, 1) + p11 * c(2, 2, 1, 1)
    rhs = p11 * c(1, 1, 1, 1) + p11 * p11 * c(1, 2, 1, 1) + p12 * c(1, 1, 2, 1) + p11 * p12 * c(1, 2, 2, 1)
    conds.append((lhs, rhs))
    # 2
    lhs = c(2, 1, 1, 2) + p12 * c(2, 2, 1, 1)
    rhs = p11 * c(1, 1, 1, 2) + p11 * p12 * c(1, 2, 1, 1) + p12 * c(1, 1, 2, 2) + p12 * p12 * c(1, 2, 2, 1)
    conds.append((lhs, rhs))
    # 3
    lhs = c(2, 2, 1, 2)
    rhs = p11 * c(1, 2, 1, 2) + p12 * c(1, 2, 2, 2)
    conds.append((lhs, rhs))
    # 4
    lhs = c(2, 0, 1, 1) + c(2, 1, 1, 0) + c(2, 2, 1, 1) * t1
    rhs = (
        p11 * (c(1, 0, 1, 1) + c(1, 1, 1, 0) + t1 * c(1, 2, 1, 1))
        + p12 * (c(1, 0, 2, 1) + c(1, 1, 2, 0) + t1 * c(1, 2, 2, 1))
        + t1 * s(1, 1)(a)
        + t2 * s(2, 1)(a)
    )
    conds.append((lhs, rhs))
    # 5
    lhs = c(2, 0, 1, 2) + c(2, 2, 1, 0) + c(2, 2, 1, 1) * t2
    rhs = (
        p11 * (c(1, 0, 1, 2) + c(1, 2, 1, 0) + t2 * c(1, 2, 1, 1))
        + p12 * (c(1, 0, 2, 2) + c(1, 2, 2, 0) + t2 * c(1, 2, 2, 1))
        + t1 * s(1, 2)(a)
        + t2 * s(2, 2)(a)
    )
    conds.append((lhs, rhs))
    # 6
    lhs = c(2, 0, 1, 0) + c(2, 2, 1, 1) * t0
    rhs = (
        p11 * (c(1, 0, 1, 0) + t0 * c(1, 2, 1, 1))
        + p12 * (c(1, 0, 2, 0) + t0 * c(1, 2, 2, 1))
        + t1 * s(1, 0)(a)
        + t2 * s(2, 0)(a)
        + t0 * a
    )
    conds.append((lhs, rhs))
    return conds


def check_D3(data: DEData, testset=None) -> Report:
    """The six compatibility conditions on each test element; residual is LHS - RHS."""
    testset = default_testset(data) if testset is None else testset
    rep = Report()
    for n in range(1, 7):
        rep[f"D3 condition {n}"]
    for a in testset:
        for n, (lhs, rhs) in enumerate(_d3_sides(data, a), start=1):
            rep[f"D3 condition {n}"].record(f"a={a}", lhs - rhs)
    return rep


def de_to_iterated(data: DEData) -> LayerRules:
    """Ore data of ``A[y1; s11, eta1][y2; s22', eta2']`` for the specialised instance."""
    alg = data.alg
    gens = data.lower_generators()
    if data.p11:
        raise NotIterated("p11 must vanish")
    if data.p12 != 1 or any(t for t in data.taus()):
        raise NotIterated("only y2 y1 = y1 y2 is supported")
    for k in gens:
        if data.sigma(alg.gen(k))[0][1]:
            raise NotIterated(f"sigma12 does not vanish on {alg.gen_names[k]}")
    w = verify_sigma_invertible(alg, data.step, data.sigma)
    if w is not None:
        raise NotIterated(
            f"sigma is not inverted by phi: {w.product} entry {w.entry} at {w.generator}, residual {w.residual}"
        )
    layer = alg.layers[data.step]
    y1 = data.y1
    s1, e1, s2, e2 = {}, {}, {}, {}
    for k in gens:
        g = alg.gen(k)
        sg, eg = data.sigma(g), data.eta(g)
        s1[k] = sg[0][0]
        e1[k] = eg[0]
        s2[k] = sg[1][1]
        e2[k] = sg[1][0] * y1 + eg[1]
    s2[layer.y1] = y1
    e2[layer.y1] = alg.zero()
    return LayerRules(layer.y1, layer.y2, s1, e1, s2, e2)


def de_suite(alg: EnvAlgebra, step=-1, extra: int = 20, seed: int = 0, data: DEData | None = None) -> Report:
    """Invertibility of sigma, (D1), (D2) and (D3) for one step."""
    data = data or de_from_step(alg, step)
    testset = default_testset(data, extra, seed)
    rep = Report()
    w = verify_sigma_invertible(alg, data.step, data.sigma)
    inv = rep["sigma invertible (phi)"]
    for _ in data.lower_generators():
        inv.checked += 1
    if w is not None:
        inv.failures.append((f"{w.product} entry {w.entry} at {w.generator}", w.residual))
    rep.extend(check_D1(data, testset))
    rep.extend(check_D2(data))
    rep.extend(check_D3(data, testset))
    return rep
