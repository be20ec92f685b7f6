"""Identity checks on an enveloping algebra: (R1), property P, commutation rules."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from ..sampling import random_env_element, random_poly
from .algebra import EnvAlgebra, hilbert_count

__all__ = [
    "Identity",
    "Report",
    "verify_R1",
    "verify_P",
    "check_commutation_identities",
    "check_associativity",
    "check_hilbert",
    "commutative_count",
    "envelope_suite",
]


@dataclass
class Identity:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    def record(self, label: str, residual) -> None:
        self.checked += 1
        if residual:
            self.failures.append((label, residual))

    @property
    def ok(self) -> bool:
        return not self.failures

    def line(self) -> str:
        if self.ok:
            return f"{self.name}: pass ({self.checked} cases)"
        label, res = self.failures[0]
        return f"{self.name}: FAIL ({len(self.failures)}/{self.checked}) first at {label}: residual {res}"


class Report:
    def __init__(self):
        self.identities = {}

    def __getitem__(self, name) -> Identity:
        if name not in self.identities:
            self.identities[name] = Identity(name)
        return self.identities[name]

    def extend(self, other: Report) -> Report:
        for name, ident in other.identities.items():
            mine = self[name]
            mine.checked += ident.checked
            mine.failures += ident.failures
        return self

    @property
    def ok(self) -> bool:
        return all(i.ok for i in self.identities.values())

    def lines(self) -> list:
        return [i.line() for i in self.identities.values()]


def _label(alg, *polys) -> str:
    return "(" + ", ".join(str(p) for p in polys) + ")"


def verify_R1(alg: EnvAlgebra, pairs) -> Report:
    """The five defining relations on each ``(r, s)``."""
    rep = Report()
    br = alg.tower.table().bracket
    one = alg.registry.one()
    rep["R1 m(1)=1"].record("()", alg.m(one) - alg.one())
    for r, s in pairs:
        lab = _label(alg, r, s)
        mr, ms, hr, hs = alg.m(r), alg.m(s), alg.h(r), alg.h(s)
        rs, b = r * s, br(r, s)
        rep["R1 m(rs)=m(r)m(s)"].record(lab, alg.m(rs) - mr * ms)
        rep["R1 h({r,s})=[h(r),h(s)]"].record(lab, alg.h(b) - (hr * hs - hs * hr))
        rep["R1 h(rs)=m(r)h(s)+m(s)h(r)"].record(lab, alg.h(rs) - (mr * hs + ms * hr))
        rep["R1 m({r,s})=[h(r),m(s)]"].record(lab, alg.m(b) - (hr * ms - ms * hr))
    return rep


def verify_P(alg: EnvAlgebra, monomial_samples, lie_pairs=()) -> Report:
    """(P3)/(P4) on ``(r x^p, s x^q)`` for the top step ``x``, (P2) on pairs.

    ``monomial_samples`` holds tuples ``(r, p, s, q)`` with ``r, s`` below
    the top step; each also contributes a (P2) case.
    """
    rep = Report()
    tower = alg.tower
    br = tower.table().bracket
    x = tower.registry.var(tower.steps[-1].var) if tower.steps else None
    lie = list(lie_pairs)
    for r, p, s, q in monomial_samples:
        a = r * x**p if x is not None else r
        b = s * x**q if x is not None else s
        lab = f"(r={r}, p={p}, s={s}, q={q})"
        ha, hb, ma, mb = alg.h(a), alg.h(b), alg.m(a), alg.m(b)
        rep["P3 m({a,b})=[h(a),m(b)]"].record(lab, alg.m(br(a, b)) - (ha * mb - mb * ha))
        rep["P4 h(ab)=m(a)h(b)+m(b)h(a)"].record(lab, alg.h(a * b) - (ma * hb + mb * ha))
        lie.append((a, b))
    for a, b in lie:
        ha, hb = alg.h(a), alg.h(b)
        rep["P2 h({a,b})=[h(a),h(b)]"].record(_label(alg, a, b), alg.h(br(a, b)) - (ha * hb - hb * ha))
    return rep


def check_commutation_identities(alg: EnvAlgebra, qmax: int = 4, extra_r=()) -> Report:
    """Closed forms for ``y2 m_r`` and ``y1^q h_r`` at every step.

    ``y2 m_r = m_r y2 + m_{a r} y1 + m_{d r}`` and
    ``y1^q h_r = (h_r + q m_{a r}) y1^q + q m_{d r} y1^(q-1)``, checked for
    every lower generator ``r`` (and any extra lower polynomials given).
    """
    rep = Report()
    tower = alg.tower
    reg = tower.registry
    for k, st in enumerate(tower.steps):
        name = reg.names[st.var]
        y1, y2 = alg.M(st.var), alg.H(st.var)
        rs = [reg.var(v) for v in range(st.var)]
        rs += [r for r in extra_r if all(v < st.var for v in r.variables())]
        for r in rs:
            a, d = st.alpha_of(r), st.delta_of(r)
            mr, hr = alg.m(r), alg.h(r)
            lhs = y2 * mr
            rhs = mr * y2 + alg.m(a) * y1 + alg.m(d)
            rep["(2.5) y2*m_r"].record(f"step {name}, r={r}", lhs - rhs)
            for q in range(1, qmax + 1):
                lhs = y1**q * hr
                rhs = (hr + q * alg.m(a)) * y1**q + q * (alg.m(d) * y1 ** (q - 1))
                rep["(2.6) y1^q*h_r"].record(f"step {name}, r={r}, q={q}", lhs - rhs)
    return rep


def check_associativity(alg: EnvAlgebra, triples) -> Report:
    rep = Report()
    for n, (a, b, c) in enumerate(triples):
        rep["associativity"].record(f"triple #{n}", (a * b) * c - a * (b * c))
    return rep


def commutative_count(weights, d: int) -> int:
    """Monomials of weighted degree ``d`` in commuting variables, by enumeration."""
    weights = list(weights)
    count = 0
    bounds = [range(d // w + 1) if w else range(1) for w in weights]
    for exps in itertools.product(*bounds):
        if sum(e * w for e, w in zip(exps, weights)) == d:
            count += 1
    return count


def check_hilbert(alg: EnvAlgebra, dmax: int = 5) -> Report:
    rep = Report()
    for d in range(dmax + 1):
        got = hilbert_count(alg, d)
        want = commutative_count(alg.gen_degrees, d)
        rep["hilbert"].record(f"d={d}: {got} vs {want}", got - want)
    return rep


def sample_pairs(alg: EnvAlgebra, rng: random.Random, n: int, max_degree: int = 3):
    reg = alg.registry
    gens = reg.gens()
    pairs = [(a, b) for a in gens for b in gens]
    pairs += [
        (random_poly(rng, reg, max_degree=max_degree), random_poly(rng, reg, max_degree=max_degree))
        for _ in range(n)
    ]
    return pairs


def sample_monomials(alg: EnvAlgebra, rng: random.Random, pmax: int = 3, max_degree: int = 2, per_pq: int = 1):
    tower = alg.tower
    reg = tower.registry
    lower = list(range(tower.steps[-1].var)) if tower.steps else list(range(len(reg)))
    out = []
    for p in range(pmax + 1):
        for q in range(pmax + 1):
            for _ in range(per_pq):
                r = random_poly(rng, reg, lower, max_degree, max_terms=2)
                s = random_poly(rng, reg, lower, max_degree, max_terms=2)
                out.append((r, p, s, q))
    return out


def sample_triples(alg: EnvAlgebra, rng: random.Random, n: int, max_degree: int = 3):
    return [
        tuple(random_env_element(rng, alg, max_degree=max_degree, max_terms=2) for _ in range(3))
        for _ in range(n)
    ]


def envelope_suite(alg: EnvAlgebra, samples: int = 50, triples: int = 100, seed: int = 0) -> Report:
    """Everything the enveloping-algebra construction promises, on seeded samples."""
    rng = random.Random(seed)
    pairs = sample_pairs(alg, rng, samples)
    rep = Report()
    rep.extend(verify_R1(alg, pairs))
    lower_extra = [random_poly(rng, alg.registry, max_degree=2, max_terms=2) for _ in range(3)]
    if alg.tower.steps:
        rep.extend(verify_P(alg, sample_monomials(alg, rng), pairs))
        rep.extend(check_commutation_identities(alg, 4, lower_extra))
    else:
        rep.extend(verify_P(alg, [], pairs))
    rep.extend(check_associativity(alg, sample_triples(alg, rng, triples)))
    if alg.tower.is_graded():
        rep.extend(check_hilbert(alg, 5))
    return rep
