import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from poisson_ore.envelope import (
    build_env,
    env_mul,
    expand_h,
    expand_h_closed_form,
    expand_m,
    hilbert_count,
)
from poisson_ore.envelope.maps import phi_images, sigma_matrix_images, verify_sigma_invertible
from poisson_ore.envelope.verify import (
    check_associativity,
    check_commutation_identities,
    check_hilbert,
    commutative_count,
    envelope_suite,
    verify_P,
    verify_R1,
)
from poisson_ore.errors import NotGraded
from poisson_ore.linalg import Matrix, mat_rank
from poisson_ore.poisson import PoissonTower
from poisson_ore.quantum import quantum_matrix_tower
from poisson_ore.rank2 import a_param_tower
from poisson_ore.sampling import random_env_element, random_poly

seeds = st.integers(0, 10**6)

T1 = PoissonTower.build(["t"], [("x", {"t": lambda g: g["t"]}, {"t": 1})])
A1 = build_env(T1)
A2 = build_env(quantum_matrix_tower(2, 2))
A3 = build_env(a_param_tower(4, 1))
ALGS = {"T1": A1, "T2": A2, "T3": A3}


def rewrite_normal_form(alg, word):
    """Normal form of a generator word by naive adjacent-pair rewriting.

    Uses only the stored generator images: ``g_k g_j -> sigma_k(g_j) g_k + eta_k(g_j)``
    for ``j < k``, and plain swaps among base generators.
    """
    todo = {tuple(word): alg.scalar(1).terms[(0,) * alg.ngens]}
    done = {}
    while todo:
        w, c = todo.popitem()
        pos = next((i for i in range(len(w) - 1) if w[i] > w[i + 1]), None)
        if pos is None:
            mono = [0] * alg.ngens
            for g in w:
                mono[g] += 1
            mono = tuple(mono)
            done[mono] = done.get(mono, 0) + c
            continue
        k, j = w[pos], w[pos + 1]
        head, tail = w[:pos], w[pos + 2 :]
        if alg.is_base_generator(k):
            replacements = [((j, k), 1)]
        else:
            sig, eta = alg.ore_images(k)
            replacements = [(_word(m) + (k,), v) for m, v in sig[j].items()]
            replacements += [(_word(m), v) for m, v in eta[j].items()]
        for mid, v in replacements:
            key = head + mid + tail
            todo[key] = todo.get(key, 0) + c * v
            if not todo[key]:
                del todo[key]
    return alg.element({m: c for m, c in done.items() if c})


def _word(mono):
    return tuple(g for g, e in enumerate(mono) for _ in range(e))


@pytest.mark.parametrize("name", ALGS)
@given(seeds)
def test_multiplication_matches_naive_rewriting(name, seed):
    alg = ALGS[name]
    rng = random.Random(seed)
    word = [rng.randrange(alg.ngens) for _ in range(rng.randint(2, 4))]
    prod = alg.one()
    for g in word:
        prod = prod * alg.gen(g)
    assert prod == rewrite_normal_form(alg, word)


@pytest.mark.parametrize("name", ALGS)
@given(seeds)
def test_associativity_and_unit(name, seed):
    alg = ALGS[name]
    rng = random.Random(seed)
    a, b, c = (random_env_element(rng, alg, max_degree=3, max_terms=2) for _ in range(3))
    assert env_mul(alg, env_mul(alg, a, b), c) == env_mul(alg, a, env_mul(alg, b, c))
    assert a * alg.one() == a == alg.one() * a


@pytest.mark.parametrize("name", ALGS)
@given(seeds)
def test_expand_m_is_multiplicative_and_h_is_leibniz(name, seed):
    alg = ALGS[name]
    reg = alg.registry
    rng = random.Random(seed)
    p, q = random_poly(rng, reg, max_degree=2), random_poly(rng, reg, max_degree=2)
    assert expand_m(alg, p * q) == expand_m(alg, p) * expand_m(alg, q)
    assert expand_h(alg, p * q) == alg.m(p) * alg.h(q) + alg.m(q) * alg.h(p)


@pytest.mark.parametrize("name", ALGS)
@given(seeds, st.integers(0, 4))
def test_expand_h_closed_form(name, seed, i):
    alg = ALGS[name]
    tower = alg.tower
    rng = random.Random(seed)
    for k, st_ in enumerate(tower.steps):
        r = random_poly(rng, alg.registry, tower.lower_variables(k), 2, 2)
        x = alg.registry.var(st_.var)
        assert expand_h(alg, r * x**i) == expand_h_closed_form(alg, r, i, k)


@pytest.mark.parametrize("name", ALGS)
@given(seeds)
def test_y2_filtration(name, seed):
    alg = ALGS[name]
    tops = [layer.y2 for layer in alg.layers]
    rng = random.Random(seed)

    def y2deg(e):
        return max((sum(m[k] for k in tops) for m in e.terms), default=0)

    a, b = (random_env_element(rng, alg, max_degree=3, max_terms=2) for _ in range(2))
    assert y2deg(a * b) <= y2deg(a) + y2deg(b)


def test_generator_counts():
    base_only = build_env(PoissonTower.build(["t"], []))
    assert base_only.ngens == 2 and not base_only.layers
    m_t, h_t = base_only.M("t"), base_only.H("t")
    assert h_t * m_t == m_t * h_t
    assert A1.ngens == 4 and A2.ngens == 8
    assert A1.gen_names == ("m[t]", "h[t]", "m[x]", "h[x]")


def test_running_tower_products():
    mt, ht, mx, hx = (A1.gen(k) for k in range(4))
    assert str(hx * mt) == "m[t]*h[x] + m[t]*m[x] + 1"
    assert mx * ht == (ht + mt) * mx + 1
    assert mx**2 * ht == (ht + 2 * mt) * mx**2 + 2 * mx
    assert hx * mx == mx * hx


def test_running_tower_expansions():
    t, x = A1.registry.gens()
    mt, ht, mx, hx = (A1.gen(k) for k in range(4))
    assert expand_m(A1, t * x) == mt * mx
    assert expand_h(A1, x**2) == 2 * (mx * hx)
    assert expand_h(A1, t * x) == mt * hx + (ht + mt) * mx + 1
    assert expand_h(A1, A1.registry.const(7)) == 0


def test_running_tower_ore_data():
    layer = A1.layers[0]
    mt = A1.gen(0)
    assert layer.sigma2[0] == mt  # sigma_22(m_t)
    assert sigma_matrix_images(A1, 0)[0][1][0] == mt  # sigma_21(m_t)
    assert layer.eta2[0] == mt * A1.gen(2) + 1  # sigma_21(m_t) y1 + eta_2(m_t)
    phi = phi_images(A1, 0)[0]
    assert phi == [[mt, -mt], [A1.zero(), mt]]


@pytest.mark.parametrize("name", ALGS)
def test_sigma_invertible_on_every_step(name):
    alg = ALGS[name]
    for k in range(len(alg.layers)):
        assert verify_sigma_invertible(alg, k) is None


def test_R1_example():
    t, x = A1.registry.gens()
    mt, ht, mx = A1.gen(0), A1.gen(1), A1.gen(2)
    assert A1.m(A1.tower.table().bracket(t, x)) == -(mt * mx) - 1 == ht * mx - mx * ht
    rep = verify_R1(A1, [(t, x), (x, t), (t * x, x**2)])
    assert rep.ok and len(rep.lines()) == 5


def test_P_examples():
    t, x = A1.registry.gens()
    one = A1.registry.one()
    hx, mt = A1.H("x"), A1.M("t")
    assert hx * mt - mt * hx == A1.m(t * x + 1)
    assert A1.h(x) * A1.m(x) - A1.m(x) * A1.h(x) == 0
    rep = verify_P(A1, [(t, 0, one, 1), (one, 1, t, 0), (t, 2, t * t, 3)])
    assert rep.ok


def test_report_records_failures():
    rep = check_associativity(A1, [(A1.one(), A1.one(), A1.one())])
    assert rep.ok and rep.lines() == ["associativity: pass (1 cases)"]
    ident = rep["associativity"]
    ident.record("bogus", A1.one())
    assert not rep.ok and rep.lines()[0].startswith("associativity: FAIL (1/2) first at bogus")


def test_commutation_identities_all_fixtures():
    for alg in ALGS.values():
        assert check_commutation_identities(alg, 4).ok


def test_hilbert_examples():
    assert hilbert_count(A3, 0) == 1
    assert hilbert_count(A3, 1) == 8
    assert hilbert_count(A3, 2) == comb(9, 2)
    small = build_env(PoissonTower.build(["t"], [("x", {"t": lambda g: g["t"]}, {})]))
    assert hilbert_count(small, 2) == 10
    with pytest.raises(NotGraded):
        hilbert_count(A1, 2)
    assert check_hilbert(A2, 5).ok


def test_commutative_count_against_binomials():
    for n in range(1, 6):
        for d in range(6):
            assert commutative_count([1] * n, d) == comb(n + d - 1, d)
    assert commutative_count([1, 2], 4) == 3


@pytest.mark.parametrize("name, dmax", [("T2", 2), ("T3", 3)])
def test_words_span_exactly_the_normal_monomials(name, dmax):
    # every length-d word reduces into degree d, and together they span hilbert_count(d) dimensions
    alg = ALGS[name]
    for d in range(1, dmax + 1):
        monos, rows = {}, []
        words = [[]]
        for _ in range(d):
            words = [w + [g] for w in words for g in range(alg.ngens)]
        for w in words:
            e = alg.one()
            for g in w:
                e = e * alg.gen(g)
            assert all(sum(m) == d for m in e.terms)
            rows.append(e.terms)
            for m in e.terms:
                monos.setdefault(m, len(monos))
        mat = Matrix([[row.get(m, 0) for m in monos] for row in rows])
        assert mat_rank(mat) == hilbert_count(alg, d)


def test_suite_passes_on_fixtures():
    for alg in ALGS.values():
        rep = envelope_suite(alg, samples=10, triples=10, seed=3)
        assert rep.ok, rep.lines()


def test_output_is_deterministic():
    a = envelope_suite(A2, samples=5, triples=5, seed=11).lines()
    b = envelope_suite(build_env(quantum_matrix_tower(2, 2)), samples=5, triples=5, seed=11).lines()
    assert a == b
