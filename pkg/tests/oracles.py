"""Independent oracles: similarity of small Gaussian-integer matrices, and
first-order commutators of the quantum matrix relations via sympy series.

Entries are ``(re, im)`` integer pairs.  Rank comes from brute-force minors,
the characteristic polynomial from Faddeev-LeVerrier, and two matrices are
similar iff they share the characteristic polynomial and, at every
eigenvalue ``mu``, the ranks of ``(A - mu)^k`` for ``k = 1..n``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import isqrt

import sympy

Z0 = (0, 0)
Z1 = (1, 0)


def gadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def gsub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def from_scalar(z) -> tuple:
    re, im = Fraction(z.re), Fraction(z.im)
    if re.denominator != 1 or im.denominator != 1:
        raise ValueError(f"{z} is not a Gaussian integer")
    return (int(re), int(im))


def from_matrix(m) -> list:
    return [[from_scalar(x) for x in row] for row in m.rows]


def matmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = Z0
            for t in range(k):
                if a[i][t] != Z0 and b[t][j] != Z0:
                    s = gadd(s, gmul(a[i][t], b[t][j]))
            row.append(s)
        out.append(row)
    return out


def shift(a, mu):
    """``a - mu*I``."""
    return [[gsub(x, mu) if i == j else x for j, x in enumerate(row)] for i, row in enumerate(a)]


def _sign(perm) -> int:
    s = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


@lru_cache(maxsize=None)
def _signed_perms(n: int) -> tuple:
    return tuple((perm, _sign(perm)) for perm in itertools.permutations(range(n)))


def det(a):
    """Leibniz expansion over all permutations."""
    n = len(a)
    if n == 2:
        return gsub(gmul(a[0][0], a[1][1]), gmul(a[0][1], a[1][0]))
    total = Z0
    for perm, sign in _signed_perms(n):
        term = (sign, 0)
        for i, j in enumerate(perm):
            x = a[i][j]
            if x == Z0:
                term = Z0
                break
            term = gmul(term, x)
        if term != Z0:
            total = gadd(total, term)
    return total


def rank(a) -> int:
    """Size of the largest nonvanishing minor."""
    n = len(a)
    if not any(x != Z0 for row in a for x in row):
        return 0
    for k in range(n, 1, -1):
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(n), k):
                if det([[a[i][j] for j in cols] for i in rows]) != Z0:
                    return k
    return 1


def charpoly(a) -> list:
    """Coefficients ``[1, c_1, ..., c_n]`` of ``det(lambda - a)``."""
    n = len(a)
    coeffs = [Z1]
    m = [[Z0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I ; c_k = -tr(A M_k)/k
        am = matmul(a, m)
        m = [[gadd(x, coeffs[-1]) if i == j else x for j, x in enumerate(row)] for i, row in enumerate(am)]
        am = matmul(a, m)
        tr = Z0
        for i in range(n):
            tr = gadd(tr, am[i][i])
        if tr[0] % k or tr[1] % k:
            raise ArithmeticError("non-integral characteristic polynomial")
        coeffs.append((-tr[0] // k, -tr[1] // k))
    return coeffs


def gaussian_sqrts(s) -> list:
    """All Gaussian integers ``a`` with ``a^2 = s`` (by search)."""
    bound = isqrt(abs(s[0]) + abs(s[1])) + 1
    return [
        (x, y)
        for x in range(-bound, bound + 1)
        for y in range(-bound, bound + 1)
        if (x * x - y * y, 2 * x * y) == s
    ]


def rank_profile(a, mu) -> tuple:
    n = len(a)
    b = shift(a, mu)
    p = b
    out = [rank(p)]
    while len(out) < n and out[-1] and (len(out) < 2 or out[-1] != out[-2]):
        p = matmul(p, b)
        out.append(rank(p))
    return tuple(out)


def similar(a, b, mus, _cache=None) -> bool:
    """``mus`` lists the eigenvalues of ``b``."""
    cache = {} if _cache is None else _cache
    if "cp" not in cache:
        cache["cp"] = charpoly(a)
    if cache["cp"] != charpoly(b):
        return False
    for mu in mus:
        if mu not in cache:
            cache[mu] = rank_profile(a, mu)
        if cache[mu] != rank_profile(b, mu):
            return False
    return True


# candidate normal forms, built directly from their defining entries

DISCRETE4 = [
    [(0, 0), (-1, 0), (0, 1), (0, 0)],
    [(1, 0), (0, 0), (0, 0), (0, -1)],
    [(0, -1), (0, 0), (0, 0), (-1, 0)],
    [(0, 0), (0, 1), (1, 0), (0, 0)],
]


def zero(n):
    return [[Z0] * n for _ in range(n)]


def discrete(n):
    out = zero(n)
    for i in range(4):
        for j in range(4):
            out[n - 4 + i][n - 4 + j] = DISCRETE4[i][j]
    return out


def parametric(n, a):
    out = zero(n)
    out[n - 2][n - 1] = a
    out[n - 1][n - 2] = (-a[0], -a[1])
    return out


def candidates(n, cp):
    """Every listed ``n x n`` normal form with characteristic polynomial ``cp``."""
    out = []
    if all(c == Z0 for c in cp[1:]):
        out.append(("Zero", None, zero(n), [Z0]))
        if n >= 4:
            out.append(("DiscreteNilpotent", None, discrete(n), [Z0]))
    elif all(c == Z0 for k, c in enumerate(cp[1:], start=1) if k != 2):
        for r in gaussian_sqrts(cp[2]):
            ia = gmul((0, 1), r)
            mus = [ia, (-ia[0], -ia[1])] + ([Z0] if n > 2 else [])
            out.append(("Parametric", r, parametric(n, r), mus))
    return out


def oracle_verdict(a):
    """``(tag, roots)`` for the unique listed class similar to ``a``, else ``("none", kind)``."""
    cache = {"cp": charpoly(a)}
    found = [(tag, r) for tag, r, cand, mus in candidates(len(a), cache["cp"]) if similar(a, cand, mus, cache)]
    tags = {t for t, _ in found}
    if len(tags) == 1:
        return found[0][0], [r for _, r in found]
    if not found:
        nilpotent = all(c == Z0 for c in cache["cp"][1:])
        return "none", "nilpotent" if nilpotent else "no-root"
    raise AssertionError(f"similar to several listed classes: {found}")


UPPER4 = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def skew4(entries) -> list:
    """4x4 skew matrix from the six upper entries ``c12 c13 c14 c23 c24 c34``."""
    m = zero(4)
    for (i, j), v in zip(UPPER4, entries):
        m[i][j] = from_scalar(v)
        m[j][i] = from_scalar(-v)
    return m


def disagreement(cls, a):
    """None when the verdict ``cls`` matches the oracle on ``a``, else a message."""
    tag, extra = oracle_verdict(a)
    if cls.tag in ("Zero", "DiscreteNilpotent"):
        ok = tag == cls.tag
    elif cls.tag == "Parametric" and cls.a is not None:
        ok = tag == "Parametric" and from_scalar(cls.a) in extra
    elif cls.tag == "Parametric":
        ok = (tag, extra) == ("none", "no-root")
    elif cls.tag == "ExtraNilpotent":
        ok = (tag, extra) == ("none", "nilpotent")
    else:
        ok = False
    return None if ok else f"classify says {cls.line()}, oracle says {tag} {extra}"


# -- semiclassical limit of the quantum matrix relations -----------------------

HBAR = sympy.Symbol("hbar")


def _sym(z):
    re, im = Fraction(z.re), Fraction(z.im)
    return sympy.Rational(re.numerator, re.denominator) + sympy.I * sympy.Rational(im.numerator, im.denominator)


def hbar_oracle(n, lam, p):
    """First-order commutators from the defining relations, expanded with sympy's exp series.

    Returns ``({(later, earlier): sympy expr}, symbols)``.
    """
    from poisson_ore.scalar import as_scalar

    names = [f"x{i}{j}" for i in range(1, n + 1) for j in range(1, n + 1)]
    syms = {nm: sympy.Symbol(nm) for nm in names}
    X = lambda i, j: syms[f"x{i}{j}"]  # noqa: E731
    e = lambda a: sympy.exp(_sym(as_scalar(a)) * HBAR)  # noqa: E731
    c = (lambda a, b: 0) if p is None else p.c
    out = {}
    cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    for b, (l, m) in enumerate(cells):
        for (i, j) in cells[:b]:
            if l > i and m > j:
                rhs = e(c(l, i)) * e(c(j, m)) * X(i, j) * X(l, m) + (e(lam) - 1) * e(c(l, i)) * X(i, m) * X(l, j)
            elif l > i:
                rhs = e(lam) * e(c(l, i)) * e(c(j, m)) * X(i, j) * X(l, m)
            else:
                rhs = e(c(j, m)) * X(i, j) * X(l, m)
            comm = rhs - X(i, j) * X(l, m)
            assert sympy.simplify(comm.subs(HBAR, 0)) == 0
            out[(f"x{l}{m}", f"x{i}{j}")] = sympy.expand(sympy.diff(comm, HBAR).subs(HBAR, 0))
    return out, [syms[nm] for nm in names]
