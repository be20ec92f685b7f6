"""Dense exact matrices over Q(i): products, traces and ranks."""

from __future__ import annotations

from math import lcm
from typing import Sequence

from .errors import DimMismatch, ZeroDivisor
from .scalar import ONE, ZERO, GScalar, as_scalar

__all__ = [
    "Matrix",
    "SkewMatrix",
    "mat_mul",
    "mat_trace",
    "mat_rank",
    "mat_inverse",
    "identity",
    "diagonal",
]


class Matrix:
    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(as_scalar(x) for x in row) for row in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimMismatch("ragged matrix rows")
        self.rows = rows

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    @property
    def n(self) -> int:
        r, c = self.shape
        if r != c:
            raise DimMismatch(f"matrix is {r}x{c}, not square")
        return r

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return mat_mul(self, other)
        c = as_scalar(other)
        return Matrix([[x * c for x in row] for row in self.rows])

    __rmul__ = __mul__

    def __add__(self, other):
        if self.shape != other.shape:
            raise DimMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix([[-x for x in row] for row in self.rows])

    def __sub__(self, other):
        return self + (-other)

    def transpose(self) -> Matrix:
        return Matrix(list(zip(*self.rows)))

    T = property(transpose)

    def is_zero(self) -> bool:
        return not any(x for row in self.rows for x in row)

    def __repr__(self):
        return f"{type(self).__name__}({[[str(x) for x in r] for r in self.rows]})"

    def to_text(self) -> str:
        lines = [str(len(self.rows))]
        lines += [", ".join(str(x) for x in row) for row in self.rows]
        return "\n".join(lines) + "\n"


class SkewMatrix(Matrix):
    """Square matrix with ``M[i][j] == -M[j][i]``."""

    __slots__ = ()

    def __init__(self, rows):
        super().__init__(rows)
        n = self.n
        for i in range(n):
            for j in range(i, n):
                if self.rows[i][j] != -self.rows[j][i]:
                    raise ValueError(f"matrix is not skew-symmetric at ({i + 1},{j + 1})")

    @classmethod
    def _trusted(cls, rows) -> SkewMatrix:
        obj = object.__new__(cls)
        obj.rows = tuple(tuple(r) for r in rows)
        return obj

    @classmethod
    def from_upper(cls, n: int, entries) -> SkewMatrix:
        """Build from ``{(i, j): c}`` with 1-based ``i < j``."""
        rows = [[ZERO] * n for _ in range(n)]
        for (i, j), c in entries.items():
            if not 1 <= i < j <= n:
                raise ValueError(f"({i},{j}) is not an upper-triangular position")
            c = as_scalar(c)
            rows[i - 1][j - 1] = c
            rows[j - 1][i - 1] = -c
        return cls._trusted(rows)

    def c(self, i: int, j: int) -> GScalar:
        """1-based entry accessor matching the c_ij notation."""
        return self.rows[i - 1][j - 1]


def identity(n: int) -> Matrix:
    return Matrix([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])


def diagonal(entries) -> Matrix:
    n = len(entries)
    return Matrix([[as_scalar(entries[i]) if i == j else ZERO for j in range(n)] for i in range(n)])


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    (ra, ca), (rb, cb) = a.shape, b.shape
    if ca != rb:
        raise DimMismatch(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    cols = list(zip(*b.rows))
    out = []
    for row in a.rows:
        out_row = []
        for col in cols:
            s = ZERO
            for x, y in zip(row, col):
                if x and y:
                    s = s + x * y
            out_row.append(s)
        out.append(out_row)
    return Matrix(out)


def mat_trace(m: Matrix) -> GScalar:
    n = m.n
    s = ZERO
    for i in range(n):
        s = s + m.rows[i][i]
    return s


def mat_rank(m: Matrix) -> int:
    """Exact rank by fraction-free elimination over the Gaussian integers."""
    if not m.rows:
        return 0
    rows = []
    for row in m.rows:
        scale = lcm(*(x.re.denominator for x in row), *(x.im.denominator for x in row))
        rows.append(
            [
                (x.re.numerator * (scale // x.re.denominator), x.im.numerator * (scale // x.im.denominator))
                for x in row
            ]
        )
    return _gaussian_int_rank(rows)


def _gaussian_int_rank(rows) -> int:
    nrows, ncols = len(rows), len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, nrows):
            if rows[r][col] != (0, 0):
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pa, pb = rows[rank][col]
        prow = rows[rank]
        for r in range(rank + 1, nrows):
            qa, qb = rows[r][col]
            if qa == 0 and qb == 0:
                continue
            row = rows[r]
            # row <- P*row - Q*prow
            new = []
            for (xa, xb), (ya, yb) in zip(row, prow):
                na = pa * xa - pb * xb - (qa * ya - qb * yb)
                nb = pa * xb + pb * xa - (qa * yb + qb * ya)
                new.append((na, nb))
            rows[r] = new
        rank += 1
        if rank == nrows:
            break
    return rank


def mat_inverse(m: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises ZeroDivisor for a singular matrix."""
    n = m.n
    if m.shape != (n, n):
        raise DimMismatch("only square matrices are invertible")
    a = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m.rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            raise ZeroDivisor("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv = a[col][col].inverse()
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            f = a[r][col]
            if r != col and f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return Matrix([row[n:] for row in a])
