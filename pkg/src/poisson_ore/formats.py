"""Line-oriented text formats for towers, bracket tables, matrices and quantum parameters.

Every format allows blank lines and ``#`` comments.  Errors are ParseError
instances carrying the file name and line number.

Tower file::

    base t u [deg=1]
    step x [deg=1]
      alpha t = t
      delta t = 1

Table file::

    vars x1 x2 [deg=1]
    bracket x1 x2 = x1^2 + x2^2

Matrix file: a line ``n``, then ``n`` lines of ``n`` comma-separated scalars.

Quantum parameter file: ``lambda = <scalar>`` and ``p i j = <scalar>``
lines (``i < j``; the rest follows by skew-symmetry).
"""

from __future__ import annotations

import re
from pathlib import Path

from .errors import ParseError
from .linalg import Matrix, SkewMatrix
from .parsing import eval_poly, parse_expr, parse_scalar
from .poisson import BracketTable, PoissonStep, PoissonTower
from .poly import Registry

__all__ = [
    "read_tower",
    "read_table",
    "read_bracket_source",
    "read_matrix",
    "read_skew_matrix",
    "read_quantum_params",
    "parse_tower",
    "parse_table",
    "parse_matrix",
    "parse_skew_matrix",
    "parse_quantum_params",
    "write_tower",
    "write_table",
]

_NAME = r"[A-Za-z_][A-Za-z_0-9]*"
_DEG = re.compile(r"^deg=(\d+)$")


def _lines(text: str):
    """``(lineno, stripped body, column offset of body)`` for non-blank lines."""
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        stripped = body.lstrip()
        if stripped:
            yield n, stripped, len(body) - len(stripped)


def _err(msg: str, line: int, source, column=None) -> ParseError:
    return ParseError(msg, line, column, source)


def _names_and_degree(words, line, source):
    names, deg = [], 1
    for w in words:
        m = _DEG.match(w)
        if m:
            deg = int(m.group(1))
        elif re.fullmatch(_NAME, w) and w != "i":
            names.append(w)
        else:
            raise _err(f"bad variable name {w!r}", line, source)
    return names, deg


def _expr_at(src_line: str, start: int, line: int, offset: int, source):
    """Parse the commutative expression ``src_line[start:]`` with file positions."""
    try:
        return parse_expr(src_line[start:], source=source)
    except ParseError as exc:
        raise exc.relocate(line, offset + start, source) from None


def _poly_at(tree, registry, line, offset, start, source, allowed=None):
    try:
        return eval_poly(tree, registry, source, allowed)
    except ParseError as exc:
        raise exc.relocate(line, offset + start, source) from None


def parse_tower(text: str, source: str | None = None) -> PoissonTower:
    base, base_deg = [], {}
    steps = []  # [name, degree, line, [(kind, var, tree, line, offset, start)]]
    seen = set()
    for n, body, off in _lines(text):
        words = body.split()
        head = words[0]
        if head == "base":
            if steps:
                raise _err("base variables must come before the first step", n, source)
            names, deg = _names_and_degree(words[1:], n, source)
            if not names:
                raise _err("base line names no variables", n, source)
            for v in names:
                if v in seen:
                    raise _err(f"variable {v!r} declared twice", n, source)
                seen.add(v)
                base.append(v)
                base_deg[v] = deg
        elif head == "step":
            names, deg = _names_and_degree(words[1:], n, source)
            if len(names) != 1:
                raise _err("step line must name exactly one variable", n, source)
            if names[0] in seen:
                raise _err(f"variable {names[0]!r} declared twice", n, source)
            seen.add(names[0])
            steps.append([names[0], deg, n, []])
        elif head in ("alpha", "delta"):
            m = re.match(rf"^(alpha|delta)\s+({_NAME})\s*=\s*", body)
            if m is None:
                raise _err(f"expected '{head} <var> = <expr>'", n, source)
            if not steps:
                raise _err(f"{head} line outside a step", n, source)
            tree = _expr_at(body, m.end(), n, off, source)
            steps[-1][3].append((head, m.group(2), tree, n, off, m.end()))
        else:
            raise _err(f"unknown directive {head!r}", n, source)
    if not base and not steps:
        raise _err("empty tower file", 1, source)
    names = base + [s[0] for s in steps]
    degrees = [base_deg[v] for v in base] + [s[1] for s in steps]
    reg = Registry(names, degrees)
    built = []
    for name, _deg, _line, entries in steps:
        x = reg.index(name)
        lower = set(range(x))
        maps = {"alpha": {}, "delta": {}}
        for kind, var, tree, n, off, start in entries:
            if var not in reg.names or reg.index(var) >= x:
                raise _err(f"{kind} of step {name} given on {var!r}, which is not an earlier variable", n, source)
            k = reg.index(var)
            if k in maps[kind]:
                raise _err(f"{kind} {var} given twice in step {name}", n, source)
            maps[kind][k] = _poly_at(tree, reg, n, off, start, source, lower)
        built.append(PoissonStep(x, maps["alpha"], maps["delta"]))
    return PoissonTower(reg, [reg.index(v) for v in base], built, validate=False)


def parse_table(text: str, source: str | None = None) -> BracketTable:
    reg = None
    entries = {}
    for n, body, off in _lines(text):
        words = body.split()
        if words[0] == "vars":
            if reg is not None:
                raise _err("duplicate vars line", n, source)
            names, deg = _names_and_degree(words[1:], n, source)
            if len(set(names)) != len(names) or not names:
                raise _err("vars line must list distinct variables", n, source)
            reg = Registry(names, [deg] * len(names))
        elif words[0] == "bracket":
            if reg is None:
                raise _err("bracket line before the vars header", n, source)
            m = re.match(rf"^bracket\s+({_NAME})\s+({_NAME})\s*=\s*", body)
            if m is None:
                raise _err("expected 'bracket <var> <var> = <expr>'", n, source)
            a, b = m.group(1), m.group(2)
            for v in (a, b):
                if v not in reg.names:
                    raise _err(f"unknown variable {v!r}", n, source)
            i, j = reg.index(a), reg.index(b)
            if i == j:
                raise _err("bracket of a variable with itself is always 0", n, source)
            tree = _expr_at(body, m.end(), n, off, source)
            val = _poly_at(tree, reg, n, off, m.end(), source)
            key = (min(i, j), max(i, j))
            if key in entries:
                raise _err(f"bracket {a} {b} given twice", n, source)
            entries[key] = val if i < j else -val
        else:
            raise _err(f"unknown directive {words[0]!r}", n, source)
    if reg is None:
        raise _err("missing vars header", 1, source)
    graded = all(
        v.is_homogeneous(reg.degrees[i] + reg.degrees[j]) for (i, j), v in entries.items() if v
    )
    return BracketTable(reg, entries, graded=graded)


def _scalar_at(text: str, line: int, offset: int, source):
    try:
        return parse_scalar(text, source)
    except ParseError as exc:
        raise exc.relocate(line, offset, source) from None


def parse_matrix(text: str, source: str | None = None) -> Matrix:
    lines = list(_lines(text))
    if not lines:
        raise _err("empty matrix file", 1, source)
    n0, first, _off = lines[0]
    if not first.isdigit() or int(first) < 1:
        raise _err(f"first line must be the dimension, found {first!r}", n0, source)
    n = int(first)
    if len(lines) - 1 != n:
        raise _err(f"expected {n} rows, found {len(lines) - 1}", lines[-1][0], source)
    rows = []
    for ln, body, off in lines[1:]:
        cells = body.split(",")
        if len(cells) != n:
            raise _err(f"expected {n} entries, found {len(cells)}", ln, source)
        row, col = [], off
        for cell in cells:
            lead = len(cell) - len(cell.lstrip())
            row.append(_scalar_at(cell.strip(), ln, col + lead, source))
            col += len(cell) + 1
        rows.append(row)
    return Matrix(rows)


def parse_skew_matrix(text: str, source: str | None = None) -> SkewMatrix:
    m = parse_matrix(text, source)
    try:
        return SkewMatrix(m.rows)
    except ValueError as exc:
        raise _err(str(exc), 1, source) from None


def parse_quantum_params(text: str, n: int, source: str | None = None):
    """``(lambda or None, SkewMatrix p)``."""
    lam = None
    upper = {}
    for ln, body, off in _lines(text):
        m = re.match(r"^lambda\s*=\s*", body)
        if m:
            if lam is not None:
                raise _err("lambda given twice", ln, source)
            lam = _scalar_at(body[m.end():], ln, off + m.end(), source)
            continue
        m = re.match(r"^p\s+(\d+)\s+(\d+)\s*=\s*", body)
        if m is None:
            raise _err("expected 'lambda = <scalar>' or 'p <i> <j> = <scalar>'", ln, source)
        i, j = int(m.group(1)), int(m.group(2))
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise _err(f"p index ({i},{j}) out of range for n={n}", ln, source)
        v = _scalar_at(body[m.end():], ln, off + m.end(), source)
        key, val = ((i, j), v) if i < j else ((j, i), -v)
        if key in upper:
            raise _err(f"p {i} {j} given twice", ln, source)
        upper[key] = val
    return lam, SkewMatrix.from_upper(n, upper)


def _read(path) -> tuple:
    p = Path(path)
    try:
        return p.read_text(encoding="utf-8"), str(path)
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", 1, None, str(path)) from None


def read_tower(path) -> PoissonTower:
    return parse_tower(*_read(path))


def read_table(path) -> BracketTable:
    return parse_table(*_read(path))


def read_bracket_source(path):
    """A tower or a table file, told apart by the first directive."""
    text, src = _read(path)
    first = next(_lines(text), (1, "", 0))[1].split()
    if first and first[0] == "vars":
        return parse_table(text, src)
    return parse_tower(text, src)


def read_matrix(path) -> Matrix:
    return parse_matrix(*_read(path))


def read_skew_matrix(path) -> SkewMatrix:
    return parse_skew_matrix(*_read(path))


def read_quantum_params(path, n: int):
    text, src = _read(path)
    return parse_quantum_params(text, n, src)


def write_tower(tower: PoissonTower) -> str:
    reg = tower.registry
    out = []
    by_deg = {}
    for v in tower.base:
        by_deg.setdefault(reg.degrees[v], []).append(reg.names[v])
    for deg, names in by_deg.items():
        out.append("base " + " ".join(names) + ("" if deg == 1 else f" deg={deg}"))
    for st in tower.steps:
        deg = reg.degrees[st.var]
        out.append(f"step {reg.names[st.var]}" + ("" if deg == 1 else f" deg={deg}"))
        for kind, images in (("alpha", st.alpha), ("delta", st.delta)):
            for v in sorted(images):
                if images[v]:
                    out.append(f"  {kind} {reg.names[v]} = {images[v]}")
    return "\n".join(out) + "\n"


def write_table(table: BracketTable) -> str:
    reg = table.registry
    degs = set(reg.degrees)
    head = "vars " + " ".join(reg.names)
    if degs != {1} and len(degs) == 1:
        head += f" deg={degs.pop()}"
    return "\n".join([head] + table.lines()) + "\n"

