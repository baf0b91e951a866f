"""Exact sparse linear algebra over the rationals.

Rows are stored as ``{column: value}`` dictionaries with no explicit zeros.
Elimination runs on primitive integer rows (fraction-free) and only the
final reduced form is converted back to :class:`fractions.Fraction`, which
keeps coefficient growth in check on the large, very sparse systems that
show up in the quotient and bar computations.

Pivoting is deterministic: the reduced row-echelon form of a matrix is
unique, so the output never depends on row order or on how elimination
was scheduled.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Sequence, Tuple

Rational = Fraction
SparseVector = Dict[int, Fraction]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@dataclass(frozen=True)
class SparseMatrix:
    """Row-sparse rational matrix."""

    rows: Tuple[SparseVector, ...]
    ncols: int

    def __init__(self, rows: Iterable, ncols: int):
        clean = []
        for row in rows:
            if isinstance(row, dict):
                items = row.items()
            else:
                if len(row) != ncols:
                    raise ValueError("row length %d != ncols %d" % (len(row), ncols))
                items = enumerate(row)
            r = {}
            for c, v in items:
                if not 0 <= c < ncols:
                    raise ValueError("column index %d out of range" % c)
                if v:
                    r[c] = Fraction(v)
            clean.append(r)
        object.__setattr__(self, "rows", tuple(clean))
        object.__setattr__(self, "ncols", ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def to_dense(self) -> List[List[Fraction]]:
        out = []
        for r in self.rows:
            d = [Fraction(0)] * self.ncols
            for c, v in r.items():
                d[c] = v
            out.append(d)
        return out

    def apply(self, v: SparseVector) -> List[Fraction]:
        """Matrix-vector product ``m @ v``."""
        return [sum((x * v.get(c, 0) for c, x in r.items()), Fraction(0)) for r in self.rows]


def _as_int_row(row) -> Dict[int, int]:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = _lcm(den, v.denominator)
    out = {}
    for c, v in row.items():
        if v:
            out[c] = int(v * den) if den != 1 else int(v)
    return _primitive(out)


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _eliminate(row: Dict[int, int], piv: Dict[int, int], c: int) -> Dict[int, int]:
    """Return ``row`` with column ``c`` cleared by the pivot row ``piv``."""
    a = row[c]
    b = piv[c]
    g = gcd(a, b)
    ma, mp = b // g, a // g
    if ma < 0:
        ma, mp = -ma, -mp
    if ma != 1:
        new = {k: v * ma for k, v in row.items()}
    else:
        new = dict(row)
    for k, v in piv.items():
        nv = new.get(k, 0) - mp * v
        if nv:
            new[k] = nv
        else:
            new.pop(k, None)
    return _primitive(new) if new else new


def _echelon(rows: Iterable[dict]) -> Dict[int, Dict[int, int]]:
    """Integer echelon form: leading column -> primitive row (leading entry > 0)."""
    pivots: Dict[int, Dict[int, int]] = {}
    for r in rows:
        row = _as_int_row(r)
        while row:
            c = min(row)
            p = pivots.get(c)
            if p is None:
                if row[c] < 0:
                    row = {k: -v for k, v in row.items()}
                pivots[c] = row
                break
            row = _eliminate(row, p, c)
    return pivots


def rank(m: SparseMatrix) -> int:
    return len(_echelon(m.rows))


def rref(m: SparseMatrix) -> Tuple[SparseMatrix, List[int]]:
    """Reduced row-echelon form and pivot columns.

    Zero rows are dropped.  Pivot rows are returned in increasing pivot order
    with leading coefficient 1.

    >>> r, piv = rref(SparseMatrix([[2, 4], [1, 2]], 2))
    >>> r.to_dense(), piv
    ([[Fraction(1, 1), Fraction(2, 1)]], [0])
    """
    pivots = _echelon(m.rows)
    cols = sorted(pivots)
    pivset = set(cols)
    # back substitution, highest pivot first so used rows are already reduced
    for c in reversed(cols):
        row = pivots[c]
        hits = sorted(k for k in row if k != c and k in pivset)
        for k in hits:
            if k in row:
                row = _eliminate(row, pivots[k], k)
        pivots[c] = row
    out = []
    for c in cols:
        row = pivots[c]
        lead = row[c]
        out.append({k: Fraction(v, lead) for k, v in row.items()})
    return SparseMatrix(out, m.ncols), cols


def nullspace(m: SparseMatrix) -> List[SparseVector]:
    """Canonical kernel basis, one vector per free column of the rref.

    >>> nullspace(SparseMatrix([[1, 2], [2, 4]], 2))
    [{1: Fraction(1, 1), 0: Fraction(-2, 1)}]
    """
    r, piv = rref(m)
    pivset = set(piv)
    # column -> list of (pivot column, entry)
    by_col: Dict[int, List[Tuple[int, Fraction]]] = {}
    for pc, row in zip(piv, r.rows):
        for k, v in row.items():
            if k != pc:
                by_col.setdefault(k, []).append((pc, v))
    basis = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = {f: Fraction(1)}
        for pc, x in by_col.get(f, ()):
            v[pc] = -x
        basis.append(v)
    return basis


def row_space(vectors: Iterable[dict], ncols: int) -> List[SparseVector]:
    """Canonical (rref) basis of the span of ``vectors``."""
    return list(rref(SparseMatrix(list(vectors), ncols))[0].rows)


def inverse(m: SparseMatrix) -> SparseMatrix:
    """Inverse of a square invertible matrix via Gauss-Jordan on ``[m | I]``."""
    n = m.ncols
    if m.nrows != n:
        raise ValueError("matrix is not square")
    aug = []
    for i, row in enumerate(m.rows):
        r = dict(row)
        r[n + i] = Fraction(1)
        aug.append(r)
    red, piv = rref(SparseMatrix(aug, 2 * n))
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ValueError("matrix is singular")
    return SparseMatrix([{k - n: v for k, v in row.items() if k >= n} for row in red.rows[:n]], n)


def vec_mat(v: SparseVector, m: SparseMatrix) -> SparseVector:
    """Row vector times matrix."""
    out: Dict[int, Fraction] = {}
    for i, x in v.items():
        for c, y in m.rows[i].items():
            out[c] = out.get(c, 0) + x * y
    return {c: y for c, y in out.items() if y}


@dataclass(frozen=True)
class SpanComparison:
    relation: str
    rank_a: int
    rank_b: int
    rank_union: int


def _to_sparse(vectors: Sequence, ncols: int | None) -> Tuple[List[dict], int | None]:
    rows = []
    for v in vectors:
        if isinstance(v, dict):
            rows.append(v)
        else:
            if ncols is None:
                ncols = len(v)
            elif len(v) != ncols:
                raise ValueError("vector length mismatch")
            rows.append({i: x for i, x in enumerate(v) if x})
    return rows, ncols


def span_compare(a: Sequence, b: Sequence, ncols: int | None = None) -> SpanComparison:
    """Compare two spans: ``equal``, ``a_subset_b``, ``b_subset_a`` or ``incomparable``.

    Vectors are dense sequences (lengths must agree) or sparse dicts.
    """
    ra_rows, ncols = _to_sparse(a, ncols)
    rb_rows, ncols = _to_sparse(b, ncols)
    if ncols is None:
        ncols = 1 + max([max(r) for r in ra_rows + rb_rows if r] or [0])
    ra = len(_echelon(ra_rows))
    rb = len(_echelon(rb_rows))
    ru = len(_echelon(ra_rows + rb_rows))
    if ru == ra == rb:
        rel = "equal"
    elif ru == rb:
        rel = "a_subset_b"
    elif ru == ra:
        rel = "b_subset_a"
    else:
        rel = "incomparable"
    return SpanComparison(rel, ra, rb, ru)


def intersection_dim(a: Sequence[dict], b: Sequence[dict]) -> int:
    ra = len(_echelon(a))
    rb = len(_echelon(b))
    return ra + rb - len(_echelon(list(a) + list(b)))


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return "%d/%d" % (x.numerator, x.denominator)


def parse_frac(s) -> Fraction:
    return Fraction(s)
