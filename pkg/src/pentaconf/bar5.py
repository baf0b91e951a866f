"""Integrable words on the moduli space of five points.

Letters are the five logarithmic 1-forms in coordinates ``(z, w)``::

    e21 = dlog w, e23 = dlog(w - z), e24 = dlog(w - 1), e31 = dlog z, e34 = dlog(z - 1)

A tensor word is integrable when, at every pair of adjacent positions, the
wedge product of the two letters vanishes in ``H^2``.  ``H^2`` is the
exterior square modulo the Arnold relations of the points ``0, w, z, 1``
(with ``dlog`` of a difference of two fixed points read as 0), which gives
four independent relations.

Integrable elements are handled concretely as vectors in the free tensor
space.  The decompositions ``dec2`` and ``dec3`` are deconcatenation followed
by letterwise projections to the fibre and base algebras; ``j2``, ``j3`` and
``i3`` are obtained by inverting ``dec`` on the integrable basis.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Tuple

from . import cache
from .confluence import (
    FiltrationLevel,
    ONE_TO_Z,
    TensorDecomposition,
    basis_words,
    ist_basis,
)
from .exactalg import SparseMatrix, frac_str, inverse, nullspace, rank, rref, span_compare
from .ncseries import A, A_Z, Alphabet, HomSpec, NcPoly, _add_into, apply_hom_terms, shuffle_terms, shuffle_words

BAR = Alphabet("B5", ("e21", "e23", "e24", "e31", "e34"), "abcde")


def _bar(text: str) -> NcPoly:
    return NcPoly.parse(BAR, text)


# named combinations used by the fibration coordinates
XI = {
    "xi1": _bar("e21"),
    "xi11": _bar("-e24"),
    "xi2": _bar("-e31"),
    "xi22": _bar("e31 - e34"),
    "xi12": _bar("e31 - e23"),
}


def _wedge_key(x: str, y: str):
    return (x, y, 1) if x < y else (y, x, -1)


def h2_relations() -> List[Dict[Tuple[str, str], int]]:
    """Relations in the exterior square, from Arnold's relation over all point triples.

    Points: 1 -> 0, 2 -> w, 3 -> z, 4 -> 1 (5 is at infinity and contributes
    nothing).  ``dlog(p_a - p_b)`` is the bar letter ``e_ab`` (either order),
    and vanishes when both points are fixed.
    """
    letter = {(1, 2): "a", (2, 3): "b", (2, 4): "c", (1, 3): "d", (3, 4): "e"}

    def form(i, j):
        return letter.get((min(i, j), max(i, j)))

    rels = []
    for i, j, k in combinations((1, 2, 3, 4), 3):
        acc: dict = {}
        for a, b in ((form(i, j), form(j, k)), (form(j, k), form(k, i)), (form(k, i), form(i, j))):
            if a is None or b is None or a == b:
                continue
            x, y, s = _wedge_key(a, b)
            acc[(x, y)] = acc.get((x, y), 0) + s
        acc = {k: v for k, v in acc.items() if v}
        if acc:
            rels.append(acc)
    return rels


_PAIRS = list(combinations(BAR.codes, 2))


@lru_cache(maxsize=None)
def _h2_functionals() -> Tuple[Dict[Tuple[str, str], Fraction], ...]:
    rels = h2_relations()
    m = SparseMatrix([{_PAIRS.index(p): v for p, v in r.items()} for r in rels], len(_PAIRS))
    if rank(m) != 4:
        raise RuntimeError("expected four independent relations in H^2, got %d" % rank(m))
    return tuple({_PAIRS[i]: v for i, v in f.items()} for f in nullspace(m))


def _integrability_rows(d: int) -> List[Dict[int, Fraction]]:
    idx = {w: i for i, w in enumerate(BAR.words(d))}
    rows = []
    for j in range(d - 1):
        for x in BAR.words(j):
            for y in BAR.words(d - j - 2):
                for f in _h2_functionals():
                    row: dict = {}
                    for (p, q), v in f.items():
                        _add_into(row, idx[x + p + q + y], v)
                        _add_into(row, idx[x + q + p + y], -v)
                    rows.append(row)
    return rows


def _ending_rows(d: int) -> List[Dict[int, Fraction]]:
    """No term ends in xi1 or xi2: per prefix, coeff(e21) = 0 and coeff(e31)+coeff(e34)+coeff(e23) = 0."""
    idx = {w: i for i, w in enumerate(BAR.words(d))}
    rows = []
    for p in BAR.words(d - 1):
        rows.append({idx[p + "a"]: Fraction(1)})
        rows.append({idx[p + "d"]: Fraction(1), idx[p + "e"]: Fraction(1), idx[p + "b"]: Fraction(1)})
    return rows


def _encode(vecs) -> list:
    return [[[c, frac_str(v)] for c, v in sorted(r.items())] for r in vecs]


def _decode(rows) -> Tuple[Dict[int, Fraction], ...]:
    return tuple({c: Fraction(v) for c, v in r} for r in rows)


@lru_cache(maxsize=None)
def _integrable_vectors(d: int) -> Tuple[Dict[int, Fraction], ...]:
    if d <= 1:
        return tuple({i: Fraction(1)} for i in range(5 ** d))
    raw = cache.load_or_build("bar5", d, lambda: _encode(nullspace(SparseMatrix(_integrability_rows(d), 5 ** d))))
    return _decode(raw)


def _to_poly(d: int, v: Dict[int, Fraction]) -> NcPoly:
    words = BAR.words(d)
    return NcPoly(BAR, {words[i]: c for i, c in v.items()})


def integrable_basis(d: int) -> List[NcPoly]:
    """Canonical basis (one vector per free word) of integrable elements of degree ``d``."""
    return [_to_poly(d, v) for v in _integrable_vectors(d)]


def is_integrable(b: NcPoly) -> bool:
    for d in {len(w) for w in b.terms}:
        if d < 2:
            continue
        idx = {w: i for i, w in enumerate(BAR.words(d))}
        vec = {idx[w]: c for w, c in b.terms.items() if len(w) == d}
        for row in _integrability_rows(d):
            if sum((x * vec.get(c, 0) for c, x in row.items()), Fraction(0)):
                return False
    return True


@lru_cache(maxsize=None)
def b1_basis(d: int) -> Tuple[NcPoly, ...]:
    """Integrable elements of degree ``d`` with no term ending in ``xi1`` or ``xi2``."""
    if d == 0:
        return (NcPoly.one(BAR),)
    rows = _ending_rows(d) + (_integrability_rows(d) if d >= 2 else [])
    return tuple(_to_poly(d, v) for v in nullspace(SparseMatrix(rows, 5 ** d)))


# ---------------------------------------------------------------------------
# letter projections


_PROJ = {
    # dec2: fibre (A_z) on the prefix, base (A) on the suffix
    "r2": HomSpec.build("hom", BAR, A_Z, {"e21": "e0", "e23": "ez", "e24": "e1", "e31": 0, "e34": 0}),
    "pr2_of_dec2": HomSpec.build("hom", BAR, A_Z, {"e21": "e0", "e23": "ez", "e24": "e1", "e31": 0, "e34": 0}),
    "pr3_of_dec2": HomSpec.build("hom", BAR, A, {"e21": 0, "e23": "-e0", "e24": 0, "e31": "-e0", "e34": "-e0 + e1"}),
    # dec3: the A_w factor (written over A_z letters) on the prefix, A on the suffix
    "r3": HomSpec.build("hom", BAR, A_Z, {"e21": 0, "e23": "-e0 + ez", "e24": 0, "e31": "-e0", "e34": "-e0 + e1"}),
    "pr3_of_dec3": HomSpec.build("hom", BAR, A_Z, {"e21": 0, "e23": "-e0 + ez", "e24": 0, "e31": "-e0", "e34": "-e0 + e1"}),
    "pr2_of_dec3": HomSpec.build("hom", BAR, A, {"e21": "e0", "e23": 0, "e24": "e1", "e31": 0, "e34": 0}),
}


def letter_projection(kind: str, u: NcPoly) -> NcPoly:
    if kind not in _PROJ:
        raise ValueError("unknown projection %r" % kind)
    h = _PROJ[kind]
    return NcPoly(h.target, apply_hom_terms(h, u.terms))


@lru_cache(maxsize=None)
def _proj_word(kind: str, w: str) -> Tuple[Tuple[str, Fraction], ...]:
    return tuple(apply_hom_terms(_PROJ[kind], {w: Fraction(1)}).items())


_DEC = {2: ("pr2_of_dec2", "pr3_of_dec2"), 3: ("pr3_of_dec3", "pr2_of_dec3")}


def _dec_terms(which: int, terms) -> Dict[Tuple[str, str], Fraction]:
    left, right = _DEC[which]
    acc: dict = {}
    for w, c in terms.items():
        for i in range(len(w) + 1):
            lp = _proj_word(left, w[:i])
            if not lp:
                continue
            rp = _proj_word(right, w[i:])
            for x, a in lp:
                for y, b in rp:
                    _add_into(acc, (x, y), c * a * b)
    return acc


def _dec(which: int, b: NcPoly, check: bool) -> TensorDecomposition:
    if b.alphabet is not BAR:
        raise ValueError("expected a bar element")
    if check and not is_integrable(b):
        raise ValueError("input is not integrable")
    items = sorted(_dec_terms(which, b.terms).items(), key=lambda t: (len(t[0][0]), t[0]))
    return TensorDecomposition(A_Z, tuple(items), A)


def dec2(b: NcPoly, check: bool = True) -> TensorDecomposition:
    """``(pr2 ⊗ pr3) o deconcatenation``: fibre word (over A_z letters) ⊗ base word (over A)."""
    return _dec(2, b, check)


def dec3(b: NcPoly, check: bool = True) -> TensorDecomposition:
    return _dec(3, b, check)


def tensor_shuffle(x: TensorDecomposition, y: TensorDecomposition) -> Dict[Tuple[str, str], Fraction]:
    acc: dict = {}
    for (l1, r1), c in x.terms:
        for (l2, r2), d in y.terms:
            for lw, m in shuffle_words(l1, l2):
                for rw, n in shuffle_words(r1, r2):
                    _add_into(acc, (lw, rw), c * d * m * n)
    return acc


# ---------------------------------------------------------------------------
# sections j2, j3, i3


def _tensor_words(d: int) -> List[Tuple[str, str]]:
    return [(x, y) for i in range(d + 1) for x in A_Z.words(i) for y in A.words(d - i)]


def _build_section(which: int, d: int) -> list:
    basis = _integrable_vectors(d)
    words = BAR.words(d)
    tw = {t: i for i, t in enumerate(_tensor_words(d))}
    rows = []
    for v in basis:
        img = _dec_terms(which, {words[i]: c for i, c in v.items()})
        rows.append({tw[t]: c for t, c in img.items()})
    m = SparseMatrix(rows, len(tw))
    if len(rows) != len(tw):
        raise RuntimeError("dec%d: %d integrable vectors vs %d tensor words" % (which, len(rows), len(tw)))
    inv = inverse(m)  # row t of inv: coordinates (over basis) of the preimage of tensor word t
    out = []
    for r in inv.rows:
        acc: dict = {}
        for j, x in r.items():
            for i, c in basis[j].items():
                _add_into(acc, i, x * c)
        out.append(acc)
    return _encode(out)


@lru_cache(maxsize=None)
def _section(which: int, d: int) -> Dict[Tuple[str, str], NcPoly]:
    raw = _decode(cache.load_or_build("bar5-dec%d-inverse" % which, d, lambda: _build_section(which, d)))
    return {t: _to_poly(d, v) for t, v in zip(_tensor_words(d), raw)}


def dec_inverse(which: int, tensor: Dict[Tuple[str, str], Fraction]) -> NcPoly:
    """The integrable element with the given ``dec2``/``dec3`` image."""
    acc: dict = {}
    for (x, y), c in tensor.items():
        for w, v in _section(which, len(x) + len(y))[(x, y)].terms.items():
            _add_into(acc, w, c * v)
    return NcPoly(BAR, acc)


def j2(l: NcPoly) -> NcPoly:
    return dec_inverse(2, {(w, ""): c for w, c in l.terms.items()})


def j3(l: NcPoly) -> NcPoly:
    return dec_inverse(3, {(w, ""): c for w, c in l.terms.items()})


def i3(m: NcPoly) -> NcPoly:
    if m.alphabet is not A:
        raise ValueError("i3 takes elements of A")
    return dec_inverse(3, {("", w): c for w, c in m.terms.items()})


# ---------------------------------------------------------------------------
# extended derivations and standard relations


_STRIP = {"0": "d", "1": "eb"}


def tilde_partial(alpha, b: NcPoly) -> NcPoly:
    """Strip the leftmost letter: ``e31`` for alpha = 0, ``e34`` or ``e23`` for alpha = 1."""
    keep = _STRIP[str(alpha)]
    acc: dict = {}
    for w, c in b.terms.items():
        if not w:
            raise ValueError("degree-0 element")
        if w[0] in keep:
            _add_into(acc, w[1:], c)
    return NcPoly(BAR, acc)


TILDE_CONST = HomSpec.build("hom", BAR, A, {"e21": "e0", "e23": 0, "e24": "e1", "e31": 0, "e34": 0})


def tilde_const(b: NcPoly) -> NcPoly:
    return NcPoly(A, apply_hom_terms(TILDE_CONST, b.terms))


@lru_cache(maxsize=None)
def _tilde_functionals(d: int) -> Tuple[Dict[int, Fraction], ...]:
    words = BAR.words(d)
    rows = [{j: Fraction(1)} for j, w in enumerate(words) if set(w) <= {"a", "c"}]
    if d > 0:
        lower = {w: i for i, w in enumerate(BAR.words(d - 1))}
        for keep in _STRIP.values():
            for f in _tilde_functionals(d - 1):
                g = {}
                for j, w in enumerate(words):
                    if w[0] in keep:
                        x = f.get(lower[w[1:]])
                        if x:
                            g[j] = x
                if g:
                    rows.append(g)
    red, _ = rref(SparseMatrix(rows, len(words)))
    return red.rows


@lru_cache(maxsize=None)
def tilde_ist_basis(d: int) -> Tuple[NcPoly, ...]:
    """Elements of ``B^1`` of degree ``d`` killed by every ``Const~ o d~_{alpha_1} ... d~_{alpha_r}``."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    words = BAR.words(d)
    idx = {w: i for i, w in enumerate(words)}
    sub = [{idx[w]: c for w, c in b.terms.items()} for b in b1_basis(d)]
    rows = []
    for f in _tilde_functionals(d):
        rows.append({k: sum((f.get(i, 0) * c for i, c in v.items()), Fraction(0)) for k, v in enumerate(sub)})
    ker = nullspace(SparseMatrix(rows, len(sub)))
    out = []
    for v in ker:
        acc: dict = {}
        for k, x in v.items():
            for i, c in sub[k].items():
                _add_into(acc, i, x * c)
        out.append(acc)
    red, _ = rref(SparseMatrix(out, len(words)))
    return tuple(_to_poly(d, r) for r in red.rows)


def generating_set(d: int) -> List[NcPoly]:
    """``j3(l - l_{1->z}) ⧢ i3(m)`` for basis words ``l`` of ``A_z^1`` and ``m`` of ``A^1``, total degree ``d``."""
    out = []
    for a in range(1, d + 1):
        for lw in basis_words(FiltrationLevel.A1z, a):
            l = NcPoly.word(A_Z, lw)
            diff = l - NcPoly(A_Z, apply_hom_terms(ONE_TO_Z, l.terms))
            if not diff:
                continue
            jl = j3(diff)
            for mw in basis_words(FiltrationLevel.A1, d - a):
                im = i3(NcPoly.word(A, mw))
                g = NcPoly(BAR, shuffle_terms(jl.terms, im.terms))
                if g:
                    out.append(g)
    return out


def _vecs(polys, d):
    idx = {w: i for i, w in enumerate(BAR.words(d))}
    return [{idx[w]: c for w, c in p.terms.items()} for p in polys]


def generating_set_check(d: int):
    """Span comparison of the standard-relation space and the generator set above."""
    return span_compare(_vecs(tilde_ist_basis(d), d), _vecs(generating_set(d), d), 5 ** d)


def j2_ist_check(d: int) -> Tuple[int, int, int]:
    """``(dim(I~_ST ∩ j2(A_z^0)), dim j2(I_ST), rank of j2(I_ST) + I~_ST minus rank of I~_ST)``.

    Equality of the two subspaces means the first two agree and the last is 0.
    """
    n = 5 ** d
    tist = _vecs(tilde_ist_basis(d), d)
    j2a0 = _vecs([j2(NcPoly.word(A_Z, w)) for w in basis_words(FiltrationLevel.A0z, d)], d)
    j2ist = _vecs([j2(r) for r in ist_basis(d).rows], d)
    r_t = rank(SparseMatrix(tist, n))
    r_a = rank(SparseMatrix(j2a0, n))
    inter = r_t + r_a - rank(SparseMatrix(tist + j2a0, n))
    r_i = rank(SparseMatrix(j2ist, n))
    extra = rank(SparseMatrix(tist + j2ist, n)) - r_t
    return inter, r_i, extra
