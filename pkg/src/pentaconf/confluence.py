"""Confluence relations among multiple zeta values.

Everything here is exact and lives in the word algebras ``A_z = Q<e0,e1,ez>``
and ``A = Q<e0,e1>``.  The pipeline is

* the filtration ``A_z^1 > A_z^0 > A_z^-1 > A_z^-2`` and its ``A`` analogues,
* the derivations ``d_{z,alpha}`` (signed letter deletion),
* standard relations ``I_ST``: elements of ``A_z^0`` all of whose iterated
  derivatives have vanishing ``ez``-free part,
* the regularizations ``reg_{z,1}`` and ``reg_z`` and the maps ``N`` and ``lambda``,
* confluence relations ``I_CF = lambda(I_ST)`` inside ``A^0``,
* for comparison, the regularized double shuffle and duality ideals.

All regularizations are computed by triangular peeling rather than a
generic linear solve: shuffling a "singular" block onto a regular word
reproduces the concatenation plus terms with a strictly shorter block.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from .exactalg import SparseMatrix, nullspace, rref
from .ncseries import (
    A,
    A_Z,
    Alphabet,
    HomSpec,
    NcPoly,
    _add_into,
    apply_hom_terms,
    shuffle_terms,
    shuffle_words,
    word_key,
)


class FiltrationLevel(str, enum.Enum):
    A1z = "A1z"
    A0z = "A0z"
    Am1z = "Am1z"
    Am2z = "Am2z"
    A1 = "A1"
    A0 = "A0"


_LEVEL_ALPHABET = {
    FiltrationLevel.A1z: A_Z,
    FiltrationLevel.A0z: A_Z,
    FiltrationLevel.Am1z: A_Z,
    FiltrationLevel.Am2z: A_Z,
    FiltrationLevel.A1: A,
    FiltrationLevel.A0: A,
}


def _word_in_level(level: FiltrationLevel, w: str) -> bool:
    if not w:
        return True
    if level in (FiltrationLevel.A1z, FiltrationLevel.A1):
        return w[-1] in "1z"
    if level is FiltrationLevel.A0z:
        return w == "z" or (len(w) >= 2 and w[0] in "0z" and w[-1] in "1z")
    if level in (FiltrationLevel.Am2z, FiltrationLevel.A0):
        return len(w) >= 2 and w[0] == "0" and w[-1] in "1z"
    if level is FiltrationLevel.Am1z:
        # ez^k u with u in A_z^-2; this is the span of Q<ez> shuffled with A_z^-2
        rest = w.lstrip("z")
        return _word_in_level(FiltrationLevel.Am2z, rest)
    raise ValueError(level)


def filtration_member(level, u: NcPoly) -> bool:
    level = FiltrationLevel(level)
    alpha = _LEVEL_ALPHABET[level]
    if u.alphabet not in (alpha, A_Z) or (alpha is A and u.alphabet is not A):
        raise ValueError("level %s expects alphabet %s" % (level.value, alpha.name))
    return all(_word_in_level(level, w) for w in u.terms)


def basis_words(level, d: int) -> List[str]:
    level = FiltrationLevel(level)
    alpha = _LEVEL_ALPHABET[level]
    return [w for w in alpha.words(d) if _word_in_level(level, w)]


# ---------------------------------------------------------------------------
# derivations


def _partial_word(alpha: str, w: str, a0: str) -> Dict[str, int]:
    pair = {"z", alpha}
    ext = "1" + w + a0
    out: Dict[str, int] = {}
    for p in range(len(w)):
        x = ext[p + 1]
        c = ({x, ext[p]} == pair) - ({x, ext[p + 2]} == pair)
        if c:
            v = w[:p] + w[p + 1:]
            out[v] = out.get(v, 0) + c
    return {v: c for v, c in out.items() if c}


def partial_z(alpha, u: NcPoly, a0: int = 0) -> NcPoly:
    """Signed letter-deletion operator ``d_{z,alpha}`` on ``A_z``.

    Removing the letter ``a_i`` of ``e_{a_n}...e_{a_1}`` contributes
    ``[{a_i,a_{i+1}} = {z,alpha}] - [{a_{i-1},a_i} = {z,alpha}]`` with the
    boundary values ``a_{n+1} = 1`` and ``a_0 = a0`` (0 by default, which is
    the choice that makes ``d/dz L = L(d_0)/z + L(d_1)/(z-1)`` hold).
    """
    alpha = str(alpha)
    if alpha not in ("0", "1") or str(a0) not in ("0", "1"):
        raise ValueError("alpha and a0 must be 0 or 1")
    acc: dict = {}
    for w, c in u.terms.items():
        for v, m in _partial_word(alpha, w, str(a0)).items():
            _add_into(acc, v, c * m)
    return NcPoly(u.alphabet, acc)


CONST = HomSpec.build("hom", A_Z, A, {"e0": "e0", "e1": "e1", "ez": 0})
Z_TO_1 = HomSpec.build("hom", A_Z, A, {"e0": "e0", "e1": "e1", "ez": "e1"})
ONE_TO_Z = HomSpec.build("hom", A_Z, A_Z, {"e0": "e0", "e1": "ez", "ez": "ez"})
TAU_Z = HomSpec.build("anti", A_Z, A_Z, {"e0": "ez - e1", "e1": "ez - e0", "ez": "ez"})
TAU_INF = HomSpec.build("anti", A, A, {"e0": "-e1", "e1": "-e0"})


def const(u: NcPoly) -> NcPoly:
    return NcPoly(A, {w: c for w, c in u.terms.items() if "z" not in w})


# ---------------------------------------------------------------------------
# regularization


@dataclass(frozen=True)
class TensorDecomposition:
    """``sum coeff * left ⧢ right`` stored as ``((left, right), coeff)`` word pairs."""

    alphabet: Alphabet
    terms: Tuple[Tuple[Tuple[str, str], Fraction], ...]
    right_alphabet: Alphabet | None = None

    def pairs(self) -> List[Tuple[NcPoly, NcPoly]]:
        ra = self.right_alphabet or self.alphabet
        return [(NcPoly(self.alphabet, {l: c}), NcPoly.word(ra, r)) for (l, r), c in self.terms]

    def as_dict(self) -> Dict[Tuple[str, str], Fraction]:
        return dict(self.terms)

    def recompose(self) -> NcPoly:
        acc: dict = {}
        for (l, r), c in self.terms:
            for w, m in shuffle_words(l, r):
                _add_into(acc, w, c * m)
        return NcPoly(self.alphabet, acc)

    def project(self, left: str | None = None, right: str | None = None) -> NcPoly:
        """Collect one side of the terms whose other side equals the given word."""
        acc: dict = {}
        for (l, r), c in self.terms:
            if right is not None and r == right:
                _add_into(acc, l, c)
            elif left is not None and l == left:
                _add_into(acc, r, c)
        return NcPoly(self.alphabet, acc)


def _split_z1(w: str) -> Tuple[str, str]:
    # (prefix in {e1,ez}, remainder starting with e0)
    i = 0
    while i < len(w) and w[i] != "0":
        i += 1
    return w[:i], w[i:]


def _split_z(w: str) -> Tuple[str, str]:
    rest = w.lstrip("z")
    return w[: len(w) - len(rest)], rest


def _split_e1(w: str) -> Tuple[str, str]:
    rest = w.lstrip("1")
    return w[: len(w) - len(rest)], rest


def _split_e0_tail(w: str) -> Tuple[str, str]:
    rest = w.rstrip("0")
    return rest, w[len(rest):]


# kind -> (splitter giving (singular, regular), source level, alphabet, singular on the left?)
_REG_KINDS = {
    "z1": (_split_z1, FiltrationLevel.A0z, A_Z, False),
    "z": (_split_z, FiltrationLevel.Am1z, A_Z, True),
    "shuffle_e1": (_split_e1, FiltrationLevel.A1, A, False),
}


def _peel(terms: dict, split) -> Dict[Tuple[str, str], object]:
    """Write ``terms`` as ``sum c * (singular ⧢ regular)`` by removing longest blocks first."""
    rem = dict(terms)
    out: dict = {}
    while rem:
        w = max(rem, key=lambda x: (len(split(x)[0]), word_key(x)))
        c = rem[w]
        s, r = split(w)
        _add_into(out, (s, r), c)
        for v, m in shuffle_words(s, r):
            _add_into(rem, v, -c * m)
    return out


@lru_cache(maxsize=None)
def _reg_word(kind: str, w: str) -> Tuple[Tuple[Tuple[str, str], Fraction], ...]:
    split = _REG_KINDS[kind][0]
    return tuple(sorted(_peel({w: Fraction(1)}, split).items()))


def reg_decompose(kind: str, u: NcPoly) -> TensorDecomposition:
    """Inverse of the shuffle isomorphism for ``kind`` in ``z1``, ``z``, ``shuffle_e1``.

    Pair orders: ``z1`` gives (A_z^-2 part, e1/ez part); ``z`` gives
    (Q<ez> part, A_z^-2 part); ``shuffle_e1`` gives (A^0 part, Q<e1> part).
    """
    if kind not in _REG_KINDS:
        raise ValueError("unknown regularization kind %r" % kind)
    split, level, alpha, singular_left = _REG_KINDS[kind]
    if u.alphabet is not alpha:
        raise ValueError("%s regularization works over %s" % (kind, alpha.name))
    if not filtration_member(level, u):
        raise ValueError("input is not in %s" % level.value)
    acc: dict = {}
    for w, c in u.terms.items():
        for (s, r), d in _reg_word(kind, w):
            key = (s, r) if singular_left else (r, s)
            _add_into(acc, key, c * d)
    items = sorted(acc.items(), key=lambda t: (word_key(t[0][0]), word_key(t[0][1])))
    return TensorDecomposition(alpha, tuple(items))


def reg_shuffle(u: NcPoly) -> NcPoly:
    """Shuffle regularization ``A^1 -> A^0`` with the regularized value of ``e1`` set to 0."""
    acc: dict = {}
    for w, c in u.terms.items():
        for (s, r), d in _reg_word("shuffle_e1", w):
            if not s:
                _add_into(acc, r, c * d)
    return NcPoly(A, acc)


@lru_cache(maxsize=None)
def _reg_full_word(w: str) -> Tuple[Tuple[str, Fraction], ...]:
    # A = Q<e1> ⧢ A^0 ⧢ Q<e0>; keep the component with both outer factors trivial
    out: dict = {}
    for (tail, mid), c in _peel({w: Fraction(1)}, lambda x: _split_e0_tail(x)[::-1]).items():
        if tail:
            continue
        for (head, core), d in _reg_word("shuffle_e1", mid):
            if not head:
                _add_into(out, core, c * d)
    return tuple(sorted(out.items()))


def reg_shuffle_full(u: NcPoly) -> NcPoly:
    """Shuffle regularization of arbitrary words of ``A`` with ``e0, e1 -> 0``."""
    acc: dict = {}
    for w, c in u.terms.items():
        for v, d in _reg_full_word(w):
            _add_into(acc, v, c * d)
    return NcPoly(A, acc)


# ---------------------------------------------------------------------------
# N and lambda


@lru_cache(maxsize=None)
def _N_word(w: str) -> Tuple[Tuple[str, Fraction], ...]:
    acc: dict = {}
    for (s, r), c in _reg_word("z1", w):
        # s in Q<e1,ez> (right tensor factor), r in A_z^-2
        ts = apply_hom_terms(TAU_Z, {s: Fraction(1)})
        for v, d in shuffle_terms({r: c}, ts).items():
            _add_into(acc, v, d)
    return tuple(sorted(acc.items()))


def map_N(u: NcPoly) -> NcPoly:
    """``N = ⧢ o (id ⊗ tau_z) o reg_{z,1}`` from ``A_z^0`` to ``A_z^-1``."""
    if u.alphabet is not A_Z or not filtration_member(FiltrationLevel.A0z, u):
        raise ValueError("N is defined on A_z^0")
    acc: dict = {}
    for w, c in u.terms.items():
        for v, d in _N_word(w):
            _add_into(acc, v, c * d)
    return NcPoly(A_Z, acc)


@lru_cache(maxsize=None)
def _lambda_word(w: str) -> Tuple[Tuple[str, Fraction], ...]:
    acc: dict = {}
    for v, c in _N_word(w):
        for (s, r), d in _reg_word("z", v):
            if not s:
                _add_into(acc, r, c * d)
    return tuple(sorted(apply_hom_terms(Z_TO_1, acc).items()))


def map_lambda(u: NcPoly) -> NcPoly:
    """``lambda = (z->1) o (const ⊗ id) o reg_z o N`` from ``A_z^0`` to ``A^0``."""
    if u.alphabet is not A_Z or not filtration_member(FiltrationLevel.A0z, u):
        raise ValueError("lambda is defined on A_z^0")
    acc: dict = {}
    for w, c in u.terms.items():
        for v, d in _lambda_word(w):
            _add_into(acc, v, c * d)
    return NcPoly(A, acc)


# ---------------------------------------------------------------------------
# relation bases


@dataclass(frozen=True)
class RelationBasis:
    weight: int
    level: FiltrationLevel
    rows: Tuple[NcPoly, ...]

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def alphabet(self) -> Alphabet:
        return _LEVEL_ALPHABET[self.level]

    def vectors(self, words: List[str] | None = None) -> List[Dict[int, Fraction]]:
        words = words if words is not None else basis_words(self.level, self.weight)
        idx = {w: i for i, w in enumerate(words)}
        return [{idx[w]: c for w, c in r.terms.items()} for r in self.rows]

    def to_json(self) -> dict:
        return {"weight": self.weight, "level": self.level.value, "rows": [r.to_json() for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "RelationBasis":
        level = FiltrationLevel(data["level"])
        alpha = _LEVEL_ALPHABET[level]
        return cls(int(data["weight"]), level, tuple(NcPoly.from_json(alpha, r) for r in data["rows"]))

    @classmethod
    def span_of(cls, weight: int, level, polys) -> "RelationBasis":
        """Canonical rref basis of the span of ``polys`` (columns in canonical word order)."""
        level = FiltrationLevel(level)
        alpha = _LEVEL_ALPHABET[level]
        words = basis_words(level, weight)
        idx = {w: i for i, w in enumerate(words)}
        vecs = []
        for p in polys:
            try:
                vecs.append({idx[w]: c for w, c in p.terms.items()})
            except KeyError as exc:
                raise ValueError("polynomial leaves %s in weight %d" % (level.value, weight)) from exc
        red, _ = rref(SparseMatrix(vecs, len(words)))
        return cls(weight, level, tuple(NcPoly(alpha, {words[i]: c for i, c in r.items()}) for r in red.rows))


@lru_cache(maxsize=None)
def _partial_transpose(d: int, alpha: str, a0: str) -> Dict[int, List[Tuple[int, int]]]:
    """For degree-(d-1) word index k: the list of (degree-d word index, coefficient)."""
    lower = {w: i for i, w in enumerate(A_Z.words(d - 1))}
    out: Dict[int, List[Tuple[int, int]]] = {}
    for j, w in enumerate(A_Z.words(d)):
        for v, c in _partial_word(alpha, w, a0).items():
            out.setdefault(lower[v], []).append((j, c))
    return out


@lru_cache(maxsize=None)
def _ist_functionals(d: int, a0: str) -> Tuple[Dict[int, Fraction], ...]:
    """Row-reduced span of all functionals ``l -> coeff_x Const(d_{a_1}...d_{a_r} l)`` on ``A_z`` degree d."""
    words = A_Z.words(d)
    rows = [{j: Fraction(1)} for j, w in enumerate(words) if "z" not in w]
    if d > 0:
        for alpha in "01":
            tr = _partial_transpose(d, alpha, a0)
            for f in _ist_functionals(d - 1, a0):
                g: dict = {}
                for k, x in f.items():
                    for j, c in tr.get(k, ()):
                        _add_into(g, j, x * c)
                if g:
                    rows.append(g)
    red, _ = rref(SparseMatrix(rows, len(words)))
    return red.rows


@lru_cache(maxsize=None)
def _ist_basis(d: int, a0: str) -> RelationBasis:
    words = A_Z.words(d)
    cols = basis_words(FiltrationLevel.A0z, d)
    pos = {w: i for i, w in enumerate(cols)}
    colmap = {j: pos[w] for j, w in enumerate(words) if w in pos}
    rows = []
    for f in _ist_functionals(d, a0):
        r = {colmap[j]: x for j, x in f.items() if j in colmap}
        if r:
            rows.append(r)
    ker = nullspace(SparseMatrix(rows, len(cols)))
    polys = [NcPoly(A_Z, {cols[i]: c for i, c in v.items()}) for v in ker]
    return RelationBasis.span_of(d, FiltrationLevel.A0z, polys)


def ist_basis(d: int, a0: int = 0) -> RelationBasis:
    """Standard relations of degree ``d``: the joint kernel in ``A_z^0`` of every
    ``Const o d_{z,alpha_1} o ... o d_{z,alpha_r}``."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    return _ist_basis(d, str(a0))


def ist_member(u: NcPoly, a0: int = 0) -> bool:
    if u.alphabet is not A_Z:
        raise ValueError("standard relations live in A_z")
    for d in {len(w) for w in u.terms}:
        part = u.component(d)
        if d == 0 or not filtration_member(FiltrationLevel.A0z, part):
            return False
        words = A_Z.words(d)
        for f in _ist_functionals(d, str(a0)):
            if sum((x * part.terms.get(words[j], 0) for j, x in f.items()), Fraction(0)):
                return False
    return True


@lru_cache(maxsize=None)
def _icf_basis(w: int, a0: str) -> RelationBasis:
    images = [map_lambda(r) for r in _ist_basis(w, a0).rows] if w >= 1 else []
    return RelationBasis.span_of(w, FiltrationLevel.A0, images)


def icf_basis(w: int, a0: int = 0) -> RelationBasis:
    """Confluence relations of weight ``w``: the span of ``lambda(I_ST,w)`` in ``A^0``."""
    if w < 1:
        raise ValueError("weight must be >= 1")
    return _icf_basis(w, str(a0))


# ---------------------------------------------------------------------------
# double shuffle and duality


def word_to_index(w: str) -> Tuple[int, ...]:
    """``e0^{k1-1} e1 ... e0^{km-1} e1 -> (k1, ..., km)``."""
    if w and w[-1] != "1":
        raise ValueError("word %r does not end in e1" % w)
    return tuple(len(b) + 1 for b in w.split("1")[:-1])


def index_to_word(idx) -> str:
    return "".join("0" * (k - 1) + "1" for k in idx)


@lru_cache(maxsize=None)
def _stuffle_idx(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    acc: dict = {}
    for rest, lead in ((_stuffle_idx(a[1:], b), a[0]), (_stuffle_idx(a, b[1:]), b[0]), (_stuffle_idx(a[1:], b[1:]), a[0] + b[0])):
        for t, c in rest:
            key = (lead,) + t
            acc[key] = acc.get(key, 0) + c
    return tuple(acc.items())


def _check_a1(u: NcPoly):
    if u.alphabet is not A or not filtration_member(FiltrationLevel.A1, u):
        raise ValueError("stuffle is defined on A^1")


def stuffle(u: NcPoly, v: NcPoly) -> NcPoly:
    """Harmonic product on index sequences, ``(a,u)*(b,v) = (a,u*(b,v)) + (b,(a,u)*v) + (a+b,u*v)``."""
    _check_a1(u)
    _check_a1(v)
    acc: dict = {}
    for x, c in u.terms.items():
        ix = word_to_index(x)
        for y, d in v.terms.items():
            for t, m in _stuffle_idx(ix, word_to_index(y)):
                _add_into(acc, index_to_word(t), c * d * m)
    return NcPoly(A, acc)


def depth_sign(u: NcPoly) -> NcPoly:
    """``w -> (-1)^{#e1 in w} w``; converts between word and index sign conventions."""
    return NcPoly(u.alphabet, {w: (-c if w.count("1") % 2 else c) for w, c in u.terms.items()})


def signed_stuffle(u: NcPoly, v: NcPoly) -> NcPoly:
    """The stuffle transported to words, where ``L(w) = (-1)^depth zeta(index)``."""
    return depth_sign(stuffle(depth_sign(u), depth_sign(v)))


def _a1_words(d: int) -> List[str]:
    return basis_words(FiltrationLevel.A1, d)


@lru_cache(maxsize=None)
def _generators(kind: str, w: int) -> Tuple[NcPoly, ...]:
    gens = []
    if kind == "RDS":
        for k in range(1, w - 1):
            for x in _a1_words(k):
                u = NcPoly.word(A, x)
                for y in basis_words(FiltrationLevel.A0, w - k):
                    v = NcPoly.word(A, y)
                    g = reg_shuffle(NcPoly(A, shuffle_terms(u.terms, v.terms)) - signed_stuffle(u, v))
                    if g:
                        gens.append(g)
    elif kind == "Delta":
        for x in basis_words(FiltrationLevel.A0, w):
            u = NcPoly.word(A, x)
            g = u - NcPoly(A, apply_hom_terms(TAU_INF, u.terms))
            if g:
                gens.append(g)
    else:
        raise ValueError("kind must be RDS or Delta")
    return tuple(gens)


@lru_cache(maxsize=None)
def ideal_generators(kind: str, w: int) -> RelationBasis:
    """Weight-``w`` slice of the shuffle ideal of ``A^0`` generated by the
    regularized double shuffle (``RDS``) or duality (``Delta``) elements."""
    if w < 2:
        raise ValueError("weight must be >= 2")
    polys = list(_generators(kind, w))
    for k in range(2, w - 1):
        for g in _generators(kind, k):
            for y in basis_words(FiltrationLevel.A0, w - k):
                polys.append(NcPoly(A, shuffle_terms(g.terms, {y: 1})))
    return RelationBasis.span_of(w, FiltrationLevel.A0, polys)
