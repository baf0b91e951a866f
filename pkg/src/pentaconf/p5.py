"""The graded enveloping algebra of the sphere braid Lie algebra on five points.

Generators ``t_ij`` (i != j in 1..5) with ``t_ij = t_ji``, ``sum_j t_ij = 0``
and ``[t_ij, t_kl] = 0`` for disjoint pairs.  The sum relations leave the
five generators ``B = (t12, t23, t24, t13, t34)``; a free word over ``B`` is
a representative, and elements are kept in normal form.

Order ``t12 < t23 < t24 < t13 < t34`` and split ``B`` into ``K = {t12, t23,
t24}`` and ``H = {t13, t34}``.  After substitution the fifteen commutator
relations span six independent quadratic relations, one for each ``h k``
(h in H, k in K), of the form ``h k = k h + D_h(k)`` with ``D_h(k)`` a
quadratic in ``K`` alone.  These have no overlaps among their leading
words, so normal words are exactly ``K* H*`` and moving an ``h`` across a
``K``-word ``u`` is ``h u = u h + D_h(u)`` with ``D_h`` extended as a
derivation.  That rewriting is the fast path.

The reference path reduces a degree-``d`` word against the row-reduced
span of ``{x r y}`` (columns in decreasing order, so pivots are the
non-normal words); it is cached on disk and used to certify the fast path.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Mapping, Sequence, Tuple

from . import cache
from .exactalg import SparseMatrix, frac_str, rank, rref
from .ncseries import UF2, Alphabet, NcPoly, TruncatedSeries, _add_into, is_one

P5 = Alphabet("P5", ("t12", "t23", "t24", "t13", "t34"), "abcde")
BASIS_PAIRS = ((1, 2), (2, 3), (2, 4), (1, 3), (3, 4))
K_LETTERS = "abc"
H_LETTERS = "de"
POINTS = (1, 2, 3, 4, 5)
VERSION = "p5-1"


def _pair(i: int, j: int) -> Tuple[int, int]:
    if i == j:
        raise ValueError("t_ii is not a generator")
    if i not in POINTS or j not in POINTS:
        raise ValueError("indices must lie in 1..5")
    return (i, j) if i < j else (j, i)


@lru_cache(maxsize=None)
def _expansion_table() -> Dict[Tuple[int, int], Dict[str, Fraction]]:
    pairs = list(combinations(POINTS, 2))
    free = [p for p in pairs if p not in BASIS_PAIRS]
    cols = free + list(BASIS_PAIRS)  # eliminate the non-basis pairs first
    rows = []
    for i in POINTS:
        rows.append({cols.index(_pair(i, j)): 1 for j in POINTS if j != i})
    red, piv = rref(SparseMatrix(rows, len(cols)))
    if piv != list(range(len(free))):
        raise RuntimeError("basis pairs are not independent modulo the sum relations")
    table = {}
    for p, code in zip(BASIS_PAIRS, P5.codes):
        table[p] = {code: Fraction(1)}
    for r, p in zip(red.rows, free):
        table[p] = {P5.codes[c - len(free)]: -v for c, v in r.items() if c >= len(free)}
    return table


def express_t(i: int, j: int) -> NcPoly:
    """``t_ij`` as a degree-one polynomial over ``B``."""
    return NcPoly(P5, _expansion_table()[_pair(i, j)])


@lru_cache(maxsize=None)
def substituted_relations() -> Tuple[NcPoly, ...]:
    """The fifteen commutators ``[t_ij, t_kl]`` of disjoint pairs, written over ``B``."""
    out = []
    pairs = list(combinations(POINTS, 2))
    for p, q in combinations(pairs, 2):
        if set(p) & set(q):
            continue
        x, y = express_t(*p), express_t(*q)
        out.append(x * y - y * x)
    return tuple(out)


# ---------------------------------------------------------------------------
# rewriting fast path


@lru_cache(maxsize=None)
def _swap_table() -> Dict[Tuple[str, str], Dict[str, Fraction]]:
    """``(h, k) -> D_h(k)`` read off the reduced quadratic relations."""
    words = sorted(P5.words(2), reverse=True)
    idx = {w: i for i, w in enumerate(words)}
    rows = [{idx[w]: c for w, c in r.terms.items()} for r in substituted_relations()]
    red, piv = rref(SparseMatrix(rows, len(words)))
    lead = sorted(words[p] for p in piv)
    expected = sorted(h + k for h in H_LETTERS for k in K_LETTERS)
    if lead != expected:
        raise RuntimeError("unexpected leading words %s" % lead)
    table = {}
    for r, p in zip(red.rows, piv):
        hk = words[p]
        rhs: dict = {}
        for c, v in r.items():
            if c != p:
                _add_into(rhs, words[c], -v)
        kh = hk[1] + hk[0]
        if rhs.get(kh) != 1:
            raise RuntimeError("relation for %s is not a commutation" % hk)
        del rhs[kh]
        if any(set(w) - set(K_LETTERS) for w in rhs):
            raise RuntimeError("D_h(k) leaves the K-subalgebra")
        table[(hk[0], hk[1])] = rhs
    return table


@lru_cache(maxsize=None)
def _derive(h: str, u: str) -> Tuple[Tuple[str, Fraction], ...]:
    """``D_h(u)`` for a K-word ``u`` (derivation extension)."""
    acc: dict = {}
    tab = _swap_table()
    for i, k in enumerate(u):
        for w, c in tab[(h, k)].items():
            _add_into(acc, u[:i] + w + u[i + 1:], c)
    return tuple(acc.items())


@lru_cache(maxsize=None)
def _move(v: str, u: str) -> Tuple[Tuple[str, Fraction], ...]:
    """Normal form of ``v u`` for an H-word ``v`` and a K-word ``u``."""
    if not v or not u:
        return ((u + v, Fraction(1)),)
    h = v[0]
    acc: dict = {}
    for w, c in _move(v[1:], u):
        # w = u' v'; h u' v' = u' h v' + D_h(u') v'
        split = len(w.rstrip(H_LETTERS))
        up, vp = w[:split], w[split:]
        _add_into(acc, up + h + vp, c)
        for x, d in _derive(h, up):
            _add_into(acc, x + vp, c * d)
    return tuple(acc.items())


def _split(w: str) -> Tuple[str, str]:
    i = len(w.rstrip(H_LETTERS))
    return w[:i], w[i:]


def is_normal(w: str) -> bool:
    u, v = _split(w)
    return all(c in K_LETTERS for c in u)


def mul_normal(a: str, b: str) -> Tuple[Tuple[str, Fraction], ...]:
    """Product of two normal words, in normal form."""
    u1, v1 = _split(a)
    u2, v2 = _split(b)
    return tuple((u1 + w + v2, c) for w, c in _move(v1, u2))


@lru_cache(maxsize=None)
def normal_form_word(w: str) -> Tuple[Tuple[str, Fraction], ...]:
    if len(w) <= 1:
        return ((w, Fraction(1)),)
    acc: dict = {}
    for x, c in normal_form_word(w[:-1]):
        for y, d in mul_normal(x, w[-1]):
            _add_into(acc, y, c * d)
    return tuple(acc.items())


@lru_cache(maxsize=None)
def normal_words(d: int) -> Tuple[str, ...]:
    """Normal-form monomial basis of degree ``d`` (words in ``K* H*``), canonical order."""
    return tuple(w for w in P5.words(d) if is_normal(w))


def hilbert_dimension(d: int) -> int:
    return 3 ** (d + 1) - 2 ** (d + 1)


# ---------------------------------------------------------------------------
# reference path: per-degree row reduction of the ideal


def _desc_index(d: int) -> Dict[str, int]:
    return {w: i for i, w in enumerate(sorted(P5.words(d), reverse=True))}


def _ideal_rows(d: int) -> List[Dict[int, Fraction]]:
    """Generators of the degree-d ideal piece: r for d=2, letter-padded lower pieces above."""
    idx = _desc_index(d)
    if d == 2:
        return [{idx[w]: c for w, c in r.terms.items()} for r in substituted_relations()]
    lower = sorted(P5.words(d - 1), reverse=True)
    out = []
    for row in _reference(d - 1)["rows"]:
        terms = {lower[c]: v for c, v in row.items()}
        for a in P5.codes:
            out.append({idx[a + w]: v for w, v in terms.items()})
            out.append({idx[w + a]: v for w, v in terms.items()})
    return out


def _build_reference(d: int) -> dict:
    red, piv = rref(SparseMatrix(_ideal_rows(d), 5 ** d))
    return {
        "pivots": piv,
        "rows": [[[c, frac_str(v)] for c, v in sorted(r.items())] for r in red.rows],
    }


@lru_cache(maxsize=None)
def _reference(d: int) -> dict:
    if d < 2:
        return {"pivots": [], "rows": []}
    raw = cache.load_or_build("p5", d, lambda: _build_reference(d))
    return {"pivots": list(raw["pivots"]), "rows": [{c: Fraction(v) for c, v in r} for r in raw["rows"]]}


def reference_ideal_rank(d: int) -> int:
    return len(_reference(d)["pivots"])


@lru_cache(maxsize=None)
def _reference_reducer(d: int) -> Dict[str, Dict[str, Fraction]]:
    words = sorted(P5.words(d), reverse=True)
    ref = _reference(d)
    out = {}
    for p, row in zip(ref["pivots"], ref["rows"]):
        out[words[p]] = {words[c]: -v for c, v in row.items() if c != p}
    return out


def reference_normal_words(d: int) -> Tuple[str, ...]:
    piv = set(_reference(d)["pivots"])
    words = sorted(P5.words(d), reverse=True)
    return tuple(sorted(w for i, w in enumerate(words) if i not in piv))


def reference_reduce_word(w: str) -> Dict[str, Fraction]:
    red = _reference_reducer(len(w)) if len(w) >= 2 else {}
    return dict(red.get(w, {w: Fraction(1)}))


# ---------------------------------------------------------------------------
# elements


class P5Element:
    """Truncated element of the completed enveloping algebra, in normal form."""

    __slots__ = ("N", "terms", "version")

    def __init__(self, N: int, terms: Mapping[str, object] | None = None, version: str = VERSION):
        self.N = N
        self.version = version
        self.terms = {w: c for w, c in (terms or {}).items() if c and len(w) <= N}

    @classmethod
    def one(cls, N: int) -> "P5Element":
        return cls(N, {"": Fraction(1)})

    def _check(self, other: "P5Element"):
        if self.version != other.version:
            raise ValueError("cache version mismatch: %s vs %s" % (self.version, other.version))
        if self.N != other.N:
            raise ValueError("truncation mismatch: %d vs %d" % (self.N, other.N))

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(acc, w, c)
        return P5Element(self.N, acc)

    def __neg__(self):
        return P5Element(self.N, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, P5Element):
            return P5Element(self.N, {w: c * other for w, c in self.terms.items()})
        return p5_mul(self, other)

    def __rmul__(self, other):
        return P5Element(self.N, {w: other * c for w, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, P5Element):
            return self.N == other.N and self.terms == other.terms
        return NotImplemented

    __hash__ = None

    def component(self, d: int) -> NcPoly:
        return NcPoly(P5, {w: c for w, c in self.terms.items() if len(w) == d})

    def coordinates(self, d: int) -> List[object]:
        """Coordinate vector in the degree-``d`` normal-word basis."""
        return [self.terms.get(w, 0) for w in normal_words(d)]

    def lift(self) -> NcPoly:
        return NcPoly(P5, self.terms)

    def __repr__(self):
        return "P5Element(N=%d, %r)" % (self.N, self.lift())


def quotient_reduce(p: NcPoly, N: int, method: str = "rewrite") -> P5Element:
    """Reduce a free polynomial over ``B`` to normal form, dropping degrees above ``N``."""
    if p.alphabet is not P5:
        raise ValueError("expected a polynomial over %s" % P5.name)
    acc: dict = {}
    for w, c in p.terms.items():
        if len(w) > N:
            continue
        if method == "rewrite":
            red = normal_form_word(w)
        elif method == "reference":
            red = reference_reduce_word(w).items()
        else:
            raise ValueError("method must be 'rewrite' or 'reference'")
        for v, d in red:
            _add_into(acc, v, c * d)
    return P5Element(N, acc)


def p5_mul(a: P5Element, b: P5Element) -> P5Element:
    a._check(b)
    N = a.N
    acc: dict = {}
    for x, c in a.terms.items():
        room = N - len(x)
        for y, d in b.terms.items():
            if len(y) > room:
                continue
            cd = c * d
            for w, m in mul_normal(x, y):
                _add_into(acc, w, cd * m)
    return P5Element(N, acc)


def substitute(s, images: Mapping[str, P5Element], N: int) -> P5Element:
    """Image of a polynomial/series under letter code -> P5Element (degree >= 1 images)."""
    memo: Dict[str, P5Element] = {"": P5Element.one(N)}

    def img(w: str) -> P5Element:
        r = memo.get(w)
        if r is None:
            r = images[w[0]] * img(w[1:])
            memo[w] = r
        return r

    acc: dict = {}
    for w in sorted(s.terms, key=len):
        c = s.terms[w]
        if len(w) > N:
            continue
        for v, d in img(w).terms.items():
            _add_into(acc, v, c * d)
    return P5Element(N, acc)


def t_element(i: int, j: int, N: int) -> P5Element:
    return P5Element(N, express_t(i, j).terms)


def embed_phi(i: int, j: int, k: int, s, N: int | None = None) -> P5Element:
    """``phi_ijk``: the image of ``s(f0, f1)`` under ``f0 -> t_ij``, ``f1 -> t_jk``."""
    if len({i, j, k}) != 3:
        raise ValueError("indices must be distinct")
    if N is None:
        N = s.N if isinstance(s, TruncatedSeries) else max(s.degree(), 0)
    if s.alphabet is not UF2:
        raise ValueError("embed_phi expects a series in f0, f1")
    return substitute(s, {"0": t_element(i, j, N), "1": t_element(j, k, N)}, N)


def _check_perm(sigma: Sequence[int]) -> Tuple[int, ...]:
    sigma = tuple(sigma)
    if sorted(sigma) != list(POINTS):
        raise ValueError("not a permutation of 1..5: %r" % (sigma,))
    return sigma


def s5_act(sigma: Sequence[int], x: P5Element) -> P5Element:
    """Relabel ``t_ij -> t_{sigma(i) sigma(j)}``; ``sigma`` in one-line notation."""
    sigma = _check_perm(sigma)
    images = {code: t_element(sigma[a - 1], sigma[b - 1], x.N) for code, (a, b) in zip(P5.codes, BASIS_PAIRS)}
    return substitute(x, images, x.N)


def perm_compose(sigma, tau) -> Tuple[int, ...]:
    """``(sigma tau)(i) = sigma(tau(i))``."""
    return tuple(sigma[tau[i] - 1] for i in range(5))


def transposition(a: int, b: int) -> Tuple[int, ...]:
    p = list(POINTS)
    p[a - 1], p[b - 1] = b, a
    return tuple(p)


PENTAGON = ((3, 4, 5), (5, 1, 2), (2, 3, 4), (4, 5, 1), (1, 2, 3))
P15342 = ((1, 5, 3), (3, 4, 2), (2, 1, 5), (5, 3, 4), (4, 2, 1))


def relabel_triples(sigma, triples) -> Tuple[Tuple[int, int, int], ...]:
    sigma = _check_perm(sigma)
    return tuple(tuple(sigma[i - 1] for i in t) for t in triples)


def relation_lhs(kind: str, s: TruncatedSeries):
    """Left side of the pentagon (or the 2-cycle, or the P_15342 product) for ``s``."""
    if not is_one(s.constant()):
        raise ValueError("series must have constant term 1")
    if kind == "two_cycle":
        from .ncseries import swap_letters

        return s * swap_letters(s, "0", "1")
    if kind == "pentagon":
        triples = PENTAGON
    elif kind == "p15342":
        triples = P15342
    else:
        raise ValueError("kind must be pentagon, two_cycle or p15342")
    out = P5Element.one(s.N)
    for t in triples:
        out = out * embed_phi(*t, s)
    return out


def residual(kind: str, s: TruncatedSeries):
    lhs = relation_lhs(kind, s)
    if isinstance(lhs, P5Element):
        return lhs - P5Element.one(s.N)
    return lhs - TruncatedSeries.one(s.alphabet, s.N)


def linear_pentagon_map(d: int):
    """Matrix (rows = normal words of degree d, columns = Lie basis of degree d)
    of ``psi -> psi_345 + psi_512 + psi_234 + psi_451 + psi_123``."""
    from .ncseries import lie_basis

    basis = lie_basis(UF2, d)
    cols = []
    for psi in basis:
        tot = P5Element(d)
        for t in PENTAGON:
            tot = tot + embed_phi(*t, psi, d)
        cols.append(tot.component(d).terms)
    return basis, cols


def linear_pentagon_space(d: int):
    """``(dimension, basis)`` of the degree-``d`` Lie elements solving the linearized pentagon."""
    from .exactalg import nullspace

    if d < 2:
        raise ValueError("degree must be >= 2")
    basis, cols = linear_pentagon_map(d)
    words = sorted({w for c in cols for w in c})
    idx = {w: i for i, w in enumerate(words)}
    rows: List[Dict[int, Fraction]] = [dict() for _ in words]
    for j, c in enumerate(cols):
        for w, v in c.items():
            rows[idx[w]][j] = v
    ker = nullspace(SparseMatrix(rows, len(basis)))
    sols = []
    for v in ker:
        acc: dict = {}
        for j, x in v.items():
            for w, c in basis[j].terms.items():
                _add_into(acc, w, x * c)
        sols.append(NcPoly(UF2, acc))
    return len(sols), sols


def bar_pairing(b: NcPoly, p: NcPoly):
    """Letterwise Kronecker pairing ``e21<->t12, e23<->t23, e24<->t24, e31<->t13, e34<->t34``."""
    if len(b.alphabet.codes) != 5 or p.alphabet is not P5:
        raise ValueError("bar_pairing expects bar letters against B")
    tr = str.maketrans(dict(zip(b.alphabet.codes, P5.codes)))
    total = 0
    for w, c in b.terms.items():
        d = p.terms.get(w.translate(tr))
        if d:
            total = total + c * d
    return total


def generator_rank() -> int:
    """Rank of the ten ``t_ij`` over ``B`` (five if ``B`` is a basis)."""
    rows = [{P5.codes.index(c): v for c, v in express_t(*p).terms.items()} for p in combinations(POINTS, 2)]
    return rank(SparseMatrix(rows, 5))
