"""Words, noncommutative polynomials and truncated series.

A word is stored as a ``str`` of one-character letter codes; an
:class:`Alphabet` maps codes to the printable letter names (``e0``, ``ez``,
``f1``, ``t23`` ...).  Codes are assigned in the alphabet's declared letter
order, so plain string comparison on words is the lexicographic order and
``(len(w), w)`` is the graded lexicographic order used everywhere for
printing and serialization.

Words are written left to right exactly as ``e_{a_n} ... e_{a_1}``: the
leftmost letter is the one integrated last (closest to the endpoint).

Coefficients are normally :class:`~fractions.Fraction`, but polynomial and
series arithmetic only relies on ``+``, ``-``, ``*`` and truthiness, so the
numeric :class:`pentaconf.mzvnum.ApproxReal` works as a coefficient type too.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, List, Mapping, Tuple

from .exactalg import frac_str


@dataclass(frozen=True)
class Alphabet:
    name: str
    letters: Tuple[str, ...]
    codes: str

    def __post_init__(self):
        if len(set(self.letters)) != len(self.letters):
            raise ValueError("letters must be distinct")
        if len(self.codes) != len(self.letters) or sorted(self.codes) != list(self.codes):
            raise ValueError("codes must be increasing, one per letter")

    def code(self, letter: str) -> str:
        return self.codes[self.letters.index(letter)]

    def letter(self, code: str) -> str:
        return self.letters[self.codes.index(code)]

    def render(self, word: str) -> str:
        return "".join(self.letter(c) for c in word) if word else "1"

    def parse(self, text: str) -> str:
        """Inverse of :meth:`render`; ``""`` or ``"1"`` is the empty word."""
        if text in ("", "1"):
            return ""
        names = sorted(self.letters, key=len, reverse=True)
        out = []
        i = 0
        while i < len(text):
            for n in names:
                if text.startswith(n, i):
                    out.append(self.code(n))
                    i += len(n)
                    break
            else:
                raise ValueError("cannot parse %r over %s" % (text, self.name))
        return "".join(out)

    def words(self, degree: int) -> List[str]:
        """All words of the given length in canonical order."""
        out = [""]
        for _ in range(degree):
            out = [w + c for w in out for c in self.codes]
        return out


A_Z = Alphabet("A_z", ("e0", "e1", "ez"), "01z")
A = Alphabet("A", ("e0", "e1"), "01")
UF2 = Alphabet("Uf2", ("f0", "f1"), "01")
UF3 = Alphabet("Uf3", ("f0", "f1", "fz"), "01z")

ALPHABETS = {a.name: a for a in (A_Z, A, UF2, UF3)}


def format_terms(items, alphabet: Alphabet) -> str:
    """Human-readable ``2*e0e1 - e1e0 + 1/2`` rendering of ``(word, coeff)`` pairs."""
    out = ""
    for w, c in items:
        neg = c < 0 if isinstance(c, Fraction) else False
        a = -c if neg else c
        if not w:
            body = str(a)
        elif a == 1:
            body = alphabet.render(w)
        else:
            body = "%s*%s" % (a, alphabet.render(w))
        if not out:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out or "0"


def word_key(w: str):
    return (len(w), w)


def _clean(terms: Mapping) -> Dict[str, object]:
    return {w: c for w, c in terms.items() if c}


def _add_into(acc: dict, w: str, c) -> None:
    v = acc.get(w)
    if v is None:
        acc[w] = c
    else:
        v = v + c
        if v:
            acc[w] = v
        else:
            del acc[w]


class NcPoly:
    """Finitely supported linear combination of words over one alphabet."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping[str, object] | None = None):
        self.alphabet = alphabet
        self.terms = _clean(terms or {})

    # construction helpers
    @classmethod
    def word(cls, alphabet: Alphabet, w: str, coeff=1) -> "NcPoly":
        return cls(alphabet, {w: Fraction(coeff)})

    @classmethod
    def one(cls, alphabet: Alphabet) -> "NcPoly":
        return cls(alphabet, {"": Fraction(1)})

    @classmethod
    def parse(cls, alphabet: Alphabet, text: str) -> "NcPoly":
        """Parse ``"2*e0e1 - e1e0 + 1/2*ez"`` style text."""
        terms: dict = {}
        s = text.replace(" ", "").replace("-", "+-")
        for part in s.split("+"):
            if not part:
                continue
            if "*" in part:
                c, w = part.split("*")
            elif part.startswith("-"):
                c, w = "-1", part[1:]
            else:
                c, w = "1", part
            if "*" not in part and w.lstrip("-").replace("/", "").isdigit():
                c, w = part, ""
            _add_into(terms, alphabet.parse(w), Fraction(c))
        return cls(alphabet, terms)

    # arithmetic
    def _check(self, other: "NcPoly") -> None:
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch: %s vs %s" % (self.alphabet.name, other.alphabet.name))

    def __add__(self, other):
        if not isinstance(other, NcPoly):
            other = NcPoly(self.alphabet, {"": other})
        self._check(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(acc, w, c)
        return NcPoly(self.alphabet, acc)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly(self.alphabet, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, NcPoly):
            return concat(self, other)
        return NcPoly(self.alphabet, {w: c * other for w, c in self.terms.items()})

    def __rmul__(self, other):
        return NcPoly(self.alphabet, {w: other * c for w, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, NcPoly):
            return self.alphabet == other.alphabet and self.terms == other.terms
        if not other:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, w: str):
        return self.terms.get(w, 0)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def component(self, d: int) -> "NcPoly":
        return NcPoly(self.alphabet, {w: c for w, c in self.terms.items() if len(w) == d})

    def items(self) -> List[Tuple[str, object]]:
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]))

    def __repr__(self):
        if not self.terms:
            return "0"
        return format_terms(self.items(), self.alphabet)

    def to_json(self) -> list:
        return [{"word": self.alphabet.render(w), "coeff": frac_str(c)} for w, c in self.items()]

    @classmethod
    def from_json(cls, alphabet: Alphabet, data: Iterable[dict]) -> "NcPoly":
        terms: dict = {}
        for t in data:
            _add_into(terms, alphabet.parse(t["word"]), Fraction(t["coeff"]))
        return cls(alphabet, terms)


# ---------------------------------------------------------------------------
# products and coproduct


@lru_cache(maxsize=None)
def shuffle_words(u: str, v: str) -> Tuple[Tuple[str, int], ...]:
    """Shuffle of two words as ``((word, multiplicity), ...)``.

    Uses ``a u' ш b v' = a (u' ш b v') + b (a u' ш v')`` on leftmost letters.
    """
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: Dict[str, int] = {}
    a, b = u[0], v[0]
    for w, c in shuffle_words(u[1:], v):
        acc[a + w] = acc.get(a + w, 0) + c
    for w, c in shuffle_words(u, v[1:]):
        acc[b + w] = acc.get(b + w, 0) + c
    return tuple(acc.items())


def shuffle_terms(p: Mapping[str, object], q: Mapping[str, object]) -> Dict[str, object]:
    acc: dict = {}
    for u, a in p.items():
        for v, b in q.items():
            ab = a * b
            for w, m in shuffle_words(u, v):
                _add_into(acc, w, ab * m)
    return acc


def shuffle(u: NcPoly, v: NcPoly) -> NcPoly:
    u._check(v)
    return NcPoly(u.alphabet, shuffle_terms(u.terms, v.terms))


def concat_terms(p: Mapping[str, object], q: Mapping[str, object], maxdeg: int | None = None) -> dict:
    acc: dict = {}
    for u, a in p.items():
        for v, b in q.items():
            if maxdeg is not None and len(u) + len(v) > maxdeg:
                continue
            _add_into(acc, u + v, a * b)
    return acc


def concat(u: NcPoly, v: NcPoly) -> NcPoly:
    u._check(v)
    return NcPoly(u.alphabet, concat_terms(u.terms, v.terms))


def deconcat_terms(p: Mapping[str, object]) -> Dict[Tuple[str, str], object]:
    acc: dict = {}
    for w, c in p.items():
        for i in range(len(w) + 1):
            key = (w[:i], w[i:])
            v = acc.get(key, 0) + c
            if v:
                acc[key] = v
            else:
                acc.pop(key, None)
    return acc


def deconcat(u: NcPoly) -> List[Tuple[NcPoly, NcPoly]]:
    """Deconcatenation coproduct; the left factor is the prefix."""
    out = []
    for (a, b), c in sorted(deconcat_terms(u.terms).items(), key=lambda t: (word_key(t[0][0]), word_key(t[0][1]))):
        out.append((NcPoly(u.alphabet, {a: c}), NcPoly.word(u.alphabet, b)))
    return out


def antipode(u: NcPoly) -> NcPoly:
    return NcPoly(u.alphabet, {w[::-1]: (-c if len(w) % 2 else c) for w, c in u.terms.items()})


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class HomSpec:
    """Letter table defining a (anti-)homomorphism of free algebras."""

    kind: str  # "hom" or "anti"
    source: Alphabet
    target: Alphabet
    images: Tuple[Tuple[str, Tuple[Tuple[str, object], ...]], ...]

    @classmethod
    def build(cls, kind: str, source: Alphabet, target: Alphabet, table: Mapping[str, object]) -> "HomSpec":
        """``table`` maps letter names to NcPoly / text / 0."""
        if kind not in ("hom", "anti"):
            raise ValueError("kind must be 'hom' or 'anti'")
        imgs = []
        for name, img in table.items():
            if isinstance(img, str):
                img = NcPoly.parse(target, img)
            elif not isinstance(img, NcPoly):
                img = NcPoly(target, {"": Fraction(img)}) if img else NcPoly(target)
            imgs.append((source.code(name), tuple(sorted(img.terms.items()))))
        return cls(kind, source, target, tuple(sorted(imgs)))

    def table(self) -> Dict[str, Dict[str, object]]:
        return {c: dict(t) for c, t in self.images}


def _hom_word_images(h: HomSpec, maxdeg: int | None = None):
    table = h.table()
    memo: Dict[str, dict] = {"": {"": Fraction(1)}}

    def img(w: str) -> dict:
        r = memo.get(w)
        if r is not None:
            return r
        a = w[0]
        if a not in table:
            raise ValueError("letter %s not covered by %s" % (h.source.letter(a), h.kind))
        rest = img(w[1:])
        if h.kind == "hom":
            r = concat_terms(table[a], rest, maxdeg)
        else:
            r = concat_terms(rest, table[a], maxdeg)
        memo[w] = r
        return r

    return img


def apply_hom_terms(h: HomSpec, terms: Mapping[str, object], maxdeg: int | None = None) -> dict:
    img = _hom_word_images(h, maxdeg)
    acc: dict = {}
    for w, c in terms.items():
        for v, d in img(w).items():
            _add_into(acc, v, c * d)
    return acc


def apply_hom(h: HomSpec, u):
    """Apply a letter-table (anti-)homomorphism to an NcPoly or TruncatedSeries."""
    if u.alphabet != h.source:
        raise ValueError("alphabet mismatch")
    if isinstance(u, TruncatedSeries):
        return TruncatedSeries(h.target, u.N, apply_hom_terms(h, u.terms, u.N))
    return NcPoly(h.target, apply_hom_terms(h, u.terms))


# ---------------------------------------------------------------------------
# truncated series


class TruncatedSeries:
    """Element of a completed free algebra, kept modulo words longer than ``N``."""

    __slots__ = ("alphabet", "N", "terms")

    def __init__(self, alphabet: Alphabet, N: int, terms: Mapping[str, object] | None = None):
        self.alphabet = alphabet
        self.N = N
        self.terms = {w: c for w, c in (terms or {}).items() if c and len(w) <= N}

    @classmethod
    def from_poly(cls, p: NcPoly, N: int) -> "TruncatedSeries":
        return cls(p.alphabet, N, p.terms)

    @classmethod
    def one(cls, alphabet: Alphabet, N: int) -> "TruncatedSeries":
        return cls(alphabet, N, {"": Fraction(1)})

    def _check(self, other):
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")
        if self.N != other.N:
            raise ValueError("truncation mismatch: %d vs %d" % (self.N, other.N))

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(acc, w, c)
        return TruncatedSeries(self.alphabet, self.N, acc)

    def __neg__(self):
        return TruncatedSeries(self.alphabet, self.N, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return TruncatedSeries(self.alphabet, self.N, concat_terms(self.terms, other.terms, self.N))
        return TruncatedSeries(self.alphabet, self.N, {w: c * other for w, c in self.terms.items()})

    def __rmul__(self, other):
        return TruncatedSeries(self.alphabet, self.N, {w: other * c for w, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.alphabet == other.alphabet and self.N == other.N and self.terms == other.terms
        return NotImplemented

    __hash__ = None

    def coefficient(self, w: str):
        return self.terms.get(w, 0)

    def component(self, d: int) -> NcPoly:
        return NcPoly(self.alphabet, {w: c for w, c in self.terms.items() if len(w) == d})

    def constant(self):
        return self.terms.get("", 0)

    def truncate(self, N: int) -> "TruncatedSeries":
        return TruncatedSeries(self.alphabet, N, self.terms)

    def poly(self) -> NcPoly:
        return NcPoly(self.alphabet, self.terms)

    def items(self):
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]))

    def __repr__(self):
        return "TruncatedSeries(N=%d, %s)" % (self.N, format_terms(self.items(), self.alphabet))

    def to_json(self) -> dict:
        return {
            "alphabet": list(self.alphabet.letters),
            "max_degree": self.N,
            "terms": [{"word": self.alphabet.render(w), "coeff": frac_str(c)} for w, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TruncatedSeries":
        letters = tuple(data["alphabet"])
        alpha = next((a for a in ALPHABETS.values() if a.letters == letters), None)
        if alpha is None:
            raise ValueError("unknown alphabet %r" % (letters,))
        terms: dict = {}
        for t in data["terms"]:
            _add_into(terms, alpha.parse(t["word"]), Fraction(t["coeff"]))
        return cls(alpha, int(data["max_degree"]), terms)

    @classmethod
    def loads(cls, text: str) -> "TruncatedSeries":
        return cls.from_json(json.loads(text))


def is_one(c) -> bool:
    """``c == 1``; interval-valued coefficients only need to contain 1."""
    if hasattr(c, "contains"):
        return c.contains(1)
    return c == 1


def _powers(x: TruncatedSeries):
    """Yield x, x^2, ... while nonzero (x has no constant term)."""
    p = x
    k = 1
    while p.terms and k <= x.N:
        yield k, p
        p = p * x
        k += 1


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    if s.constant():
        raise ValueError("exp needs a series without constant term")
    out = TruncatedSeries.one(s.alphabet, s.N)
    for k, p in _powers(s):
        out = out + p * Fraction(1, factorial(k))
    return out


def series_log(s: TruncatedSeries) -> TruncatedSeries:
    if not is_one(s.constant()):
        raise ValueError("log needs constant term 1")
    x = s - TruncatedSeries.one(s.alphabet, s.N)
    out = TruncatedSeries(s.alphabet, s.N)
    for k, p in _powers(x):
        out = out + p * Fraction((-1) ** (k + 1), k)
    return out


def exp_log(direction: str, s: TruncatedSeries) -> TruncatedSeries:
    if direction == "exp":
        return series_exp(s)
    if direction == "log":
        return series_log(s)
    raise ValueError("direction must be 'exp' or 'log'")


def series_inverse(s: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a series with constant term 1."""
    if not is_one(s.constant()):
        raise ValueError("inverse needs constant term 1")
    x = TruncatedSeries.one(s.alphabet, s.N) - s
    out = TruncatedSeries.one(s.alphabet, s.N)
    for _, p in _powers(x):
        out = out + p
    return out


def swap_letters(s, a: str, b: str):
    """Exchange two letters (given by code) in every word."""
    tr = str.maketrans({a: b, b: a})
    cls = type(s)
    if isinstance(s, TruncatedSeries):
        return TruncatedSeries(s.alphabet, s.N, {w.translate(tr): c for w, c in s.terms.items()})
    return cls(s.alphabet, {w.translate(tr): c for w, c in s.terms.items()})


def substitute_series(s: TruncatedSeries, images: Mapping[str, TruncatedSeries]) -> TruncatedSeries:
    """Continuous homomorphism sending each letter code to a series without constant term."""
    N = s.N
    one = TruncatedSeries.one(s.alphabet, N)
    memo: Dict[str, TruncatedSeries] = {"": one}

    def img(w):
        r = memo.get(w)
        if r is None:
            r = images[w[0]] * img(w[1:])
            memo[w] = r
        return r

    acc = TruncatedSeries(images[next(iter(images))].alphabet, N)
    for w, c in s.terms.items():
        acc = acc + img(w) * c
    return acc


# ---------------------------------------------------------------------------
# duality


def pairing(l: NcPoly, s) -> object:
    """Word-word Kronecker pairing between an e-alphabet and an f-alphabet.

    Letters are matched by position (``e0<->f0``, ``e1<->f1``, ``ez<->fz``).
    """
    la, sa = l.alphabet, s.alphabet
    if len(la.letters) != len(sa.letters):
        raise ValueError("alphabet arity mismatch: %s vs %s" % (la.name, sa.name))
    tr = str.maketrans(dict(zip(la.codes, sa.codes)))
    total = 0
    st = s.terms
    for w, c in l.terms.items():
        d = st.get(w.translate(tr))
        if d:
            total = total + c * d
    return total


def _alphabet_dual(alpha: Alphabet) -> Alphabet:
    return {UF2: A, UF3: A_Z}.get(alpha, alpha)


def grouplike_class(s: TruncatedSeries, is_zero=None) -> str:
    """Classify a series as ``not_grouplike``, ``grouplike`` or ``commutator_grouplike``.

    Group-likeness is checked through ``<u ш v|s> = <u|s><v|s>`` for all word
    pairs of total length at most ``N``.  ``is_zero`` decides when a defect
    counts as zero (exact test by default; numeric series pass a tolerance test).
    """
    if is_zero is None:
        def is_zero(x):
            return not x
    c0 = s.constant()
    if not is_zero(c0 - 1):
        raise ValueError("degree-0 part must be 1")
    terms = s.terms
    codes = s.alphabet.codes
    by_deg = [s.alphabet.words(d) for d in range(s.N + 1)]
    for du in range(1, s.N):
        for dv in range(du, s.N - du + 1):
            for u in by_deg[du]:
                cu = terms.get(u, 0)
                for v in by_deg[dv]:
                    lhs = 0
                    for w, m in shuffle_words(u, v):
                        x = terms.get(w)
                        if x:
                            lhs = lhs + x * m
                    if not is_zero(lhs - cu * terms.get(v, 0)):
                        return "not_grouplike"
    if all(is_zero(terms.get(c, 0)) for c in codes):
        return "commutator_grouplike"
    return "grouplike"


# ---------------------------------------------------------------------------
# free Lie algebra


def lyndon_words(alphabet: Alphabet, degree: int) -> List[str]:
    """Lyndon words of the given length (Duval's algorithm), in lexicographic order."""
    codes = alphabet.codes
    k = len(codes)
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == degree:
            out.append("".join(codes[i] for i in w))
        while len(w) < degree:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return sorted(out)


@lru_cache(maxsize=None)
def _lyndon_bracket(w: str) -> Tuple[Tuple[str, int], ...]:
    if len(w) == 1:
        return ((w, 1),)
    # standard factorization: w = u v with v the longest proper Lyndon suffix
    for i in range(1, len(w)):
        v = w[i:]
        if _is_lyndon(v):
            u = w[:i]
            break
    a = dict(_lyndon_bracket(u))
    b = dict(_lyndon_bracket(v))
    acc: dict = {}
    for x, c in a.items():
        for y, d in b.items():
            _add_into(acc, x + y, c * d)
            _add_into(acc, y + x, -c * d)
    return tuple(sorted(acc.items()))


def _is_lyndon(w: str) -> bool:
    return all(w < w[i:] for i in range(1, len(w)))


def lie_basis(alphabet: Alphabet, degree: int) -> List[NcPoly]:
    """Standard Lyndon-bracket basis of the degree-``degree`` part of the free Lie algebra."""
    return [NcPoly(alphabet, {w: Fraction(c) for w, c in _lyndon_bracket(lw)}) for lw in lyndon_words(alphabet, degree)]

