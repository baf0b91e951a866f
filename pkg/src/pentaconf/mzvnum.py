"""Multiple zeta values and iterated integrals with rigorous error bounds.

Numbers are :class:`ApproxReal`: an integer mantissa at a fixed binary
scale together with an integer bound on the absolute error, in the same
units.  Every operation widens the bound conservatively, so a residual
whose bound is below a tolerance is certified small.

``L(w)`` for a convergent word is computed by splitting the path at 1/2.
The lower piece is a multiple polylogarithm at 1/2, the upper piece is the
same kind of value for the word read backwards with ``e0 <-> e1`` (up to a
sign per letter); both are nested sums whose terms decay like ``2^-n``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Tuple

from .confluence import FiltrationLevel, filtration_member, index_to_word, reg_shuffle_full, word_to_index
from .ncseries import A, UF2, NcPoly, TruncatedSeries


def bits_for_digits(digits: int) -> int:
    """Binary working precision for ``digits`` decimal digits plus guard digits."""
    return math.ceil((digits + 15) * math.log2(10)) + 80


class ApproxReal:
    """``value in [(m - err) / 2^bits, (m + err) / 2^bits]``."""

    __slots__ = ("m", "err", "bits")

    def __init__(self, m: int, err: int, bits: int):
        if err < 0:
            raise ValueError("negative error bound")
        self.m = m
        self.err = err
        self.bits = bits

    @classmethod
    def exact(cls, x, bits: int) -> "ApproxReal":
        x = Fraction(x)
        num = x.numerator << bits
        q, r = divmod(num, x.denominator)
        return cls(q, 1 if r else 0, bits)

    def _coerce(self, other) -> "ApproxReal":
        if isinstance(other, ApproxReal):
            if other.bits == self.bits:
                return other
            return other.rescale(self.bits)
        return ApproxReal.exact(other, self.bits)

    def rescale(self, bits: int) -> "ApproxReal":
        if bits >= self.bits:
            s = bits - self.bits
            return ApproxReal(self.m << s, self.err << s, bits)
        s = self.bits - bits
        return ApproxReal(self.m >> s, (self.err >> s) + 2, bits)

    def __add__(self, other):
        o = self._coerce(other)
        return ApproxReal(self.m + o.m, self.err + o.err, self.bits)

    __radd__ = __add__

    def __neg__(self):
        return ApproxReal(-self.m, self.err, self.bits)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ApproxReal):
            o = self._coerce(other)
            prod = self.m * o.m
            e = abs(self.m) * o.err + abs(o.m) * self.err + self.err * o.err
            m = prod >> self.bits
            return ApproxReal(m, (e >> self.bits) + 2, self.bits)
        x = Fraction(other)
        if x.denominator == 1:
            n = x.numerator
            return ApproxReal(self.m * n, self.err * abs(n), self.bits)
        q = (self.m * x.numerator) // x.denominator
        e = -(-(self.err * abs(x.numerator)) // x.denominator) + 1
        return ApproxReal(q, e, self.bits)

    __rmul__ = __mul__

    def __bool__(self):
        # only an exact zero is falsy, so sparse containers never drop error bounds
        return bool(self.m or self.err)

    def upper_abs(self) -> Fraction:
        """Certified upper bound on ``|value|``."""
        return Fraction(abs(self.m) + self.err, 1 << self.bits)

    def error(self) -> Fraction:
        return Fraction(self.err, 1 << self.bits)

    def to_fraction(self) -> Fraction:
        return Fraction(self.m, 1 << self.bits)

    def __float__(self):
        return self.m / 2.0 ** self.bits

    def to_mpf(self, dps: int | None = None):
        import mpmath

        with mpmath.workdps(dps or max(20, int(self.bits * 0.30103) + 5)):
            return mpmath.mpf(self.m) / mpmath.mpf(2) ** self.bits

    def decimal(self, digits: int) -> str:
        import mpmath

        return mpmath.nstr(self.to_mpf(digits + 10), digits)

    def contains(self, x) -> bool:
        x = Fraction(x)
        return abs(x * (1 << self.bits) - self.m) <= self.err

    def __repr__(self):
        return "ApproxReal(%s +- %s)" % (self.decimal(20), "%.3e" % float(self.error()))

    def to_json(self, digits: int) -> dict:
        return {"value": self.decimal(digits), "err": "%.3e" % float(self.error())}


# ---------------------------------------------------------------------------
# polylogarithm values at 1/2


def _li_half(idx: Tuple[int, ...], bits: int) -> ApproxReal:
    """``Li_{k1..kr}(1/2) = sum_{n1>...>nr>0} 2^-n1 / (n1^k1 ... nr^kr)``."""
    r = len(idx)
    if r == 0:
        return ApproxReal(1 << bits, 0, bits)
    M = max(bits + 16 * r + 16, 4 * r)
    guard = math.ceil(r * math.log2(M + 1)) + 8
    P = bits + guard
    one = 1 << P
    # innermost cumulative sum, then outwards; S[n] covers indices <= n
    k = idx[-1]
    S = [0] * (M + 1)
    acc = 0
    for n in range(1, M + 1):
        acc += one // n ** k
        S[n] = acc
    for k in reversed(idx[1:-1]):
        T = [0] * (M + 1)
        acc = 0
        for n in range(2, M + 1):
            acc += S[n - 1] // n ** k
            T[n] = acc
        S = T
    k = idx[0]
    total = 0
    if r == 1:
        for n in range(1, M + 1):
            total += one // (n ** k << n)
    else:
        for n in range(2, M + 1):
            total += S[n - 1] // (n ** k << n)
    # truncation error of integer divisions: at most 2 (M+1)^r units of 2^-P
    err_units = 2 * (M + 1) ** r
    s = P - bits
    m = total >> s
    err = (err_units >> s) + 2
    # tail beyond M: inner sums <= n^(r-1), ratio of terms <= 0.65 once M+1 >= 4r
    tail = Fraction(3 * (M + 1) ** (r - 1), 1 << (M + 1))
    err += math.ceil(tail * (1 << bits)) + 1
    return ApproxReal(m, err, bits)


@lru_cache(maxsize=None)
def _F_half(word: str, bits: int) -> ApproxReal:
    """Iterated integral from 0 to 1/2 of a word ending in e1 (or the empty word)."""
    if not word:
        return ApproxReal(1 << bits, 0, bits)
    idx = word_to_index(word)
    v = _li_half(idx, bits)
    return -v if len(idx) % 2 else v


def _dual(word: str) -> str:
    return word[::-1].translate(str.maketrans("01", "10"))


@lru_cache(maxsize=None)
def _L_word(word: str, bits: int) -> ApproxReal:
    if not word:
        return ApproxReal(1 << bits, 0, bits)
    if word[0] != "0" or word[-1] != "1":
        raise ValueError("word %r is not convergent" % word)
    total = ApproxReal(0, 0, bits)
    n = len(word)
    for k in range(n + 1):
        low, up = word[n - k:], word[: n - k]
        piece = _F_half(low, bits) * _F_half(_dual(up), bits)
        # t -> 1 - t turns dt/(t - a) into -ds/(s - (1 - a))
        total = total + (-piece if len(up) % 2 else piece)
    return total


def L_num(u: NcPoly, digits: int = 60) -> ApproxReal:
    """``L(u)`` for ``u`` in ``A^0``; ``L(e0^{k1-1}e1...e0^{km-1}e1) = (-1)^m zeta(k1..km)``."""
    if u.alphabet is not A or not filtration_member(FiltrationLevel.A0, u):
        raise ValueError("L_num needs an element of A^0")
    bits = bits_for_digits(digits)
    total = ApproxReal(0, 0, bits)
    for w, c in u.terms.items():
        total = total + _L_word(w, bits) * c
    return total


def mzv(idx: Iterable[int], digits: int = 60) -> ApproxReal:
    idx = tuple(int(k) for k in idx)
    if not idx or idx[0] < 2 or any(k < 1 for k in idx):
        raise ValueError("inadmissible index %r" % (idx,))
    v = _L_word(index_to_word(idx), bits_for_digits(digits))
    return -v if len(idx) % 2 else v


# ---------------------------------------------------------------------------
# the KZ witness


def kz_series(N: int, digits: int = 60, swap: bool = False) -> TruncatedSeries:
    """Numeric associator: coefficient of ``W(f0, f1)`` is the shuffle-regularized ``L(W(e0, e1))``.

    ``swap`` exchanges ``f0`` and ``f1``; the default orientation is the one
    that satisfies the pentagon in the conventions of :mod:`pentaconf.p5`.
    """
    bits = bits_for_digits(digits)
    terms: Dict[str, ApproxReal] = {"": ApproxReal(1 << bits, 0, bits)}
    for d in range(1, N + 1):
        for w in A.words(d):
            reg = reg_shuffle_full(NcPoly.word(A, w))
            if not reg:
                continue
            v = ApproxReal(0, 0, bits)
            for x, c in reg.terms.items():
                v = v + _L_word(x, bits) * c
            if v:
                terms[w] = v
    s = TruncatedSeries(UF2, N, terms)
    if swap:
        from .ncseries import swap_letters

        s = swap_letters(s, "0", "1")
    return s


def max_abs(values) -> Tuple[float, float]:
    """``(max |mantissa value|, max certified bound)`` over ApproxReal or exact values."""
    best, bound = Fraction(0), Fraction(0)
    for v in values:
        if isinstance(v, ApproxReal):
            best = max(best, abs(v.to_fraction()))
            bound = max(bound, v.upper_abs())
        else:
            best = max(best, abs(Fraction(v)))
            bound = max(bound, abs(Fraction(v)))
    return float(best), float(bound)


def tolerance_zero(tol: float):
    """Predicate: certified ``|x| < tol``."""
    t = Fraction(tol)

    def is_zero(x):
        if isinstance(x, ApproxReal):
            return x.upper_abs() < t
        return abs(Fraction(x)) < t

    return is_zero


# ---------------------------------------------------------------------------
# numeric residual checks


class NumericResidual:
    """Largest residual of a numeric check, with its certified bound."""

    def __init__(self, kind: str, N: int, digits: int, values):
        self.kind = kind
        self.N = N
        self.digits = digits
        self.count = len(values)
        self.max_value, self.bound = max_abs(values)

    def passed(self, tol: float) -> bool:
        return self.bound < tol

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "max_degree": self.N,
            "digits": self.digits,
            "items": self.count,
            "max_residual": "%.3e" % self.max_value,
            "bound": "%.3e" % self.bound,
        }


def numeric_check(kind: str, N: int, digits: int = 60, series: TruncatedSeries | None = None) -> NumericResidual:
    """Residuals of the pentagon, the 2-cycle relation, confluence or the key formula.

    ``series`` defaults to :func:`kz_series` at ``(N, digits)``.
    """
    from .associator import confluence_pairing, key_formula_sides
    from .confluence import basis_words
    from .ncseries import A_Z
    from .p5 import residual

    phi = series if series is not None else kz_series(N, digits)
    if kind in ("pentagon", "two_cycle"):
        values = list(residual(kind, phi).terms.values())
    elif kind == "confluence":
        values = [v for vals in confluence_pairing(phi, N).values() for v in vals]
    elif kind == "key_formula":
        values = []
        for d in range(1, min(N, 3) + 1):
            for w in basis_words("A0z", d):
                lhs, rhs = key_formula_sides(NcPoly.word(A_Z, w), phi)
                values.append(lhs - rhs)
    else:
        raise ValueError("unknown check %r" % kind)
    return NumericResidual(kind, N, digits, values)


def series_to_json(s: TruncatedSeries, digits: int) -> dict:
    """Numeric series as ``{"alphabet", "max_degree", "terms": [{"word", "coeff", "err"}]}``."""
    terms = []
    for w, c in s.items():
        if isinstance(c, ApproxReal):
            v = c.to_mpf(digits + 20)
            text = c.decimal(digits + 5)
            # printed value differs from the mantissa by the rounding of the last digit
            err = float(c.error()) + abs(float(v)) * 10.0 ** (-(digits + 3))
            terms.append({"word": s.alphabet.render(w), "coeff": text, "err": "%.3e" % (err * 1.01)})
        else:
            terms.append({"word": s.alphabet.render(w), "coeff": "%d/%d" % (Fraction(c).numerator, Fraction(c).denominator)})
    return {"alphabet": list(s.alphabet.letters), "max_degree": s.N, "terms": terms}


def series_from_json(data: dict, digits: int = 60) -> TruncatedSeries:
    """Read exact (``"p/q"``) or numeric (decimal + ``"err"``) series JSON."""
    from .ncseries import ALPHABETS

    letters = tuple(data["alphabet"])
    alpha = next((a for a in ALPHABETS.values() if a.letters == letters), None)
    if alpha is None:
        raise ValueError("unknown alphabet %r" % (letters,))
    numeric = any("err" in t for t in data["terms"])
    bits = bits_for_digits(digits)
    terms: dict = {}
    for t in data["terms"]:
        w = alpha.parse(t["word"])
        x = Fraction(t["coeff"])
        if numeric:
            v = ApproxReal.exact(x, bits)
            e = Fraction(t.get("err", "0"))
            v = ApproxReal(v.m, v.err + math.ceil(e * (1 << bits)), bits)
        else:
            v = x
        terms[w] = terms.get(w, 0) + v
    return TruncatedSeries(alpha, int(data["max_degree"]), terms)
