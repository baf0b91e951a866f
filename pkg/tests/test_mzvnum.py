from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from pentaconf.mzvnum import (
    ApproxReal,
    L_num,
    bits_for_digits,
    kz_series,
    mzv,
    numeric_check,
    series_from_json,
    series_to_json,
    tolerance_zero,
)
from pentaconf.ncseries import A, UF2, NcPoly, TruncatedSeries, grouplike_class, pairing, shuffle

DIGITS = 40
BITS = bits_for_digits(DIGITS)


def close(x, target, tol=10.0 ** -(DIGITS - 5)):
    mpmath.mp.dps = DIGITS + 20
    return abs(x.to_mpf(DIGITS + 20) - target) < tol and float(x.error()) < tol


# ---- interval arithmetic -------------------------------------------------

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=97)


@settings(max_examples=200, deadline=None)
@given(fracs, fracs, fracs)
def test_enclosures_contain_exact_results(a, b, c):
    x, y = ApproxReal.exact(a, 64), ApproxReal.exact(b, 64)
    assert x.contains(a) and y.contains(b)
    assert (x + y).contains(a + b)
    assert (x - y).contains(a - b)
    assert (x * y).contains(a * b)
    assert (x * c).contains(a * c)
    assert (c - x).contains(c - a)
    assert x.rescale(32).contains(a)
    assert x.rescale(96).contains(a)


def test_exact_zero_is_the_only_falsy_value():
    assert not ApproxReal(0, 0, 10)
    assert ApproxReal(0, 1, 10)
    with pytest.raises(ValueError):
        ApproxReal(0, -1, 10)


def test_tolerance_zero():
    z = tolerance_zero(1e-10)
    assert z(ApproxReal(0, 1, 64))
    assert not z(ApproxReal(1 << 60, 0, 64))
    assert z(Fraction(0))


# ---- values --------------------------------------------------------------


def test_zeta_two_and_three():
    mpmath.mp.dps = DIGITS + 20
    assert close(mzv([2], DIGITS), mpmath.pi ** 2 / 6)
    assert close(mzv([3], DIGITS), mpmath.zeta(3))
    assert close(mzv([5], DIGITS), mpmath.zeta(5))


@pytest.mark.parametrize(
    "idx,closed",
    [
        ((2, 1), lambda: mpmath.zeta(3)),
        ((3, 1), lambda: mpmath.pi ** 4 / 360),
        ((2, 2), lambda: mpmath.pi ** 4 / 120),
        ((2, 1, 1), lambda: mpmath.zeta(4)),
        ((4, 1), lambda: 2 * mpmath.zeta(5) - mpmath.zeta(2) * mpmath.zeta(3)),
    ],
)
def test_closed_forms(idx, closed):
    mpmath.mp.dps = DIGITS + 20
    assert close(mzv(idx, DIGITS), closed())


def test_stuffle_identity_depth_one():
    lhs = mzv([2], DIGITS) * mzv([3], DIGITS)
    rhs = mzv([2, 3], DIGITS) + mzv([3, 2], DIGITS) + mzv([5], DIGITS)
    assert (lhs - rhs).upper_abs() < Fraction(1, 10 ** (DIGITS - 3))


def test_inadmissible_index():
    with pytest.raises(ValueError):
        mzv([1, 2])
    with pytest.raises(ValueError):
        mzv([])


def test_L_sign_rule():
    mpmath.mp.dps = DIGITS + 20
    assert close(L_num(NcPoly.parse(A, "e0e1"), DIGITS), -mpmath.pi ** 2 / 6)
    assert close(L_num(NcPoly.parse(A, "e0e0e1"), DIGITS), -mpmath.zeta(3))
    assert close(L_num(NcPoly.one(A), DIGITS), mpmath.mpf(1))


def test_L_respects_shuffle():
    u, v = NcPoly.parse(A, "e0e1"), NcPoly.parse(A, "e0e0e1")
    lhs = L_num(shuffle(u, v), DIGITS)
    rhs = L_num(u, DIGITS) * L_num(v, DIGITS)
    assert (lhs - rhs).upper_abs() < Fraction(1, 10 ** (DIGITS - 3))


# ---- the KZ witness ------------------------------------------------------


@pytest.fixture(scope="module")
def phi():
    return kz_series(4, DIGITS)


def test_kz_coefficients(phi):
    mpmath.mp.dps = DIGITS + 20
    assert close(phi.coefficient("01"), -mpmath.pi ** 2 / 6)
    assert not phi.coefficient("0") and not phi.coefficient("1")
    assert phi.constant().contains(1)


def test_kz_grouplike_defect(phi):
    tol = tolerance_zero(10.0 ** -(DIGITS - 5))
    defect = pairing(shuffle(NcPoly.parse(A, "e0"), NcPoly.parse(A, "e1")), phi)
    assert tol(defect)
    assert grouplike_class(phi, tol) == "commutator_grouplike"


def test_numeric_checks_small():
    tol = 10.0 ** -(DIGITS - 10)
    assert numeric_check("pentagon", 2, DIGITS).passed(tol)
    conf = numeric_check("confluence", 2, DIGITS)
    assert conf.count == 0 and conf.passed(tol)
    with pytest.raises(ValueError):
        numeric_check("hexagon", 2, DIGITS)


def test_key_formula_on_first_word():
    from pentaconf.associator import key_formula_sides
    from pentaconf.ncseries import A_Z

    mpmath.mp.dps = DIGITS + 20
    s = kz_series(2, DIGITS)
    lhs, rhs = key_formula_sides(NcPoly.parse(A_Z, "e0ez"), s)
    assert close(lhs, -mpmath.pi ** 2 / 6)
    assert (lhs - rhs).upper_abs() < Fraction(1, 10 ** 30)


def test_series_json_roundtrip(phi):
    data = series_to_json(phi, DIGITS)
    back = series_from_json(data, DIGITS)
    assert back.N == phi.N and set(back.terms) == set(phi.terms)
    for w, c in phi.terms.items():
        d = back.terms[w]
        assert (c - d).upper_abs() < Fraction(1, 10 ** (DIGITS - 2))
        assert d.contains(c.to_fraction())


def test_exact_series_json():
    s = TruncatedSeries(UF2, 2, {"": 1, "01": Fraction(1, 2), "10": Fraction(-1, 2)})
    assert series_from_json(series_to_json(s, 20), 20) == s


def test_orientation_choice():
    """Both orientations pass through degree 3; only the unswapped one survives degree 4."""
    tol = 10.0 ** -(DIGITS - 10)
    assert numeric_check("pentagon", 3, DIGITS, series=kz_series(3, DIGITS, swap=True)).passed(tol)
    good = numeric_check("pentagon", 4, DIGITS, series=kz_series(4, DIGITS))
    bad = numeric_check("pentagon", 4, DIGITS, series=kz_series(4, DIGITS, swap=True))
    assert good.passed(tol)
    assert bad.max_value > 1
