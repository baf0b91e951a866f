from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from pentaconf import bar5, p5
from pentaconf.bar5 import (
    BAR,
    dec2,
    dec3,
    h2_relations,
    i3,
    integrable_basis,
    is_integrable,
    j2,
    j3,
    letter_projection,
    tensor_shuffle,
    tilde_partial,
)
from pentaconf.confluence import FiltrationLevel, basis_words, partial_z
from pentaconf.exactalg import span_compare
from pentaconf.ncseries import A, A_Z, NcPoly, shuffle

Z, W = sympy.symbols("z w")
# the five logarithmic forms, as the functions whose dlog they are
FORMS = {"a": W, "b": W - Z, "c": W - 1, "d": Z, "e": Z - 1}


def bar(text):
    return NcPoly.parse(BAR, text)


def _wedge(x, y):
    fx, fy = FORMS[x], FORMS[y]
    ax, bx = sympy.diff(fx, Z) / fx, sympy.diff(fx, W) / fx
    ay, by = sympy.diff(fy, Z) / fy, sympy.diff(fy, W) / fy
    return sympy.together(ax * by - bx * ay)


def test_h2_relations_match_symbolic_wedges():
    """Relations among the ten wedge products, found by clearing denominators."""
    pairs = list(combinations(BAR.codes, 2))
    forms = [_wedge(x, y) for x, y in pairs]
    den = sympy.prod(FORMS.values())
    polys = [sympy.Poly(sympy.cancel(f * den), Z, W) for f in forms]
    monos = sorted({m for p in polys for m in p.as_dict()})
    m = sympy.Matrix([[p.as_dict().get(mo, 0) for p in polys] for mo in monos])
    oracle = [[int(x) for x in v] for v in m.nullspace()]
    mine = []
    for rel in h2_relations():
        row = [0] * len(pairs)
        for (x, y), c in rel.items():
            if (x, y) in pairs:
                row[pairs.index((x, y))] += c
            else:
                row[pairs.index((y, x))] -= c
        mine.append(row)
    assert len(oracle) == 4
    assert span_compare(mine, oracle).relation == "equal"


def test_integrable_examples():
    assert len(integrable_basis(1)) == 5
    assert len(integrable_basis(2)) == 19
    assert is_integrable(bar("e21e24"))
    assert not is_integrable(bar("e21e23"))


@pytest.mark.parametrize("d", range(1, 5))
def test_integrable_dimension_matches_hilbert(d):
    assert len(integrable_basis(d)) == 3 ** (d + 1) - 2 ** (d + 1)


@pytest.mark.parametrize("d", [2, 3])
def test_integrable_elements_annihilate_the_ideal(d):
    # <b | x r y> = 0 for integrable b and every substituted commutator r
    rels = p5.substituted_relations()
    for b in integrable_basis(d):
        for r in rels:
            for i in range(d - 1):
                for x in p5.P5.words(i):
                    for y in p5.P5.words(d - 2 - i):
                        xry = NcPoly.word(p5.P5, x) * r * NcPoly.word(p5.P5, y)
                        assert p5.bar_pairing(b, xry) == 0


def test_letter_projection_examples():
    assert letter_projection("r2", bar("e23")) == NcPoly.parse(A_Z, "ez")
    assert not letter_projection("r2", bar("e34"))
    assert letter_projection("pr3_of_dec2", bar("e34")) == NcPoly.parse(A, "-e0 + e1")
    with pytest.raises(ValueError):
        letter_projection("r9", bar("e21"))


def test_dec_examples():
    assert dec2(bar("e21")).as_dict() == {("0", ""): 1}
    got = dec2(bar("e31")).as_dict()
    assert all(left == "" for left, _ in got) and got == {("", "0"): -1}
    with pytest.raises(ValueError):
        dec2(bar("e21e23"))


@pytest.mark.parametrize("d", [2, 3])
def test_dec_is_a_shuffle_homomorphism(d):
    basis1 = integrable_basis(1)
    for a in basis1:
        for b in integrable_basis(d - 1)[:12]:
            prod = NcPoly(BAR, bar5.shuffle_terms(a.terms, b.terms))
            for dec in (dec2, dec3):
                assert dec(prod).as_dict() == tensor_shuffle(dec(a), dec(b))


def test_section_examples():
    assert j2(NcPoly.parse(A_Z, "e0")) == bar("e21")
    assert j2(NcPoly.parse(A_Z, "ez")) == bar("e23 - e31")
    assert j3(NcPoly.parse(A_Z, "e1 - ez")) == bar("-e23 + e34")
    assert i3(NcPoly.parse(A, "e0")) == bar("e21")
    with pytest.raises(ValueError):
        i3(NcPoly.parse(A_Z, "ez"))


@pytest.mark.parametrize("d", range(1, 4))
def test_sections_invert_dec(d):
    for w in A_Z.words(d):
        l = NcPoly.word(A_Z, w)
        assert dec2(j2(l)).as_dict() == {(w, ""): 1}
        assert dec3(j3(l)).as_dict() == {(w, ""): 1}
        assert letter_projection("r2", j2(l)) == l


def test_tilde_partial_examples():
    assert tilde_partial(0, bar("e31e21")) == bar("e21")
    assert tilde_partial(1, bar("e23e24")) == bar("e24")


@pytest.mark.parametrize("d", range(1, 5))
def test_tilde_partial_extends_partial(d):
    for w in A_Z.words(d):
        l = NcPoly.word(A_Z, w)
        jl = j2(l)
        for alpha in (0, 1):
            assert tilde_partial(alpha, jl) == j2(partial_z(alpha, l))


@pytest.mark.parametrize("d", range(1, 4))
def test_b1_decomposes_into_a1z_tensor_a1(d):
    b1 = bar5.b1_basis(d)
    for b in b1:
        for (x, y), _ in dec2(b).terms:
            assert not x or x[-1] in "1z"
            assert not y or y[-1] == "1"
    expected = sum(
        len(basis_words(FiltrationLevel.A1z, k)) * len(basis_words(FiltrationLevel.A1, d - k)) for k in range(d + 1)
    )
    assert len(b1) == expected


@pytest.mark.parametrize("d", range(1, 4))
def test_generating_set_and_restriction(d):
    assert bar5.generating_set_check(d).relation == "equal"
    inter, dim_ist, extra = bar5.j2_ist_check(d)
    assert inter == dim_ist and extra == 0


words_z = st.integers(0, 2).flatmap(lambda n: st.text(alphabet=A_Z.codes, min_size=n, max_size=n))


@settings(max_examples=30, deadline=None)
@given(words_z, words_z)
def test_j2_respects_shuffle(u, v):
    pu, pv = NcPoly.word(A_Z, u), NcPoly.word(A_Z, v)
    lhs = j2(shuffle(pu, pv))
    rhs = NcPoly(BAR, bar5.shuffle_terms(j2(pu).terms, j2(pv).terms))
    assert lhs == rhs
