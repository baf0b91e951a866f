from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pentaconf.associator import (
    classify,
    confluence_pairing,
    equivalence_check,
    grt_compose,
    key_formula_sides,
    lie_dual_kernel,
)
from pentaconf.confluence import FiltrationLevel, basis_words, icf_basis
from pentaconf.ncseries import A, A_Z, UF2, NcPoly, TruncatedSeries, lie_basis, series_exp

F = Fraction


def comm_exp(c, N):
    return series_exp(TruncatedSeries(UF2, N, {"01": c, "10": -c}))


def random_commutator_grouplike(cs, N):
    """exp of a Lie series with no degree-1 part."""
    basis = [b for d in range(2, N + 1) for b in lie_basis(UF2, d)]
    lie = TruncatedSeries(UF2, N)
    for c, b in zip(cs, basis):
        lie = lie + TruncatedSeries(UF2, N, b.terms) * c
    return series_exp(lie)


rationals = st.fractions(min_value=-2, max_value=2, max_denominator=5)


def test_confluence_pairing_examples():
    one = TruncatedSeries.one(UF2, 3)
    assert all(v == 0 for vals in confluence_pairing(one, 3).values() for v in vals)
    s = comm_exp(F(3), 2)
    assert confluence_pairing(s, 2) == {2: []}
    bad = TruncatedSeries(UF2, 3, {"": 1, "001": 1})
    assert confluence_pairing(bad, 3)[3] == [1]
    with pytest.raises(ValueError):
        confluence_pairing(one, 4)


def test_classify_examples():
    assert classify(comm_exp(F(1, 2), 2)).classification == "M_like"
    assert classify(TruncatedSeries.one(UF2, 2)).classification == "GRT1_like"
    assert classify(series_exp(TruncatedSeries(UF2, 2, {"0": 1}))).classification == "neither"
    v = classify(comm_exp(F(-1, 3), 2))
    assert v.quadratic_coefficient == F(-1, 3)
    assert v.to_json()["truncated_membership_up_to_degree"] == 2


def test_classify_flags_confluence_violation():
    # a commutator-grouplike series with a weight-3 part that breaks the weight-3 relation
    lie3 = lie_basis(UF2, 3)[0]
    s = series_exp(TruncatedSeries(UF2, 3, {"01": 1, "10": -1}) + TruncatedSeries(UF2, 3, lie3.terms))
    v = classify(s)
    assert v.commutator_grouplike
    assert v.confluence_residual_rank == {2: 0, 3: 1}
    assert v.classification == "neither"


def test_grt_units():
    a = comm_exp(F(2, 3), 4)
    one = TruncatedSeries.one(UF2, 4)
    assert grt_compose(a, one) == a
    assert grt_compose(one, a) == a


@settings(max_examples=8, deadline=None)
@given(st.lists(rationals, min_size=5, max_size=5), st.lists(rationals, min_size=5, max_size=5), st.lists(rationals, min_size=5, max_size=5))
def test_grt_composition_is_associative(x, y, z):
    a, b, c = (random_commutator_grouplike(v, 4) for v in (x, y, z))
    assert grt_compose(grt_compose(a, b), c) == grt_compose(a, grt_compose(b, c))


def test_grt_truncation_mismatch():
    with pytest.raises(ValueError):
        grt_compose(TruncatedSeries.one(UF2, 2), TruncatedSeries.one(UF2, 3))


@pytest.mark.parametrize("d,dim", [(2, 1), (3, 1), (4, 0)])
def test_equivalence_low_degrees(d, dim):
    r = equivalence_check(d)
    assert (r.dim_pentagon_side, r.dim_confluence_side, r.equal) == (dim, dim, True)


def test_quadratic_cut_only_matters_in_degree_two():
    assert equivalence_check(2).dim_with_quadratic_cut == 0
    assert equivalence_check(3).dim_with_quadratic_cut == 1


def test_lie_dual_kernel_without_functionals_is_everything():
    assert len(lie_dual_kernel(4, [])) == len(lie_basis(UF2, 4))


@settings(max_examples=6, deadline=None)
@given(st.lists(rationals, min_size=3, max_size=3))
def test_key_formula_exact_for_commutator_grouplike(cs):
    """Both sides agree exactly for any exp(Lie) with no linear part, degree <= 3."""
    phi = random_commutator_grouplike(cs, 3)
    for d in range(1, 4):
        for w in basis_words(FiltrationLevel.A0z, d):
            lhs, rhs = key_formula_sides(NcPoly.word(A_Z, w), phi)
            assert lhs == rhs, w
