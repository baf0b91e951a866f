"""Associator predicates, the GRT composition law and the degreewise equivalence check.

All membership statements are truncated: a series known up to degree ``N``
is tested against the conditions up to degree ``N`` and nothing more.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from .confluence import icf_basis, map_lambda
from .exactalg import SparseMatrix, frac_str, nullspace
from .ncseries import (
    A,
    UF2,
    NcPoly,
    TruncatedSeries,
    grouplike_class,
    is_one,
    lie_basis,
    pairing,
    series_inverse,
    substitute_series,
)


def _exact_zero(x) -> bool:
    return not x


def confluence_pairing(s: TruncatedSeries, maxweight: int) -> Dict[int, List[object]]:
    """``{w: [<l|s> for l in icf_basis(w)]}`` for ``2 <= w <= maxweight``."""
    if maxweight > s.N:
        raise ValueError("weight %d exceeds the truncation %d" % (maxweight, s.N))
    if s.alphabet is not UF2:
        raise ValueError("expected a series in f0, f1")
    return {w: [pairing(l, s) for l in icf_basis(w).rows] for w in range(2, maxweight + 1)}


@dataclass
class MembershipVerdict:
    commutator_grouplike: bool
    quadratic_coefficient: object
    confluence_residual_rank: Dict[int, int]
    classification: str
    truncation: int
    residuals: Dict[int, List[object]] = field(default_factory=dict, repr=False)

    def to_json(self, fmt: Callable[[object], object] = frac_str) -> dict:
        return {
            "commutator_grouplike": self.commutator_grouplike,
            "quadratic_coefficient": fmt(self.quadratic_coefficient),
            "confluence_residual_rank": {str(k): v for k, v in self.confluence_residual_rank.items()},
            "classification": self.classification,
            "truncated_membership_up_to_degree": self.truncation,
        }


def classify(s: TruncatedSeries, is_zero: Optional[Callable[[object], bool]] = None) -> MembershipVerdict:
    """Truncated membership in the associator set or in GRT_1.

    ``M_like``: commutator group-like, ``<e0e1|s> != 0`` and every
    confluence relation of weight ``<= N`` pairs to zero.  ``GRT1_like``:
    the same with ``<e0e1|s> = 0``.  ``is_zero`` decides numerical zeros.
    """
    is_zero = is_zero or _exact_zero
    try:
        cls = grouplike_class(s, is_zero)
    except ValueError:
        cls = "not_grouplike"
    cg = cls == "commutator_grouplike"
    q = s.coefficient("01") if s.N >= 2 else 0
    res = confluence_pairing(s, s.N) if s.N >= 2 else {}
    bad = {w: sum(1 for v in vals if not is_zero(v)) for w, vals in res.items()}
    if not cg or any(bad.values()):
        verdict = "neither"
    elif is_zero(q):
        verdict = "GRT1_like"
    else:
        verdict = "M_like"
    return MembershipVerdict(cg, q, bad, verdict, s.N, res)


def grt_compose(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """``a o b = a(b f0 b^-1, f1) b``."""
    if a.N != b.N:
        raise ValueError("truncation mismatch: %d vs %d" % (a.N, b.N))
    if not (is_one(a.constant()) and is_one(b.constant())):
        raise ValueError("both series need constant term 1")
    N = a.N
    f0 = TruncatedSeries(UF2, N, {"0": Fraction(1)})
    f1 = TruncatedSeries(UF2, N, {"1": Fraction(1)})
    conj = b * f0 * series_inverse(b)
    return substitute_series(a, {"0": conj, "1": f1}) * b


def lie_dual_kernel(d: int, functionals: List[NcPoly]) -> List[NcPoly]:
    """Degree-``d`` Lie elements on which every functional (over ``A``) pairs to zero."""
    basis = lie_basis(UF2, d)
    rows = []
    for l in functionals:
        rows.append({j: pairing(l, psi) for j, psi in enumerate(basis)})
    ker = nullspace(SparseMatrix(rows, len(basis)))
    out = []
    for v in ker:
        poly = NcPoly(UF2)
        for j, x in v.items():
            poly = poly + basis[j] * x
        out.append(poly)
    return out


@dataclass(frozen=True)
class EquivalenceRecord:
    degree: int
    dim_pentagon_side: int
    dim_confluence_side: int
    equal: bool
    dim_with_quadratic_cut: int

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "dim_pentagon_side": self.dim_pentagon_side,
            "dim_confluence_side": self.dim_confluence_side,
            "equal": self.equal,
            "dim_with_quadratic_cut": self.dim_with_quadratic_cut,
        }


def equivalence_check(d: int) -> EquivalenceRecord:
    """Compare the linearized pentagon solutions with the Lie elements killed by ``I_CF,d``.

    The comparison itself uses confluence alone; ``dim_with_quadratic_cut``
    additionally imposes ``<e0e1|psi> = 0`` (only matters in degree 2).
    """
    from .p5 import linear_pentagon_space

    if d < 2:
        raise ValueError("degree must be >= 2")
    pent, _ = linear_pentagon_space(d)
    rows = list(icf_basis(d).rows)
    conf = len(lie_dual_kernel(d, rows))
    if d == 2:
        cut = len(lie_dual_kernel(d, rows + [NcPoly.word(A, "01")]))
    else:
        cut = conf
    return EquivalenceRecord(d, pent, conf, pent == conf, cut)


def key_formula_sides(l: NcPoly, phi: TruncatedSeries):
    """``(<lambda(l)|phi>, <j2(l)|phi_243^-1 phi_215 phi_534>)`` for ``l`` in ``A_z^0``."""
    from .bar5 import j2
    from .p5 import bar_pairing, embed_phi

    lhs = pairing(map_lambda(l), phi)
    inv = series_inverse(phi)
    x = embed_phi(2, 4, 3, inv) * embed_phi(2, 1, 5, phi) * embed_phi(5, 3, 4, phi)
    rhs = bar_pairing(j2(l), x.lift())
    return lhs, rhs
