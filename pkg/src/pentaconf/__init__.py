"""Exact and numeric tools for confluence relations of multiple zeta values
and the pentagon equation, checked degree by degree."""

from .exactalg import SparseMatrix, nullspace, rank, rref, span_compare
from .ncseries import A, A_Z, UF2, UF3, NcPoly, TruncatedSeries, pairing, shuffle
from .confluence import FiltrationLevel, icf_basis, ideal_generators, ist_basis, map_lambda, partial_z
from .associator import classify, equivalence_check, grt_compose

__version__ = "0.1.0"

__all__ = [
    "A", "A_Z", "UF2", "UF3", "FiltrationLevel", "NcPoly", "SparseMatrix", "TruncatedSeries",
    "classify", "equivalence_check", "grt_compose", "icf_basis", "ideal_generators", "ist_basis",
    "map_lambda", "nullspace", "pairing", "partial_z", "rank", "rref", "shuffle", "span_compare",
]
