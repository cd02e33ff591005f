"""Exact commutative algebra for Kitt ideals, residual intersections and generalized Koszul complexes."""

from .polycore import GF, QQ, FieldSpec, MonomialOrder, ParseError, PolyMatrix, PolyRing, Polynomial, determinant, minors, parse_poly
from .gbengine import (
    FreeVector,
    Ideal,
    Submodule,
    colon,
    dim_quotient,
    groebner,
    height,
    hilbert_series,
    ideal_contains,
    ideal_equal,
    intersect,
    radical_member,
    syzygies,
)
from .koszul import ExtElement, KoszulComplex, wedge
from .kitt import (
    Representation,
    boundary_lemma_check,
    fitting_ideal,
    kitt_ideal,
    kitt_via_homology,
    specialization_check,
    verify_report,
)
from .bekoszul import LinearMap, be_complex, complex_homology, connecting_map, contract, verify_lift

__version__ = "0.1.0"
