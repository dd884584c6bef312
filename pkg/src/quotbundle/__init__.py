"""Exact computer-algebra workbench for the dual quotient bundle on G(2,n).

Builds the Plucker and quotient-bundle ideals, verifies their Groebner
bases against Stanley-Reisner ideals of polygon-diagonal complexes,
extracts and checks syzygies, computes graded cotangent-cohomology
slices, and replays the lattice-polytope lower-hull example -- all in
exact rational arithmetic.
"""

__version__ = "0.1.0"

from .complexes import (
    SimplicialComplex,
    associahedron,
    join,
    kn_complex,
    stanley_reisner_ideal,
    stellar_subdivision,
)
from .cotangent import (
    T1Slice,
    normal_form_factorization_report,
    t1_slice,
    t1_window,
)
from .grammar import format_polynomial, parse_polynomial
from .grassmann import (
    IdealSpec,
    bundle_generators,
    degree_check,
    pfaffian,
    plucker_generators,
    quadric_f,
    verify_initial_ideal,
)
from .groebner import (
    GroebnerBasis,
    ReductionTrace,
    SyzygyVector,
    buchberger_complete,
    buchberger_criterion,
    initial_ideal,
    reduce,
    s_polynomial,
    standard_monomials,
    syzygies_from_traces,
)
from .hull import (
    LatticePolytope,
    complexes_isomorphic,
    k6_polytope_points,
    lower_facets,
    reflexivity_check,
    triangulation_complex,
)
from .orders import MonomialOrder, circular_weight_order, layered_order
from .poly import Monomial, Polynomial, Ring, Variable, ring
from .syzygies import euler_syzygy, syzygy_r5, syzygy_rijk, verify_generation
