"""Sphere-map classification and framed-class realizability for triangulations.

The pipeline: parse or build a closed manifold triangulation, compute its
integral and mod-2 (co)homology through exact Smith reductions, evaluate cup
and cup-i products over the global vertex order, derive Wu and
Stiefel-Whitney classes, and feed the results to the classification and
realizability criteria.
"""

from .char_classes import (IntersectionForm, Mod2CohomologyClass, SWClasses,
                           WuClasses, intersection_form, mod2_pairing,
                           self_intersection, stiefel_whitney, w2_criterion,
                           wu_class, wu_classes)
from .classifier import (FiberDescriptor, MapClassification,
                         RealizabilityVerdict, classify_3manifold_fiber,
                         classify_codim1, divisibility,
                         realizable_surface_class,
                         realizable_surface_class_4mfd)
from .complex_model import (ManifoldReport, SimplicialComplex,
                            boundary_of_simplex, load_complex, parse_complex,
                            staircase_product, verify_closed_manifold)
from .cup_steenrod import (Cochain, CohomologyBasis, cap_with_fundamental,
                           coboundary, cohomology_basis, cup, cup_i, evaluate,
                           express_in_basis, is_coboundary, is_cocycle,
                           steenrod_square, unit_cochain, zero_cochain)
from .errors import HypothesisViolation, InputError
from .homology_engine import (FundamentalClass, HomologyClassZ, HomologyGroup,
                              Mod2Homology, Rho2Map, boundary_matrix,
                              class_of_cycle, cycle_of_class,
                              fundamental_cycle, homology_class,
                              integral_homology, mod2_homology,
                              rho2_on_homology)

__version__ = "0.1.0"

__all__ = [
    "Cochain",
    "CohomologyBasis",
    "FiberDescriptor",
    "FundamentalClass",
    "HomologyClassZ",
    "HomologyGroup",
    "HypothesisViolation",
    "InputError",
    "IntersectionForm",
    "ManifoldReport",
    "MapClassification",
    "Mod2CohomologyClass",
    "Mod2Homology",
    "RealizabilityVerdict",
    "Rho2Map",
    "SWClasses",
    "SimplicialComplex",
    "WuClasses",
    "boundary_matrix",
    "boundary_of_simplex",
    "cap_with_fundamental",
    "class_of_cycle",
    "classify_3manifold_fiber",
    "classify_codim1",
    "coboundary",
    "cohomology_basis",
    "cup",
    "cup_i",
    "cycle_of_class",
    "divisibility",
    "evaluate",
    "express_in_basis",
    "fundamental_cycle",
    "homology_class",
    "integral_homology",
    "intersection_form",
    "is_coboundary",
    "is_cocycle",
    "load_complex",
    "mod2_homology",
    "mod2_pairing",
    "parse_complex",
    "realizable_surface_class",
    "realizable_surface_class_4mfd",
    "rho2_on_homology",
    "self_intersection",
    "staircase_product",
    "steenrod_square",
    "stiefel_whitney",
    "unit_cochain",
    "verify_closed_manifold",
    "w2_criterion",
    "wu_class",
    "wu_classes",
    "zero_cochain",
]
