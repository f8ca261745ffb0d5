"""Decision procedures for maps into the codimension-1 sphere.

Three questions are answered for a closed connected orientable triangulated
m-manifold M, writing n = m - 1 for the target sphere dimension:

* how many homotopy classes of maps M -> S^n sit over each degree class in
  H_1(M; Z): one when w_2 pairs nontrivially with the mod-2 reduction of
  integral H_2, two otherwise (m >= 4; the degree map is onto either way);
* for m = 3 the fiber over a class alpha in H_1 is in bijection with the
  cyclic group Z_{2d(alpha)}, d(alpha) the divisibility of the free part of
  alpha, with d = 0 meaning the infinite cyclic group;
* whether a class alpha in H_2 is the degree of some framed surface: for
  m >= 5 exactly when <w_2, rho_2(alpha)> = 0, for m = 4 exactly when the
  self-intersection alpha . alpha vanishes.

Hypothesis checks are strict; every violation names the failed hypothesis
rather than guessing an answer on inputs where the criteria do not apply.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .char_classes import (intersection_form, self_intersection,
                           stiefel_whitney, w2_criterion)
from .complex_model import SimplicialComplex, verify_closed_manifold
from .cup_steenrod import evaluate
from .errors import HypothesisViolation, InputError
from .homology_engine import (HomologyClassZ, HomologyGroup, cycle_of_class,
                              integral_homology)

__all__ = [
    "FiberDescriptor",
    "MapClassification",
    "RealizabilityVerdict",
    "classify_3manifold_fiber",
    "classify_codim1",
    "divisibility",
    "realizable_surface_class",
    "realizable_surface_class_4mfd",
]


@dataclass(frozen=True, eq=False)
class MapClassification:
    """Fiber structure of deg: [M^m, S^{m-1}] -> H_1(M; Z) for m >= 4.

    Every degree class has at least one preimage; ``fiber_size`` is the exact
    number over each class (1 iff ``criterion_bit`` is 1).  ``total_count``
    is |H_1| * fiber_size as a decimal string, or "infinite".
    """

    target_sphere_dim: int
    degree_group: HomologyGroup
    fiber_size: int
    criterion_bit: int
    total_count: str


@dataclass(frozen=True, eq=False)
class FiberDescriptor:
    """Fiber over one degree class on a 3-manifold: a set of size |Z_{2d}|.

    ``d`` is the divisibility of the free projection of ``alpha``; ``fiber``
    is the cyclic group tag, "Z" when d = 0.
    """

    alpha: HomologyClassZ
    d: int
    fiber: str


@dataclass(frozen=True, eq=False)
class RealizabilityVerdict:
    """Whether a degree-2 class is realized by a framed surface.

    ``witness_value`` is the evaluated obstruction: a bit for the pairing
    criterion (tag "1b", m >= 5), the self-intersection number for the form
    criterion (tag "2b", m = 4).  ``realizable`` iff it is zero.
    """

    alpha: HomologyClassZ
    realizable: bool
    witness_value: int
    theorem_tag: str


def _require_closed_connected_orientable(K: SimplicialComplex):
    """Shared hypothesis gate; raises naming the first failed hypothesis."""
    report = verify_closed_manifold(K)
    if not (report.is_pseudomanifold and report.is_strongly_connected):
        raise HypothesisViolation(
            "closed", report.detail or "pseudomanifold conditions fail")
    if not report.is_connected:
        raise HypothesisViolation(
            "connected", report.detail or "the vertex graph is disconnected")
    if not report.is_orientable:
        raise HypothesisViolation(
            "orientable",
            report.detail or "facet sign propagation is inconsistent")
    return report


def classify_codim1(K: SimplicialComplex) -> MapClassification:
    """Count homotopy classes over each degree class, for dim K >= 4."""
    m = K.dim
    if m == 3:
        raise HypothesisViolation(
            "dimension >= 4",
            "on a 3-manifold the fiber depends on the class; use "
            "classify_3manifold_fiber")
    if m < 3:
        raise HypothesisViolation("dimension >= 4", f"got dimension {m}")
    _require_closed_connected_orientable(K)
    bit = w2_criterion(K)
    fiber_size = 1 if bit else 2
    h1 = integral_homology(K, 1)
    order = h1.order
    total = "infinite" if order is None else str(order * fiber_size)
    return MapClassification(target_sphere_dim=m - 1, degree_group=h1,
                             fiber_size=fiber_size, criterion_bit=bit,
                             total_count=total)


def divisibility(h1: HomologyGroup, alpha: HomologyClassZ) -> int:
    """gcd of the free coordinates of alpha; 0 when they all vanish."""
    if len(alpha.free) != h1.rank:
        raise InputError(f"class has {len(alpha.free)} free coordinates, "
                         f"H_{h1.degree} has rank {h1.rank}")
    d = 0
    for c in alpha.free:
        d = gcd(d, c)
    return d


def classify_3manifold_fiber(K: SimplicialComplex,
                             alpha: HomologyClassZ) -> FiberDescriptor:
    """The fiber over a degree-1 class of a closed oriented 3-manifold."""
    if K.dim != 3:
        raise HypothesisViolation("dimension == 3", f"got dimension {K.dim}; "
                                  "for dimension >= 4 use classify_codim1")
    _require_closed_connected_orientable(K)
    if alpha.degree != 1:
        raise InputError(f"expected a degree-1 class, got degree "
                         f"{alpha.degree}")
    d = divisibility(integral_homology(K, 1), alpha)
    fiber = "Z" if d == 0 else f"Z_{2 * d}"
    return FiberDescriptor(alpha=alpha, d=d, fiber=fiber)


def realizable_surface_class(K: SimplicialComplex,
                             alpha: HomologyClassZ) -> RealizabilityVerdict:
    """Pairing criterion <w_2, rho_2 alpha> for dim K >= 5."""
    m = K.dim
    if m == 4:
        raise HypothesisViolation(
            "dimension >= 5",
            "on a 4-manifold realizability is the self-intersection "
            "criterion; use realizable_surface_class_4mfd")
    if m < 5:
        raise HypothesisViolation("dimension >= 5", f"got dimension {m}")
    _require_closed_connected_orientable(K)
    if alpha.degree != 2:
        raise InputError(f"expected a degree-2 class, got degree "
                         f"{alpha.degree}")
    h2 = integral_homology(K, 2)
    if len(alpha.free) != h2.rank or len(alpha.torsion) != len(h2.torsion):
        raise InputError(f"class coordinates ({len(alpha.free)} free, "
                         f"{len(alpha.torsion)} torsion) do not match H_2 "
                         f"({h2.rank} free, {len(h2.torsion)} torsion)")
    cycle = alpha.cycle
    if cycle is None:
        cycle = cycle_of_class(K, alpha)
    w2 = stiefel_whitney(K)[2].cochain
    witness = evaluate(w2, [c % 2 for c in cycle])
    return RealizabilityVerdict(alpha=alpha, realizable=witness == 0,
                                witness_value=witness, theorem_tag="1b")


def realizable_surface_class_4mfd(K: SimplicialComplex,
                                  alpha: HomologyClassZ) -> RealizabilityVerdict:
    """Self-intersection criterion alpha . alpha = 0 on a 4-manifold.

    Free coordinates of ``alpha`` refer to the published intersection-form
    basis (the hyperbolic one when the form is even).
    """
    if K.dim != 4:
        raise HypothesisViolation("dimension == 4", f"got dimension {K.dim}; "
                                  "for dimension >= 5 use "
                                  "realizable_surface_class")
    _require_closed_connected_orientable(K)
    if alpha.degree != 2:
        raise InputError(f"expected a degree-2 class, got degree "
                         f"{alpha.degree}")
    witness = self_intersection(intersection_form(K), alpha)
    return RealizabilityVerdict(alpha=alpha, realizable=witness == 0,
                                witness_value=witness, theorem_tag="2b")
