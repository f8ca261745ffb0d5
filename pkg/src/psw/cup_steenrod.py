"""Cochain products on ordered simplices: cup, cup-i, Steenrod squares.

All products are evaluated through interval cuts of the vertex positions of a
simplex in the global vertex order.  The plain cup product takes the front
face for the left factor and the back face for the right factor; the cup-i
product sums over all splittings of the positions into i+2 consecutive
blocks, giving the alternating blocks to the two factors.  The cut patterns
depend only on the degrees involved, so they are computed once and shared
across simplices and complexes.

Cohomology bases come from the same chained Smith reduction as homology,
applied to the coboundary maps; over Z only the free part is exposed (the
torsion of integral cohomology is not needed by any consumer here, and the
reduction still certifies membership of coboundaries).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Sequence

from .complex_model import SimplicialComplex
from .errors import InputError
from .homology_engine import (FundamentalClass, SubquotientReduction,
                              boundary_triples)

__all__ = [
    "Cochain",
    "CohomologyBasis",
    "cap_with_fundamental",
    "coboundary",
    "cohomology_basis",
    "cup",
    "cup_i",
    "evaluate",
    "express_in_basis",
    "is_coboundary",
    "is_cocycle",
    "steenrod_square",
    "unit_cochain",
    "zero_cochain",
]

_RINGS = ("Z", "Z2")


class Cochain:
    """Cochain of one degree with coefficients over the sorted k-skeleton.

    Degrees outside 0..dim are allowed as formal zero cochains with an empty
    coefficient tuple (the cochain groups there are zero); they arise from
    Steenrod squares past the top dimension.
    """

    __slots__ = ("complex", "degree", "ring", "coeffs")

    def __init__(self, complex: SimplicialComplex, degree: int, ring: str,
                 coeffs: Sequence[int]):
        if ring not in _RINGS:
            raise InputError(f"unknown ring {ring!r}, expected 'Z' or 'Z2'")
        expected = (complex.n_simplices(degree)
                    if 0 <= degree <= complex.dim else 0)
        coeffs = tuple(c % 2 for c in coeffs) if ring == "Z2" else tuple(coeffs)
        if len(coeffs) != expected:
            raise InputError(f"degree-{degree} cochain needs {expected} "
                             f"coefficients, got {len(coeffs)}")
        self.complex = complex
        self.degree = degree
        self.ring = ring
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "Cochain") -> "Cochain":
        _check_compatible(self, other)
        if self.degree != other.degree:
            raise InputError("cochain degrees differ")
        return Cochain(self.complex, self.degree, self.ring,
                       [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c: int) -> "Cochain":
        return Cochain(self.complex, self.degree, self.ring,
                       [c * v for v in self.coeffs])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.complex is other.complex and self.degree == other.degree
                and self.ring == other.ring and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((id(self.complex), self.degree, self.ring, self.coeffs))

    def __repr__(self) -> str:
        return (f"Cochain({self.complex.name!r}, degree={self.degree}, "
                f"ring={self.ring}, support={sum(1 for c in self.coeffs if c)})")


def _check_compatible(a: Cochain, b: Cochain) -> None:
    if a.complex is not b.complex:
        raise InputError("cochains live on different complexes")
    if a.ring != b.ring:
        raise InputError(f"ring mismatch: {a.ring} vs {b.ring}")


def zero_cochain(K: SimplicialComplex, degree: int, ring: str = "Z2") -> Cochain:
    n = K.n_simplices(degree) if 0 <= degree <= K.dim else 0
    return Cochain(K, degree, ring, (0,) * n)


def unit_cochain(K: SimplicialComplex, ring: str = "Z2") -> Cochain:
    """The all-ones 0-cochain, a cocycle representing 1 in H^0."""
    return Cochain(K, 0, ring, (1,) * K.n_simplices(0))


def coboundary(a: Cochain) -> Cochain:
    """delta(a), the transpose action of the boundary map one degree up."""
    K = a.complex
    k = a.degree
    if k + 1 > K.dim or k < 0:
        return zero_cochain(K, k + 1, a.ring)
    out = [0] * K.n_simplices(k + 1)
    if 0 <= k <= K.dim:
        for r, c, v in boundary_triples(K, k + 1):
            x = a.coeffs[r]
            if x:
                out[c] += v * x
    if a.ring == "Z2":
        out = [x % 2 for x in out]
    return Cochain(K, k + 1, a.ring, out)


def is_cocycle(a: Cochain) -> bool:
    return coboundary(a).is_zero()


def evaluate(a: Cochain, chain: Sequence[int]) -> int:
    """Kronecker pairing of a cochain with a chain vector of equal degree."""
    n = (a.complex.n_simplices(a.degree)
         if 0 <= a.degree <= a.complex.dim else 0)
    if len(chain) != n:
        raise InputError(f"chain length {len(chain)} != {n} simplices in "
                         f"degree {a.degree}")
    total = sum(x * y for x, y in zip(a.coeffs, chain))
    return total % 2 if a.ring == "Z2" else total


# -- products -----------------------------------------------------------------

def cup(a: Cochain, b: Cochain) -> Cochain:
    """Front-face/back-face cup product (sign-free over Z and Z2)."""
    _check_compatible(a, b)
    K = a.complex
    p, q = a.degree, b.degree
    n = p + q
    if p < 0 or q < 0 or n > K.dim:
        return zero_cochain(K, n, a.ring)
    idx_p = K.simplex_index(p)
    idx_q = K.simplex_index(q)
    ca, cb = a.coeffs, b.coeffs
    out = [0] * K.n_simplices(n)
    for pos, simplex in enumerate(K.skeleton(n)):
        x = ca[idx_p[simplex[:p + 1]]]
        if x:
            out[pos] = x * cb[idx_q[simplex[p:]]]
    if a.ring == "Z2":
        out = [x % 2 for x in out]
    return Cochain(K, n, a.ring, out)


@lru_cache(maxsize=None)
def _cut_patterns(p: int, q: int, i: int) -> tuple[tuple[tuple[int, ...],
                                                         tuple[int, ...]], ...]:
    """Index patterns for the cup-i product of degrees (p, q).

    Each pattern is a pair (left positions, right positions) into a simplex
    with p+q-i+1 vertices: the positions are split into i+2 consecutive
    closed blocks sharing endpoints, alternating blocks going to the left and
    right factors; only splits with exactly p+1 left and q+1 right positions
    survive.
    """
    n = p + q - i
    patterns = []
    for cuts in combinations_with_replacement(range(n + 1), i + 1):
        bounds = (0,) + cuts + (n,)
        left: set[int] = set()
        right: set[int] = set()
        for block in range(i + 2):
            chunk = range(bounds[block], bounds[block + 1] + 1)
            (left if block % 2 == 0 else right).update(chunk)
        if len(left) == p + 1 and len(right) == q + 1:
            patterns.append((tuple(sorted(left)), tuple(sorted(right))))
    return tuple(patterns)


def cup_i(a: Cochain, b: Cochain, i: int) -> Cochain:
    """Cup-i product over Z2; the i=0 case is the plain cup product."""
    _check_compatible(a, b)
    if a.ring != "Z2":
        raise InputError("cup-i products are defined over Z2 only")
    if i < 0:
        raise InputError(f"cup-i index must be non-negative, got {i}")
    K = a.complex
    p, q = a.degree, b.degree
    n = p + q - i
    if p < 0 or q < 0 or n < 0 or n > K.dim:
        return zero_cochain(K, n, "Z2")
    patterns = _cut_patterns(p, q, i)
    if not patterns:
        return zero_cochain(K, n, "Z2")
    idx_p = K.simplex_index(p)
    idx_q = K.simplex_index(q)
    ca, cb = a.coeffs, b.coeffs
    out = [0] * K.n_simplices(n)
    for pos, simplex in enumerate(K.skeleton(n)):
        total = 0
        for left, right in patterns:
            la = ca[idx_p[tuple(simplex[t] for t in left)]]
            if la:
                total ^= cb[idx_q[tuple(simplex[t] for t in right)]]
        out[pos] = total
    return Cochain(K, n, "Z2", out)


def steenrod_square(i: int, a: Cochain) -> Cochain:
    """Sq^i on a Z2 cocycle of degree p: a cup_{p-i} a, zero for i > p."""
    if a.ring != "Z2":
        raise InputError("Steenrod squares are defined over Z2 only")
    if i < 0:
        raise InputError(f"Steenrod square index must be non-negative, got {i}")
    if not is_cocycle(a):
        raise InputError("Steenrod square input is not a cocycle")
    p = a.degree
    if i > p:
        return zero_cochain(a.complex, p + i, "Z2")
    return cup_i(a, a, p - i)


# -- cohomology bases ---------------------------------------------------------

class CohomologyBasis:
    """Basis of H^k over Z2 (complete) or the free part of H^k over Z.

    ``representatives`` are cocycle cochains; ``reduction`` is the chained
    Smith presentation of ker(delta_k)/im(delta_{k-1}) that produced them,
    kept for coordinate and coboundary-membership queries.
    """

    __slots__ = ("complex", "degree", "ring", "representatives", "reduction")

    def __init__(self, complex: SimplicialComplex, degree: int, ring: str,
                 representatives: tuple[Cochain, ...],
                 reduction: SubquotientReduction):
        self.complex = complex
        self.degree = degree
        self.ring = ring
        self.representatives = representatives
        self.reduction = reduction

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    def __repr__(self) -> str:
        return (f"CohomologyBasis({self.complex.name!r}, degree={self.degree}, "
                f"ring={self.ring}, dimension={self.dimension})")


def cohomology_basis(K: SimplicialComplex, k: int,
                     ring: str = "Z2") -> CohomologyBasis:
    """Cached basis of H^k(K) from the reduction of the coboundary maps."""
    if ring not in _RINGS:
        raise InputError(f"unknown ring {ring!r}, expected 'Z' or 'Z2'")
    if not 0 <= k <= K.dim:
        raise InputError(f"cohomology degree {k} out of range 0..{K.dim}")
    key = ("cohomology_basis", k, ring)
    cached = K._cache.get(key)
    if cached is not None:
        return cached
    mod = 2 if ring == "Z2" else 0
    n_space = K.n_simplices(k)
    if k < K.dim:
        outer_rows = K.n_simplices(k + 1)
        outer = [(c, r, v) for r, c, v in boundary_triples(K, k + 1)]
    else:
        outer_rows = 0
        outer = []
    if k >= 1:
        inner_dim = K.n_simplices(k - 1)
        inner_cols: list[dict[int, int]] = [dict() for _ in range(inner_dim)]
        for r, c, v in boundary_triples(K, k):
            inner_cols[r][c] = v
    else:
        inner_dim = 0
        inner_cols = []
    red = SubquotientReduction(n_space, outer_rows, outer, inner_cols,
                               inner_dim, mod=mod)
    reps = tuple(Cochain(K, k, ring, red.generator_chain(t))
                 for t in red.free_positions)
    basis = CohomologyBasis(K, k, ring, reps, red)
    K._cache[key] = basis
    return basis


def express_in_basis(a: Cochain, basis: CohomologyBasis) -> tuple[int, ...]:
    """Coordinates of a cocycle's class in the basis; coboundaries give zero."""
    if a.complex is not basis.complex:
        raise InputError("cocycle and basis live on different complexes")
    if a.degree != basis.degree or a.ring != basis.ring:
        raise InputError(f"cocycle is degree {a.degree} over {a.ring}, basis "
                         f"is degree {basis.degree} over {basis.ring}")
    free, torsion = basis.reduction.coordinates_of(a.coeffs)
    if any(torsion):
        raise InputError("cocycle class has torsion components outside the "
                         "free basis")
    return free


def is_coboundary(a: Cochain) -> bool:
    """Whether a cocycle represents zero in cohomology."""
    basis = cohomology_basis(a.complex, a.degree, a.ring)
    free, torsion = basis.reduction.coordinates_of(a.coeffs)
    return not any(free) and not any(torsion)


# -- cap product --------------------------------------------------------------

def cap_with_fundamental(a: Cochain, fund: FundamentalClass) -> list[int]:
    """a capped with the fundamental class: a chain of degree dim - deg(a).

    Each facet contributes its orientation sign (integral) or 1 (mod 2) times
    the value of ``a`` on the front face, placed on the back face.
    """
    K = a.complex
    m = K.dim
    k = a.degree
    if not 0 <= k <= m:
        raise InputError(f"cap degree {k} out of range 0..{m}")
    weights = fund.integral if a.ring == "Z" else fund.mod2
    idx_front = K.simplex_index(k)
    idx_back = K.simplex_index(m - k)
    ca = a.coeffs
    out = [0] * K.n_simplices(m - k)
    for facet, w in zip(K.skeleton(m), weights):
        x = ca[idx_front[facet[:k + 1]]]
        if x:
            out[idx_back[facet[k:]]] += w * x
    if a.ring == "Z2":
        out = [x % 2 for x in out]
    return out
