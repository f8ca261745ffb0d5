"""Wu and Stiefel-Whitney classes, the mod-2 Poincare pairing, intersection forms.

Wu classes are solved degree by degree from the nondegenerate cup pairing
against the mod-2 fundamental class; Stiefel-Whitney classes follow by the
total-square formula w = Sq(v).  On closed oriented 4-manifolds the integral
intersection form on the free part of H_2 is assembled by inverting the cap
matrix (Poincare duality) and, when the form is even, rewriting it in a
hyperbolic basis so that published generators are isotropic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from .complex_model import SimplicialComplex, verify_closed_manifold
from .cup_steenrod import (Cochain, cap_with_fundamental, cohomology_basis,
                           cup, evaluate, express_in_basis, steenrod_square,
                           unit_cochain, zero_cochain)
from .errors import InputError
from .exact_linear import IntegerMatrix, Z2Matrix, smith_normal_form, z2_solve
from .homology_engine import (HomologyClassZ, class_of_cycle, fundamental_cycle,
                              integral_homology)

__all__ = [
    "IntersectionForm",
    "Mod2CohomologyClass",
    "PairingMatrix",
    "SWClasses",
    "WuClasses",
    "intersection_form",
    "mod2_pairing",
    "self_intersection",
    "stiefel_whitney",
    "w2_criterion",
    "wu_class",
    "wu_classes",
]


@dataclass(frozen=True, eq=False)
class Mod2CohomologyClass:
    """A Z2 cohomology class: coordinates in the cached basis + a cocycle."""

    degree: int
    coords: tuple[int, ...]
    cochain: Cochain

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)


@dataclass(frozen=True, eq=False)
class PairingMatrix:
    """Cup pairing <B^k_i u B^{m-k}_j, [M]_2>, row i over H^k, column j over H^{m-k}."""

    degree: int
    matrix: Z2Matrix


@dataclass(frozen=True, eq=False)
class WuClasses:
    """Wu classes v_0..v_m; v_i = 0 for 2i > dim (asserted at construction)."""

    classes: tuple[Mod2CohomologyClass, ...]

    def __getitem__(self, i: int) -> Mod2CohomologyClass:
        return self.classes[i]

    def coordinate_table(self) -> list[list[int]]:
        return [list(c.coords) for c in self.classes]


@dataclass(frozen=True, eq=False)
class SWClasses:
    """Stiefel-Whitney classes w_0..w_m from the total-square formula w = Sq(v)."""

    classes: tuple[Mod2CohomologyClass, ...]

    def __getitem__(self, i: int) -> Mod2CohomologyClass:
        return self.classes[i]

    def coordinate_table(self) -> list[list[int]]:
        return [list(c.coords) for c in self.classes]


@dataclass(frozen=True, eq=False)
class IntersectionForm:
    """Integral intersection form on the published free basis of H_2(M^4).

    ``matrix`` is symmetric and unimodular; ``basis_cycles`` are the published
    free generators (cycles in C_2); ``transform`` expresses them in the raw
    homology basis, column j giving the coordinates of published generator j.
    For even forms the published basis is hyperbolic whenever the reduction
    succeeds, so diagonal entries are then zero.
    """

    matrix: tuple[tuple[int, ...], ...]
    basis_cycles: tuple[tuple[int, ...], ...]
    transform: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def is_even(self) -> bool:
        return all(self.matrix[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def signature(self) -> int:
        """Signature by exact rational diagonalization (Lagrange)."""
        n = self.rank
        a = [[Fraction(x) for x in row] for row in self.matrix]
        sig = 0
        for i in range(n):
            if a[i][i] == 0:
                swap = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
                if swap is None:
                    pair = next((j for j in range(i + 1, n) if a[i][j] != 0),
                                None)
                    if pair is None:
                        continue
                    for t in range(n):  # mix the pair to create a diagonal entry
                        a[i][t] += a[pair][t]
                    for t in range(n):
                        a[t][i] += a[t][pair]
                else:
                    a[i], a[swap] = a[swap], a[i]
                    for row in a:
                        row[i], row[swap] = row[swap], row[i]
            d = a[i][i]
            if d == 0:
                continue
            sig += 1 if d > 0 else -1
            for j in range(i + 1, n):
                f = a[j][i] / d
                if f:
                    for t in range(n):
                        a[j][t] -= f * a[i][t]
                    for t in range(n):
                        a[t][j] -= f * a[t][i]
        return sig


def _closed_report(K: SimplicialComplex):
    report = verify_closed_manifold(K)
    if not report.is_closed:
        raise InputError("input is not a closed pseudomanifold: "
                         + (report.detail or "connectivity check failed"))
    return report


def mod2_pairing(K: SimplicialComplex, k: int) -> PairingMatrix:
    """Cup pairing of H^k against H^{m-k} over Z2; full rank or a diagnostic."""
    m = K.dim
    if not 0 <= k <= m:
        raise InputError(f"pairing degree {k} out of range 0..{m}")
    key = ("pairing", k)
    cached = K._cache.get(key)
    if cached is not None:
        return cached
    report = _closed_report(K)
    fund = fundamental_cycle(K, report)
    left = cohomology_basis(K, k, "Z2")
    right = cohomology_basis(K, m - k, "Z2")
    rows = [[evaluate(cup(a, b), fund.mod2) for b in right.representatives]
            for a in left.representatives]
    matrix = Z2Matrix.from_rows(rows, ncols=right.dimension)
    if left.dimension != right.dimension or matrix.rank != left.dimension:
        raise InputError(
            f"mod-2 cup pairing degenerate in degree {k} "
            f"({left.dimension} x {right.dimension}, rank {matrix.rank}); "
            "input is not a closed pseudomanifold")
    result = PairingMatrix(degree=k, matrix=matrix)
    K._cache[key] = result
    return result


def _class_from_coords(K: SimplicialComplex, k: int,
                       coords: tuple[int, ...]) -> Mod2CohomologyClass:
    basis = cohomology_basis(K, k, "Z2")
    total = zero_cochain(K, k, "Z2")
    for c, rep in zip(coords, basis.representatives):
        if c:
            total = total + rep
    return Mod2CohomologyClass(degree=k, coords=coords, cochain=total)


def wu_classes(K: SimplicialComplex) -> WuClasses:
    """All Wu classes, solved from <v_i u x, [M]> = <Sq^i x, [M]>."""
    cached = K._cache.get("wu_classes")
    if cached is not None:
        return cached
    report = _closed_report(K)
    fund = fundamental_cycle(K, report)
    m = K.dim
    classes = []
    for i in range(m + 1):
        pairing = mod2_pairing(K, i)
        dual = cohomology_basis(K, m - i, "Z2")
        rhs = [evaluate(steenrod_square(i, x), fund.mod2)
               for x in dual.representatives]
        system = pairing.matrix.transpose()
        sol, kernel, rank = z2_solve(system, rhs)
        if sol is None or kernel:
            raise InputError(f"Wu system in degree {i} is not uniquely "
                             "solvable; input is not a closed pseudomanifold")
        coords = tuple(sol)
        if 2 * i > m:
            assert not any(coords), f"Wu vanishing fails: v_{i} != 0 on {K.name}"
        classes.append(_class_from_coords(K, i, coords))
    unit_coords = express_in_basis(unit_cochain(K, "Z2"),
                                   cohomology_basis(K, 0, "Z2"))
    assert classes[0].coords == unit_coords, "v_0 is not the unit class"
    result = WuClasses(classes=tuple(classes))
    K._cache["wu_classes"] = result
    return result


def wu_class(K: SimplicialComplex, i: int) -> Mod2CohomologyClass:
    """The single Wu class v_i."""
    if not 0 <= i <= K.dim:
        raise InputError(f"Wu class degree {i} out of range 0..{K.dim}")
    return wu_classes(K)[i]


def stiefel_whitney(K: SimplicialComplex) -> SWClasses:
    """Total Stiefel-Whitney class by the Wu formula w_k = sum Sq^i(v_{k-i})."""
    cached = K._cache.get("stiefel_whitney")
    if cached is not None:
        return cached
    wu = wu_classes(K)
    m = K.dim
    classes = []
    for k in range(m + 1):
        total = zero_cochain(K, k, "Z2")
        for i in range(k + 1):
            total = total + steenrod_square(i, wu[k - i].cochain)
        coords = express_in_basis(total, cohomology_basis(K, k, "Z2"))
        classes.append(Mod2CohomologyClass(degree=k, coords=coords,
                                           cochain=total))
    assert classes[0].coords == wu[0].coords, "w_0 is not the unit class"
    result = SWClasses(classes=tuple(classes))
    K._cache["stiefel_whitney"] = result
    return result


def w2_criterion(K: SimplicialComplex) -> int:
    """1 iff w_2 evaluates nontrivially on the reduction of some H_2(Z) generator.

    This is a cohomological evaluation: the homological condition "w_2
    intersects the reduction of integral H_2 nontrivially" is computed as the
    Kronecker pairing of the w_2 cocycle against reduced generator cycles,
    which agrees with it on closed manifolds by Poincare duality.

    The criterion tests w_2, not the Wu class v_2, and the two genuinely
    differ: on the quotient triangulation of real projective 4-space,
    w_2 = 0 while v_2 = a^2 is nonzero, so the criterion cannot be relaxed
    to "some degree-2 characteristic class is nonzero".  Both values are
    reported by the invariants pipeline so the distinction stays visible.
    """
    if K.dim < 2:
        raise InputError(f"w_2 criterion needs dimension >= 2, got {K.dim}")
    cached = K._cache.get("w2_criterion")
    if cached is not None:
        return cached
    w2 = stiefel_whitney(K)[2].cochain
    h2 = integral_homology(K, 2)
    generators = h2.free_generators + tuple(g for g, _ in
                                            h2.torsion_generators)
    bit = 0
    for gen in generators:
        if evaluate(w2, [c % 2 for c in gen]) % 2:
            bit = 1
            break
    K._cache["w2_criterion"] = bit
    return bit


# -- intersection form of a 4-manifold ----------------------------------------

def _unimodular_inverse(C: IntegerMatrix) -> IntegerMatrix:
    """Exact inverse of a unimodular integer matrix via its Smith transforms."""
    S = smith_normal_form(C)
    if S.diag != (1,) * C.nrows:
        raise InputError("Poincare duality cap matrix is not unimodular on "
                         f"free parts (invariant factors {S.diag})")
    return S.V @ S.U


def _bezout_vector(u: list[int]) -> list[int] | None:
    """Integer x with x . u = 1, or None when gcd(u) != 1."""
    coeffs = [0] * len(u)
    g = 0
    for idx, val in enumerate(u):
        if val == 0:
            continue
        if g == 0:
            g = abs(val)
            coeffs = [0] * len(u)
            coeffs[idx] = 1 if val > 0 else -1
            continue
        a, b = g, val
        # extended Euclid for s*a + t*b = g2
        old_r, r = a, b
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        g2, bez_s, bez_t = old_r, old_s, old_t
        coeffs = [c * bez_s for c in coeffs]
        coeffs[idx] += bez_t
        g = g2
    return coeffs if g == 1 else None


def _form_apply(Q: list[list[int]], v: list[int]) -> list[int]:
    return [sum(row[j] * v[j] for j in range(len(v))) for row in Q]


def _form_value(Q: list[list[int]], v: list[int], w: list[int]) -> int:
    return sum(v[i] * x for i, x in enumerate(_form_apply(Q, w)))


def _isotropic_vector(Q: list[list[int]]) -> list[int] | None:
    """Smallest primitive isotropic vector by bounded deterministic search."""
    r = len(Q)
    for bound in (1, 2, 3):
        for cand in product(range(-bound, bound + 1), repeat=r):
            if max((abs(c) for c in cand), default=0) != bound:
                continue
            first = next((c for c in cand if c), 0)
            if first <= 0:
                continue
            g = 0
            for c in cand:
                g = gcd(g, c)
            if g != 1:
                continue
            if _form_value(Q, list(cand), list(cand)) == 0:
                return list(cand)
    return None


def _hyperbolic_basis(Q: list[list[int]]) -> list[list[int]] | None:
    """Unimodular T (columns = new basis) with T^t Q T hyperbolic, or None.

    Applies to even unimodular forms; peels one hyperbolic pair at a time,
    restricting to the orthogonal complement through the Smith kernel.
    """
    r = len(Q)
    if r == 0:
        return []
    if r % 2:
        return None
    v = _isotropic_vector(Q)
    if v is None:
        return None
    u = _form_apply(Q, v)
    w = _bezout_vector(u)
    if w is None:
        return None
    ww = _form_value(Q, w, w)
    if ww % 2:
        return None
    w = [wi - (ww // 2) * vi for wi, vi in zip(w, v)]
    rows = [_form_apply(Q, v), _form_apply(Q, w)]
    S = smith_normal_form(IntegerMatrix.from_rows(rows, ncols=r))
    complement = [S.kernel_column(j) for j in range(r - S.rank)]
    if len(complement) != r - 2:
        return None
    sub = [[_form_value(Q, x, y) for y in complement] for x in complement]
    T_sub = _hyperbolic_basis(sub)
    if T_sub is None:
        return None
    columns = [v, w]
    for j in range(r - 2):
        col = [0] * r
        for i, base in enumerate(complement):
            c = T_sub[i][j]
            if c:
                for t in range(r):
                    col[t] += c * base[t]
        columns.append(col)
    return [[columns[j][i] for j in range(r)] for i in range(r)]


def intersection_form(K: SimplicialComplex) -> IntersectionForm:
    """The cup form on free H_2 of a closed connected oriented 4-manifold."""
    if K.dim != 4:
        raise InputError(f"intersection form needs dimension 4, got {K.dim}")
    cached = K._cache.get("intersection_form")
    if cached is not None:
        return cached
    report = _closed_report(K)
    if not report.is_connected:
        raise InputError("intersection form needs a connected complex")
    if not report.is_orientable:
        raise InputError("intersection form needs an orientable complex")
    fund = fundamental_cycle(K, report)
    h2 = integral_homology(K, 2)
    r = h2.rank
    basis = cohomology_basis(K, 2, "Z")
    if basis.dimension != r:
        raise InputError(f"free H^2 rank {basis.dimension} differs from free "
                         f"H_2 rank {r}; duality violated")
    if r == 0:
        result = IntersectionForm(matrix=(), basis_cycles=(), transform=())
        K._cache["intersection_form"] = result
        return result

    # cap matrix: column a = free homology coordinates of B^2_a capped with [M]
    cap_cols = []
    for rep in basis.representatives:
        capped = cap_with_fundamental(rep, fund)
        cap_cols.append(class_of_cycle(K, 2, capped).free)
    C = IntegerMatrix.from_rows([[cap_cols[a][i] for a in range(r)]
                                 for i in range(r)])
    S = _unimodular_inverse(C)

    E = [[evaluate(cup(a, b), fund.integral) for b in basis.representatives]
         for a in basis.representatives]
    assert all(E[a][b] == E[b][a] for a in range(r) for b in range(r)), \
        "cup pairing on the fundamental cycle is not symmetric"
    # Q_raw = S^t E S, the form in the raw free generator basis of H_2
    Emat = IntegerMatrix.from_rows(E)
    Q_raw = (S.transpose() @ Emat @ S).to_lists()

    transform = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    matrix = Q_raw
    if all(Q_raw[i][i] % 2 == 0 for i in range(r)):
        T = _hyperbolic_basis(Q_raw)
        if T is not None:
            Tm = IntegerMatrix.from_rows(T)
            matrix = (Tm.transpose() @ IntegerMatrix.from_rows(Q_raw)
                      @ Tm).to_lists()
            transform = T

    # published generator cycles, column j of the transform over raw generators
    published = []
    length = len(h2.free_generators[0]) if r else 0
    for j in range(r):
        acc = [0] * length
        for i in range(r):
            c = transform[i][j]
            if c:
                for t, val in enumerate(h2.free_generators[i]):
                    acc[t] += c * val
        published.append(tuple(acc))

    result = IntersectionForm(
        matrix=tuple(tuple(row) for row in matrix),
        basis_cycles=tuple(published),
        transform=tuple(tuple(row) for row in transform))
    K._cache["intersection_form"] = result
    return result


def self_intersection(form: IntersectionForm, alpha: HomologyClassZ) -> int:
    """alpha . alpha through the published form; torsion contributes zero."""
    if alpha.degree != 2:
        raise InputError(f"self-intersection needs a degree-2 class, got "
                         f"degree {alpha.degree}")
    if len(alpha.free) != form.rank:
        raise InputError(f"class has {len(alpha.free)} free coordinates, form "
                         f"has rank {form.rank}")
    a = alpha.free
    return sum(a[i] * form.matrix[i][j] * a[j]
               for i in range(form.rank) for j in range(form.rank))
