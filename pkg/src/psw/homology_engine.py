"""Simplicial chain complexes and homology with explicit, certified generators.

A homology group is presented as the subquotient ker(boundary out) /
im(boundary in).  Both boundary maps around a degree are brought to Smith
normal form and the two transformation logs are chained: every reported
generator comes out of the unimodular transforms (never from search), every
torsion generator carries an explicit bounding chain for order times itself,
and any user cycle can be expressed in the reported basis by replaying the
same logs.  Setting ``mod=2`` runs the identical pipeline over GF(2), which
is how the mod-2 homology bases and the reduction map rho_2 are produced.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .complex_model import ManifoldReport, SimplicialComplex
from .errors import InputError
from .exact_linear import IntegerMatrix, Z2Matrix, smith_normal_form_sparse

__all__ = [
    "FundamentalClass",
    "HomologyClassZ",
    "HomologyGroup",
    "Mod2Homology",
    "Rho2Map",
    "SubquotientReduction",
    "boundary_apply",
    "boundary_matrix",
    "boundary_triples",
    "class_of_cycle",
    "cycle_of_class",
    "fundamental_cycle",
    "homology_class",
    "integral_homology",
    "mod2_homology",
    "rho2_on_homology",
    "torsion_boundary_certificate",
]


# -- boundary maps ----------------------------------------------------------

def boundary_triples(K: SimplicialComplex, k: int) -> list[tuple[int, int, int]]:
    """Nonzero entries (row, col, sign) of the degree-k boundary map.

    Rows are indexed by the sorted (k-1)-skeleton, columns by the sorted
    k-skeleton; the sign of face i is (-1)^i in the global vertex order.
    """
    if not 1 <= k <= K.dim:
        raise InputError(f"boundary degree {k} out of range 1..{K.dim}")
    key = ("boundary_triples", k)
    cached = K._cache.get(key)
    if cached is not None:
        return cached
    faces = K.simplex_index(k - 1)
    triples: list[tuple[int, int, int]] = []
    for col, simplex in enumerate(K.skeleton(k)):
        sign = 1
        for drop in range(k + 1):
            face = simplex[:drop] + simplex[drop + 1:]
            triples.append((faces[face], col, sign))
            sign = -sign
    K._cache[key] = triples
    return triples


def boundary_matrix(K: SimplicialComplex, k: int,
                    ring: str = "Z") -> IntegerMatrix | Z2Matrix:
    """Dense boundary matrix of degree k over Z or Z2 (signs dropped mod 2)."""
    triples = boundary_triples(K, k)
    nrows = K.n_simplices(k - 1)
    ncols = K.n_simplices(k)
    if ring == "Z":
        mat = IntegerMatrix.zeros(nrows, ncols)
        for r, c, v in triples:
            mat._rows[r][c] = v
        return mat
    if ring == "Z2":
        rows = [0] * nrows
        for r, c, _ in triples:
            rows[r] ^= 1 << c
        return Z2Matrix(nrows, ncols, rows)
    raise InputError(f"unknown ring {ring!r}, expected 'Z' or 'Z2'")


def boundary_apply(K: SimplicialComplex, k: int, vec: Sequence[int],
                   mod: int = 0) -> list[int]:
    """Apply the degree-k boundary map to a chain vector (sparse traversal)."""
    if len(vec) != K.n_simplices(k):
        raise InputError(f"chain length {len(vec)} != {K.n_simplices(k)} "
                         f"simplices in degree {k}")
    out = [0] * K.n_simplices(k - 1)
    for r, c, v in boundary_triples(K, k):
        x = vec[c]
        if x:
            out[r] += v * x
    if mod:
        return [x % mod for x in out]
    return out


def _boundary_columns(K: SimplicialComplex, k: int) -> list[dict[int, int]]:
    """Columns of the degree-k boundary map as {row: sign} dicts."""
    columns: list[dict[int, int]] = [dict() for _ in range(K.n_simplices(k))]
    for r, c, v in boundary_triples(K, k):
        columns[c][r] = v
    return columns


# -- the chained reduction ---------------------------------------------------

class SubquotientReduction:
    """Certified presentation of ker(outer) / im(inner) over Z or GF(2).

    ``outer`` and ``inner`` are consecutive maps of a chain complex acting on
    an ambient space of dimension ``dim_space`` (outer out of it, inner into
    it, with outer . inner = 0).  The kernel of ``outer`` is carried by the
    tail columns of its Smith transform V; rewriting ``inner`` in those kernel
    coordinates and reducing again yields invariant factors, generator
    positions, and bounding-chain certificates, all reachable by replaying
    the two operation logs.

    Positions 0..kernel_dim-1 in the reduced coordinates split into: killed
    (invariant factor 1), torsion (factor > 1), and free (beyond the rank of
    the rewritten inner map).
    """

    __slots__ = ("dim_space", "inner_dim", "mod", "outer_smith", "inner_smith",
                 "kernel_dim", "orders", "torsion_positions", "free_positions")

    def __init__(self, dim_space: int, outer_rows: int,
                 outer_triples: Sequence[tuple[int, int, int]],
                 inner_columns: list[dict[int, int]], inner_dim: int,
                 mod: int = 0):
        self.dim_space = dim_space
        self.inner_dim = inner_dim
        self.mod = mod
        self.outer_smith = smith_normal_form_sparse(
            outer_rows, dim_space, outer_triples, mod=mod)
        r1 = self.outer_smith.rank
        self.kernel_dim = dim_space - r1

        # Rewrite the inner map in kernel coordinates: W = (V^-1 inner)[r1:].
        batch: list[dict[int, int]] = [dict() for _ in range(dim_space)]
        for j, column in enumerate(inner_columns):
            for pos, val in column.items():
                batch[pos][j] = val
        self.outer_smith.apply_v_inv_batch(batch)
        if __debug__:
            for pos in range(r1):
                assert not batch[pos], \
                    "inner image escapes the kernel (outer . inner != 0?)"
        w_entries: list[tuple[int, int, int]] = []
        for pos in range(r1, dim_space):
            slot = batch[pos]
            for j in sorted(slot):
                w_entries.append((pos - r1, j, slot[j]))
        self.inner_smith = smith_normal_form_sparse(
            self.kernel_dim, inner_dim, w_entries, mod=mod)

        diag = self.inner_smith.diag
        r2 = self.inner_smith.rank
        self.orders = tuple(diag[t] if t < r2 else 0
                            for t in range(self.kernel_dim))
        self.torsion_positions = tuple(t for t in range(r2) if diag[t] != 1)
        self.free_positions = tuple(range(r2, self.kernel_dim))

    @property
    def rank(self) -> int:
        """Free rank of the subquotient."""
        return len(self.free_positions)

    @property
    def torsion_orders(self) -> tuple[int, ...]:
        return tuple(self.orders[t] for t in self.torsion_positions)

    def generator_chain(self, position: int) -> list[int]:
        """Ambient vector of the generator at a reduced-coordinate position."""
        y = [0] * self.kernel_dim
        y[position] = 1
        x = self.inner_smith.apply_u_inv(y)
        padded = [0] * self.outer_smith.rank + x
        return self.outer_smith.apply_v(padded)

    def coordinates_of(self, vec: Sequence[int]) -> tuple[tuple[int, ...],
                                                          tuple[int, ...]]:
        """Coordinates (free, torsion residues) of a cycle in this basis."""
        if len(vec) != self.dim_space:
            raise InputError(f"vector length {len(vec)} != ambient dimension "
                             f"{self.dim_space}")
        if self.mod:
            vec = [v % self.mod for v in vec]
        full = self.outer_smith.apply_v_inv(vec)
        r1 = self.outer_smith.rank
        if any(full[:r1]):
            raise InputError("vector is not a cycle (outer map does not "
                             "annihilate it)")
        y = self.inner_smith.apply_u(full[r1:])
        free = tuple(y[t] for t in self.free_positions)
        torsion = tuple(y[t] % self.orders[t] for t in self.torsion_positions)
        return free, torsion

    def chain_from_coordinates(self, free: Sequence[int],
                               torsion: Sequence[int]) -> list[int]:
        """An explicit cycle with the given (free, torsion) coordinates."""
        if len(free) != len(self.free_positions):
            raise InputError(f"expected {len(self.free_positions)} free "
                             f"coordinates, got {len(free)}")
        if len(torsion) != len(self.torsion_positions):
            raise InputError(f"expected {len(self.torsion_positions)} torsion "
                             f"residues, got {len(torsion)}")
        y = [0] * self.kernel_dim
        for t, val in zip(self.free_positions, free):
            y[t] = val
        for t, val in zip(self.torsion_positions, torsion):
            y[t] = val
        x = self.inner_smith.apply_u_inv(y)
        padded = [0] * self.outer_smith.rank + x
        return self.outer_smith.apply_v(padded)

    def torsion_certificate(self, i: int) -> list[int]:
        """Inner-domain vector c with inner(c) = order_i * (torsion generator i)."""
        t = self.torsion_positions[i]
        e = [0] * self.inner_dim
        e[t] = 1
        return self.inner_smith.apply_v(e)


def _reduction(K: SimplicialComplex, k: int, mod: int) -> SubquotientReduction:
    """Cached chained reduction presenting H_k over Z (mod=0) or GF(2)."""
    key = ("reduction", k, mod)
    cached = K._cache.get(key)
    if cached is not None:
        return cached
    n_space = K.n_simplices(k)
    if k >= 1:
        outer_rows = K.n_simplices(k - 1)
        outer = boundary_triples(K, k)
    else:
        outer_rows = 0
        outer = []
    if k < K.dim:
        inner_dim = K.n_simplices(k + 1)
        inner_cols = _boundary_columns(K, k + 1)
    else:
        inner_dim = 0
        inner_cols = []
    red = SubquotientReduction(n_space, outer_rows, outer, inner_cols,
                               inner_dim, mod=mod)
    K._cache[key] = red
    return red


# -- public homology types ----------------------------------------------------

@dataclass(frozen=True)
class HomologyGroup:
    """H_k(K; Z) = Z^rank + sum of Z/t_i, with explicit generating cycles."""

    degree: int
    rank: int
    torsion: tuple[int, ...]
    free_generators: tuple[tuple[int, ...], ...]
    torsion_generators: tuple[tuple[tuple[int, ...], int], ...]

    @property
    def order(self) -> int | None:
        """Number of elements, or None when the group is infinite."""
        if self.rank:
            return None
        n = 1
        for t in self.torsion:
            n *= t
        return n


@dataclass(frozen=True)
class HomologyClassZ:
    """Element of H_k(K; Z) in generator coordinates: free part, then residues."""

    degree: int
    free: tuple[int, ...]
    torsion: tuple[int, ...]
    cycle: tuple[int, ...] | None = None


@dataclass(frozen=True)
class Mod2Homology:
    """Basis of H_k(K; Z/2) as explicit cycle vectors."""

    degree: int
    dimension: int
    basis: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Rho2Map:
    """Reduction map rho_2 from integral to mod-2 homology in one degree.

    Column j of ``matrix`` holds the mod-2 homology coordinates of the
    reduction of integral generator j (free generators first, then torsion
    generators); ``image_basis`` spans the image in reduced echelon form.
    """

    degree: int
    matrix: Z2Matrix
    image_basis: tuple[tuple[int, ...], ...]

    @property
    def image_dimension(self) -> int:
        return len(self.image_basis)


class FundamentalClass:
    """Top-degree cycles of a closed pseudomanifold: signed and mod-2 facet sums."""

    __slots__ = ("degree", "mod2", "_integral")

    def __init__(self, degree: int, integral: tuple[int, ...] | None,
                 mod2: tuple[int, ...]):
        self.degree = degree
        self.mod2 = mod2
        self._integral = integral

    @property
    def has_integral(self) -> bool:
        return self._integral is not None

    @property
    def integral(self) -> tuple[int, ...]:
        if self._integral is None:
            raise InputError("integral fundamental class requires an "
                             "orientable pseudomanifold")
        return self._integral


# -- public operations --------------------------------------------------------

def _check_degree(K: SimplicialComplex, k: int) -> None:
    if not 0 <= k <= K.dim:
        raise InputError(f"homology degree {k} out of range 0..{K.dim}")


def integral_homology(K: SimplicialComplex, k: int) -> HomologyGroup:
    """H_k(K; Z) with generator cycles from the chained Smith transforms."""
    _check_degree(K, k)
    key = ("homology_z", k)
    cached = K._cache.get(key)
    if cached is not None:
        return cached
    red = _reduction(K, k, 0)
    free_gens = tuple(tuple(red.generator_chain(t)) for t in red.free_positions)
    tor_gens = tuple((tuple(red.generator_chain(t)), red.orders[t])
                     for t in red.torsion_positions)
    group = HomologyGroup(degree=k, rank=red.rank, torsion=red.torsion_orders,
                          free_generators=free_gens, torsion_generators=tor_gens)
    K._cache[key] = group
    return group


def mod2_homology(K: SimplicialComplex, k: int) -> Mod2Homology:
    """Basis of H_k(K; Z/2) produced by the GF(2) run of the same reduction."""
    _check_degree(K, k)
    key = ("homology_z2", k)
    cached = K._cache.get(key)
    if cached is not None:
        return cached
    red = _reduction(K, k, 2)
    basis = tuple(tuple(red.generator_chain(t)) for t in red.free_positions)
    result = Mod2Homology(degree=k, dimension=red.rank, basis=basis)
    K._cache[key] = result
    return result


def rho2_on_homology(K: SimplicialComplex, k: int) -> Rho2Map:
    """Express the mod-2 reduction of each integral generator in the mod-2 basis."""
    _check_degree(K, k)
    key = ("rho2", k)
    cached = K._cache.get(key)
    if cached is not None:
        return cached
    group = integral_homology(K, k)
    red2 = _reduction(K, k, 2)
    generators = group.free_generators + tuple(g for g, _ in
                                               group.torsion_generators)
    columns = []
    for gen in generators:
        free2, _ = red2.coordinates_of([c % 2 for c in gen])
        columns.append(list(free2))
    dim2 = red2.rank
    matrix = Z2Matrix.from_rows(
        [[col[i] for col in columns] for i in range(dim2)], ncols=len(columns))
    rref_rows, _ = Z2Matrix.from_rows(columns, ncols=dim2)._echelon()
    image_basis = tuple(tuple((mask >> i) & 1 for i in range(dim2))
                        for mask in rref_rows if mask)
    result = Rho2Map(degree=k, matrix=matrix, image_basis=image_basis)
    K._cache[key] = result
    return result


def fundamental_cycle(K: SimplicialComplex,
                      report: ManifoldReport) -> FundamentalClass:
    """Facet sums representing [K]: mod-2 always, signed when orientable."""
    if not report.is_closed:
        raise InputError("fundamental class requires a closed pseudomanifold: "
                         + (report.detail or "verification failed"))
    m = K.dim
    index = K.simplex_index(m)
    n = K.n_simplices(m)
    mod2 = (1,) * n
    integral = None
    if report.is_orientable and report.orientation is not None:
        signed = [0] * n
        for facet, sign in zip(K.facets, report.orientation):
            signed[index[facet]] = sign
        integral = tuple(signed)
        if __debug__:
            assert not any(boundary_apply(K, m, integral)), \
                "oriented facet sum is not a cycle"
    if __debug__:
        assert not any(boundary_apply(K, m, mod2, mod=2)), \
            "mod-2 facet sum is not a cycle"
    return FundamentalClass(m, integral, mod2)


def class_of_cycle(K: SimplicialComplex, k: int,
                   cycle: Sequence[int]) -> HomologyClassZ:
    """Coordinates of an integral cycle in the stored generator basis."""
    _check_degree(K, k)
    red = _reduction(K, k, 0)
    free, torsion = red.coordinates_of(cycle)
    return HomologyClassZ(degree=k, free=free, torsion=torsion,
                          cycle=tuple(cycle))


def cycle_of_class(K: SimplicialComplex, cls: HomologyClassZ) -> list[int]:
    """An explicit cycle representing coordinates in the generator basis."""
    red = _reduction(K, cls.degree, 0)
    return red.chain_from_coordinates(cls.free, cls.torsion)


def homology_class(K: SimplicialComplex, k: int, free: Sequence[int],
                   torsion: Sequence[int] = ()) -> HomologyClassZ:
    """Build a class from coordinates, validating lengths, reducing residues."""
    group = integral_homology(K, k)
    if len(free) != group.rank:
        raise InputError(f"expected {group.rank} free coordinates for degree "
                         f"{k}, got {len(free)}")
    if len(torsion) != len(group.torsion):
        raise InputError(f"expected {len(group.torsion)} torsion residues for "
                         f"degree {k}, got {len(torsion)}")
    reduced = tuple(r % t for r, t in zip(torsion, group.torsion))
    return HomologyClassZ(degree=k, free=tuple(free), torsion=reduced)


def torsion_boundary_certificate(K: SimplicialComplex, k: int,
                                 i: int) -> tuple[list[int], int]:
    """Chain c with boundary(c) = order_i * (torsion generator i of H_k)."""
    red = _reduction(K, k, 0)
    if not 0 <= i < len(red.torsion_positions):
        raise InputError(f"H_{k} has {len(red.torsion_positions)} torsion "
                         f"generators, index {i} out of range")
    return red.torsion_certificate(i), red.torsion_orders[i]
