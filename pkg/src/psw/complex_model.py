"""Simplicial complexes over a global vertex order, parsing, and products.

A complex is stored as its list of top-dimensional facets; every facet is a
strictly increasing tuple of integer vertex labels, and all orientation signs
downstream derive from positions in that shared order.  The module also
builds the two stock families used by the corpus (simplex boundaries and
staircase products) and verifies the closed-pseudomanifold conditions.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

from .errors import InputError

__all__ = [
    "SimplicialComplex",
    "ManifoldReport",
    "parse_complex",
    "load_complex",
    "boundary_of_simplex",
    "staircase_product",
    "verify_closed_manifold",
]


class SimplicialComplex:
    """Pure simplicial complex given by facets of one dimension.

    Logically immutable; derived data (skeleta, index maps, analysis results)
    is cached on the instance keyed by what produced it.
    """

    def __init__(self, name: str, dim: int, facets: Sequence[Sequence[int]]):
        if dim < 1:
            raise InputError(f"dimension must be >= 1, got {dim}")
        if not facets:
            raise InputError("facet list is empty")
        seen: set[tuple[int, ...]] = set()
        norm: list[tuple[int, ...]] = []
        for f in facets:
            try:
                fv = tuple(sorted(int(v) for v in f))
            except (TypeError, ValueError) as exc:
                raise InputError(f"facet {f!r} has non-integer vertices") from exc
            if len(fv) != dim + 1:
                raise InputError(
                    f"facet {f!r} has {len(fv)} vertices, expected {dim + 1}")
            if len(set(fv)) != len(fv):
                raise InputError(f"facet {f!r} repeats a vertex")
            if fv in seen:
                raise InputError(f"facet {list(fv)} listed twice")
            seen.add(fv)
            norm.append(fv)
        norm.sort()
        self.name = str(name)
        self.dim = dim
        self.facets: tuple[tuple[int, ...], ...] = tuple(norm)
        self.vertices: tuple[int, ...] = tuple(sorted({v for f in norm for v in f}))
        self._skeleta: dict[int, tuple[tuple[int, ...], ...]] = {}
        self._indices: dict[int, dict[tuple[int, ...], int]] = {}
        self._cache: dict = {}  # analysis results, keyed by the computing module

    def skeleton(self, k: int) -> tuple[tuple[int, ...], ...]:
        """All k-simplices, sorted lexicographically."""
        if not 0 <= k <= self.dim:
            raise InputError(f"skeleton degree {k} outside [0, {self.dim}]")
        got = self._skeleta.get(k)
        if got is None:
            faces = {sub for f in self.facets for sub in combinations(f, k + 1)}
            got = tuple(sorted(faces))
            self._skeleta[k] = got
        return got

    def simplex_index(self, k: int) -> Mapping[tuple[int, ...], int]:
        idx = self._indices.get(k)
        if idx is None:
            idx = {s: i for i, s in enumerate(self.skeleton(k))}
            self._indices[k] = idx
        return idx

    def n_simplices(self, k: int) -> int:
        return len(self.skeleton(k))

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(self.n_simplices(k) for k in range(self.dim + 1))

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector))

    def relabel(self, mapping: Mapping[int, int], name: str | None = None) -> "SimplicialComplex":
        """Same complex with vertices renamed by an injective mapping."""
        if len(set(mapping.values())) != len(mapping):
            raise InputError("relabeling is not injective")
        facets = [[mapping[v] for v in f] for f in self.facets]
        return SimplicialComplex(name or self.name, self.dim, facets)

    def to_json(self) -> str:
        return json.dumps(
            {"name": self.name, "dimension": self.dim,
             "facets": [list(f) for f in self.facets]},
            indent=0, separators=(",", ": "))

    def __repr__(self) -> str:
        return (f"SimplicialComplex({self.name!r}, dim={self.dim}, "
                f"facets={len(self.facets)}, vertices={len(self.vertices)})")


@dataclass(frozen=True)
class ManifoldReport:
    """Outcome of the closed-pseudomanifold checks for one complex."""

    name: str
    dim: int
    is_pseudomanifold: bool      # every ridge lies in exactly two facets
    is_strongly_connected: bool  # facet-ridge adjacency graph is connected
    is_connected: bool           # vertex graph is connected
    is_orientable: bool
    orientation: tuple[int, ...] | None  # facet signs, aligned with K.facets
    detail: str = ""

    @property
    def is_closed(self) -> bool:
        return self.is_pseudomanifold and self.is_strongly_connected and self.is_connected


def parse_complex(text: str, default_name: str = "complex") -> SimplicialComplex:
    """Parse either input format.

    JSON: an object with "name", "dimension", "facets"; unknown keys (for
    example a "source" note) are ignored.  Plain text: '#' starts a comment,
    the first payload line is "dim m", every later line is one facet as
    whitespace-separated vertex labels.
    """
    stripped = text.lstrip()
    if not stripped:
        raise InputError("empty input")
    if stripped[0] == "{":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise InputError("JSON input must be an object")
        missing = {"dimension", "facets"} - obj.keys()
        if missing:
            raise InputError(f"JSON input lacks keys: {sorted(missing)}")
        name = obj.get("name", default_name)
        dim = obj["dimension"]
        if not isinstance(dim, int):
            raise InputError("\"dimension\" must be an integer")
        if not isinstance(obj["facets"], list):
            raise InputError("\"facets\" must be a list")
        return SimplicialComplex(name, dim, obj["facets"])

    dim: int | None = None
    facets: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if dim is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "dim":
                raise InputError(f"line {lineno}: expected \"dim m\", got {line!r}")
            try:
                dim = int(parts[1])
            except ValueError as exc:
                raise InputError(f"line {lineno}: bad dimension {parts[1]!r}") from exc
            continue
        try:
            facets.append([int(t) for t in line.split()])
        except ValueError as exc:
            raise InputError(f"line {lineno}: non-integer vertex in {line!r}") from exc
    if dim is None:
        raise InputError("no \"dim m\" line found")
    return SimplicialComplex(default_name, dim, facets)


def load_complex(path) -> SimplicialComplex:
    """Read a complex from a file path, defaulting the name to the file stem."""
    import pathlib

    p = pathlib.Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {p}: {exc}") from exc
    return parse_complex(text, default_name=p.stem)


def boundary_of_simplex(k: int, name: str | None = None) -> SimplicialComplex:
    """The boundary of the (k+1)-simplex: the minimal triangulation of S^k."""
    if k < 1:
        raise InputError("k must be >= 1; the 0-sphere is disconnected")
    verts = range(k + 2)
    facets = [list(f) for f in combinations(verts, k + 1)]
    return SimplicialComplex(name or f"S{k}", k, facets)


def staircase_product(a: SimplicialComplex, b: SimplicialComplex,
                      name: str | None = None) -> SimplicialComplex:
    """Staircase (ordered) product triangulation of |a| x |b|.

    Vertex (u, w) is encoded as pos(u) * |V(b)| + pos(w) using positions in
    each factor's sorted vertex list.  For every facet pair (sigma, tau) the
    monotone lattice paths through the (p+1) x (q+1) grid contribute
    C(p+q, p) top simplices, so the product of closed pseudomanifolds is one.
    """
    nb = len(b.vertices)
    pos_a = {v: i for i, v in enumerate(a.vertices)}
    pos_b = {v: i for i, v in enumerate(b.vertices)}
    p, q = a.dim, b.dim
    facets: list[tuple[int, ...]] = []
    # A path is a choice of which of the p+q steps advance in the a-factor.
    for step_sets in combinations(range(p + q), p):
        steps = set(step_sets)
        for sa in a.facets:
            ia = [pos_a[v] for v in sa]
            for sb in b.facets:
                ib = [pos_b[v] for v in sb]
                i = j = 0
                path = [ia[0] * nb + ib[0]]
                for s in range(p + q):
                    if s in steps:
                        i += 1
                    else:
                        j += 1
                    path.append(ia[i] * nb + ib[j])
                facets.append(tuple(path))
    return SimplicialComplex(name or f"{a.name}x{b.name}", p + q, facets)


def verify_closed_manifold(k: SimplicialComplex) -> ManifoldReport:
    """Check the closed-pseudomanifold conditions and orient if possible.

    Orientation is normalized by giving the lexicographically least facet the
    sign +1 and propagating across ridges breadth-first, so the assignment is
    reproducible.  On a non-pseudomanifold no orientation is attempted.
    The report is cached on the complex.
    """
    cached = k._cache.get("manifold_report")
    if cached is not None:
        return cached
    facets = k.facets
    ridge_of: dict[tuple[int, ...], list[tuple[int, int]]] = {}
    for fi, f in enumerate(facets):
        for drop in range(len(f)):
            ridge = f[:drop] + f[drop + 1:]
            ridge_of.setdefault(ridge, []).append((fi, drop))

    bad = [r for r, inc in ridge_of.items() if len(inc) != 2]
    is_pseudo = not bad
    detail = ""
    if bad:
        sample = sorted(bad)[0]
        detail = (f"{len(bad)} ridges not in exactly two facets, "
                  f"e.g. {list(sample)} in {len(ridge_of[sample])}")

    # vertex-graph connectivity through facet membership
    parent = {v: v for v in k.vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in facets:
        r0 = find(f[0])
        for v in f[1:]:
            parent[find(v)] = r0
    is_connected = len({find(v) for v in k.vertices}) == 1

    # facet adjacency across ridges (only meaningful pairs)
    adj: list[list[tuple[int, int, int]]] = [[] for _ in facets]
    for inc in ridge_of.values():
        if len(inc) == 2:
            (fa, da), (fb, db) = inc
            adj[fa].append((fb, da, db))
            adj[fb].append((fa, db, da))
    for lst in adj:
        lst.sort()

    seen = [False] * len(facets)
    sign = [0] * len(facets)
    is_orientable = is_pseudo
    components = 0
    for start in range(len(facets)):
        if seen[start]:
            continue
        components += 1
        seen[start] = True
        sign[start] = 1
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            for nxt, dcur, dnxt in adj[cur]:
                # matching ridge orientations must cancel in the boundary
                want = -sign[cur] * (-1) ** dcur * (-1) ** dnxt
                if not seen[nxt]:
                    seen[nxt] = True
                    sign[nxt] = want
                    queue.append(nxt)
                elif sign[nxt] != want:
                    is_orientable = False
    is_strong = components == 1

    report = ManifoldReport(
        name=k.name,
        dim=k.dim,
        is_pseudomanifold=is_pseudo,
        is_strongly_connected=is_strong,
        is_connected=is_connected,
        is_orientable=is_orientable and is_pseudo,
        orientation=tuple(sign) if (is_pseudo and is_orientable) else None,
        detail=detail,
    )
    k._cache["manifold_report"] = report
    return report
