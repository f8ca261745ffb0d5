"""Exact linear algebra: integer Smith normal form and bit-packed GF(2) solving.

Everything runs over arbitrary-precision Python integers; nothing here is
floating point and nothing is probabilistic.  The Smith normal form engine is
a sparse elimination that records every elementary row/column operation, so
the unimodular transforms U, V and their inverses can either be materialized
(small inputs, tests) or replayed against single vectors (boundary matrices of
large complexes, where a dense transform would not fit).
"""

from __future__ import annotations

import heapq
from typing import Iterable, Iterator, Sequence

__all__ = [
    "IntegerMatrix",
    "SmithDecomposition",
    "Z2Matrix",
    "integer_determinant",
    "smith_normal_form",
    "smith_normal_form_sparse",
    "z2_solve",
]

# Operation codes for the elimination log.  Row operations act on the left
# (they accumulate into U), column operations on the right (into V).
_RADD = 0  # row[a] += q * row[b]
_RSWAP = 1  # swap rows a, b
_RNEG = 2  # row[a] *= -1
_CADD = 3  # col[a] += q * col[b]
_CSWAP = 4  # swap cols a, b
_CNEG = 5  # col[a] *= -1


class IntegerMatrix:
    """Dense matrix of Python ints, row major.  Shape may be degenerate."""

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, rows: list[list[int]]):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative matrix dimension")
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ValueError("entry count does not match declared shape")
        self.nrows = nrows
        self.ncols = ncols
        self._rows = rows

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "IntegerMatrix":
        data = [list(map(int, r)) for r in rows]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, data)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntegerMatrix":
        return cls(nrows, ncols, [[0] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = 1
        return cls(n, n, rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def entry(self, i: int, j: int) -> int:
        return self._rows[i][j]

    def row(self, i: int) -> list[int]:
        return list(self._rows[i])

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self._rows]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(self.ncols, self.nrows,
                             [[self._rows[i][j] for i in range(self.nrows)]
                              for j in range(self.ncols)])

    def nonzero_entries(self) -> Iterator[tuple[int, int, int]]:
        for i, row in enumerate(self._rows):
            for j, v in enumerate(row):
                if v:
                    yield (i, j, v)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matrix product")
        out = [[0] * other.ncols for _ in range(self.nrows)]
        for i, row in enumerate(self._rows):
            orow = out[i]
            for k, v in enumerate(row):
                if v:
                    brow = other._rows[k]
                    for j, w in enumerate(brow):
                        if w:
                            orow[j] += v * w
        return IntegerMatrix(self.nrows, other.ncols, out)

    def apply(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.ncols:
            raise ValueError("vector length does not match column count")
        return [sum(v * x for v, x in zip(row, vec) if v and x) for row in self._rows]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(map(tuple, self._rows))))

    def __repr__(self) -> str:
        return f"IntegerMatrix({self.nrows}x{self.ncols})"


def integer_determinant(mat: IntegerMatrix) -> int:
    """Exact determinant via Bareiss fraction-free elimination."""
    if mat.nrows != mat.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = mat.nrows
    if n == 0:
        return 1
    a = mat.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


class SmithDecomposition:
    """Result of a Smith reduction: U @ A @ V == D with unimodular U, V.

    ``diag`` is the positive diagonal of D, satisfying diag[i] | diag[i+1].
    The transforms are stored as an elementary-operation log; ``U``/``V``/
    ``U_inv``/``V_inv`` materialize them on demand, while the ``apply_*``
    methods replay the log against one vector in O(log length) time, which is
    what the homology engine uses at T^4/T^5 scale.

    Over GF(2) (``mod == 2``) the same structure holds with arithmetic mod 2;
    the diagonal is then all ones.
    """

    __slots__ = ("nrows", "ncols", "diag", "mod", "_ops",
                 "_u", "_v", "_u_inv", "_v_inv")

    def __init__(self, nrows: int, ncols: int, diag: tuple[int, ...],
                 ops: list[tuple[int, int, int, int]], mod: int):
        self.nrows = nrows
        self.ncols = ncols
        self.diag = diag
        self.mod = mod
        self._ops = ops
        self._u = self._v = self._u_inv = self._v_inv = None

    @property
    def rank(self) -> int:
        return len(self.diag)

    @property
    def diagonal(self) -> tuple[int, ...]:
        """``diag`` padded with zeros to the full min(nrows, ncols) length."""
        return self.diag + (0,) * (min(self.nrows, self.ncols) - len(self.diag))

    # -- vector replay ----------------------------------------------------

    def apply_u(self, vec: Sequence[int]) -> list[int]:
        """Return U @ vec (vec has length nrows)."""
        x = list(vec)
        mod = self.mod
        for code, a, b, q in self._ops:
            if code == _RADD:
                x[a] = (x[a] + q * x[b]) % mod if mod else x[a] + q * x[b]
            elif code == _RSWAP:
                x[a], x[b] = x[b], x[a]
            elif code == _RNEG:
                x[a] = -x[a]
        return x

    def apply_u_inv(self, vec: Sequence[int]) -> list[int]:
        """Return U^{-1} @ vec."""
        x = list(vec)
        mod = self.mod
        for code, a, b, q in reversed(self._ops):
            if code == _RADD:
                x[a] = (x[a] - q * x[b]) % mod if mod else x[a] - q * x[b]
            elif code == _RSWAP:
                x[a], x[b] = x[b], x[a]
            elif code == _RNEG:
                x[a] = -x[a]
        return x

    def apply_v(self, vec: Sequence[int]) -> list[int]:
        """Return V @ vec (vec has length ncols)."""
        x = list(vec)
        mod = self.mod
        for code, a, b, q in reversed(self._ops):
            if code == _CADD:
                # col a += q * col b corresponds to V-factor I + q*E[b,a]
                x[b] = (x[b] + q * x[a]) % mod if mod else x[b] + q * x[a]
            elif code == _CSWAP:
                x[a], x[b] = x[b], x[a]
            elif code == _CNEG:
                x[a] = -x[a]
        return x

    def apply_v_inv(self, vec: Sequence[int]) -> list[int]:
        """Return V^{-1} @ vec."""
        x = list(vec)
        mod = self.mod
        for code, a, b, q in self._ops:
            if code == _CADD:
                x[b] = (x[b] - q * x[a]) % mod if mod else x[b] - q * x[a]
            elif code == _CSWAP:
                x[a], x[b] = x[b], x[a]
            elif code == _CNEG:
                x[a] = -x[a]
        return x

    def apply_v_inv_batch(self, batch: list[dict[int, int]]) -> None:
        """Replay V^{-1} over many sparse vectors at once, in place.

        ``batch[pos]`` maps vector id -> coefficient at coordinate ``pos``;
        the layout lets each column operation touch only the two coordinate
        slots it involves.  Zero coefficients are pruned as they appear.
        """
        mod = self.mod
        for code, a, b, q in self._ops:
            if code == _CADD:
                src = batch[a]
                if not src:
                    continue
                dst = batch[b]
                for vid, val in src.items():
                    nv = dst.get(vid, 0) - q * val
                    if mod:
                        nv %= mod
                    if nv:
                        dst[vid] = nv
                    else:
                        dst.pop(vid, None)
            elif code == _CSWAP:
                batch[a], batch[b] = batch[b], batch[a]
            elif code == _CNEG:
                slot = batch[a]
                for vid in slot:
                    slot[vid] = -slot[vid]

    # -- materialization ---------------------------------------------------

    def _materialize(self, n: int, apply_fn) -> IntegerMatrix:
        cols = []
        for j in range(n):
            e = [0] * n
            e[j] = 1
            cols.append(apply_fn(e))
        return IntegerMatrix(n, n, [[cols[j][i] for j in range(n)] for i in range(n)])

    @property
    def U(self) -> IntegerMatrix:
        if self._u is None:
            self._u = self._materialize(self.nrows, self.apply_u)
        return self._u

    @property
    def U_inv(self) -> IntegerMatrix:
        if self._u_inv is None:
            self._u_inv = self._materialize(self.nrows, self.apply_u_inv)
        return self._u_inv

    @property
    def V(self) -> IntegerMatrix:
        if self._v is None:
            self._v = self._materialize(self.ncols, self.apply_v)
        return self._v

    @property
    def V_inv(self) -> IntegerMatrix:
        if self._v_inv is None:
            self._v_inv = self._materialize(self.ncols, self.apply_v_inv)
        return self._v_inv

    @property
    def D(self) -> IntegerMatrix:
        out = IntegerMatrix.zeros(self.nrows, self.ncols)
        for i, d in enumerate(self.diag):
            out._rows[i][i] = d
        return out

    def kernel_column(self, j: int) -> list[int]:
        """Column rank+j of V: basis vector j of ker A (0 <= j < ncols-rank)."""
        idx = self.rank + j
        if not self.rank <= idx < self.ncols:
            raise IndexError("kernel column out of range")
        e = [0] * self.ncols
        e[idx] = 1
        return self.apply_v(e)

    def release_ops(self) -> None:
        """Drop the operation log once every consumer has replayed it."""
        self._ops = []


def _sparse_smith(nrows: int, ncols: int,
                  entries: Iterable[tuple[int, int, int]],
                  mod: int = 0) -> SmithDecomposition:
    """Sparse Smith reduction with an operation log.

    Pivot rule: smallest nonzero |value| first, ties broken by a Markowitz
    fill estimate, then by (row, col).  With mod == 2 every pivot is 1 and the
    elimination is a plain GF(2) reduction in the same framework.
    """
    rows: list[dict[int, int]] = [dict() for _ in range(nrows)]
    cols: list[set[int]] = [set() for _ in range(ncols)]
    for r, c, v in entries:
        if mod:
            v %= mod
        if not v:
            continue
        if c in rows[r]:
            raise ValueError(f"duplicate entry at ({r}, {c})")
        rows[r][c] = v
        cols[c].add(r)

    ops: list[tuple[int, int, int, int]] = []
    done_row = bytearray(nrows)
    done_col = bytearray(ncols)
    heap: list[tuple[int, int, int, int]] = []

    def push(r: int, c: int, v: int) -> None:
        heapq.heappush(heap, (v if v > 0 else -v,
                              (len(rows[r]) - 1) * (len(cols[c]) - 1), r, c))

    for c, rset in enumerate(cols):
        for r in rset:
            push(r, c, rows[r][c])

    def row_add(dst: int, src: int, q: int) -> None:
        # row[dst] += q * row[src]
        ops.append((_RADD, dst, src, q))
        drow = rows[dst]
        for cc, vv in rows[src].items():
            nv = drow.get(cc, 0) + q * vv
            if mod:
                nv %= mod
            if nv:
                drow[cc] = nv
                cols[cc].add(dst)
                push(dst, cc, nv)
            elif cc in drow:
                del drow[cc]
                cols[cc].discard(dst)

    def col_add(dst: int, src: int, q: int) -> None:
        # col[dst] += q * col[src]
        ops.append((_CADD, dst, src, q))
        for rr in sorted(cols[src]):
            vv = rows[rr][src]
            nv = rows[rr].get(dst, 0) + q * vv
            if mod:
                nv %= mod
            if nv:
                rows[rr][dst] = nv
                cols[dst].add(rr)
                push(rr, dst, nv)
            elif dst in rows[rr]:
                del rows[rr][dst]
                cols[dst].discard(rr)

    def row_negate(r: int) -> None:
        ops.append((_RNEG, r, 0, 0))
        rr = rows[r]
        for cc in rr:
            rr[cc] = -rr[cc]

    pivots: list[tuple[int, int, int]] = []
    while heap:
        a, mk, r, c = heapq.heappop(heap)
        if done_row[r] or done_col[c]:
            continue
        v = rows[r].get(c)
        if v is None or (v if v > 0 else -v) != a:
            continue  # stale key; the current value has its own key
        mk_now = (len(rows[r]) - 1) * (len(cols[c]) - 1)
        if mk_now != mk:
            push(r, c, v)
            continue
        if v < 0:
            row_negate(r)
            v = -v

        # Reduce the pivot column; leftovers smaller than v re-enter the heap.
        clean = True
        for i in sorted(cols[c]):
            if i == r:
                continue
            q = rows[i][c] // v
            if q:
                row_add(i, r, -q)
            if c in rows[i]:
                clean = False
        if not clean:
            push(r, c, v)
            continue

        # Column is clear, now the pivot row; col c has only row r left, so
        # each operation touches row r alone.
        clean = True
        for j in sorted(rows[r]):
            if j == c:
                continue
            q = rows[r][j] // v
            if q:
                col_add(j, c, -q)
            if j in rows[r]:
                clean = False
        if not clean:
            push(r, c, v)
            continue

        done_row[r] = done_col[c] = 1
        pivots.append((r, c, v))

    if __debug__:
        for r, rdict in enumerate(rows):
            assert not rdict or (done_row[r] and len(rdict) == 1), "unreduced row"

    # Emit swaps that bring pivot t to position (t, t).
    row_at = list(range(nrows))   # position -> original row index
    row_pos = list(range(nrows))  # original row index -> position
    col_at = list(range(ncols))
    col_pos = list(range(ncols))
    diag = []
    for t, (r, c, v) in enumerate(pivots):
        p = row_pos[r]
        if p != t:
            ops.append((_RSWAP, t, p, 0))
            ra, rb = row_at[t], row_at[p]
            row_at[t], row_at[p] = rb, ra
            row_pos[ra], row_pos[rb] = p, t
        p = col_pos[c]
        if p != t:
            ops.append((_CSWAP, t, p, 0))
            ca, cb = col_at[t], col_at[p]
            col_at[t], col_at[p] = cb, ca
            col_pos[ca], col_pos[cb] = p, t
        diag.append(v)

    if mod == 0 and len(diag) > 1:
        _enforce_divisibility(diag, ops)

    return SmithDecomposition(nrows, ncols, tuple(diag), ops, mod)


def _enforce_divisibility(diag: list[int], ops: list[tuple[int, int, int, int]]) -> None:
    """Fix up diag[i] | diag[i+1] by 2x2 gcd/lcm steps on the diagonal."""
    changed = True
    while changed:
        changed = False
        for t in range(len(diag) - 1):
            s = t + 1
            a, b = diag[t], diag[s]
            if b % a == 0:
                continue
            changed = True
            # col t += col s plants b at (s, t); everything else in the two
            # rows/columns is zero, so the 2x2 block [[a, 0], [b, b]] is exact.
            ops.append((_CADD, t, s, 1))
            att, ats = a, 0
            ast, ass = b, b
            while ast:
                q = att // ast
                if q:
                    ops.append((_RADD, t, s, -q))
                    att -= q * ast
                    ats -= q * ass
                ops.append((_RSWAP, t, s, 0))
                att, ast = ast, att
                ats, ass = ass, ats
            if att < 0:
                ops.append((_RNEG, t, 0, 0))
                att, ats = -att, -ats
            if ass < 0:
                ops.append((_RNEG, s, 0, 0))
                ass = -ass
            if ats:
                # clear (t, s) with the column holding gcd at (t, t)
                ops.append((_CADD, s, t, -(ats // att)))
            diag[t], diag[s] = att, ass


def smith_normal_form(mat: IntegerMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular transforms: U @ mat @ V == D."""
    return _sparse_smith(mat.nrows, mat.ncols, mat.nonzero_entries(), mod=0)


def smith_normal_form_sparse(nrows: int, ncols: int,
                             entries: Iterable[tuple[int, int, int]],
                             mod: int = 0) -> SmithDecomposition:
    """Smith reduction straight from (row, col, value) triples.

    ``mod=2`` runs the same elimination over GF(2); the diagonal is then all
    ones and the transform log replays with mod-2 arithmetic.
    """
    return _sparse_smith(nrows, ncols, entries, mod=mod)


class Z2Matrix:
    """Matrix over GF(2) with rows packed into Python ints (bit j = column j).

    Row operations are single big-int XORs, so elimination on the pairing and
    Wu systems runs word-parallel.
    """

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: list[int]):
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        if ncols < 0 or any(r < 0 or r >> ncols for r in rows):
            raise ValueError("row has bits outside declared width")
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "Z2Matrix":
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        packed = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            m = 0
            for j, v in enumerate(r):
                if v & 1:
                    m |= 1 << j
            packed.append(m)
        return cls(len(packed), ncols, packed)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Z2Matrix":
        return cls(nrows, ncols, [0] * nrows)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def row_list(self, i: int) -> list[int]:
        r = self.rows[i]
        return [(r >> j) & 1 for j in range(self.ncols)]

    def to_lists(self) -> list[list[int]]:
        return [self.row_list(i) for i in range(self.nrows)]

    def transpose(self) -> "Z2Matrix":
        out = [0] * self.ncols
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                out[low.bit_length() - 1] |= 1 << i
                r ^= low
        return Z2Matrix(self.ncols, self.nrows, out)

    def copy(self) -> "Z2Matrix":
        return Z2Matrix(self.nrows, self.ncols, list(self.rows))

    def _echelon(self) -> tuple[list[int], list[int]]:
        """Reduced row echelon form; returns (rows, pivot column list)."""
        ech: list[int] = []
        piv: list[int] = []
        for r in self.rows:
            for p, e in zip(piv, ech):
                if (r >> p) & 1:
                    r ^= e
            if r:
                p = (r & -r).bit_length() - 1
                # keep the echelon reduced: clear bit p from earlier rows
                for k in range(len(ech)):
                    if (ech[k] >> p) & 1:
                        ech[k] ^= r
                ech.append(r)
                piv.append(p)
        order = sorted(range(len(piv)), key=lambda k: piv[k])
        return [ech[k] for k in order], sorted(piv)

    @property
    def rank(self) -> int:
        return len(self._echelon()[1])

    def kernel_basis(self) -> list[list[int]]:
        """Deterministic basis of the right kernel, as 0/1 lists."""
        ech, piv = self._echelon()
        pivset = set(piv)
        basis = []
        for j in range(self.ncols):
            if j in pivset:
                continue
            v = 1 << j
            for p, e in zip(piv, ech):
                if (e >> j) & 1:
                    v |= 1 << p
            basis.append([(v >> k) & 1 for k in range(self.ncols)])
        return basis

    def apply(self, vec: Sequence[int]) -> list[int]:
        """Matrix-vector product over GF(2)."""
        m = 0
        for j, v in enumerate(vec):
            if v & 1:
                m |= 1 << j
        return [(r & m).bit_count() & 1 for r in self.rows]

    def __repr__(self) -> str:
        return f"Z2Matrix({self.nrows}x{self.ncols})"


def z2_solve(mat: Z2Matrix, rhs: Sequence[int]) -> tuple[list[int] | None, list[list[int]], int]:
    """Solve mat @ x = rhs over GF(2).

    Returns (solution, kernel_basis, rank); solution is None when the system
    is inconsistent.  The particular solution sets every free variable to 0,
    so the output is deterministic.
    """
    if len(rhs) != mat.nrows:
        raise ValueError("right-hand side length mismatch")
    n = mat.ncols
    mask = (1 << n) - 1
    ech: list[int] = []
    piv: list[int] = []
    consistent = True
    for i, r in enumerate(mat.rows):
        aug = r | ((rhs[i] & 1) << n)
        for p, e in zip(piv, ech):
            if (aug >> p) & 1:
                aug ^= e
        if aug & mask:
            p = (aug & -aug).bit_length() - 1
            for k in range(len(ech)):
                if (ech[k] >> p) & 1:
                    ech[k] ^= aug
            ech.append(aug)
            piv.append(p)
        elif aug:
            consistent = False
    if not consistent:
        return None, mat.kernel_basis(), len(piv)
    sol = [0] * n
    for p, e in zip(piv, ech):
        if (e >> n) & 1:
            sol[p] = 1
    return sol, mat.kernel_basis(), len(piv)
