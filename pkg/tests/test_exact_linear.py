"""Exact linear algebra: worked examples plus seeded property suites.

The Smith engine is cross-checked against a dense textbook elimination and
against the gcd-of-minors characterization of the invariant factors, both
implemented independently in ``oracles.py``.
"""

import random
from math import gcd

import pytest

from oracles import dense_smith_diag, minors_gcd
from psw.exact_linear import (
    IntegerMatrix,
    Z2Matrix,
    integer_determinant,
    smith_normal_form,
    smith_normal_form_sparse,
    z2_solve,
)

SEED = 20250819
TRIALS = 120


def random_matrix(rng, max_dim=7, lo=-9, hi=9, density=0.7):
    n = rng.randint(0, max_dim)
    m = rng.randint(0, max_dim)
    rows = [[rng.randint(lo, hi) if rng.random() < density else 0
             for _ in range(m)] for _ in range(n)]
    return IntegerMatrix.from_rows(rows, ncols=m)


# -- worked examples -------------------------------------------------------

def test_smith_examples():
    s = smith_normal_form(IntegerMatrix.from_rows([[2, 4], [6, 8]]))
    assert s.diag == (2, 4)
    assert smith_normal_form(IntegerMatrix.identity(3)).diag == (1, 1, 1)
    z = smith_normal_form(IntegerMatrix.zeros(2, 3))
    assert z.diag == ()
    assert z.diagonal == (0, 0)
    assert z.rank == 0


def test_smith_torsion_example():
    # boundary matrix of the 2-skeleton pattern that produces Z_2 torsion
    s = smith_normal_form(IntegerMatrix.from_rows([[2]]))
    assert s.diag == (2,)


def test_determinant_examples():
    assert integer_determinant(IntegerMatrix.identity(4)) == 1
    assert integer_determinant(IntegerMatrix.from_rows([[2, 1], [1, 1]])) == 1
    assert integer_determinant(IntegerMatrix.from_rows([[2, 0], [0, 3]])) == 6
    assert integer_determinant(IntegerMatrix.from_rows([], ncols=0)) == 1
    with pytest.raises(ValueError):
        integer_determinant(IntegerMatrix.zeros(2, 3))


def test_matmul_and_transpose():
    a = IntegerMatrix.from_rows([[1, 2], [3, 4]])
    b = IntegerMatrix.from_rows([[0, 1], [1, 0]])
    assert (a @ b).to_lists() == [[2, 1], [4, 3]]
    assert a.transpose().to_lists() == [[1, 3], [2, 4]]
    assert a.apply([1, 1]) == [3, 7]


# -- Smith normal form properties ------------------------------------------

def test_smith_factorization_and_unimodularity():
    rng = random.Random(SEED)
    for _ in range(TRIALS):
        a = random_matrix(rng)
        s = smith_normal_form(a)
        # U @ A @ V is the diagonal matrix D
        assert (s.U @ a) @ s.V == s.D
        # transforms are unimodular and the stored inverses really invert
        if a.nrows:
            assert abs(integer_determinant(s.U)) == 1
            assert s.U @ s.U_inv == IntegerMatrix.identity(a.nrows)
        if a.ncols:
            assert abs(integer_determinant(s.V)) == 1
            assert s.V @ s.V_inv == IntegerMatrix.identity(a.ncols)
        # divisibility chain, positivity
        for d, e in zip(s.diag, s.diag[1:]):
            assert d > 0 and e % d == 0
        assert len(s.diagonal) == min(a.nrows, a.ncols)


def test_smith_agrees_with_dense_textbook_elimination():
    rng = random.Random(SEED + 1)
    for _ in range(TRIALS):
        a = random_matrix(rng, max_dim=6)
        assert smith_normal_form(a).diag == dense_smith_diag(a.to_lists())


def test_smith_invariant_factors_match_minor_gcds():
    rng = random.Random(SEED + 2)
    for _ in range(100):
        a = random_matrix(rng, max_dim=4, lo=-5, hi=5)
        s = smith_normal_form(a)
        rows = a.to_lists()
        prod = 1
        for k, d in enumerate(s.diag, start=1):
            prod *= d
            assert prod == abs(minors_gcd(rows, k))
        if s.rank < min(a.nrows, a.ncols):
            assert minors_gcd(rows, s.rank + 1) == 0


def test_smith_first_factor_is_entry_gcd():
    rng = random.Random(SEED + 3)
    for _ in range(TRIALS):
        a = random_matrix(rng)
        s = smith_normal_form(a)
        g = 0
        for row in a.to_lists():
            for v in row:
                g = gcd(g, v)
        assert (s.diag[0] if s.diag else 0) == g


def test_smith_vector_replay_matches_materialized_transforms():
    rng = random.Random(SEED + 4)
    for _ in range(TRIALS):
        a = random_matrix(rng)
        s = smith_normal_form(a)
        x = [rng.randint(-9, 9) for _ in range(a.nrows)]
        y = [rng.randint(-9, 9) for _ in range(a.ncols)]
        assert s.apply_u(x) == s.U.apply(x)
        assert s.apply_u_inv(x) == s.U_inv.apply(x)
        assert s.apply_v(y) == s.V.apply(y)
        assert s.apply_v_inv(y) == s.V_inv.apply(y)


def test_smith_batch_replay_matches_single_replay():
    rng = random.Random(SEED + 5)
    for _ in range(60):
        a = random_matrix(rng)
        if a.ncols == 0:
            continue
        s = smith_normal_form(a)
        vecs = [[rng.randint(-4, 4) if rng.random() < 0.5 else 0
                 for _ in range(a.ncols)] for _ in range(5)]
        batch = [dict() for _ in range(a.ncols)]
        for vid, v in enumerate(vecs):
            for pos, c in enumerate(v):
                if c:
                    batch[pos][vid] = c
        s.apply_v_inv_batch(batch)
        for vid, v in enumerate(vecs):
            want = s.apply_v_inv(v)
            got = [batch[pos].get(vid, 0) for pos in range(a.ncols)]
            assert got == want


def test_smith_kernel_columns_span_the_kernel():
    rng = random.Random(SEED + 6)
    for _ in range(TRIALS):
        a = random_matrix(rng)
        s = smith_normal_form(a)
        for j in range(a.ncols - s.rank):
            k = s.kernel_column(j)
            assert a.apply(k) == [0] * a.nrows


def test_sparse_entry_interface_matches_row_interface():
    rng = random.Random(SEED + 7)
    for _ in range(TRIALS):
        a = random_matrix(rng)
        s1 = smith_normal_form(a)
        s2 = smith_normal_form_sparse(a.nrows, a.ncols, a.nonzero_entries())
        assert s1.diag == s2.diag


def test_smith_mod2_reduction():
    rng = random.Random(SEED + 8)
    for _ in range(60):
        a = random_matrix(rng, max_dim=6, lo=0, hi=1, density=0.6)
        s = smith_normal_form_sparse(a.nrows, a.ncols, a.nonzero_entries(),
                                     mod=2)
        assert all(d == 1 for d in s.diag)
        got = ((s.U @ a) @ s.V).to_lists()
        want = s.D.to_lists()
        for gr, wr in zip(got, want):
            assert [v % 2 for v in gr] == [v % 2 for v in wr]


# -- GF(2) layer -------------------------------------------------------------

def test_z2_rank_and_kernel_examples():
    m = Z2Matrix.from_rows([[1, 0, 1], [0, 1, 1], [1, 1, 0]])
    assert m.rank == 2
    basis = m.kernel_basis()
    assert basis == [[1, 1, 1]]
    assert m.apply([1, 1, 1]) == [0, 0, 0]


def test_z2_transpose_is_involutive():
    rng = random.Random(SEED + 9)
    for _ in range(TRIALS):
        n, m = rng.randint(0, 7), rng.randint(0, 7)
        rows = [[rng.randint(0, 1) for _ in range(m)] for _ in range(n)]
        mat = Z2Matrix.from_rows(rows, ncols=m)
        assert mat.transpose().transpose().to_lists() == rows


def test_z2_solve_properties():
    rng = random.Random(SEED + 10)
    solved = 0
    for _ in range(TRIALS):
        n, m = rng.randint(1, 7), rng.randint(1, 7)
        rows = [[rng.randint(0, 1) for _ in range(m)] for _ in range(n)]
        mat = Z2Matrix.from_rows(rows, ncols=m)
        rhs = [rng.randint(0, 1) for _ in range(n)]
        sol, kernel, rank = z2_solve(mat, rhs)
        assert rank == mat.rank
        assert len(kernel) == m - rank
        for k in kernel:
            assert mat.apply(k) == [0] * n
        if sol is not None:
            solved += 1
            assert mat.apply(sol) == rhs
        else:
            # exhaustive confirmation that no solution exists
            assert all(mat.apply([(x >> j) & 1 for j in range(m)]) != rhs
                       for x in range(1 << m))
    assert solved > 0


def test_z2_solve_deterministic_particular_solution():
    mat = Z2Matrix.from_rows([[1, 1, 0], [0, 0, 1]])
    sol, kernel, rank = z2_solve(mat, [1, 1])
    assert sol == [1, 0, 1]
    assert kernel == [[1, 1, 0]]
    assert rank == 2


def test_z2_solve_rejects_bad_rhs_length():
    with pytest.raises(ValueError):
        z2_solve(Z2Matrix.from_rows([[1, 0]]), [1, 0])
