"""Wu and Stiefel-Whitney classes, the criterion bit, and intersection forms.

Expected coordinate tables are classical values entered by hand (total class
(1+a)^{n+1} for projective spaces, trivial tangent classes for spheres, tori,
and the sphere products, 1+x+x^2 for the complex projective plane).
"""

import pytest

from psw.char_classes import (
    intersection_form,
    mod2_pairing,
    self_intersection,
    stiefel_whitney,
    w2_criterion,
    wu_classes,
)
from psw.complex_model import verify_closed_manifold
from psw.cup_steenrod import cohomology_basis, cup, evaluate, steenrod_square
from psw.errors import InputError
from psw.exact_linear import IntegerMatrix, integer_determinant
from psw.homology_engine import class_of_cycle, fundamental_cycle, homology_class

# classical coordinate tables over the Z2 cohomology bases, degree by degree
WU_TABLE = {
    "s1": [[1], [0]],
    "t2": [[1], [0, 0], [0]],
    "rp2": [[1], [1], [0]],
    "s3": [[1], [], [], [0]],
    "rp3": [[1], [0], [0], [0]],
    "s1xs2": [[1], [0], [0], [0]],
    "s4": [[1], [], [], [], [0]],
    "s1xs3": [[1], [0], [], [0], [0]],
    "s2xs2": [[1], [], [0, 0], [], [0]],
    "cp2": [[1], [], [1], [], [0]],
    "rp4": [[1], [1], [1], [0], [0]],
    "t3": [[1], [0, 0, 0], [0, 0, 0], [0]],
}
SW_TABLE = {
    "s1": [[1], [0]],
    "t2": [[1], [0, 0], [0]],
    "rp2": [[1], [1], [1]],
    "s3": [[1], [], [], [0]],
    "rp3": [[1], [0], [0], [0]],
    "s1xs2": [[1], [0], [0], [0]],
    "s4": [[1], [], [], [], [0]],
    "s1xs3": [[1], [0], [], [0], [0]],
    "s2xs2": [[1], [], [0, 0], [], [0]],
    "cp2": [[1], [], [1], [], [1]],
    "rp4": [[1], [1], [0], [0], [1]],
    "t3": [[1], [0, 0, 0], [0, 0, 0], [0]],
}

PAIRING_NAMES = ("s1", "t2", "rp2", "s3", "rp3", "s1xs2", "s4", "s1xs3",
                 "s2xs2", "cp2", "rp4", "t3", "cp2xs1")


# -- the mod-2 pairing -----------------------------------------------------------

def test_pairing_full_rank_every_degree(corpus):
    for name in PAIRING_NAMES:
        K = corpus(name)
        for k in range(K.dim + 1):
            pairing = mod2_pairing(K, k)
            n = pairing.matrix.nrows
            assert pairing.matrix.ncols == n
            assert pairing.matrix.rank == n, (name, k)


def test_pairing_examples(corpus):
    assert mod2_pairing(corpus("cp2"), 2).matrix.to_lists() == [[1]]
    empty = mod2_pairing(corpus("s4"), 2).matrix
    assert (empty.nrows, empty.ncols) == (0, 0)
    assert mod2_pairing(corpus("t2"), 1).matrix.to_lists() == [[0, 1], [1, 0]]


def test_pairing_rejects_open_complex():
    from psw.complex_model import SimplicialComplex
    strip = SimplicialComplex("strip", 2, [[1, 2, 3], [2, 3, 4]])
    with pytest.raises(InputError):
        mod2_pairing(strip, 1)


# -- Wu classes -------------------------------------------------------------------

def test_wu_coordinate_tables(corpus):
    for name, table in WU_TABLE.items():
        got = wu_classes(corpus(name)).coordinate_table()
        assert got == table, name


def test_wu_defining_identity_over_full_bases(corpus):
    for name in PAIRING_NAMES:
        K = corpus(name)
        m = K.dim
        fund = fundamental_cycle(K, verify_closed_manifold(K)).mod2
        wu = wu_classes(K)
        for i in range(m + 1):
            v = wu[i].cochain
            for x in cohomology_basis(K, m - i, "Z2").representatives:
                lhs = evaluate(cup(v, x), fund)
                rhs = evaluate(steenrod_square(i, x), fund)
                assert lhs == rhs, (name, i)


def test_wu_vanishing(corpus):
    for name in PAIRING_NAMES:
        K = corpus(name)
        wu = wu_classes(K)
        for i in range(K.dim + 1):
            if 2 * i > K.dim:
                assert wu[i].is_zero, (name, i)


def test_wu_v2_on_cp2_is_generator(corpus):
    assert wu_classes(corpus("cp2"))[2].coords == (1,)
    assert wu_classes(corpus("s2xs2"))[2].coords == (0, 0)


# -- Stiefel-Whitney classes -------------------------------------------------------

def test_sw_coordinate_tables(corpus):
    for name, table in SW_TABLE.items():
        got = stiefel_whitney(corpus(name)).coordinate_table()
        assert got == table, name


def test_w1_zero_iff_orientable(corpus):
    for name in PAIRING_NAMES:
        K = corpus(name)
        report = verify_closed_manifold(K)
        w1 = stiefel_whitney(K)[1]
        assert w1.is_zero == report.is_orientable, name


def test_rp4_separates_w2_from_v2(corpus):
    rp4 = corpus("rp4")
    assert stiefel_whitney(rp4)[2].is_zero
    assert not wu_classes(rp4)[2].is_zero
    assert w2_criterion(rp4) == 0


# -- the criterion bit ---------------------------------------------------------------

def test_w2_criterion_values(corpus):
    assert w2_criterion(corpus("cp2")) == 1
    assert w2_criterion(corpus("cp2xs1")) == 1
    for name in ("s4", "s1xs3", "s2xs2", "t3", "rp2", "rp3"):
        assert w2_criterion(corpus(name)) == 0, name


def test_w2_criterion_requires_dimension_two(corpus):
    with pytest.raises(InputError):
        w2_criterion(corpus("s1"))


# -- intersection forms ----------------------------------------------------------------

def test_form_cp2(corpus):
    form = intersection_form(corpus("cp2"))
    assert form.matrix == ((1,),)
    assert form.rank == 1
    assert not form.is_even
    assert form.signature == 1


def test_form_s2xs2_hyperbolic(corpus):
    form = intersection_form(corpus("s2xs2"))
    assert form.matrix == ((0, 1), (1, 0))
    assert form.is_even
    assert form.signature == 0


def test_form_s4_empty(corpus):
    form = intersection_form(corpus("s4"))
    assert form.matrix == ()
    assert form.rank == 0
    assert form.signature == 0
    assert form.is_even


def test_form_t4_even_unimodular_signature_zero(corpus):
    form = intersection_form(corpus("t4"))
    assert form.rank == 6
    assert form.is_even
    assert form.signature == 0
    assert all(form.matrix[i][i] == 0 for i in range(6))
    mat = IntegerMatrix.from_rows([list(r) for r in form.matrix])
    assert abs(integer_determinant(mat)) == 1


def test_forms_symmetric_and_unimodular(corpus):
    for name in ("cp2", "s2xs2", "t4"):
        form = intersection_form(corpus(name))
        r = form.rank
        for i in range(r):
            for j in range(r):
                assert form.matrix[i][j] == form.matrix[j][i]
        if r:
            mat = IntegerMatrix.from_rows([list(row) for row in form.matrix])
            assert abs(integer_determinant(mat)) == 1


def test_even_form_signature_divisible_by_eight(corpus):
    for name in ("s2xs2", "t4"):
        form = intersection_form(corpus(name))
        assert form.is_even
        assert form.signature % 8 == 0


def test_published_basis_cycles_match_transform(corpus):
    for name in ("s2xs2", "t4"):
        K = corpus(name)
        form = intersection_form(K)
        for j, cycle in enumerate(form.basis_cycles):
            coords = class_of_cycle(K, 2, cycle).free
            want = tuple(form.transform[i][j] for i in range(form.rank))
            assert coords == want, (name, j)


def test_form_rejects_wrong_inputs(corpus):
    with pytest.raises(InputError):
        intersection_form(corpus("s3"))
    with pytest.raises(InputError):
        intersection_form(corpus("rp4"))


def test_self_intersection_values(corpus):
    s2xs2 = corpus("s2xs2")
    form = intersection_form(s2xs2)
    alpha = homology_class(s2xs2, 2, [1, 0])
    beta = homology_class(s2xs2, 2, [1, 1])
    zero = homology_class(s2xs2, 2, [0, 0])
    assert self_intersection(form, alpha) == 0
    assert self_intersection(form, beta) == 2
    assert self_intersection(form, zero) == 0

    cp2 = corpus("cp2")
    gen = homology_class(cp2, 2, [1])
    assert self_intersection(intersection_form(cp2), gen) == 1


def test_self_intersection_validates(corpus):
    s2xs2 = corpus("s2xs2")
    form = intersection_form(s2xs2)
    wrong_degree = homology_class(s2xs2, 0, [1])
    with pytest.raises(InputError):
        self_intersection(form, wrong_degree)
    from psw.homology_engine import HomologyClassZ
    with pytest.raises(InputError):
        self_intersection(form, HomologyClassZ(degree=2, free=(1,),
                                               torsion=()))
