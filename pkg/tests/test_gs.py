import pytest

from gs_cohomlab import corpus
from gs_cohomlab.alg import ground_field_algebra, matrix_algebra, truncated_polynomial_algebra
from gs_cohomlab.errors import FunctorialityViolation, InsufficientQRange, InvalidStructure
from gs_cohomlab.exactla import Field
from gs_cohomlab.fincat import FinPoset, nerve, one_object_category, poset_to_category
from gs_cohomlab.gs import (AlgebraPresheaf, GSDoubleComplex, constant_presheaf, gs_cohomology, incidence_presheaf,
                            ss_consistency, ss_pages)
from gs_cohomlab.hochschild import hh
from gs_cohomlab.simp import SimplicialComplex, simplicial_cohomology

from .oracles import order_complex_faces

F2, F3 = Field(2), Field(3)


def test_one_object_base_is_hochschild():
    A = truncated_polynomial_algebra(2, F3)
    d = GSDoubleComplex(constant_presheaf(one_object_category(), A), q_max=3)
    assert d.p_max == 0
    assert gs_cohomology(d, 3) == hh(A, q_max=3) == [2, 1, 1, 1]
    pages = ss_pages(d)
    assert [pages[2][(0, q)] for q in range(4)] == [2, 1, 1, 1]
    M2 = matrix_algebra(2, F3)
    assert gs_cohomology(GSDoubleComplex(constant_presheaf(one_object_category(), M2), q_max=2), 2) == [1, 0, 0]


def test_singleton_cell_dims():
    d = GSDoubleComplex(corpus.singleton_presheaf(FinPoset.chain(1), F2), q_max=2)
    assert [d.cell_dim(p, 0) for p in range(2)] == [2, 1]
    assert [d.cell_dim(p, 2) for p in range(2)] == [2, 1]


def test_cell_dim_formula():
    a = corpus.filtration_presheaf(F2)
    d = GSDoubleComplex(a, q_max=2)
    for p, chains in enumerate(nerve(a.base, 2)):
        for q in range(3):
            expect = sum(a.algebras[ch.max].dim ** q * a.algebras[ch.min].dim for ch in chains)
            assert d.cell_dim(p, q) == expect


def test_filtration():
    d = GSDoubleComplex(corpus.filtration_presheaf(F2), q_max=2)
    gs = gs_cohomology(d, 2)
    assert gs == [1, 1, 0] == simplicial_cohomology(corpus.triangle_boundary(), F2, 2)


def test_closing_examples():
    for P, expect in ((corpus.crown(), [1, 1, 0, 0]), (corpus.crown_with_top(), [1, 0, 0, 0])):
        d = GSDoubleComplex(corpus.singleton_presheaf(P, F2), q_max=3)
        assert gs_cohomology(d, 3) == expect
        assert ss_consistency(ss_pages(d), expect).ok


@pytest.mark.parametrize("P", [corpus.crown(), corpus.grid(), FinPoset.chain(2), FinPoset.antichain([0, 1])])
def test_singleton_diagram_is_nerve_cohomology(P):
    # with trivial Hochschild direction only the nerve is left
    d = GSDoubleComplex(corpus.singleton_presheaf(P, F3), q_max=2)
    K = SimplicialComplex(order_complex_faces(P))
    assert gs_cohomology(d, 2) == simplicial_cohomology(K, F3, 2)


def test_dual_numbers_presheaf():
    a = corpus.dual_numbers_presheaf(F3)
    d = GSDoubleComplex(a, q_max=2)
    assert gs_cohomology(d, 2) == [2, 1, 1]
    u = GSDoubleComplex(a, q_max=2, normalized_nerve=False, p_max=4)
    assert gs_cohomology(u, 2) == [2, 1, 1]
    pages = ss_pages(d)
    assert all(pages[2][(p, q)] == 0 for p in range(2, d.p_max + 1) for q in range(3))


def test_incidence_presheaf_point_edge_unnormalized():
    a = incidence_presheaf(corpus.point_edge(), F2)
    n = gs_cohomology(GSDoubleComplex(a, q_max=2), 2)
    u = gs_cohomology(GSDoubleComplex(a, q_max=2, normalized_nerve=False, p_max=4), 2)
    assert n == u == [1, 0, 0]


def test_double_complex_identities():
    # d_simp^2 = 0, d_vert^2 = 0 and anti-commutation, checked cell by cell
    for a in (corpus.filtration_presheaf(F2), corpus.dual_numbers_presheaf(F3)):
        GSDoubleComplex(a, q_max=2).check()


def test_q_range_guard():
    d = GSDoubleComplex(corpus.filtration_presheaf(F2), q_max=1)
    with pytest.raises(InsufficientQRange):
        gs_cohomology(d, 2)


def test_terminal_collapse():
    d = GSDoubleComplex(corpus.filtration_presheaf(F2), q_max=2)
    e2 = ss_pages(d)[2]
    top = incidence_presheaf(corpus.point_edge_boundary(), F2).algebras[2]
    assert [e2[(0, q)] for q in range(3)] == hh(top, q_max=2)
    assert all(e2[(p, q)] == 0 for p in range(1, 3) for q in range(3))
    assert e2.columns_supported() == [0]


def test_presheaf_validation():
    k2 = truncated_polynomial_algebra(2, F3)
    k = ground_field_algebra(F3)
    cat = poset_to_category(FinPoset.chain(1))
    from gs_cohomlab.alg import augmentation
    with pytest.raises((InvalidStructure, FunctorialityViolation)):
        # arrow pointing the wrong way: A(1) must map to A(0)
        AlgebraPresheaf(cat, {0: k2, 1: k}, {(0, 1): augmentation(k2, k)})


def test_threads_do_not_change_result():
    d = GSDoubleComplex(corpus.filtration_presheaf(F2), q_max=2)
    assert gs_cohomology(d, 2, threads=1) == gs_cohomology(d, 2, threads=4)
