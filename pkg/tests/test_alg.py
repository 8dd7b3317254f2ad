import itertools

import pytest
from hypothesis import given, strategies as st

from gs_cohomlab import corpus
from gs_cohomlab.alg import (AlgebraMorphism, augmentation, center, diagonal_bimodule, ground_field_algebra,
                             incidence_algebra, kernel_ideal, limit_algebra, matrix_algebra, product_algebra,
                             quotient, restrict_bimodule, restriction_morphism, theta_map,
                             truncated_polynomial_algebra)
from gs_cohomlab.errors import FunctorialityViolation, InvalidStructure, NotLowerIdeal
from gs_cohomlab.exactla import Field
from gs_cohomlab.fincat import FinPoset
from gs_cohomlab.simp import colimit, face_poset

F2, F3, F5 = Field(2), Field(3), Field(5)


@st.composite
def posets(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    # a random DAG on 0..n-1 with edges i -> j only for i < j
    covers = [(i, j) for i, j in itertools.combinations(range(n), 2) if draw(st.booleans())]
    return FinPoset.from_covers(range(n), covers)


def test_incidence_dims():
    assert incidence_algebra(FinPoset.chain(0), F2).dim == 1
    assert incidence_algebra(FinPoset.chain(1), F2).dim == 3
    assert incidence_algebra(face_poset(corpus.triangle_boundary()), F2).dim == 12


@given(posets(), st.sampled_from([2, 3, 0]))
def test_incidence_is_matrix_subalgebra(P, p):
    """Brute force: e_(x,y) is the matrix unit E_xy; products must agree."""
    F = Field(p)
    A = incidence_algebra(P, F)
    pairs = list(A.labels)
    idx = {r: i for i, r in enumerate(pairs)}
    for (a, b), (c, d) in itertools.product(pairs, repeat=2):
        expected = {idx[(a, d)]: 1} if b == c else {}
        assert A.mul({idx[(a, b)]: 1}, {idx[(c, d)]: 1}) == expected
    assert A.unit == {idx[(x, x)]: 1 for x in P.elements}


def test_restriction_morphism():
    P = FinPoset.chain(1)
    full = restriction_morphism(P, P.elements, F2)
    assert all(v == {i: 1} for i, v in enumerate(full.images))
    f = restriction_morphism(P, [0], F2)
    assert (f.source.dim, f.target.dim) == (3, 1)
    labels = f.source.labels
    killed = {labels[i] for i, img in enumerate(f.images) if not img}
    assert killed == {(0, 1), (1, 1)}
    B = face_poset(corpus.triangle_boundary())
    g = restriction_morphism(B, face_poset(corpus.edge()).elements, F2)
    # 3 faces of the edge plus 2 vertex-edge pairs
    assert (g.source.dim, g.target.dim) == (12, 5)
    with pytest.raises(NotLowerIdeal):
        restriction_morphism(P, [1], F2)


def test_small_algebras():
    assert matrix_algebra(1, F5).dim == 1
    M2 = matrix_algebra(2, F5)
    assert M2.dim == 4 and len(center(M2)) == 1
    assert matrix_algebra(3, F5).dim == 9
    assert truncated_polynomial_algebra(1, F3).dim == 1
    assert truncated_polynomial_algebra(2, F3).dim == 2
    A = truncated_polynomial_algebra(3, F3)
    x = {1: 1}
    x2 = A.mul(x, x)
    assert A.dim == 3 and x2 and not A.mul(x2, x)


def test_kernel_ideal():
    P = FinPoset.chain(1)
    A = incidence_algebra(P, F2)
    assert kernel_ideal(AlgebraMorphism.identity(A)).dim == 0
    I = kernel_ideal(restriction_morphism(P, [0], F2))
    assert I.dim == 2 and I.is_idempotent()
    k2 = truncated_polynomial_algebra(2, F3)
    J = kernel_ideal(augmentation(k2))
    assert J.dim == 1 and J.square().dim == 0


def test_quotient():
    k2 = truncated_polynomial_algebra(2, F3)
    Q, pi = quotient(k2, kernel_ideal(augmentation(k2)))
    assert Q.dim == 1 and pi.is_surjective()


def test_bimodules():
    assert diagonal_bimodule(ground_field_algebra(F2)).dim == 1
    M2 = matrix_algebra(2, F3)
    D = diagonal_bimodule(M2)
    assert D.dim == 4
    same = restrict_bimodule(D, AlgebraMorphism.identity(M2))
    assert same.lact == D.lact and same.ract == D.ract
    k2 = truncated_polynomial_algebra(2, F3)
    eps = augmentation(k2)
    Mk = restrict_bimodule(diagonal_bimodule(eps.target), eps)
    assert Mk.act_left({1: 1}, {0: 1}) == {}


def test_invalid_algebra():
    # non-associative: e0 e0 = e1, others zero, fake unit
    with pytest.raises(InvalidStructure):
        from gs_cohomlab.alg import FiniteAlgebra
        FiniteAlgebra.from_triples(F2, 2, [(0, 0, 1, 1)], [1, 0])


def test_limit_algebra():
    A = matrix_algebra(2, F3)
    one = FinPoset.antichain(["x"])
    L, _ = limit_algebra(one, {"x": A}, {})
    assert L.dim == 4
    anti = FinPoset.antichain(["x", "y"])
    k2 = truncated_polynomial_algebra(2, F3)
    L2, proj = limit_algebra(anti, {"x": A, "y": k2}, {})
    assert L2.dim == product_algebra([A, k2]).dim == 6
    assert proj["y"].is_surjective()


def test_limit_rejects_non_functorial():
    # two paths 0 <= 1 <= 3, 0 <= 2 <= 3 with different composites into k x k
    P = corpus.grid()
    kk = product_algebra([ground_field_algebra(F3)] * 2)
    swap = AlgebraMorphism(kk, kk, [{1: 1}, {0: 1}])
    ident = AlgebraMorphism.identity(kk)
    algs = {x: kk for x in P.elements}
    maps = {("00", "01"): ident, ("00", "10"): swap, ("01", "11"): ident, ("10", "11"): ident}
    with pytest.raises(FunctorialityViolation):
        limit_algebra(P, algs, maps)


def test_theta_pushout():
    D = corpus.pushout_diagram()
    theta, L, proj = theta_map(D, colimit(D), F2)
    assert theta.source.dim == L.dim == 9
    assert theta.rank() == 9
    one = L.unit
    assert theta.apply(theta.source.unit) == one


def test_theta_filtration_is_top():
    D = corpus.point_edge_boundary()
    theta, L, proj = theta_map(D, colimit(D), F3)
    assert L.dim == 12 and proj[2].is_surjective() and proj[2].rank() == 12
