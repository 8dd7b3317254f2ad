import pytest

from gs_cohomlab import corpus
from gs_cohomlab.alg import truncated_polynomial_algebra
from gs_cohomlab.bw import (FunctorRep, bw_cohomology, bw_gs_agreement, constant_functor, constant_natural_system,
                            e2_vs_bw, hh_functor, hh_natural_system, roos_cohomology, selfduality_check, tw_functor)
from gs_cohomlab.errors import NotCertified
from gs_cohomlab.exactla import Field, SparseMatrix
from gs_cohomlab.fincat import FinPoset, one_object_category, poset_to_category
from gs_cohomlab.gs import GSDoubleComplex, constant_presheaf
from gs_cohomlab.hochschild import hh
from gs_cohomlab.simp import SimplicialComplex, simplicial_cohomology

from .oracles import order_complex_faces

F2, F3 = Field(2), Field(3)


def inclusion_functor(P, field, covariant):
    """``c -> k^{up(c)}`` (contravariant) or ``k^{down(c)}`` (covariant), arrows are coordinate inclusions."""
    if covariant:
        sets = {c: sorted((x for x in P.elements if P.leq(x, c)), key=str) for c in P.elements}
    else:
        sets = {c: sorted(P.up(c), key=str) for c in P.elements}
    cat = poset_to_category(P)
    maps = {}
    for f in cat.mor_list:
        s, t = cat.morphisms[f]
        src, tgt = (s, t) if covariant else (t, s)
        pos = {x: i for i, x in enumerate(sets[tgt])}
        maps[f] = SparseMatrix.from_columns(len(sets[tgt]), [{pos[x]: 1} for x in sets[src]], field)
    return FunctorRep(cat, {c: len(s) for c, s in sets.items()}, maps, field, covariant)


def test_bw_constant_examples():
    assert bw_cohomology(constant_natural_system(poset_to_category(FinPoset.chain(1)), F2), 2) == [1, 0, 0]
    assert bw_cohomology(constant_natural_system(poset_to_category(corpus.crown()), F2), 2) == [1, 1, 0]
    assert bw_cohomology(constant_natural_system(one_object_category(), F2, dim=3), 2) == [3, 0, 0]


@pytest.mark.parametrize("P", [corpus.crown(), corpus.crown_with_top(), corpus.grid(), FinPoset.chain(2)])
def test_three_constant_pipelines(P):
    cat = poset_to_category(P)
    nerve = simplicial_cohomology(SimplicialComplex(order_complex_faces(P)), F3, 2)
    ns = constant_natural_system(cat, F3)
    assert bw_cohomology(ns, 2) == nerve
    assert roos_cohomology(constant_functor(cat, F3), 2) == nerve
    assert roos_cohomology(constant_functor(cat, F3, covariant=False), 2) == nerve
    assert roos_cohomology(tw_functor(ns), 2) == nerve


def test_roos_terminal_and_initial():
    P = corpus.crown_with_top()
    F = inclusion_functor(P, F2, covariant=False)
    assert F.dims[5] == 1
    assert roos_cohomology(F, 2) == [1, 0, 0]
    C = FinPoset.chain(2)
    G = inclusion_functor(C, F2, covariant=True)
    assert roos_cohomology(G, 2) == [G.dims[0], 0, 0]


def test_hh_natural_system_one_object():
    A = truncated_polynomial_algebra(2, F3)
    a = constant_presheaf(one_object_category(), A)
    for q in range(3):
        ns = hh_natural_system(a, q)
        (f,) = ns.base.mor_list
        assert ns.dims[f] == hh(A, q_max=q)[q]


def test_hh_natural_system_dual_numbers():
    ns = hh_natural_system(corpus.dual_numbers_presheaf(F3), 0)
    assert ns.dims == {(0, 0): 1, (0, 1): 1, (1, 1): 2}
    ns.check_functor()


@pytest.mark.parametrize("name", ["filtration", "dual", "crown", "crown_top"])
def test_bw_matches_d_simp(name):
    a = {"filtration": lambda: corpus.filtration_presheaf(F2),
         "dual": lambda: corpus.dual_numbers_presheaf(F3),
         "crown": lambda: corpus.singleton_presheaf(corpus.crown(), F2),
         "crown_top": lambda: corpus.singleton_presheaf(corpus.crown_with_top(), F2)}[name]()
    d = GSDoubleComplex(a, q_max=2)
    assert all(bw_gs_agreement(d, q) for q in range(3))
    rep = e2_vs_bw(a, 2, 2, double_complex=d)
    assert rep.ok
    assert set(rep.to_json()["cells"]) == {f"{p},{q}" for p in range(d.p_max + 1) for q in range(3)}


def test_hh_functor_filtration():
    a = corpus.filtration_presheaf(F2)
    F0 = hh_functor(a, 0)
    for f in a.base.mor_list:
        if a.base.is_identity(f):
            assert F0.maps[f] == SparseMatrix.identity(F0.dims[a.base.source(f)], F2)
    # composite arrow 0 -> 2 acts as the product of the two steps
    assert F0.maps[(0, 2)] == F0.maps[(0, 1)] @ F0.maps[(1, 2)]


def test_selfduality_filtration():
    rep = selfduality_check(corpus.filtration_presheaf(F2), 2, 2)
    top = hh(corpus.filtration_presheaf(F2).algebras[2], q_max=2)
    assert [rep.cells[(0, q)][0] for q in range(3)] == top
    assert all(rep.cells[(p, q)] == (0, 0) for p in (1, 2) for q in range(3))


def test_selfduality_crown():
    rep = selfduality_check(corpus.singleton_presheaf(corpus.crown(), F2), 1, 2)
    assert rep.ok and rep.cells[(1, 0)] == (1, 1)


def test_selfduality_refuses_non_hom_epi():
    with pytest.raises(NotCertified):
        selfduality_check(corpus.dual_numbers_presheaf(F3), 1, 1)
