import pytest
from hypothesis import given, strategies as st

from gs_cohomlab import corpus
from gs_cohomlab.errors import IncompatibleCone, InvalidStructure, NonInjectiveMap
from gs_cohomlab.exactla import Field
from gs_cohomlab.fincat import FinPoset
from gs_cohomlab.simp import (ComplexDiagram, Filtration, SimplicialComplex, colimit, cone_factor, face_poset,
                              filtration_from_json, simplicial_cohomology)


def test_simplicial_cohomology():
    F = Field(2)
    assert simplicial_cohomology(corpus.point(), F, 2) == [1, 0, 0]
    assert simplicial_cohomology(corpus.triangle_boundary(), F, 2) == [1, 1, 0]
    assert simplicial_cohomology(corpus.triangle(), F, 2) == [1, 0, 0]
    assert simplicial_cohomology(SimplicialComplex.boundary_of_simplex(3), Field(0), 3) == [1, 0, 1, 0]


def test_face_poset():
    P = face_poset(corpus.edge())
    assert len(P.elements) == 3
    assert len([r for r in P.relations() if r[0] != r[1]]) == 2
    B = face_poset(corpus.triangle_boundary())
    assert (len(B.elements), len(B.covers())) == (6, 6)
    assert len(face_poset(corpus.point()).elements) == 1
    assert len(face_poset(corpus.edge(), include_empty=True).elements) == 4


def test_colimit_coproduct():
    P = FinPoset.antichain(["a", "b"])
    D = ComplexDiagram(P, {"a": SimplicialComplex([["x"]]), "b": SimplicialComplex([["x"]])}, {})
    K = colimit(D)
    assert len(K.complex.vertices) == 2
    assert K.complex.maximal_faces() == [(K.inclusions["a"]["x"],), (K.inclusions["b"]["x"],)] or \
        len(K.complex.maximal_faces()) == 2


def test_colimit_pushout():
    K = colimit(corpus.pushout_diagram())
    assert len(K.complex.vertices) == 3
    assert len(K.complex.faces_of_dim(1)) == 2
    inc = K.inclusions
    assert inc["p"]["b"] == inc["q"]["c"] == inc["r"]["v"]


def test_colimit_constant_points():
    K = colimit(corpus.constant_point_diagram(corpus.crown()))
    assert len(K.complex.vertices) == 1


def test_cone_factor():
    D = corpus.pushout_diagram()
    K = colimit(D)
    ident = cone_factor(D, K, K.complex, K.inclusions)
    assert all(ident[v] == v for v in K.complex.vertices)
    pt = SimplicialComplex([["*"]])
    const = cone_factor(D, K, pt, {p: {v: "*" for v in D.complexes[p].vertices} for p in D.index.elements})
    assert set(const.values()) == {"*"}
    L = SimplicialComplex([[0, 1], [1, 2], [2, 3]])
    cone = {"r": {"v": 1}, "p": {"a": 0, "b": 1}, "q": {"c": 1, "d": 2}}
    emb = cone_factor(D, K, L, cone)
    assert sorted(emb.values()) == [0, 1, 2]
    bad = dict(cone, q={"c": 2, "d": 3})
    with pytest.raises(IncompatibleCone):
        cone_factor(D, K, L, bad)


def test_diagram_validation():
    P = FinPoset.chain(1)
    D = ComplexDiagram(P, {0: SimplicialComplex([["a"], ["b"]]), 1: SimplicialComplex([["c"]])},
                       {(0, 1): {"a": "c", "b": "c"}})
    assert not D.is_injective()
    with pytest.raises(NonInjectiveMap):
        colimit(D)
    with pytest.raises(InvalidStructure):
        ComplexDiagram(P, {0: SimplicialComplex([["a", "b"]]), 1: SimplicialComplex([["c"], ["d"]])},
                       {(0, 1): {"a": "c", "b": "d"}})
    with pytest.raises(InvalidStructure):
        filtration_from_json({"steps": [{"maximal_faces": [[0, 1]]}, {"maximal_faces": [[0]]}]})


def test_filtration_maps():
    f = corpus.point_edge_boundary()
    assert isinstance(f, Filtration)
    assert f.map(0, 2) == {0: 0}


@st.composite
def complexes(draw):
    n = draw(st.integers(1, 5))
    faces = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=1, max_size=3, unique=True), min_size=1, max_size=5))
    return SimplicialComplex(faces)


@given(complexes())
def test_euler_characteristic(s):
    F = Field(3)
    h = simplicial_cohomology(s, F, s.dimension + 1)
    chi = sum((-1) ** d * len(s.faces_of_dim(d)) for d in range(s.dimension + 1))
    assert sum((-1) ** i * x for i, x in enumerate(h)) == chi
