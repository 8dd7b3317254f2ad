"""Small built-in examples used by the verification suites and the tests."""

from __future__ import annotations

from .alg import augmentation, ground_field_algebra, truncated_polynomial_algebra
from .exactla import Field
from .fincat import FinPoset, poset_to_category
from .gs import AlgebraPresheaf, constant_presheaf, incidence_presheaf
from .simp import ComplexDiagram, Filtration, SimplicialComplex


def point() -> SimplicialComplex:
    return SimplicialComplex([[0]])


def edge() -> SimplicialComplex:
    return SimplicialComplex([[0, 1]])


def triangle_boundary() -> SimplicialComplex:
    return SimplicialComplex.boundary_of_simplex(2)


def triangle() -> SimplicialComplex:
    return SimplicialComplex.simplex(2)


COMPLEXES = {"point": point, "edge": edge, "triangle_boundary": triangle_boundary, "triangle": triangle}


def point_edge_boundary() -> Filtration:
    """``{0} ⊆ [0,1] ⊆ ∂Δ²``."""
    return Filtration([point(), edge(), triangle_boundary()])


def point_edge() -> Filtration:
    return Filtration([point(), edge()])


def crown() -> FinPoset:
    """Minimal elements 1, 2 both below 3 and 4; its order complex is a circle."""
    return FinPoset.from_covers([1, 2, 3, 4], [(1, 3), (1, 4), (2, 3), (2, 4)])


def crown_with_top() -> FinPoset:
    return crown().with_top(5)


def grid() -> FinPoset:
    """The 2x2 grid: a commuting square with two factorizations of the diagonal."""
    return FinPoset.from_covers(["00", "01", "10", "11"], [("00", "01"), ("00", "10"), ("01", "11"), ("10", "11")])


def singleton_presheaf(P: FinPoset, field: Field) -> AlgebraPresheaf:
    return constant_presheaf(poset_to_category(P), ground_field_algebra(field))


def dual_numbers_presheaf(field: Field) -> AlgebraPresheaf:
    """``k[x]/(x^2) -> k`` over ``[1]`` (object 1 carries the dual numbers)."""
    k2 = truncated_polynomial_algebra(2, field)
    k = ground_field_algebra(field)
    cat = poset_to_category(FinPoset.chain(1))
    return AlgebraPresheaf(cat, {0: k, 1: k2}, {(0, 1): augmentation(k2, k)})


def filtration_presheaf(field: Field) -> AlgebraPresheaf:
    return incidence_presheaf(point_edge_boundary(), field)


def pushout_diagram() -> ComplexDiagram:
    """Two edges glued along a vertex: ``[a,b] <- {v} -> [c,d]`` with ``v -> b`` and ``v -> c``."""
    P = FinPoset.from_covers(["r", "p", "q"], [("r", "p"), ("r", "q")])
    cx = {"r": SimplicialComplex([["v"]]), "p": SimplicialComplex([["a", "b"]]), "q": SimplicialComplex([["c", "d"]])}
    return ComplexDiagram(P, cx, {("r", "p"): {"v": "b"}, ("r", "q"): {"v": "c"}})


def constant_point_diagram(P: FinPoset) -> ComplexDiagram:
    cx = {x: SimplicialComplex([["*"]]) for x in P.elements}
    return ComplexDiagram(P, cx, {c: {"*": "*"} for c in P.covers()})
