from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy import Matrix
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from gs_cohomlab.errors import CompositionError, InvalidStructure
from gs_cohomlab.exactla import (CochainComplexRep, CohomologyBasis, Field, SparseMatrix, cohomology_dims, inverse,
                                 kernel_basis, rank, solve)
from gs_cohomlab.simp import SimplicialComplex, cochain_complex

PRIMES = [2, 3, 5, 7, 32003]


def sympy_rank(rows, p, n_cols):
    if not rows or not n_cols:
        return 0
    if p == 0:
        return Matrix(rows).rank()
    dm = DomainMatrix([[GF(p)(x) for x in r] for r in rows], (len(rows), n_cols), GF(p))
    return dm.rank()


@st.composite
def matrices(draw, max_dim=6):
    p = draw(st.sampled_from(PRIMES + [0]))
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    # mostly zeros, as in the cochain matrices
    entry = st.one_of(st.just(0), st.just(0), st.integers(-4, 4))
    data = [[draw(entry) for _ in range(c)] for _ in range(r)]
    return Field(p), data, c


def test_field_parse():
    assert Field.parse(2) == Field(2)
    assert Field.parse("GF(5)") == Field(5)
    assert Field.parse("Q").p == 0
    with pytest.raises(InvalidStructure):
        Field.parse(4)
    with pytest.raises(InvalidStructure):
        Field.parse("R")


def test_field_arithmetic():
    F = Field(7)
    assert F.inv(3) * 3 % 7 == 1
    Q = Field(0)
    assert Q.div(1, 3) == Fraction(1, 3)
    assert Q.decode(Q.encode(Fraction(-2, 5))) == Fraction(-2, 5)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_rank_examples():
    assert rank(SparseMatrix.zero(0, 0, Field(5))) == 0
    assert rank(SparseMatrix.identity(3, Field(5))) == 3
    assert rank(SparseMatrix.from_dense([[1, 2], [2, 4]], Field(7))) == 1


def test_kernel_examples():
    assert kernel_basis(SparseMatrix.identity(3, Field(3))) == []
    assert len(kernel_basis(SparseMatrix.zero(2, 3, Field(3)))) == 3
    (v,) = kernel_basis(SparseMatrix.from_dense([[1, 1]], Field(2)))
    assert v == {0: 1, 1: 1}


def test_solve_examples():
    F = Field(5)
    assert solve(SparseMatrix.identity(3, F), {0: 2, 2: 4}) == {0: 2, 2: 4}
    assert solve(SparseMatrix.zero(2, 2, F), {0: 1}) is None
    x = solve(SparseMatrix.from_dense([[1, 0], [0, 0]], F), [3, 0])
    assert x.get(0) == 3


def test_cohomology_dims_examples():
    F = Field(2)
    assert cohomology_dims(CochainComplexRep([1], [])) == [1]
    idm = SparseMatrix.identity(1, F)
    assert cohomology_dims(CochainComplexRep([1, 1], [idm])) == [0, 0]
    c = cochain_complex(SimplicialComplex.boundary_of_simplex(2), F, 1)
    assert cohomology_dims(c)[:2] == [1, 1]


def test_dd_violation_raises():
    F = Field(3)
    one = SparseMatrix.identity(1, F)
    with pytest.raises(CompositionError):
        CochainComplexRep([1, 1, 1], [one, one])


def test_inverse():
    F = Field(0)
    m = SparseMatrix.from_dense([[2, 1], [1, 1]], F)
    assert (m @ inverse(m)) == SparseMatrix.identity(2, F)


@given(matrices())
def test_rank_matches_sympy(arg):
    F, data, c = arg
    m = SparseMatrix.from_dense(data, F, cols=c)
    assert rank(m) == sympy_rank([[F(x) for x in r] for r in data], F.p, c)


@given(matrices())
def test_rank_nullity(arg):
    F, data, c = arg
    m = SparseMatrix.from_dense(data, F, cols=c)
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == c
    assert rank(m) == rank(m.transpose())
    for v in ker:
        assert m.apply(v) == {}


@given(matrices(), st.data())
def test_solve_roundtrip(arg, data):
    F, rows, c = arg
    m = SparseMatrix.from_dense(rows, F, cols=c)
    x = {j: F(data.draw(st.integers(-3, 3))) for j in range(c)}
    x = {j: v for j, v in x.items() if v}
    b = m.apply(x)
    y = solve(m, b)
    assert y is not None and m.apply(y) == b


@given(matrices(max_dim=5))
def test_euler_characteristic(arg):
    # C^0 --d--> C^1 --0--> 0 : alternating sum of dims equals that of cohomology
    F, rows, c = arg
    d = SparseMatrix.from_dense(rows, F, cols=c)
    dims = [c, len(rows)]
    h = cohomology_dims(CochainComplexRep(dims, [d]))
    assert h[0] - h[1] == dims[0] - dims[1]


def test_cohomology_basis():
    F = Field(2)
    c = cochain_complex(SimplicialComplex.boundary_of_simplex(2), F, 1)
    d0 = c.diffs[0]
    cocycles = [{j: 1} for j in range(3)]
    B = CohomologyBasis(list(d0.columns), cocycles, F.p)
    assert B.dim == 1
    assert B.is_coboundary(d0.apply({0: 1}))
    assert not B.is_coboundary({0: 1})
