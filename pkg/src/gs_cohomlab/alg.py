"""Finite-dimensional associative unital algebras, morphisms, bimodules, ideals, limits."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import FunctorialityViolation, InvalidStructure, NotLowerIdeal, ThetaNotIso
from .exactla import Echelon, Field, SparseMatrix, axpy, kernel_of_columns, rank_of_columns, scale
from .fincat import FinPoset


def _clean(v: Mapping, field: Field) -> dict:
    out = {}
    for k, x in v.items():
        x = field(x)
        if x:
            out[k] = x
    return out


class FiniteAlgebra:
    """Structure constants ``e_i e_j = sum_k mult[i][j][k] e_k`` over an exact field.

    ``prod[i][j]`` is the sparse product of basis elements and ``fact[k]`` lists
    ``(i, j, c)`` with ``c`` the ``e_k`` coefficient of ``e_i e_j``.
    """

    def __init__(self, field: Field, prod: Sequence[Sequence[Mapping]], unit: Mapping,
                 labels: Sequence | None = None, check: bool = True):
        self.field = field
        self.dim = n = len(prod)
        self.prod = [[_clean(prod[i][j], field) for j in range(n)] for i in range(n)]
        self.unit = _clean(unit, field)
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        if len(self.labels) != n:
            raise InvalidStructure("wrong number of basis labels")
        self.fact = [[] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                for k, c in self.prod[i][j].items():
                    if not 0 <= k < n:
                        raise InvalidStructure("structure constant index out of range")
                    self.fact[k].append((i, j, c))
        if check:
            self.validate()

    @classmethod
    def from_dense(cls, field: Field, mult, unit, labels=None) -> "FiniteAlgebra":
        """``mult[i][j][k]`` dense tensor; ``unit`` a coordinate list."""
        n = len(mult)
        prod = [[{k: mult[i][j][k] for k in range(n) if field(mult[i][j][k])} for j in range(n)] for i in range(n)]
        return cls(field, prod, {k: u for k, u in enumerate(unit) if field(u)}, labels)

    @classmethod
    def from_triples(cls, field: Field, dim: int, triples: Iterable, unit, labels=None) -> "FiniteAlgebra":
        prod = [[dict() for _ in range(dim)] for _ in range(dim)]
        for i, j, k, c in triples:
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise InvalidStructure(f"structure constant ({i}, {j}, {k}) out of range")
            prod[i][j][k] = field(prod[i][j].get(k, 0) + field(c))
        if not isinstance(unit, Mapping):
            unit = {k: u for k, u in enumerate(unit)}
        return cls(field, prod, unit, labels)

    def mult_tensor(self) -> list:
        """Dense ``c[i][j][k]``."""
        n = self.dim
        z = self.field(0)
        return [[[self.prod[i][j].get(k, z) for k in range(n)] for j in range(n)] for i in range(n)]

    def basis(self, i: int) -> dict:
        return {i: self.field(1)}

    def mul(self, u: Mapping, v: Mapping) -> dict:
        p = self.field.p
        out: dict = {}
        for i, a in u.items():
            row = self.prod[i]
            for j, b in v.items():
                axpy(out, a * b, row[j], p)
        return out

    def validate(self):
        n = self.dim
        for i in range(n):
            for j in range(n):
                ij = self.prod[i][j]
                for k in range(n):
                    a = self.mul(ij, {k: 1})
                    b = self.mul({i: 1}, self.prod[j][k])
                    if a != b:
                        raise InvalidStructure(f"associativity fails on basis triple ({i}, {j}, {k})")
        for i in range(n):
            e = {i: self.field(1)}
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                raise InvalidStructure(f"unit law fails on basis element {i}")

    def is_commutative(self) -> bool:
        return all(self.prod[i][j] == self.prod[j][i] for i in range(self.dim) for j in range(i))

    def __repr__(self):
        return f"FiniteAlgebra(dim={self.dim} over {self.field})"


class AlgebraMorphism:
    """Unital algebra map; ``images[i]`` is the image of ``e_i`` as a sparse vector."""

    def __init__(self, source: FiniteAlgebra, target: FiniteAlgebra, images: Sequence[Mapping], check: bool = True):
        if source.field != target.field:
            raise InvalidStructure("algebras over different fields")
        if len(images) != source.dim:
            raise InvalidStructure("need one image per source basis element")
        self.source, self.target = source, target
        self.images = [_clean(v, target.field) for v in images]
        for v in self.images:
            if any(not 0 <= k < target.dim for k in v):
                raise InvalidStructure("image index out of range")
        if check:
            self.validate()

    @classmethod
    def from_matrix(cls, source, target, matrix: Sequence[Sequence]) -> "AlgebraMorphism":
        """``matrix`` is ``target.dim x source.dim``."""
        return cls(source, target, [{r: matrix[r][c] for r in range(target.dim)} for c in range(source.dim)])

    @classmethod
    def identity(cls, a: FiniteAlgebra) -> "AlgebraMorphism":
        return cls(a, a, [{i: a.field(1)} for i in range(a.dim)], check=False)

    def validate(self):
        A, B = self.source, self.target
        for i in range(A.dim):
            for j in range(A.dim):
                if self.apply(A.prod[i][j]) != B.mul(self.images[i], self.images[j]):
                    raise InvalidStructure(f"map is not multiplicative on ({i}, {j})")
        if self.apply(A.unit) != B.unit:
            raise InvalidStructure("map does not preserve the unit")

    def apply(self, v: Mapping) -> dict:
        p = self.target.field.p
        out: dict = {}
        for i, a in v.items():
            axpy(out, a, self.images[i], p)
        return out

    def matrix(self) -> SparseMatrix:
        return SparseMatrix(self.target.dim, self.source.dim, self.source.field, tuple(dict(v) for v in self.images))

    def __matmul__(self, other: "AlgebraMorphism") -> "AlgebraMorphism":
        """``self ∘ other``."""
        if other.target is not self.source:
            raise InvalidStructure("morphisms are not composable")
        return AlgebraMorphism(other.source, self.target, [self.apply(v) for v in other.images], check=False)

    def equals(self, other: "AlgebraMorphism") -> bool:
        return self.images == other.images

    def rank(self) -> int:
        return rank_of_columns(self.images, self.source.field.p)

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_identity(self) -> bool:
        return self.source is self.target and all(v == {i: 1} for i, v in enumerate(self.images))

    def __repr__(self):
        return f"AlgebraMorphism({self.source.dim} -> {self.target.dim})"


class Bimodule:
    """A finite-dimensional ``left``-``right`` bimodule.

    ``lact[a][m]`` is ``e_a · m_m`` and ``ract[m][a]`` is ``m_m · e_a``.
    """

    def __init__(self, left: FiniteAlgebra, right: FiniteAlgebra | None, dim: int,
                 lact: Sequence[Sequence[Mapping]], ract: Sequence[Sequence[Mapping]], check: bool = True,
                 labels: Sequence | None = None):
        self.left = left
        self.right = right if right is not None else left
        self.field = left.field
        self.dim = dim
        f = self.field
        self.lact = [[_clean(lact[a][m], f) for m in range(dim)] for a in range(self.left.dim)]
        self.ract = [[_clean(ract[m][a], f) for a in range(self.right.dim)] for m in range(dim)]
        self.labels = tuple(labels) if labels is not None else tuple(range(dim))
        # tables keyed by module basis element
        self.left_out = [[(a, k, c) for a in range(self.left.dim) for k, c in self.lact[a][m].items()]
                         for m in range(dim)]
        self.right_out = [[(a, k, c) for a in range(self.right.dim) for k, c in self.ract[m][a].items()]
                          for m in range(dim)]
        if check:
            self.validate()

    @property
    def algebra(self) -> FiniteAlgebra:
        return self.left

    def act_left(self, a: Mapping, m: Mapping) -> dict:
        p = self.field.p
        out: dict = {}
        for i, x in a.items():
            row = self.lact[i]
            for j, y in m.items():
                axpy(out, x * y, row[j], p)
        return out

    def act_right(self, m: Mapping, a: Mapping) -> dict:
        p = self.field.p
        out: dict = {}
        for j, y in m.items():
            row = self.ract[j]
            for i, x in a.items():
                axpy(out, x * y, row[i], p)
        return out

    def validate(self):
        A, B = self.left, self.right
        one = self.field(1)
        for m in range(self.dim):
            e = {m: one}
            if self.act_left(A.unit, e) != e or self.act_right(e, B.unit) != e:
                raise InvalidStructure(f"unit does not act as identity on {m}")
            for a in range(A.dim):
                am = self.lact[a][m]
                for b in range(A.dim):
                    if self.act_left({b: one}, am) != self.act_left(A.prod[b][a], e):
                        raise InvalidStructure("left action is not associative")
                for b in range(B.dim):
                    if self.act_right(am, {b: one}) != self.act_left({a: one}, self.ract[m][b]):
                        raise InvalidStructure("left and right actions do not commute")
            for a in range(B.dim):
                ma = self.ract[m][a]
                for b in range(B.dim):
                    if self.act_right(ma, {b: one}) != self.act_right(e, B.prod[a][b]):
                        raise InvalidStructure("right action is not associative")

    def __repr__(self):
        return f"Bimodule(dim={self.dim})"


class TwoSidedIdeal:
    """Span of ``basis`` in ``ambient``; closure under both multiplications is checked."""

    def __init__(self, ambient: FiniteAlgebra, basis: Iterable[Mapping], check: bool = True):
        self.ambient = ambient
        f = ambient.field
        ech = Echelon(f.p)
        vecs = []
        for v in basis:
            v = _clean(v, f)
            if ech.insert(v):
                vecs.append(v)
        self.basis = vecs
        self._ech = ech
        if check:
            for v in vecs:
                for i in range(ambient.dim):
                    e = {i: f(1)}
                    if not self.contains(ambient.mul(e, v)) or not self.contains(ambient.mul(v, e)):
                        raise InvalidStructure("span is not a two-sided ideal")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Mapping) -> bool:
        res, _ = self._ech.reduce(v, track=False)
        return not res

    def square(self) -> "TwoSidedIdeal":
        """``I^2``, spanned by products of basis vectors."""
        A = self.ambient
        return TwoSidedIdeal(A, [A.mul(u, v) for u in self.basis for v in self.basis], check=False)

    def is_idempotent(self) -> bool:
        return self.square().dim == self.dim

    def __repr__(self):
        return f"TwoSidedIdeal(dim={self.dim} in {self.ambient!r})"


# ---------------------------------------------------------------------------
# constructions


def incidence_algebra(p: FinPoset, field: Field) -> FiniteAlgebra:
    """Basis ``e_(x,y)`` for ``x <= y``; ``e_(x,y) e_(y,z) = e_(x,z)``."""
    pairs = p.relations()
    idx = {r: i for i, r in enumerate(pairs)}
    n = len(pairs)
    one = field(1)
    prod = [[dict() for _ in range(n)] for _ in range(n)]
    for (x, y), i in idx.items():
        for z in p.up(y):
            prod[i][idx[(y, z)]] = {idx[(x, z)]: one}
    unit = {idx[(x, x)]: one for x in p.elements}
    A = FiniteAlgebra(field, prod, unit, labels=pairs, check=False)
    A.poset = p
    A.pair_index = idx
    return A


def _restriction_images(A: FiniteAlgebra, B: FiniteAlgebra, vmap: Mapping) -> list[dict]:
    """``e_(x,y) -> e_(vmap x, vmap y)`` when both are in ``vmap``, else 0."""
    one = B.field(1)
    out = []
    for x, y in A.labels:
        if x in vmap and y in vmap:
            out.append({B.pair_index[(vmap[x], vmap[y])]: one})
        else:
            out.append({})
    return out


def restriction_morphism(p: FinPoset, q, field: Field, source: FiniteAlgebra | None = None,
                         target: FiniteAlgebra | None = None) -> AlgebraMorphism:
    """``I(P) -> I(Q)`` for a lower ideal ``Q`` of ``P``."""
    qs = q.elements if isinstance(q, FinPoset) else tuple(q)
    if not p.is_lower_ideal(qs):
        raise NotLowerIdeal("subset is not a lower ideal")
    Q = q if isinstance(q, FinPoset) else p.subposet(qs)
    A = source if source is not None else incidence_algebra(p, field)
    B = target if target is not None else incidence_algebra(Q, field)
    return AlgebraMorphism(A, B, _restriction_images(A, B, {x: x for x in Q.elements}))


def restriction_along(A: FiniteAlgebra, B: FiniteAlgebra, embed: Mapping) -> AlgebraMorphism:
    """``I(P) -> I(Q)`` for an order embedding ``embed: Q -> P`` onto a lower ideal."""
    P, Q = A.poset, B.poset
    image = [embed[x] for x in Q.elements]
    if len(set(image)) != len(image) or not P.is_lower_ideal(image):
        raise NotLowerIdeal("image of the embedding is not a lower ideal")
    for x in Q.elements:
        for y in Q.elements:
            if Q.leq(x, y) != P.leq(embed[x], embed[y]):
                raise NotLowerIdeal("map is not an order embedding")
    inv = {embed[x]: x for x in Q.elements}
    return AlgebraMorphism(A, B, _restriction_images(A, B, inv))


def matrix_algebra(n: int, field: Field) -> FiniteAlgebra:
    """``M_n(k)`` with basis ``E_ij`` at index ``i*n + j``."""
    if n < 1:
        raise InvalidStructure("n must be positive")
    one = field(1)
    N = n * n
    prod = [[dict() for _ in range(N)] for _ in range(N)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                prod[i * n + j][j * n + k] = {i * n + k: one}
    unit = {i * n + i: one for i in range(n)}
    return FiniteAlgebra(field, prod, unit, labels=[f"E{i}{j}" for i in range(n) for j in range(n)])


def truncated_polynomial_algebra(m: int, field: Field) -> FiniteAlgebra:
    """``k[x]/(x^m)`` with basis ``1, x, ..., x^{m-1}``."""
    if m < 1:
        raise InvalidStructure("m must be positive")
    one = field(1)
    prod = [[({i + j: one} if i + j < m else {}) for j in range(m)] for i in range(m)]
    return FiniteAlgebra(field, prod, {0: one}, labels=[f"x^{i}" for i in range(m)])


def ground_field_algebra(field: Field) -> FiniteAlgebra:
    return FiniteAlgebra(field, [[{0: field(1)}]], {0: field(1)}, labels=["1"])


def augmentation(a: FiniteAlgebra, k: FiniteAlgebra | None = None) -> AlgebraMorphism:
    """``k[x]/(x^m) -> k`` sending ``x`` to 0 (any algebra whose unit is ``e_0`` and the rest is an ideal)."""
    k = k or ground_field_algebra(a.field)
    return AlgebraMorphism(a, k, [{0: a.field(1)}] + [{} for _ in range(a.dim - 1)])


def kernel_ideal(f: AlgebraMorphism) -> TwoSidedIdeal:
    return TwoSidedIdeal(f.source, kernel_of_columns(f.images, f.source.field.p))


def quotient(a: FiniteAlgebra, ideal: TwoSidedIdeal) -> tuple[FiniteAlgebra, AlgebraMorphism]:
    """``A/I`` on the basis of standard vectors not used as pivots by ``I``."""
    ech = ideal._ech
    keep = [i for i in range(a.dim) if i not in ech.index]
    pos = {i: t for t, i in enumerate(keep)}

    def red(v):
        res, _ = ech.reduce(v, track=False)
        return {pos[k]: c for k, c in res.items()}

    prod = [[red(a.prod[i][j]) for j in keep] for i in keep]
    B = FiniteAlgebra(a.field, prod, red(a.unit), labels=[a.labels[i] for i in keep])
    return B, AlgebraMorphism(a, B, [red({i: a.field(1)}) for i in range(a.dim)])


def diagonal_bimodule(a: FiniteAlgebra) -> Bimodule:
    n = a.dim
    M = Bimodule(a, a, n, a.prod, [[a.prod[m][x] for x in range(n)] for m in range(n)], check=False,
                 labels=a.labels)
    return M


def restrict_bimodule(m: Bimodule, f: AlgebraMorphism, g: AlgebraMorphism | None = None) -> Bimodule:
    """Pull back along ``f`` on the left and ``g`` (default ``f``) on the right."""
    g = g if g is not None else f
    if f.target is not m.left or g.target is not m.right:
        raise InvalidStructure("morphism target does not match the bimodule")
    lact = [[m.act_left(f.images[a], {j: 1}) for j in range(m.dim)] for a in range(f.source.dim)]
    ract = [[m.act_right({j: 1}, g.images[a]) for a in range(g.source.dim)] for j in range(m.dim)]
    return Bimodule(f.source, g.source, m.dim, lact, ract, check=False, labels=m.labels)


def ideal_bimodule(a: FiniteAlgebra, ideal: TwoSidedIdeal) -> tuple[Bimodule, SparseMatrix]:
    """The ideal as an ``A``-bimodule in its own basis, with its inclusion matrix into ``A``."""
    f = a.field
    basis = ideal.basis
    # coordinates relative to the ideal basis
    ech = Echelon(f.p)
    for t, v in enumerate(basis):
        ech.insert(v, {t: f(1)})

    def coords(v):
        res, c = ech.reduce(v)
        if res:
            raise InvalidStructure("vector not in ideal")
        return c

    d = len(basis)
    lact = [[coords(a.mul({x: f(1)}, basis[m])) for m in range(d)] for x in range(a.dim)]
    ract = [[coords(a.mul(basis[m], {x: f(1)})) for x in range(a.dim)] for m in range(d)]
    M = Bimodule(a, a, d, lact, ract, check=False)
    return M, SparseMatrix(a.dim, d, f, tuple(dict(v) for v in basis))


def center(a: FiniteAlgebra) -> list[dict]:
    """Basis of ``{z : z e_i = e_i z for all i}``, from the commutator linear system."""
    n, p = a.dim, a.field.p
    cols = []
    for j in range(n):
        col: dict = {}
        for i in range(n):
            comm = dict(a.prod[j][i])
            axpy(comm, -1 % p if p else -1, a.prod[i][j], p)
            for k, c in comm.items():
                col[i * n + k] = c
        cols.append(col)
    return kernel_of_columns(cols, p)


def product_algebra(algs: Sequence[FiniteAlgebra]) -> FiniteAlgebra:
    field = algs[0].field
    offs = []
    n = 0
    for A in algs:
        offs.append(n)
        n += A.dim
    prod = [[dict() for _ in range(n)] for _ in range(n)]
    unit = {}
    labels = []
    for t, A in enumerate(algs):
        o = offs[t]
        for i in range(A.dim):
            labels.append((t, A.labels[i]))
            for j in range(A.dim):
                prod[o + i][o + j] = {o + k: c for k, c in A.prod[i][j].items()}
        unit.update({o + k: c for k, c in A.unit.items()})
    return FiniteAlgebra(field, prod, unit, labels=labels, check=False)


def subalgebra(a: FiniteAlgebra, basis: Sequence[Mapping], labels=None) -> tuple[FiniteAlgebra, AlgebraMorphism]:
    """Algebra structure on the span of ``basis`` (closed under products, containing 1)."""
    f = a.field
    ech = Echelon(f.p)
    for t, v in enumerate(basis):
        if not ech.insert(v, {t: f(1)}):
            raise InvalidStructure("subalgebra basis is linearly dependent")

    def coords(v):
        res, c = ech.reduce(v)
        if res:
            raise InvalidStructure("span is not closed under multiplication")
        return c

    d = len(basis)
    prod = [[coords(a.mul(basis[i], basis[j])) for j in range(d)] for i in range(d)]
    S = FiniteAlgebra(f, prod, coords(a.unit), labels=labels)
    return S, AlgebraMorphism(S, a, [dict(v) for v in basis])


def limit_algebra(index: FinPoset, algebras: Mapping, morphisms: Mapping) -> tuple[FiniteAlgebra, dict]:
    """Compatible tuples in ``prod_p A(p)``; ``morphisms[(p, q)]: A(q) -> A(p)`` for ``p < q``.

    Maps may be given on covers only; composites along different paths must agree.
    """
    elems = index.elements
    maps = _close_contravariant(index, algebras, morphisms)
    P = product_algebra([algebras[p] for p in elems])
    field = P.field
    offs, o = {}, 0
    for p in elems:
        offs[p] = o
        o += algebras[p].dim
    # constraint rows: for each p < q, x_p - phi_{pq}(x_q) = 0
    cols = [dict() for _ in range(P.dim)]
    row = 0
    neg1 = field(-1)
    for (p, q), phi in maps.items():
        if p == q:
            continue
        for i in range(algebras[p].dim):
            cols[offs[p] + i][row + i] = field(1)
        for j, img in enumerate(phi.images):
            for i, c in img.items():
                cols[offs[q] + j][row + i] = field(cols[offs[q] + j].get(row + i, 0) + neg1 * c)
        row += algebras[p].dim
    cols = [{r: c for r, c in col.items() if c} for col in cols]
    basis = kernel_of_columns(cols, field.p)
    basis = _prefer_tuples(basis, field)
    L, inc = subalgebra(P, basis)
    L.inclusion = inc
    projections = {}
    for p in elems:
        A = algebras[p]
        o = offs[p]
        projections[p] = AlgebraMorphism(L, A, [{k - o: c for k, c in v.items() if o <= k < o + A.dim}
                                                for v in basis])
    L.product_offsets = offs
    return L, projections


def _prefer_tuples(basis, field):
    # reduced echelon form gives sparser, reproducible basis vectors
    ech = Echelon(field.p)
    for v in basis:
        ech.insert(v)
    rows = list(ech.vecs)
    # back-substitute so each pivot appears in exactly one vector
    for t in range(len(rows) - 1, -1, -1):
        r = ech.rows[t]
        inv = field.inv(rows[t][r])
        rows[t] = scale(rows[t], inv, field.p)
        for s in range(t):
            c = rows[s].get(r)
            if c:
                axpy(rows[s], field(-c), rows[t], field.p)
    return sorted((dict(sorted(v.items())) for v in rows), key=lambda v: min(v))


def _close_contravariant(index: FinPoset, algebras: Mapping, morphisms: Mapping) -> dict:
    maps = {}
    for p in index.elements:
        maps[(p, p)] = AlgebraMorphism.identity(algebras[p])
    for (p, q), phi in morphisms.items():
        if not index.leq(p, q):
            raise FunctorialityViolation(f"morphism given for unrelated {p!r}, {q!r}")
        if phi.source is not algebras[q] or phi.target is not algebras[p]:
            raise FunctorialityViolation(f"morphism for {p!r} <= {q!r} has wrong endpoints")
        if p == q and not phi.is_identity():
            raise FunctorialityViolation("identity relation not sent to the identity")
        maps[(p, q)] = phi
    covers = index.covers()
    changed = True
    while changed:
        changed = False
        for (q, r), psi in list(maps.items()):
            for (p, q2) in covers:
                if q2 != q:
                    continue
                comp = maps[(p, q)] @ psi
                old = maps.get((p, r))
                if old is None:
                    maps[(p, r)] = comp
                    changed = True
                elif not old.equals(comp):
                    raise FunctorialityViolation(f"composite along {p!r} <= {q!r} <= {r!r} disagrees")
    for p, q in index.relations():
        if (p, q) not in maps:
            raise FunctorialityViolation(f"no morphism for {p!r} <= {q!r}")
    # full check on all triples
    for p, q in index.relations():
        for r in index.up(q):
            if not maps[(p, r)].equals(maps[(p, q)] @ maps[(q, r)]):
                raise FunctorialityViolation(f"functoriality fails at {p!r} <= {q!r} <= {r!r}")
    return maps


def theta_map(diagram, colim, field: Field):
    """``I(F(K)) -> lim_p I(F(Σ_p))`` assembled from the per-index restrictions.

    Returns ``(theta, limit, projections)``; raises ``ThetaNotIso`` unless theta
    is a unital multiplicative bijection.
    """
    from .simp import face_poset

    K = colim.complex
    IK = incidence_algebra(face_poset(K), field)
    L, proj, algebras, _ = incidence_limit(diagram, field)
    offs = L.product_offsets
    ech = Echelon(field.p)
    for t, v in enumerate(L.inclusion.images):
        ech.insert(v, {t: field(1)})
    rhos = {}
    for p in diagram.index.elements:
        inc = colim.inclusions[p]
        embed = {f: K.normalize(inc[v] for v in f) for f in diagram.complexes[p].faces}
        rhos[p] = restriction_along(IK, algebras[p], embed)
    images = []
    for i in range(IK.dim):
        tup = {}
        for p, rho in rhos.items():
            tup.update({offs[p] + k: c for k, c in rho.images[i].items()})
        res, c = ech.reduce(tup)
        if res:
            raise ThetaNotIso("restricted tuple is not compatible")
        images.append(c)
    try:
        theta = AlgebraMorphism(IK, L, images)
    except InvalidStructure as e:
        raise ThetaNotIso(str(e)) from None
    if IK.dim != L.dim or theta.rank() != L.dim:
        raise ThetaNotIso(f"theta has rank {theta.rank()} between dims {IK.dim} and {L.dim}")
    return theta, L, proj


def incidence_limit(diagram, field: Field):
    """The diagram ``p -> I(F(Σ_p))`` with restrictions along the diagram maps."""
    from .simp import face_poset

    algebras = {}
    for p in diagram.index.elements:
        algebras[p] = incidence_algebra(face_poset(diagram.complexes[p]), field)
    morphisms = {}
    for p, q in diagram.index.covers():
        m = diagram.map(p, q)
        Sq = diagram.complexes[q]
        embed = {f: Sq.normalize(m[v] for v in f) for f in diagram.complexes[p].faces}
        morphisms[(p, q)] = restriction_along(algebras[q], algebras[p], embed)
    L, proj = limit_algebra(diagram.index, algebras, morphisms)
    return L, proj, algebras, morphisms
