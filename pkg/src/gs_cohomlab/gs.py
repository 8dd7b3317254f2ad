"""Gerstenhaber-Schack double complexes of presheaves of algebras and their spectral sequence.

Bidegree ``(p, q)``: ``p`` counts arrows in a nerve chain ``c_0 -> ... -> c_p``
and ``q`` is the Hochschild degree.  The cochain at a chain ``σ`` lives in
``C^q(A(max σ), M(min σ))`` where ``M(min σ)`` is a bimodule over
``A(max σ)`` through the composite ``A(max σ) -> A(min σ)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping

from .alg import AlgebraMorphism, FiniteAlgebra, diagonal_bimodule, incidence_algebra, restrict_bimodule, restriction_along
from .errors import BaseMismatch, CompositionError, ConsistencyViolation, InsufficientQRange, InvalidStructure
from .exactla import CohomologyBasis, Field, SparseMatrix, axpy, rank, rank_of_columns
from .fincat import Chain, FinCategory, longest_chain, nerve, poset_to_category
from .grading import WeightSolver
from .hochschild import (HochschildComplex, algebra_weights, module_weights, morphism_weights,
                         restriction_columns)
from .parallel import pmap


class AlgebraPresheaf:
    """Contravariant functor to algebras: an arrow ``f: c -> d`` gives ``maps[f]: A(d) -> A(c)``."""

    def __init__(self, base: FinCategory, algebras: Mapping, maps: Mapping, check: bool = True):
        self.base = base
        self.algebras = {c: algebras[c] for c in base.objects}
        self.field = next(iter(self.algebras.values())).field
        self.maps = {}
        for f in base.mor_list:
            s, t = base.morphisms[f]
            if base.is_identity(f):
                self.maps[f] = maps[f] if f in maps else AlgebraMorphism.identity(self.algebras[s])
            else:
                if f not in maps:
                    raise InvalidStructure(f"no algebra map for arrow {f!r}")
                self.maps[f] = maps[f]
            phi = self.maps[f]
            if phi.source is not self.algebras[t] or phi.target is not self.algebras[s]:
                raise InvalidStructure(f"algebra map for {f!r} has wrong endpoints")
        if check:
            for f in base.mor_list:
                if base.is_identity(f) and not self.maps[f].is_identity():
                    raise InvalidStructure("identity arrow is not sent to the identity")
                for g in base.out_of(base.target(f)):
                    gf = base.compose(g, f)
                    if not self.maps[gf].equals(self.maps[f] @ self.maps[g]):
                        raise InvalidStructure(f"presheaf is not functorial at {g!r} after {f!r}")

    def __call__(self, x):
        return self.algebras[x] if x in self.algebras else self.maps[x]


class BimodulePresheaf:
    """``M(c)`` an ``A(c)``-bimodule; ``maps[f]`` (images of basis vectors) for ``f: c -> d`` is ``M(d) -> M(c)``."""

    def __init__(self, algebras: AlgebraPresheaf, modules: Mapping, maps: Mapping, check: bool = True):
        self.algebras = algebras
        self.base = base = algebras.base
        self.modules = {c: modules[c] for c in base.objects}
        self.maps = {}
        for f in base.mor_list:
            s, t = base.morphisms[f]
            if base.is_identity(f) and f not in maps:
                self.maps[f] = [{j: algebras.field(1)} for j in range(self.modules[s].dim)]
            else:
                self.maps[f] = [dict(v) for v in maps[f]]
            if len(self.maps[f]) != self.modules[t].dim:
                raise InvalidStructure(f"module map for {f!r} has the wrong size")
        for c in base.objects:
            M = self.modules[c]
            if M.left is not algebras.algebras[c] or M.right is not algebras.algebras[c]:
                raise InvalidStructure(f"module at {c!r} is not over the algebra at {c!r}")
        if check:
            self._validate()

    def _validate(self):
        base, F = self.base, self.algebras.field
        p = F.p
        for f in base.mor_list:
            s, t = base.morphisms[f]
            T = self.maps[f]
            phi = self.algebras.maps[f]
            Md, Mc = self.modules[t], self.modules[s]

            def T_apply(v):
                out = {}
                for j, c in v.items():
                    axpy(out, c, T[j], p)
                return out

            for a in range(phi.source.dim):
                for m in range(Md.dim):
                    if T_apply(Md.lact[a][m]) != Mc.act_left(phi.images[a], T[m]):
                        raise InvalidStructure(f"module map for {f!r} is not left linear")
                    if T_apply(Md.ract[m][a]) != Mc.act_right(T[m], phi.images[a]):
                        raise InvalidStructure(f"module map for {f!r} is not right linear")
            for g in base.out_of(t):
                gf = base.compose(g, f)
                comp = [T_apply(v) for v in self.maps[g]]
                if comp != self.maps[gf]:
                    raise InvalidStructure("module presheaf is not functorial")

    @classmethod
    def diagonal(cls, a: AlgebraPresheaf) -> "BimodulePresheaf":
        mods = {c: diagonal_bimodule(A) for c, A in a.algebras.items()}
        return cls(a, mods, {f: phi.images for f, phi in a.maps.items()}, check=False)


def incidence_presheaf(diagram, field: Field) -> AlgebraPresheaf:
    """``p -> I(F(Σ_p))`` over the index poset, with restrictions along the diagram maps."""
    from .simp import face_poset

    cat = poset_to_category(diagram.index)
    algs = {p: incidence_algebra(face_poset(diagram.complexes[p]), field) for p in diagram.index.elements}
    maps = {}
    for (p, q) in cat.mor_list:
        m = diagram.map(p, q)
        Sq = diagram.complexes[q]
        embed = {f: Sq.normalize(m[v] for v in f) for f in diagram.complexes[p].faces}
        maps[(p, q)] = restriction_along(algs[q], algs[p], embed)
    return AlgebraPresheaf(cat, algs, maps)


def constant_presheaf(base: FinCategory, algebra: FiniteAlgebra) -> AlgebraPresheaf:
    ident = AlgebraMorphism.identity(algebra)
    return AlgebraPresheaf(base, {c: algebra for c in base.objects}, {f: ident for f in base.mor_list})


def global_weights(a: AlgebraPresheaf, m: BimodulePresheaf) -> tuple[dict, dict]:
    ws = WeightSolver()
    for c in a.base.objects:
        algebra_weights(ws, ("a", c), a.algebras[c])
        module_weights(ws, ("a", c), ("m", c), m.modules[c])
    for f in a.base.mor_list:
        s, t = a.base.morphisms[f]
        morphism_weights(ws, ("a", t), ("a", s), a.maps[f].images)
        morphism_weights(ws, ("m", t), ("m", s), m.maps[f])
    sol = ws.solve()
    wa = {c: [sol[(("a", c), i)] for i in range(a.algebras[c].dim)] for c in a.base.objects}
    wm = {c: [sol[(("m", c), j)] for j in range(m.modules[c].dim)] for c in a.base.objects}
    return wa, wm


class GSDoubleComplex:
    """``C^{p,q} = prod_σ C^q(A(max σ), M(min σ))`` with ``d_simp`` and the vertical ``(-1)^p d_HH``.

    Cochain keys are ``(chain_id, local_index)``.  Columns are available for
    ``q <= q_max`` (rows reach ``q_max + 1``) and ``p <= p_max``.
    """

    def __init__(self, a: AlgebraPresheaf, m: BimodulePresheaf | None = None, p_max: int | None = None,
                 q_max: int = 2, normalized_nerve: bool = True, check: bool = True):
        if m is None:
            m = BimodulePresheaf.diagonal(a)
        if m.algebras is not a:
            raise BaseMismatch("coefficient presheaf is over a different algebra presheaf")
        base = a.base
        if normalized_nerve:
            longest = longest_chain(base)
            p_max = longest if p_max is None else p_max
        elif p_max is None:
            raise InvalidStructure("the unnormalized nerve needs an explicit p_max")
        self.a, self.m, self.base = a, m, base
        self.p_max, self.q_max = p_max, q_max
        self.normalized_nerve = normalized_nerve
        self.field = a.field
        self.p = a.field.p
        levels = nerve(base, p_max + 1, normalized_nerve)
        self.chains: list[Chain] = []
        self.level: list[list[int]] = []
        for lv in levels:
            ids = []
            for ch in lv:
                ids.append(len(self.chains))
                self.chains.append(ch)
            self.level.append(ids)
        self.chain_id = {ch: i for i, ch in enumerate(self.chains)}
        self.composite = [ch.composite(base) for ch in self.chains]
        # cofaces: chain id -> [(coface id, r)]
        self.cofaces = {i: [] for i in range(len(self.chains))}
        for p in range(1, len(levels)):
            for t in self.level[p]:
                ch = self.chains[t]
                for r in range(p + 1):
                    self.cofaces[self.chain_id[ch.face(r, base)]].append((t, r))
        self.wa, self.wm = global_weights(a, m)
        self._local: dict = {}
        self._restrict: dict = {}
        self._post: dict = {}
        if check:
            self.check()

    # -- local pieces -----------------------------------------------------

    def local(self, cid: int) -> HochschildComplex:
        """Hochschild complex at a chain; shared by all chains with the same composite."""
        h = self.composite[cid]
        C = self._local.get(h)
        if C is None:
            s, t = self.base.morphisms[h]
            A = self.a.algebras[t]
            M = restrict_bimodule(self.m.modules[s], self.a.maps[h])
            C = HochschildComplex(A, M, self.q_max, weights_a=self.wa[t], weights_m=self.wm[s], check=False)
            self._local[h] = C
        return C

    def cell_dim(self, p: int, q: int) -> int:
        return sum(self.local(c).dim(q) for c in self.level[p]) if p < len(self.level) else 0

    def cell_keys(self, p: int, q: int) -> list:
        return [(c, j) for c in self.level[p] for j in range(self.local(c).dim(q))]

    def total_keys(self, n: int) -> list:
        return [k for p in range(min(n, self.p_max) + 1) for k in self.cell_keys(p, n - p)]

    def _precompose(self, r_cid, t_cid, q) -> list:
        """Columns for the top face: cochains at chain ``r_cid`` precomposed into ``t_cid``."""
        key = (r_cid, t_cid, q)
        cols = self._restrict.get(key)
        if cols is None:
            ch = self.chains[t_cid]
            phi = self.a.maps[ch.arrows[-1]]
            cols = restriction_columns(phi, self.local(r_cid), self.local(t_cid), q)
            self._restrict[key] = cols
        return cols

    # -- differentials ---------------------------------------------------

    def d_simp(self, q: int, key) -> dict:
        """Horizontal differential of a basis cochain (keys at bidegree ``(p+1, q)``)."""
        cid, j = key
        p = self.p
        out: dict = {}
        Cs = self.local(cid)
        for t, r in self.cofaces[cid]:
            tau = self.chains[t]
            deg = tau.degree
            sgn = -1 if r % 2 else 1
            if r == 0:
                T = self.m.maps[tau.arrows[0]]
                Ct = self.local(t)
                code, mm = divmod(j, Cs.dM)
                for k, c in T[mm].items():
                    kk = (t, code * Ct.dM + k)
                    out[kk] = out.get(kk, 0) + sgn * c
            elif r == deg:
                for k, c in self._precompose(cid, t, q)[j].items():
                    kk = (t, k)
                    out[kk] = out.get(kk, 0) + sgn * c
            else:
                kk = (t, j)
                out[kk] = out.get(kk, 0) + sgn
        if p:
            return {k: v % p for k, v in out.items() if v % p}
        return {k: v for k, v in out.items() if v}

    def d_vert(self, q: int, key) -> dict:
        """``(-1)^p d_HH`` of a basis cochain."""
        cid, j = key
        col = self.local(cid).column(q, j)
        if self.chains[cid].degree % 2:
            p = self.p
            return {(cid, k): (-v) % p if p else -v for k, v in col.items()}
        return {(cid, k): v for k, v in col.items()}

    def d_total(self, p: int, q: int, key) -> dict:
        out = self.d_simp(q, key) if p < self.p_max else {}
        axpy(out, 1, self.d_vert(q, key), self.p)
        return out

    def _apply(self, fn, q, vec) -> dict:
        out: dict = {}
        for k, c in vec.items():
            axpy(out, c, fn(q, k), self.p)
        return out

    def check(self):
        """``d_s² = 0``, ``d_v² = 0`` and ``d_s d_v + d_v d_s = 0`` on the computed range."""
        for p in range(self.p_max + 1):
            for q in range(self.q_max + 1):
                for key in self.cell_keys(p, q):
                    if p + 2 <= self.p_max + 1 and self._apply(self.d_simp, q, self.d_simp(q, key)):
                        raise CompositionError(f"d_simp² != 0 at ({p}, {q})")
                    if q + 1 <= self.q_max:
                        dv = self.d_vert(q, key)
                        if self._apply(self.d_vert, q + 1, dv):
                            raise CompositionError(f"d_HH² != 0 at ({p}, {q})")
                        if p + 1 <= self.p_max:
                            lhs = self._apply(self.d_simp, q + 1, dv)
                            axpy(lhs, 1, self._apply(self.d_vert, q, self.d_simp(q, key)), self.p)
                            if lhs:
                                raise CompositionError(f"d_simp and d_HH do not anti-commute at ({p}, {q})")

    def weight(self, q: int, key):
        cid, j = key
        return self.local(cid).weight(q, j)

    def total_rank(self, n: int, threads: int = 1) -> int:
        """Rank of ``D: Tot^n -> Tot^{n+1}``, block by weight."""
        blocks: dict = {}
        for p in range(min(n, self.p_max) + 1):
            q = n - p
            for key in self.cell_keys(p, q):
                blocks.setdefault(self.weight(q, key), []).append((p, q, key))
        P = self.p
        return sum(pmap(lambda ks: rank_of_columns([self.d_total(p, q, k) for p, q, k in ks], P),
                        sorted(blocks.values(), key=len), threads))

    def total_dim(self, n: int) -> int:
        return sum(self.cell_dim(p, n - p) for p in range(min(n, self.p_max) + 1))

    # -- E1 --------------------------------------------------------------

    def local_basis(self, cid: int, q: int) -> CohomologyBasis:
        return self.local(cid).cohomology_basis(q)

    def e1_dim(self, p: int, q: int) -> int:
        return sum(self.local_basis(c, q).dim for c in self.level[p])

    def d1(self, p: int, q: int) -> SparseMatrix:
        """Induced ``d_1: E1^{p,q} -> E1^{p+1,q}``, ``[x] -> [d_simp x]``."""
        rows_off, o = {}, 0
        for c in self.level[p + 1]:
            rows_off[c] = o
            o += self.local_basis(c, q).dim
        cols = []
        for c in self.level[p]:
            for z in self.local_basis(c, q).reps:
                img = self._apply(self.d_simp, q, {(c, j): v for j, v in z.items()})
                by_chain: dict = {}
                for (t, k), v in img.items():
                    by_chain.setdefault(t, {})[k] = v
                col = {}
                for t, vec in by_chain.items():
                    for i, v in self.local_basis(t, q).coords(vec).items():
                        col[rows_off[t] + i] = v
                cols.append(col)
        return SparseMatrix(o, len(cols), self.field, tuple(cols))


def gs_double_complex(a: AlgebraPresheaf, m: BimodulePresheaf | None = None, p_max=None, q_max: int = 2,
                      normalized_nerve: bool = True) -> GSDoubleComplex:
    return GSDoubleComplex(a, m, p_max, q_max, normalized_nerve)


def gs_cohomology(d: GSDoubleComplex, n_max: int, threads: int = 1) -> list[int]:
    """Dimensions of the total cohomology in degrees ``0..n_max``."""
    if n_max > d.q_max:
        raise InsufficientQRange(f"n_max={n_max} needs q_max >= {n_max}, got {d.q_max}")
    ranks = [d.total_rank(n, threads) for n in range(n_max + 1)]
    return [d.total_dim(n) - ranks[n] - (ranks[n - 1] if n else 0) for n in range(n_max + 1)]


@dataclass
class SSPage:
    r: int
    p_max: int
    q_max: int
    dims: dict  # (p, q) -> dim
    differentials: dict = dc_field(default_factory=dict, repr=False)  # (p, q) -> SparseMatrix (r = 1)

    def __getitem__(self, pq) -> int:
        p, q = pq
        if p < 0 or q < 0 or p > self.p_max:
            return 0
        return self.dims[(p, q)]

    def columns_supported(self) -> list[int]:
        return sorted({p for (p, q), v in self.dims.items() if v})

    def to_json(self) -> dict:
        return {"r": self.r, "cells": {f"{p},{q}": v for (p, q), v in sorted(self.dims.items())}}

    def table(self) -> str:
        lines = [f"E{self.r}   " + " ".join(f"p={p:<3d}" for p in range(self.p_max + 1))]
        for q in range(self.q_max, -1, -1):
            lines.append(f"q={q:<3d}" + " ".join(f"{self.dims[(p, q)]:<5d}" for p in range(self.p_max + 1)))
        return "\n".join(lines)


def ss_pages(d: GSDoubleComplex) -> tuple[SSPage, SSPage, SSPage]:
    P, Q = d.p_max, d.q_max
    e0 = SSPage(0, P, Q, {(p, q): d.cell_dim(p, q) for p in range(P + 1) for q in range(Q + 1)})
    e1dims = {(p, q): d.e1_dim(p, q) for p in range(P + 1) for q in range(Q + 1)}
    d1 = {(p, q): d.d1(p, q) for p in range(P) for q in range(Q + 1)}
    e1 = SSPage(1, P, Q, e1dims, d1)
    rk = {k: (rank(m) if m.rows and m.cols else 0) for k, m in d1.items()}
    e2 = SSPage(2, P, Q, {(p, q): e1dims[(p, q)] - rk.get((p, q), 0) - rk.get((p - 1, q), 0)
                          for p in range(P + 1) for q in range(Q + 1)})
    return e0, e1, e2


@dataclass
class ConsistencyReport:
    mode: str  # "equality" or "inequality"
    degrees: dict  # n -> {"total": .., "e2_sum": .., "ok": ..}
    columns: list

    @property
    def ok(self) -> bool:
        return all(v["ok"] for v in self.degrees.values())

    def to_json(self) -> dict:
        return {"mode": self.mode, "columns": self.columns, "ok": self.ok,
                "degrees": {str(n): v for n, v in self.degrees.items()}}


def ss_consistency(pages, gs_dims, raise_on_failure: bool = True) -> ConsistencyReport:
    """Compare ``H^n(Tot)`` with ``sum_{p+q=n} E2^{p,q}``."""
    e2 = pages[2] if isinstance(pages, (tuple, list)) else pages
    cols = e2.columns_supported()
    collapse = len(cols) <= 1 or (len(cols) == 2 and cols[1] - cols[0] == 1)
    degrees = {}
    for n, tot in enumerate(gs_dims):
        if n > e2.q_max:
            break
        s = sum(e2[(p, n - p)] for p in range(0, min(n, e2.p_max) + 1))
        ok = tot == s if collapse else tot <= s
        degrees[n] = {"total": tot, "e2_sum": s, "ok": ok}
    rep = ConsistencyReport("equality" if collapse else "inequality", degrees, cols)
    if raise_on_failure and not rep.ok:
        raise ConsistencyViolation(f"spectral sequence disagrees with total cohomology: {rep.to_json()}")
    return rep
