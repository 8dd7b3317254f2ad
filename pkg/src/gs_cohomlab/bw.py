"""Natural systems, Baues-Wirsching cohomology, Roos complexes and the cross-pipeline comparisons.

Chains are written ``c_0 -> c_1 -> ... -> c_n`` throughout (arrows ``g_1 .. g_n``).
In this orientation the Baues-Wirsching coboundary of a cochain ``f`` at a chain
``τ`` of degree ``n`` is::

    F(g_n, 1) f(∂_n τ) + sum_{0<r<n} (-1)^(n-r) f(∂_r τ) + (-1)^n F(1, g_1) f(∂_0 τ)

where ``F(α, β)`` is the natural-system action of the twisted-arrow morphism
``f -> α∘f∘β``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from .alg import restrict_bimodule
from .errors import InvalidStructure, Mismatch, NotCertified
from .exactla import CochainComplexRep, Field, SparseMatrix, axpy, cohomology_dims
from .fincat import FinCategory, TwistedArrowCategory, nerve, twisted_arrow
from .gs import AlgebraPresheaf, BimodulePresheaf, GSDoubleComplex, ss_pages
from .hochschild import HochschildComplex, certify_hom_epi, coefficient_map, hh_induced_map, restriction_columns


def _identity(n: int, field: Field) -> SparseMatrix:
    return SparseMatrix.identity(n, field)


class NaturalSystem:
    """A functor ``Tw C -> Vect``: ``dims[f]`` per arrow and an action per twisted-arrow morphism.

    Built from the two elementary actions ``F(α, 1)`` (``f -> α∘f``) and
    ``F(1, β)`` (``f -> f∘β``); general actions are their composites and the
    functor laws are checked on all composable pairs.
    """

    def __init__(self, base: FinCategory, dims: Mapping, alpha: Callable, beta: Callable, field: Field,
                 check: bool = True):
        self.base = base
        self.field = field
        self.dims = {f: dims[f] for f in base.mor_list}
        self._alpha, self._beta = alpha, beta
        self._cache: dict = {}
        self.tw: TwistedArrowCategory | None = None
        if check:
            self.check_functor()

    def alpha(self, a, f) -> SparseMatrix:
        key = ("a", a, f)
        m = self._cache.get(key)
        if m is None:
            m = self._cache[key] = self._alpha(a, f)
            tgt = self.base.compose(a, f)
            if m.shape != (self.dims[tgt], self.dims[f]):
                raise InvalidStructure("alpha action has the wrong shape")
        return m

    def beta(self, b, f) -> SparseMatrix:
        key = ("b", b, f)
        m = self._cache.get(key)
        if m is None:
            m = self._cache[key] = self._beta(b, f)
            tgt = self.base.compose(f, b)
            if m.shape != (self.dims[tgt], self.dims[f]):
                raise InvalidStructure("beta action has the wrong shape")
        return m

    def action(self, a, b, f) -> SparseMatrix:
        """``F(α, β): F(f) -> F(α∘f∘β)`` as ``F(α, 1) ∘ F(1, β)``."""
        return self.alpha(a, self.base.compose(f, b)) @ self.beta(b, f)

    def tw_action(self, m) -> SparseMatrix:
        f, g, a, b = m
        return self.action(a, b, f)

    def check_functor(self):
        if self.tw is None:
            self.tw = twisted_arrow(self.base)
        tw = self.tw
        for f in tw.objects:
            ident = tw.identities[f]
            if self.tw_action(ident) != _identity(self.dims[f], self.field):
                raise InvalidStructure(f"identity of {f!r} does not act as the identity")
        for (m2, m1), m in tw.table.items():
            if self.tw_action(m) != self.tw_action(m2) @ self.tw_action(m1):
                raise InvalidStructure(f"natural system is not functorial at {m2!r} after {m1!r}")


class FunctorRep:
    """Vector spaces per object and matrices per arrow, covariant or contravariant."""

    def __init__(self, base: FinCategory, dims: Mapping, maps: Mapping, field: Field, covariant: bool = True,
                 check: bool = True):
        self.base, self.field, self.covariant = base, field, covariant
        self.dims = {c: dims[c] for c in base.objects}
        self.maps = {}
        for f in base.mor_list:
            s, t = base.morphisms[f]
            if f in maps:
                m = maps[f]
            elif base.is_identity(f):
                m = _identity(self.dims[s], field)
            else:
                raise InvalidStructure(f"no matrix for arrow {f!r}")
            src, tgt = (s, t) if covariant else (t, s)
            if m.shape != (self.dims[tgt], self.dims[src]):
                raise InvalidStructure(f"matrix for {f!r} has the wrong shape")
            self.maps[f] = m
        if check:
            for c in base.objects:
                if self.maps[base.identities[c]] != _identity(self.dims[c], field):
                    raise InvalidStructure(f"identity at {c!r} is not sent to the identity")
            for (g, f), h in base.table.items():
                expect = self.maps[g] @ self.maps[f] if covariant else self.maps[f] @ self.maps[g]
                if self.maps[h] != expect:
                    raise InvalidStructure(f"functor law fails at {g!r} after {f!r}")


def _chain_levels(base: FinCategory, n: int):
    base.require_loop_free()
    levels = nerve(base, n, normalized=True)
    index = [{ch: i for i, ch in enumerate(lv)} for lv in levels]
    return levels, index


def _blocks(levels, dimfn):
    offs = []
    for lv in levels:
        o, off = 0, []
        for ch in lv:
            off.append(o)
            o += dimfn(ch)
        offs.append((off, o))
    return offs


def _put(col: dict, off: int, vec: dict, sign, p: int):
    for k, v in vec.items():
        nv = col.get(off + k, 0) + sign * v
        if p:
            nv %= p
        if nv:
            col[off + k] = nv
        else:
            col.pop(off + k, None)


def bw_complex(F: NaturalSystem, n_max: int) -> CochainComplexRep:
    base, field = F.base, F.field
    p = field.p
    levels, index = _chain_levels(base, n_max + 1)
    comp = [[ch.composite(base) for ch in lv] for lv in levels]
    offs = _blocks(levels, lambda ch: F.dims[ch.composite(base)])
    diffs = []
    for n in range(n_max + 1):
        src_off, src_dim = offs[n]
        tgt_off, tgt_dim = offs[n + 1]
        cols = [dict() for _ in range(src_dim)]
        deg = n + 1
        for t, tau in enumerate(levels[n + 1]):
            for r in range(deg + 1):
                face = tau.face(r, base)
                s = index[n][face]
                hf = comp[n][s]
                if r == deg:
                    act, sign = F.alpha(tau.arrows[-1], hf), 1
                elif r == 0:
                    act, sign = F.beta(tau.arrows[0], hf), (-1) ** deg
                else:
                    act, sign = None, (-1) ** (deg - r)
                for j in range(F.dims[hf]):
                    vec = act.column(j) if act is not None else {j: field(1)}
                    _put(cols[src_off[s] + j], tgt_off[t], vec, sign, p)
        diffs.append(SparseMatrix(tgt_dim, src_dim, field, tuple(cols)))
    dims = [offs[n][1] for n in range(n_max + 2)]
    return CochainComplexRep(dims, diffs)


def bw_cohomology(F: NaturalSystem, n_max: int) -> list[int]:
    return cohomology_dims(bw_complex(F, n_max))[:n_max + 1]


def roos_complex(F: FunctorRep, n_max: int) -> CochainComplexRep:
    base, field = F.base, F.field
    p = field.p
    levels, index = _chain_levels(base, n_max + 1)
    where = (lambda ch: ch.max) if F.covariant else (lambda ch: ch.min)
    offs = _blocks(levels, lambda ch: F.dims[where(ch)])
    diffs = []
    for n in range(n_max + 1):
        src_off, src_dim = offs[n]
        tgt_off, tgt_dim = offs[n + 1]
        cols = [dict() for _ in range(src_dim)]
        deg = n + 1
        for t, tau in enumerate(levels[n + 1]):
            for r in range(deg + 1):
                s = index[n][tau.face(r, base)]
                face = levels[n][s]
                sign = -1 if r % 2 else 1
                act = None
                if F.covariant and r == deg:
                    act = F.maps[tau.arrows[-1]]
                elif not F.covariant and r == 0:
                    act = F.maps[tau.arrows[0]]
                for j in range(F.dims[where(face)]):
                    vec = act.column(j) if act is not None else {j: field(1)}
                    _put(cols[src_off[s] + j], tgt_off[t], vec, sign, p)
        diffs.append(SparseMatrix(tgt_dim, src_dim, field, tuple(cols)))
    dims = [offs[n][1] for n in range(n_max + 2)]
    return CochainComplexRep(dims, diffs)


def roos_cohomology(F: FunctorRep, n_max: int) -> list[int]:
    """``dim lim^n F`` for ``n <= n_max``."""
    return cohomology_dims(roos_complex(F, n_max))[:n_max + 1]


def constant_natural_system(base: FinCategory, field: Field, dim: int = 1) -> NaturalSystem:
    ident = _identity(dim, field)
    return NaturalSystem(base, {f: dim for f in base.mor_list}, lambda a, f: ident, lambda b, f: ident, field)


def constant_functor(base: FinCategory, field: Field, dim: int = 1, covariant: bool = True) -> FunctorRep:
    ident = _identity(dim, field)
    return FunctorRep(base, {c: dim for c in base.objects}, {f: ident for f in base.mor_list}, field, covariant)


def tw_functor(F: NaturalSystem) -> FunctorRep:
    """The natural system as a covariant functor on ``Tw C``."""
    tw = F.tw if F.tw is not None else twisted_arrow(F.base)
    return FunctorRep(tw, F.dims, {m: F.tw_action(m) for m in tw.mor_list}, F.field, covariant=True)


# ---------------------------------------------------------------------------
# natural systems from presheaves


class _LocalComplexes:
    """Hochschild complexes ``C(A(d), M(c))`` indexed by arrows ``f: c -> d``."""

    def __init__(self, a: AlgebraPresheaf, m: BimodulePresheaf, q_max: int):
        self.a, self.m, self.q_max = a, m, q_max
        self._c: dict = {}

    def __call__(self, f) -> HochschildComplex:
        C = self._c.get(f)
        if C is None:
            s, t = self.a.base.morphisms[f]
            M = restrict_bimodule(self.m.modules[s], self.a.maps[f])
            C = self._c[f] = HochschildComplex(self.a.algebras[t], M, self.q_max, check=False)
        return C


def cochain_natural_system(a: AlgebraPresheaf, q: int, m: BimodulePresheaf | None = None) -> NaturalSystem:
    """``f: c -> d`` goes to the cochain space ``C^q(A(d), M(c))``."""
    m = m if m is not None else BimodulePresheaf.diagonal(a)
    base, field = a.base, a.field
    loc = _LocalComplexes(a, m, q)

    def alpha(al, f):
        g = base.compose(al, f)
        cols = restriction_columns(a.maps[al], loc(f), loc(g), q)
        return SparseMatrix(loc(g).dim(q), loc(f).dim(q), field, tuple(cols))

    def beta(be, f):
        g = base.compose(f, be)
        cols = coefficient_map(loc(f), loc(g), q, m.maps[be])
        return SparseMatrix(loc(g).dim(q), loc(f).dim(q), field, tuple(cols))

    return NaturalSystem(base, {f: loc(f).dim(q) for f in base.mor_list}, alpha, beta, field)


def hh_natural_system(a: AlgebraPresheaf, q: int, m: BimodulePresheaf | None = None,
                      check: bool = True) -> NaturalSystem:
    """``f: c -> d`` goes to ``HH^q(A(d), M(c))`` in the representative basis of its local complex."""
    m = m if m is not None else BimodulePresheaf.diagonal(a)
    base, field = a.base, a.field
    p = field.p
    loc = _LocalComplexes(a, m, q)

    def induced(src_f, tgt_f, cols):
        bs, bt = loc(src_f).cohomology_basis(q), loc(tgt_f).cohomology_basis(q)
        out = []
        for z in bs.reps:
            v: dict = {}
            for j, c in z.items():
                axpy(v, c, cols[j], p)
            out.append(bt.coords(v))
        return SparseMatrix(bt.dim, bs.dim, field, tuple(out))

    def alpha(al, f):
        g = base.compose(al, f)
        return induced(f, g, restriction_columns(a.maps[al], loc(f), loc(g), q))

    def beta(be, f):
        g = base.compose(f, be)
        return induced(f, g, coefficient_map(loc(f), loc(g), q, m.maps[be]))

    dims = {f: loc(f).cohomology_basis(q).dim for f in base.mor_list}
    ns = NaturalSystem(base, dims, alpha, beta, field, check=check)
    ns.local = loc
    return ns


def bw_gs_agreement(d: GSDoubleComplex, q: int) -> bool:
    """Literal matrix identity ``δ_BW = (-1)^(p+1) d_simp`` on row ``q`` for every ``p < p_max``."""
    F = cochain_natural_system(d.a, q, d.m)
    bw = bw_complex(F, d.p_max - 1)
    field = d.field
    for p in range(d.p_max):
        keys_src = d.cell_keys(p, q)
        keys_tgt = d.cell_keys(p + 1, q)
        pos = {k: i for i, k in enumerate(keys_tgt)}
        cols = []
        for key in keys_src:
            cols.append({pos[k]: v for k, v in d.d_simp(q, key).items()})
        ds = SparseMatrix(len(keys_tgt), len(keys_src), field, tuple(cols))
        if bw.diffs[p] != (ds if p % 2 else -ds):
            return False
    return True


@dataclass
class ComparisonReport:
    claim: str
    cells: dict  # (p, q) -> (lhs, rhs)

    @property
    def ok(self) -> bool:
        return all(l == r for l, r in self.cells.values())

    def to_json(self) -> dict:
        return {"claim": self.claim, "ok": self.ok,
                "cells": {f"{p},{q}": {"lhs": l, "rhs": r, "ok": l == r} for (p, q), (l, r) in sorted(self.cells.items())}}


def e2_vs_bw(a: AlgebraPresheaf, p_max: int | None = None, q_max: int = 2, raise_on_mismatch: bool = True,
             double_complex: GSDoubleComplex | None = None) -> ComparisonReport:
    """``E2^{p,q}`` of the GS spectral sequence against ``H^p_BW(C; HH^q)``."""
    d = double_complex if double_complex is not None else GSDoubleComplex(a, None, None, q_max)
    P = d.p_max if p_max is None else min(p_max, d.p_max)
    e2 = ss_pages(d)[2]
    cells = {}
    for q in range(q_max + 1):
        bw = bw_cohomology(hh_natural_system(a, q), P)
        for p in range(P + 1):
            cells[(p, q)] = (e2[(p, q)], bw[p])
    rep = ComparisonReport("E2^{p,q} = H^p_BW(C; HH^q)", cells)
    if raise_on_mismatch and not rep.ok:
        raise Mismatch(f"E2 and BW cohomology disagree: {rep.to_json()}")
    return rep


def hh_functor(a: AlgebraPresheaf, q: int, certificates: dict | None = None, n_tor: int = 3) -> FunctorRep:
    """Contravariant ``c -> HH^q(A(c), A(c))`` with arrows acting by the induced maps."""
    base, field = a.base, a.field
    certificates = certificates if certificates is not None else {}
    cache: dict = {}
    maps = {}
    dims = {}
    for c in base.objects:
        A = a.algebras[c]
        C = cache.get((id(A), id(A)))
        if C is None:
            C = cache[(id(A), id(A))] = HochschildComplex(A, None, q + 1, check=False)
        dims[c] = C.cohomology_basis(q).dim
    for f in base.mor_list:
        if base.is_identity(f):
            continue
        phi = a.maps[f]
        cert = certificates.get(f)
        if cert is None:
            cert = certificates[f] = certify_hom_epi(phi, n_tor)
        if not cert.certified or not cert.surjective:
            raise NotCertified(f"arrow {f!r} is not a certified surjective homological epimorphism")
        maps[f] = hh_induced_map(phi, q, cert, cache)
    return FunctorRep(base, dims, maps, field, covariant=False)


def selfduality_check(a: AlgebraPresheaf, p_max: int | None = None, q_max: int = 2,
                      raise_on_mismatch: bool = True, certificates: dict | None = None) -> ComparisonReport:
    """``lim^p HH^q(A(-), A(-))`` (Roos) against ``H^p_BW(C; HH^q)``."""
    base = a.base
    base.require_loop_free()
    from .fincat import longest_chain
    P = longest_chain(base) if p_max is None else p_max
    certificates = certificates if certificates is not None else {}
    cells = {}
    for q in range(q_max + 1):
        lhs = roos_cohomology(hh_functor(a, q, certificates), P)
        rhs = bw_cohomology(hh_natural_system(a, q), P)
        for p in range(P + 1):
            cells[(p, q)] = (lhs[p], rhs[p])
    rep = ComparisonReport("lim^p HH^q(A, A) = H^p_BW(C; HH^q)", cells)
    if raise_on_mismatch and not rep.ok:
        raise Mismatch(f"self-duality comparison failed: {rep.to_json()}")
    return rep
