"""Hochschild cochains, bar complexes and Tor, homological epimorphisms, induced maps and the LES."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .alg import (AlgebraMorphism, Bimodule, FiniteAlgebra, TwoSidedIdeal, diagonal_bimodule, ideal_bimodule,
                  kernel_ideal, quotient, restrict_bimodule)
from .errors import CompositionError, NotCertified, NotHomEpi, ZigzagNotInvertible
from .exactla import (CochainComplexRep, CohomologyBasis, Echelon, SparseMatrix, axpy, inverse,
                      kernel_of_columns, rank, rank_of_columns)
from .grading import WeightSolver
from .parallel import pmap


def algebra_weights(solver: WeightSolver, tag, A: FiniteAlgebra):
    for i in range(A.dim):
        solver.node((tag, i))
        for j in range(A.dim):
            for k in A.prod[i][j]:
                solver.product((tag, i), (tag, j), (tag, k))


def module_weights(solver: WeightSolver, atag, mtag, M: Bimodule, rtag=None):
    rtag = atag if rtag is None else rtag
    for m in range(M.dim):
        solver.node((mtag, m))
        for a, k, _ in M.left_out[m]:
            solver.product((atag, a), (mtag, m), (mtag, k))
        for a, k, _ in M.right_out[m]:
            solver.product((mtag, m), (rtag, a), (mtag, k))


def morphism_weights(solver: WeightSolver, stag, ttag, images):
    for i, v in enumerate(images):
        for k in v:
            solver.equal((stag, i), (ttag, k))


class HochschildComplex:
    """``C^q(A, M) = Hom(A^{⊗q}, M)`` for ``q <= q_max`` (targets up to ``q_max + 1``).

    A basis cochain is indexed by ``code * dim M + m`` where ``code`` encodes the
    argument tuple ``(i_1, ..., i_q)`` in base ``n``.  With ``normalized=True``
    the arguments run over a complement of the unit and products drop their unit
    component.

    ``weights_a`` / ``weights_m`` (optional) give a grading preserved by all
    structure maps; differentials are block diagonal for it.
    """

    def __init__(self, algebra: FiniteAlgebra, module: Bimodule | None = None, q_max: int = 3,
                 normalized: bool = False, weights_a=None, weights_m=None, check: bool = True):
        A = algebra
        M = module if module is not None else diagonal_bimodule(A)
        if M.left is not A or M.right is not A:
            raise ValueError("module is not a bimodule over the algebra")
        self.algebra, self.module = A, M
        self.q_max = q_max
        self.normalized = normalized
        self.field = A.field
        self.p = p = A.field.p
        self.dM = M.dim
        if weights_a is None or weights_m is None:
            ws = WeightSolver()
            algebra_weights(ws, "a", A)
            module_weights(ws, "a", "m", M)
            sol = ws.solve()
            weights_a = [sol[("a", i)] for i in range(A.dim)]
            weights_m = [sol[("m", m)] for m in range(M.dim)]
        if normalized:
            unit = A.unit
            t = min(unit)
            ut_inv = A.field.inv(unit[t])
            args = [i for i in range(A.dim) if i != t]
            pos = {i: k for k, i in enumerate(args)}

            def proj(v):
                # coordinates in (unit, args) basis, unit part dropped
                out = {}
                vt = v.get(t)
                for i, c in v.items():
                    if i != t:
                        out[pos[i]] = c
                if vt:
                    f = vt * ut_inv
                    for i, u in unit.items():
                        if i != t:
                            nv = out.get(pos[i], 0) - f * u
                            if p:
                                nv %= p
                            if nv:
                                out[pos[i]] = nv
                            else:
                                out.pop(pos[i], None)
                return out

            self.args = args
            n = len(args)
            fact = [[] for _ in range(n)]
            for x in range(n):
                for y in range(n):
                    for k, c in proj(A.prod[args[x]][args[y]]).items():
                        fact[k].append((x, y, c))
        else:
            self.args = list(range(A.dim))
            n = A.dim
            fact = A.fact
            pos = {i: i for i in range(n)}
        self.n = n
        self.fact = fact
        self.left_out = [[(pos[a], k, c) for a, k, c in M.left_out[m] if a in pos] for m in range(M.dim)]
        self.right_out = [[(pos[a], k, c) for a, k, c in M.right_out[m] if a in pos] for m in range(M.dim)]
        self.wa = [weights_a[i] for i in self.args]
        self.wm = list(weights_m)
        self.zero_w = tuple(0 for _ in (weights_m[0] if weights_m else ()))
        self._rank: dict = {}
        self._blocks: dict = {}
        self._basis: dict = {}
        if check:
            self.check_dd()

    # -- indexing -------------------------------------------------------

    def dim(self, q: int) -> int:
        return self.n ** q * self.dM

    def dims(self) -> list[int]:
        return [self.dim(q) for q in range(self.q_max + 1)]

    def encode(self, args: Sequence[int], m: int) -> int:
        code = 0
        for i in args:
            code = code * self.n + i
        return code * self.dM + m

    def decode(self, q: int, idx: int) -> tuple[tuple, int]:
        code, m = divmod(idx, self.dM)
        args = []
        for _ in range(q):
            code, r = divmod(code, self.n)
            args.append(r)
        return tuple(reversed(args)), m

    def weight(self, q: int, idx: int):
        args, m = self.decode(q, idx)
        w = list(self.wm[m])
        for i in args:
            for t, x in enumerate(self.wa[i]):
                w[t] -= x
        return tuple(w)

    # -- differential ---------------------------------------------------

    def column(self, q: int, idx: int) -> dict:
        """``d`` of the basis cochain ``idx`` in degree ``q`` (rows index ``C^{q+1}``)."""
        n, dM, p = self.n, self.dM, self.p
        code, m = divmod(idx, dM)
        out: dict = {}
        nq = n ** q
        for x, m2, c in self.left_out[m]:
            r = (x * nq + code) * dM + m2
            out[r] = out.get(r, 0) + c
        # middle terms: position k (0-based) carries sign (-1)^(k+1)
        for k in range(q - 1, -1, -1):
            low = n ** (q - 1 - k)
            prefix, i_k = divmod(code // low, n)
            suffix = code % low
            sgn = 1 if (k + 1) % 2 == 0 else -1
            base_hi = prefix * n * n
            for x, y, c in self.fact[i_k]:
                r = ((base_hi + x * n + y) * low + suffix) * dM + m
                out[r] = out.get(r, 0) + sgn * c
        sgn = 1 if (q + 1) % 2 == 0 else -1
        for x, m2, c in self.right_out[m]:
            r = (code * n + x) * dM + m2
            out[r] = out.get(r, 0) + sgn * c
        if p:
            return {r: v % p for r, v in out.items() if v % p}
        return {r: v for r, v in out.items() if v}

    def apply(self, q: int, vec: dict) -> dict:
        out: dict = {}
        for j, a in vec.items():
            axpy(out, a, self.column(q, j), self.p)
        return out

    def columns(self, q: int) -> list[dict]:
        return [self.column(q, j) for j in range(self.dim(q))]

    def differential(self, q: int) -> SparseMatrix:
        return SparseMatrix(self.dim(q + 1), self.dim(q), self.field, tuple(self.columns(q)))

    def blocks(self, q: int) -> dict:
        b = self._blocks.get(q)
        if b is None:
            b = {}
            for j in range(self.dim(q)):
                b.setdefault(self.weight(q, j), []).append(j)
            self._blocks[q] = b
        return b

    def rank(self, q: int, threads: int = 1) -> int:
        """Rank of ``d^q``, computed block by block."""
        r = self._rank.get(q)
        if r is None:
            p = self.p
            blocks = sorted(self.blocks(q).values(), key=len)
            r = sum(pmap(lambda js: rank_of_columns([self.column(q, j) for j in js], p), blocks, threads))
            self._rank[q] = r
        return r

    def check_dd(self, q_top: int | None = None):
        """``d^{q+1} d^q = 0`` for ``q + 1 <= q_top`` (default ``q_max``)."""
        q_top = self.q_max if q_top is None else q_top
        for q in range(q_top):
            for j in range(self.dim(q)):
                if self.apply(q + 1, self.column(q, j)):
                    raise CompositionError(f"Hochschild d∘d != 0 in degree {q}")

    def cohomology(self, threads: int = 1) -> list[int]:
        ranks = [self.rank(q, threads) for q in range(self.q_max + 1)]
        return [self.dim(q) - ranks[q] - (ranks[q - 1] if q else 0) for q in range(self.q_max + 1)]

    def cochain_rep(self) -> CochainComplexRep:
        return CochainComplexRep([self.dim(q) for q in range(self.q_max + 1)],
                                 [self.differential(q) for q in range(self.q_max)])

    def cohomology_basis(self, q: int) -> CohomologyBasis:
        cb = self._basis.get(q)
        if cb is None:
            image = self.columns(q - 1) if q > 0 else []
            cocycles = kernel_of_columns(self.columns(q), self.p)
            cb = CohomologyBasis(image, cocycles, self.p)
            self._basis[q] = cb
        return cb

    def __repr__(self):
        return f"HochschildComplex(dimA={self.algebra.dim}, dimM={self.dM}, q_max={self.q_max})"


def hh(a: FiniteAlgebra, m: Bimodule | None = None, q_max: int = 3, normalized: bool = False,
       threads: int = 1) -> list[int]:
    """Dimensions of ``HH^q(A, M)`` for ``q = 0..q_max``."""
    return HochschildComplex(a, m, q_max, normalized=normalized).cohomology(threads)


# ---------------------------------------------------------------------------
# cochain maps


def coefficient_map(C_src: HochschildComplex, C_tgt: HochschildComplex, q: int, images: Sequence[dict]) -> list[dict]:
    """Columns of ``z -> g∘z`` for a linear map ``g`` of coefficient modules."""
    dS, dT = C_src.dM, C_tgt.dM
    cols = []
    for j in range(C_src.dim(q)):
        code, m = divmod(j, dS)
        cols.append({code * dT + k: c for k, c in images[m].items()})
    return cols


def restriction_columns(f: AlgebraMorphism, C_A: HochschildComplex, C_B: HochschildComplex, q: int) -> list[dict]:
    """Columns of ``g -> g∘f^{⊗q}`` from ``C^q(A, M)`` to ``C^q(B, M)`` (both unnormalized)."""
    p = C_A.p
    nA, nB, dM = C_A.n, C_B.n, C_A.dM
    pre = [[] for _ in range(nA)]  # i -> [(j, coefficient of e_i in f(e_j))]
    for j, img in enumerate(f.images):
        for i, c in img.items():
            pre[i].append((j, c))
    cols = []
    for idx in range(C_A.dim(q)):
        args, m = C_A.decode(q, idx)
        terms = {0: 1}
        for i in args:
            nt = {}
            for code, c in terms.items():
                for j, x in pre[i]:
                    nt[code * nB + j] = c * x
            terms = nt
        col = {}
        for code, c in terms.items():
            if p:
                c %= p
            if c:
                col[code * dM + m] = c
        cols.append(col)
    return cols


def hh_restrict_first_arg(f: AlgebraMorphism, m: Bimodule, q_max: int) -> list[SparseMatrix]:
    """The cochain map ``C^*(A, M) -> C^*(B, M)``, ``g -> g∘f^{⊗q}``, for ``f: B -> A``."""
    C_A = HochschildComplex(f.target, m, q_max)
    mB = restrict_bimodule(m, f)
    C_B = HochschildComplex(f.source, mB, q_max)
    F = f.source.field
    maps = [SparseMatrix(C_B.dim(q), C_A.dim(q), F, tuple(restriction_columns(f, C_A, C_B, q)))
            for q in range(q_max + 1)]
    for q in range(q_max):
        lhs = C_B.differential(q) @ maps[q]
        rhs = SparseMatrix(C_B.dim(q + 1), C_A.dim(q + 1), F,
                           tuple(restriction_columns(f, C_A, C_B, q + 1))) @ C_A.differential(q)
        if lhs != rhs:
            raise CompositionError(f"restriction does not commute with d in degree {q}")
    return maps


# ---------------------------------------------------------------------------
# bar complex and Tor


class BarComplex:
    """``B ⊗ A^{⊗n} ⊗ B`` with the bar differential; its homology is ``Tor^A(B, B)``."""

    def __init__(self, f: AlgebraMorphism, n_max: int = 3):
        self.f = f
        A, B = f.source, f.target
        self.A, self.B = A, B
        self.n_max = n_max
        self.p = A.field.p
        self.nA, self.nB = A.dim, B.dim
        # b·f(a) and f(a)·b tables
        self.lmul = [[B.mul({b: 1}, f.images[a]) for a in range(A.dim)] for b in range(B.dim)]
        self.rmul = [[B.mul(f.images[a], {b: 1}) for b in range(B.dim)] for a in range(A.dim)]
        ws = WeightSolver()
        algebra_weights(ws, "a", A)
        algebra_weights(ws, "b", B)
        morphism_weights(ws, "a", "b", f.images)
        sol = ws.solve()
        self.wa = [sol[("a", i)] for i in range(A.dim)]
        self.wb = [sol[("b", i)] for i in range(B.dim)]
        self._rank: dict = {}

    def dim(self, n: int) -> int:
        return self.nB * self.nA ** n * self.nB

    def decode(self, n: int, idx: int):
        idx, b2 = divmod(idx, self.nB)
        args = []
        for _ in range(n):
            idx, r = divmod(idx, self.nA)
            args.append(r)
        return idx, tuple(reversed(args)), b2

    def encode(self, b, args, b2) -> int:
        code = b
        for a in args:
            code = code * self.nA + a
        return code * self.nB + b2

    def weight(self, n: int, idx: int):
        b, args, b2 = self.decode(n, idx)
        w = list(self.wb[b])
        for t, x in enumerate(self.wb[b2]):
            w[t] += x
        for a in args:
            for t, x in enumerate(self.wa[a]):
                w[t] += x
        return tuple(w)

    def column(self, n: int, idx: int) -> dict:
        """``∂_n`` of a basis tensor (rows index degree ``n - 1``)."""
        p = self.p
        b, args, b2 = self.decode(n, idx)
        out: dict = {}
        enc = self.encode
        for k, c in self.lmul[b][args[0]].items():
            r = enc(k, args[1:], b2)
            out[r] = out.get(r, 0) + c
        A = self.A
        for i in range(n - 1):
            sgn = -1 if (i + 1) % 2 else 1
            for k, c in A.prod[args[i]][args[i + 1]].items():
                r = enc(b, args[:i] + (k,) + args[i + 2:], b2)
                out[r] = out.get(r, 0) + sgn * c
        sgn = -1 if n % 2 else 1
        for k, c in self.rmul[args[-1]][b2].items():
            r = enc(b, args[:-1], k)
            out[r] = out.get(r, 0) + sgn * c
        if p:
            return {r: v % p for r, v in out.items() if v % p}
        return {r: v for r, v in out.items() if v}

    def rank(self, n: int, threads: int = 1) -> int:
        if n <= 0:
            return 0
        r = self._rank.get(n)
        if r is None:
            blocks: dict = {}
            for j in range(self.dim(n)):
                blocks.setdefault(self.weight(n, j), []).append(j)
            p = self.p
            todo = sorted(blocks.values(), key=len)
            r = sum(pmap(lambda js: rank_of_columns([self.column(n, j) for j in js], p), todo, threads))
            self._rank[n] = r
        return r

    def check_dd(self, n_top: int):
        for n in range(2, n_top + 1):
            for j in range(self.dim(n)):
                col = self.column(n, j)
                out: dict = {}
                for k, c in col.items():
                    axpy(out, c, self.column(n - 1, k), self.p)
                if out:
                    raise CompositionError(f"bar ∂∘∂ != 0 in degree {n}")

    def homology(self, threads: int = 1) -> list[int]:
        return [self.dim(n) - self.rank(n, threads) - self.rank(n + 1, threads) for n in range(self.n_max + 1)]


def tor(f: AlgebraMorphism, n_max: int = 3, threads: int = 1) -> list[int]:
    """Dimensions of ``Tor_i^A(B, B)`` for ``0 <= i <= n_max`` from the bar complex."""
    bar = BarComplex(f, n_max)
    bar.check_dd(min(n_max + 1, 2))
    return bar.homology(threads)


@dataclass
class HomEpiCertificate:
    morphism: AlgebraMorphism = dc_field(repr=False)
    checked_degree_bound: int
    surjective: bool
    epi_ok: bool
    tor_dims: list
    tor_vanishing: list
    idempotent_kernel: bool
    projective_kernel: object  # True, False or "UNDECIDED"
    status: str

    @property
    def certified(self) -> bool:
        return self.status in ("PROVEN",) or self.status.startswith("CHECKED_TO_DEGREE")

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "checked_degree_bound": self.checked_degree_bound,
            "surjective": self.surjective,
            "epi_ok": self.epi_ok,
            "tor_dims": list(self.tor_dims),
            "tor_vanishing": {str(i + 1): v for i, v in enumerate(self.tor_vanishing)},
            "idempotent_kernel": self.idempotent_kernel,
            "projective_kernel": self.projective_kernel,
        }


def idempotent_generator(ideal: TwoSidedIdeal):
    """An ``e`` in the ideal with ``x e = x`` for every ``x`` in it, or ``None``.

    Such an ``e`` is idempotent and the ideal equals ``A e``, a direct summand of
    ``A`` as a left module.
    """
    A = ideal.ambient
    F = A.field
    basis = ideal.basis
    if not basis:
        return {}
    d = len(basis)
    n = A.dim
    # unknown coefficients c_k of e = sum c_k v_k; equations (x_s e)_i = (x_s)_i
    cols = []
    for k in range(d):
        col = {}
        for s, x in enumerate(basis):
            for i, c in A.mul(x, basis[k]).items():
                col[s * n + i] = c
        cols.append(col)
    rhs = {s * n + i: c for s, x in enumerate(basis) for i, c in x.items()}
    ech, _ = _echelon_with_combos(cols, F.p)
    res, coeff = ech.reduce(rhs)
    if res:
        return None
    e: dict = {}
    for k, c in coeff.items():
        axpy(e, c, basis[k], F.p)
    return e


def _echelon_with_combos(cols, p):
    from .exactla import _eliminate
    return _eliminate(cols, p, track=True)


def certify_hom_epi(f: AlgebraMorphism, n_max: int = 3, threads: int = 1) -> HomEpiCertificate:
    B = f.target
    surj = f.is_surjective()
    dims = tor(f, n_max, threads)
    epi_ok = dims[0] == B.dim
    vanish = [d == 0 for d in dims[1:]]
    I = kernel_ideal(f)
    idem = I.is_idempotent()
    e = idempotent_generator(I)
    proj = True if e is not None else "UNDECIDED"
    if surj and epi_ok and idem and proj is True and all(vanish):
        status = "PROVEN"
    elif epi_ok and all(vanish):
        status = f"CHECKED_TO_DEGREE {n_max}"
    else:
        status = "FAILED"
    return HomEpiCertificate(f, n_max, surj, epi_ok, dims, vanish, idem, proj, status)


# ---------------------------------------------------------------------------
# induced maps


class _Zigzag:
    """Complexes used to transport classes along ``f: S -> T``."""

    def __init__(self, f: AlgebraMorphism, q: int):
        S, T = f.source, f.target
        self.C_SS = HochschildComplex(S, None, q + 1, check=False)
        self.C_TT = HochschildComplex(T, None, q + 1, check=False)
        T_S = restrict_bimodule(diagonal_bimodule(T), f)
        self.C_ST = HochschildComplex(S, T_S, q + 1, check=False)


def hh_induced_map(f: AlgebraMorphism, q: int, certificate: HomEpiCertificate | None = None,
                   complexes: dict | None = None) -> SparseMatrix:
    """``HH^q(S, S) -> HH^q(T, T)`` through ``HH^q(S, T)``, in the representative bases."""
    if certificate is None:
        certificate = certify_hom_epi(f)
    if not certificate.certified or not certificate.surjective:
        raise NotCertified(f"morphism is not a certified surjective homological epimorphism ({certificate.status})")
    S, T = f.source, f.target
    F = S.field
    cache = complexes if complexes is not None else {}

    def cx(key, factory):
        c = cache.get(key)
        if c is None:
            c = cache[key] = factory()
        return c

    C_SS = cx((id(S), id(S)), lambda: HochschildComplex(S, None, q + 1, check=False))
    C_TT = cx((id(T), id(T)), lambda: HochschildComplex(T, None, q + 1, check=False))
    C_ST = cx((id(S), id(T), id(f)),
              lambda: HochschildComplex(S, restrict_bimodule(diagonal_bimodule(T), f), q + 1, check=False))
    b_SS, b_TT, b_ST = C_SS.cohomology_basis(q), C_TT.cohomology_basis(q), C_ST.cohomology_basis(q)
    push_cols = coefficient_map(C_SS, C_ST, q, f.images)
    P = []
    for z in b_SS.reps:
        v: dict = {}
        for j, c in z.items():
            axpy(v, c, push_cols[j], F.p)
        P.append(b_ST.coords(v))
    res = restriction_columns(f, C_TT, C_ST, q)
    R = []
    for w in b_TT.reps:
        v = {}
        for j, c in w.items():
            axpy(v, c, res[j], F.p)
        R.append(b_ST.coords(v))
    Rm = SparseMatrix(b_ST.dim, b_TT.dim, F, tuple(R))
    if Rm.rows != Rm.cols or rank(Rm) != Rm.rows:
        raise ZigzagNotInvertible(f"restriction HH^{q}(T,T) -> HH^{q}(S,T) is not invertible")
    Pm = SparseMatrix(b_ST.dim, b_SS.dim, F, tuple(P))
    return inverse(Rm) @ Pm


# ---------------------------------------------------------------------------
# long exact sequence of a quotient


@dataclass
class LESReport:
    q_max: int
    nodes: list  # dicts with name, degree, dim, ker, im, ok
    iso_ok: list
    compositions_ok: bool

    @property
    def exact(self) -> bool:
        return all(n["ok"] for n in self.nodes) and all(self.iso_ok) and self.compositions_ok

    def to_json(self) -> dict:
        return {"q_max": self.q_max, "exact": self.exact, "compositions_ok": self.compositions_ok,
                "iso_HH_AB_to_HH_B": self.iso_ok, "nodes": self.nodes}


def hh_les(a: FiniteAlgebra, ideal: TwoSidedIdeal, q_max: int = 2, certificate=None, n_tor: int = 3) -> LESReport:
    """Exactness of ``... -> HH(A,I) -> HH(A,A) -> HH(A,A/I) -> HH^{+1}(A,I) -> ...``."""
    B, pi = quotient(a, ideal)
    if certificate is None:
        certificate = certify_hom_epi(pi, n_tor)
    if not certificate.certified:
        raise NotHomEpi(f"quotient map is not a homological epimorphism ({certificate.status})")
    F = a.field
    p = F.p
    I_mod, incl = ideal_bimodule(a, ideal)
    B_mod = restrict_bimodule(diagonal_bimodule(B), pi)
    top = q_max + 1
    C_I = HochschildComplex(a, I_mod, top)
    C_A = HochschildComplex(a, None, top)
    C_B = HochschildComplex(a, B_mod, top)
    incl_imgs = [dict(c) for c in incl.columns]
    # section of pi on coefficients: the quotient basis is a subset of the standard basis
    keep = [i for i in range(a.dim) if i not in ideal._ech.index]
    sect = [{k: F(1)} for k in keep]
    # coordinates of an element of A lying in I
    ech_I = Echelon(p)
    for t, v in enumerate(ideal.basis):
        ech_I.insert(v, {t: F(1)})

    def to_ideal(vec: dict, q: int) -> dict:
        # vec is a cochain of C_A in degree q whose values lie in I
        groups: dict = {}
        for idx, c in vec.items():
            code, m = divmod(idx, C_A.dM)
            groups.setdefault(code, {})[m] = c
        out = {}
        for code, v in groups.items():
            res, coeff = ech_I.reduce(v)
            if res:
                raise CompositionError("connecting map: value outside the ideal")
            for t, c in coeff.items():
                out[code * C_I.dM + t] = c
        return out

    def apply_cols(cols, z):
        out: dict = {}
        for j, c in z.items():
            axpy(out, c, cols[j], p)
        return out

    def delta_cochain(q: int, z: dict) -> dict:
        lift = apply_cols(coefficient_map(C_B, C_A, q, sect), z)
        return to_ideal(C_A.apply(q, lift), q + 1)

    bases = {}
    for name, C in (("I", C_I), ("A", C_A), ("B", C_B)):
        for q in range(q_max + 1):
            bases[(name, q)] = C.cohomology_basis(q)
    g, h, dl = {}, {}, {}
    for q in range(q_max + 1):
        gi = coefficient_map(C_I, C_A, q, incl_imgs)
        g[q] = SparseMatrix(bases[("A", q)].dim, bases[("I", q)].dim, F,
                            tuple(bases[("A", q)].coords(apply_cols(gi, z)) for z in bases[("I", q)].reps))
        hi = coefficient_map(C_A, C_B, q, pi.images)
        h[q] = SparseMatrix(bases[("B", q)].dim, bases[("A", q)].dim, F,
                            tuple(bases[("B", q)].coords(apply_cols(hi, z)) for z in bases[("A", q)].reps))
    for q in range(q_max):
        dl[q] = SparseMatrix(bases[("I", q + 1)].dim, bases[("B", q)].dim, F,
                             tuple(bases[("I", q + 1)].coords(delta_cochain(q, z)) for z in bases[("B", q)].reps))
    # last connecting map: rank measured modulo coboundaries in degree q_max + 1
    image_top = C_I.columns(q_max)
    ech = Echelon(p)
    for v in image_top:
        ech.insert(v)
    base_rank = len(ech)
    delta_last = [delta_cochain(q_max, z) for z in bases[("B", q_max)].reps]
    for v in delta_last:
        ech.insert(v)
    rank_dl_last = len(ech) - base_rank
    comp_ok = True
    for q in range(q_max + 1):
        if not (h[q] @ g[q]).is_zero():
            comp_ok = False
    for q in range(q_max):
        if not (dl[q] @ h[q]).is_zero() or not (g[q + 1] @ dl[q]).is_zero():
            comp_ok = False
    # δ∘h at the top: images of HH^{q_max}(A,A) must be coboundaries in C(A,I)
    hi = coefficient_map(C_A, C_B, q_max, pi.images)
    ech_top = Echelon(p)
    for v in image_top:
        ech_top.insert(v)
    for z in bases[("A", q_max)].reps:
        res, _ = ech_top.reduce(delta_cochain(q_max, apply_cols(hi, z)), track=False)
        if res:
            comp_ok = False

    def rk(m):
        return rank(m) if m.rows and m.cols else 0

    nodes = []
    for q in range(q_max + 1):
        dI, dA, dB = bases[("I", q)].dim, bases[("A", q)].dim, bases[("B", q)].dim
        im_in = rk(dl[q - 1]) if q > 0 else 0
        nodes.append({"node": f"HH^{q}(A,I)", "dim": dI, "ker": dI - rk(g[q]), "im": im_in})
        nodes.append({"node": f"HH^{q}(A,A)", "dim": dA, "ker": dA - rk(h[q]), "im": rk(g[q])})
        r_out = rk(dl[q]) if q < q_max else rank_dl_last
        nodes.append({"node": f"HH^{q}(A,B)", "dim": dB, "ker": dB - r_out, "im": rk(h[q])})
    for nd in nodes:
        nd["ok"] = nd["ker"] == nd["im"]
    # HH(A,B) ≅ HH(B,B) through restriction along the quotient map
    C_BB = HochschildComplex(B, None, top, check=False)
    iso_ok = []
    for q in range(q_max + 1):
        bBB = C_BB.cohomology_basis(q)
        res = restriction_columns(pi, C_BB, C_B, q)
        R = [bases[("B", q)].coords(apply_cols(res, w)) for w in bBB.reps]
        Rm = SparseMatrix(bases[("B", q)].dim, bBB.dim, F, tuple(R))
        iso_ok.append(Rm.rows == Rm.cols and rk(Rm) == Rm.rows)
    return LESReport(q_max, nodes, iso_ok, comp_ok)
