"""Self-contained verification suites run by ``gs-cohomlab verify``."""

from __future__ import annotations

from dataclasses import dataclass

from . import corpus
from .alg import (augmentation, center, incidence_algebra, kernel_ideal, matrix_algebra, restriction_morphism,
                  theta_map, truncated_polynomial_algebra)
from .bw import bw_gs_agreement, e2_vs_bw, selfduality_check
from .exactla import Field
from .fincat import FinPoset, is_free
from .gs import GSDoubleComplex, gs_cohomology, ss_consistency, ss_pages
from .hochschild import certify_hom_epi, hh, hh_les, tor
from .simp import colimit, face_poset, simplicial_cohomology


@dataclass
class Check:
    name: str
    expected: object
    computed: object

    @property
    def ok(self) -> bool:
        return self.expected == self.computed

    def to_json(self) -> dict:
        return {"name": self.name, "expected": self.expected, "computed": self.computed, "ok": self.ok}


def hh_classics(threads: int = 1) -> list[Check]:
    out = []
    M2 = matrix_algebra(2, Field(5))
    out.append(Check("HH(M_2(GF(5)))", [1, 0, 0, 0], hh(M2, q_max=3, threads=threads)))
    for p, exp in ((3, [2, 1, 1, 1]), (2, [2, 2, 2, 2])):
        A = truncated_polynomial_algebra(2, Field(p))
        out.append(Check(f"HH(GF({p})[x]/(x^2))", exp, hh(A, q_max=3, threads=threads)))
    for name, A in (("M_2(GF(5))", M2), ("GF(3)[x]/(x^2)", truncated_polynomial_algebra(2, Field(3)))):
        out.append(Check(f"HH^0 = center of {name}", len(center(A)), hh(A, q_max=0)[0]))
    return out


def incidence_oracle(threads: int = 1) -> list[Check]:
    out = []
    for p in (2, 3):
        F = Field(p)
        for name, make in corpus.COMPLEXES.items():
            S = make()
            A = incidence_algebra(face_poset(S), F)
            top = 3 if A.dim <= 12 else 2
            out.append(Check(f"HH(I(F({name}))) over GF({p}), q<={top}", simplicial_cohomology(S, F, top),
                             hh(A, q_max=top, threads=threads)))
    return out


def gs_filtration(threads: int = 1) -> list[Check]:
    F = Field(2)
    out = []
    d = GSDoubleComplex(corpus.filtration_presheaf(F), q_max=2)
    out.append(Check("GS of {v} ⊆ edge ⊆ ∂Δ² over GF(2)", [1, 1, 0], gs_cohomology(d, 2, threads)))
    out.append(Check("GS equals H*(∂Δ²)", simplicial_cohomology(corpus.triangle_boundary(), F, 2),
                     gs_cohomology(d, 2, threads)))
    for name, P, exp in (("crown", corpus.crown(), [1, 1, 0, 0]), ("crown with top", corpus.crown_with_top(), [1, 0, 0, 0])):
        d = GSDoubleComplex(corpus.singleton_presheaf(P, F), q_max=3)
        out.append(Check(f"GS of constant singleton diagram on {name}", exp, gs_cohomology(d, 3, threads)))
    return out


def spectral(threads: int = 1) -> list[Check]:
    out = []
    F2 = Field(2)
    d = GSDoubleComplex(corpus.filtration_presheaf(F2), q_max=2)
    pages = ss_pages(d)
    e2 = pages[2]
    top = incidence_algebra(face_poset(corpus.triangle_boundary()), F2)
    hh_top = hh(top, q_max=2, threads=threads)
    out.append(Check("filtration: E2^{p,q} = 0 for p > 0", [0] * (d.p_max * 3),
                     [e2[(p, q)] for p in range(1, d.p_max + 1) for q in range(3)]))
    out.append(Check("filtration: E2^{0,q} = HH^q(top)", hh_top, [e2[(0, q)] for q in range(3)]))
    out.append(Check("filtration: E2^{p,q} = 0 for p >= 2", [0] * 3, [e2[(2, q)] for q in range(3)]))
    out.append(Check("filtration: consistency", True, ss_consistency(pages, gs_cohomology(d, 2, threads), False).ok))
    dn = GSDoubleComplex(corpus.dual_numbers_presheaf(Field(3)), q_max=2)
    pn = ss_pages(dn)
    out.append(Check("dual numbers over [1]: E2^{p,q} = 0 for p >= 2", [0] * 3, [pn[2][(2, q)] for q in range(3)]))
    out.append(Check("dual numbers over [1]: consistency", True,
                     ss_consistency(pn, gs_cohomology(dn, 2, threads), False).ok))
    for name, P in (("crown", corpus.crown()), ("crown with top", corpus.crown_with_top())):
        dc = GSDoubleComplex(corpus.singleton_presheaf(P, F2), q_max=3)
        out.append(Check(f"{name}: consistency", True,
                         ss_consistency(ss_pages(dc), gs_cohomology(dc, 3, threads), False).ok))
    out.append(Check("[2] is free", True, is_free(d.base)))
    return out


def _presheaves():
    return [("filtration", corpus.filtration_presheaf(Field(2))),
            ("dual numbers over [1]", corpus.dual_numbers_presheaf(Field(3))),
            ("crown", corpus.singleton_presheaf(corpus.crown(), Field(2))),
            ("crown with top", corpus.singleton_presheaf(corpus.crown_with_top(), Field(2)))]


def bw_compare(threads: int = 1) -> list[Check]:
    out = []
    for name, a in _presheaves():
        rep = e2_vs_bw(a, 2, 2, raise_on_mismatch=False)
        out.append(Check(f"E2 = H_BW(HH^q) on {name}", True, rep.ok))
        d = GSDoubleComplex(a, q_max=2)
        out.append(Check(f"δ_BW = ±d_simp on {name}", True, all(bw_gs_agreement(d, q) for q in range(3))))
    return out


def selfduality(threads: int = 1) -> list[Check]:
    out = []
    for name, a in _presheaves():
        if name.startswith("dual"):
            continue  # its arrow is not a homological epimorphism
        rep = selfduality_check(a, 2, 2, raise_on_mismatch=False)
        out.append(Check(f"lim HH^q = H_BW(HH^q) on {name}", True, rep.ok))
    return out


def colim_limit(threads: int = 1) -> list[Check]:
    F = Field(2)
    D = corpus.pushout_diagram()
    K = colimit(D)
    theta, L, _ = theta_map(D, K, F)
    IK = theta.source
    return [Check("colimit is a 2-edge path", [3, 2], [len(K.complex.vertices), len(K.complex.faces_of_dim(1))]),
            Check("dim I(F(K))", 9, IK.dim),
            Check("dim of the limit algebra", 9, L.dim),
            Check("theta bijective", True, theta.rank() == L.dim == IK.dim)]


def les(threads: int = 1) -> list[Check]:
    F = Field(2)
    out = []
    a = corpus.filtration_presheaf(F)
    for f in a.base.non_identities():
        cert = certify_hom_epi(a.maps[f], 3, threads)
        out.append(Check(f"restriction along {f}: certificate", "PROVEN", cert.status))
        out.append(Check(f"restriction along {f}: Tor_1..3", [0, 0, 0], cert.tor_dims[1:]))
    k2 = truncated_polynomial_algebra(2, Field(3))
    out.append(Check("Tor_1 of k[x]/(x^2) -> k", 1, tor(augmentation(k2), 1)[1]))
    out.append(Check("k[x]/(x^2) -> k is not certified", "FAILED", certify_hom_epi(augmentation(k2)).status))
    P = face_poset(corpus.triangle_boundary())
    f = restriction_morphism(P, face_poset(corpus.edge()).elements, F)
    rep = hh_les(f.source, kernel_ideal(f), 2)
    out.append(Check("LES exact for I(F(∂Δ²)) -> I(F(edge))", True, rep.exact))
    C1 = FinPoset.chain(1)
    g = restriction_morphism(C1, [0], F)
    out.append(Check("LES exact for I([1]) -> I({0})", True, hh_les(g.source, kernel_ideal(g), 2).exact))
    return out


def normalization(threads: int = 1) -> list[Check]:
    out = []
    algs = [("M_2(GF(5))", matrix_algebra(2, Field(5)), 3),
            ("GF(3)[x]/(x^2)", truncated_polynomial_algebra(2, Field(3)), 3),
            ("GF(2)[x]/(x^2)", truncated_polynomial_algebra(2, Field(2)), 3),
            ("GF(3)[x]/(x^3)", truncated_polynomial_algebra(3, Field(3)), 3)]
    for name, S in corpus.COMPLEXES.items():
        A = incidence_algebra(face_poset(S()), Field(2))
        algs.append((f"I(F({name}))", A, 3 if A.dim <= 12 else 2))
    for name, A, top in algs:
        out.append(Check(f"normalized = unnormalized for {name}", hh(A, q_max=top, threads=threads),
                         hh(A, q_max=top, normalized=True, threads=threads)))
    from .gs import incidence_presheaf
    for name, a in (("dual numbers over [1]", corpus.dual_numbers_presheaf(Field(3))),
                    ("point ⊆ edge", incidence_presheaf(corpus.point_edge(), Field(2)))):
        n = gs_cohomology(GSDoubleComplex(a, q_max=2), 2, threads)
        u = gs_cohomology(GSDoubleComplex(a, q_max=2, normalized_nerve=False, p_max=4), 2, threads)
        out.append(Check(f"normalized = identity-containing nerve for {name}", n, u))
    return out


SUITES = {
    "hh-classics": hh_classics,
    "incidence-oracle": incidence_oracle,
    "gs-filtration": gs_filtration,
    "spectral": spectral,
    "bw-compare": bw_compare,
    "selfduality": selfduality,
    "colim-limit": colim_limit,
    "les": les,
    "normalization": normalization,
}
