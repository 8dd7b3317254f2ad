"""Command-line interface: ``gs-cohomlab <command> [options]``.

Exit codes: 0 success, 1 a verification failed, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import suites
from .alg import incidence_algebra, restriction_morphism, theta_map
from .bw import (constant_functor, constant_natural_system, bw_cohomology, e2_vs_bw, hh_functor, hh_natural_system,
                 roos_cohomology, selfduality_check)
from .errors import CohomLabError
from .exactla import Field
from .fincat import longest_chain, poset_from_json, poset_to_category
from .gs import GSDoubleComplex, gs_cohomology, incidence_presheaf, ss_consistency, ss_pages
from .hochschild import certify_hom_epi, hh
from .io import SCHEMA, algebra_from_json, algebra_to_json, dumps, label, load_json, morphism_from_json
from .simp import colimit, complex_from_json, diagram_from_json, face_poset, filtration_from_json

DEFAULT_FIELD = 32003


class InputError(Exception):
    pass


def _load(path: str, what: str):
    try:
        return load_json(path)
    except OSError as e:
        raise InputError(f"{path}: cannot read {what}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None


def _parse(path: str, what: str, fn):
    obj = _load(path, what)
    try:
        return fn(obj)
    except CohomLabError as e:
        raise InputError(f"{path}: invalid {what}: {e}") from None
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise InputError(f"{path}: malformed {what}: {e!r}") from None


def _field(args) -> Field:
    try:
        return Field.parse(args.field if args.field is not None else DEFAULT_FIELD)
    except CohomLabError as e:
        raise InputError(f"--field: {e}") from None


def _report(args, command: str, body: dict) -> dict:
    out = {"schema": SCHEMA, "command": command}
    out.update(body)
    return out


def _emit(args, report: dict, table: str):
    if args.format == "json":
        sys.stdout.write(dumps(report) + "\n")
    else:
        sys.stdout.write(table.rstrip("\n") + "\n")


def _dims_table(title: str, dims, start: int = 0) -> str:
    lines = [title]
    for i, d in enumerate(dims, start):
        lines.append(f"  {i:>3d}  {d}")
    return "\n".join(lines)


def _presheaf(args, F: Field):
    if args.filtration:
        diag = _parse(args.filtration, "filtration", filtration_from_json)
    elif args.diagram:
        diag = _parse(args.diagram, "diagram", diagram_from_json)
    else:
        raise InputError("need --filtration or --diagram")
    try:
        return incidence_presheaf(diag, F), diag
    except CohomLabError as e:
        raise InputError(f"invalid diagram: {e}") from None


# ---------------------------------------------------------------------------
# commands


def cmd_hh(args) -> int:
    F = _field(args)
    if args.algebra:
        field = F if args.field is not None else None
        A = _parse(args.algebra, "algebra", lambda o: algebra_from_json(o, field))
        source = {"algebra": args.algebra}
    elif args.poset:
        P = _parse(args.poset, "poset", poset_from_json)
        A = incidence_algebra(P, F)
        source = {"poset": args.poset}
    elif args.complex:
        S = _parse(args.complex, "complex", complex_from_json)
        A = incidence_algebra(face_poset(S), F)
        source = {"complex": args.complex}
    else:
        raise InputError("need one of --algebra, --poset, --complex")
    dims = hh(A, q_max=args.max_q, normalized=args.normalized, threads=args.threads)
    rep = _report(args, "hh", {"input": source, "field": A.field.to_json(), "q_max": args.max_q,
                               "normalized": args.normalized, "algebra_dim": A.dim,
                               "hh_dims": dims})
    _emit(args, rep, _dims_table(f"HH^q  (dim A = {A.dim}, field {A.field}, q <= {args.max_q})", dims))
    return 0


def _gs_common(args):
    F = _field(args)
    a, diag = _presheaf(args, F)
    n_max = args.max_q if args.n_max is None else args.n_max
    try:
        d = GSDoubleComplex(a, q_max=args.max_q)
        dims = gs_cohomology(d, n_max, args.threads)
    except CohomLabError as e:
        raise InputError(str(e)) from None
    return F, a, d, dims, n_max


def cmd_gs(args) -> int:
    F, a, d, dims, n_max = _gs_common(args)
    pages = ss_pages(d)
    cons = ss_consistency(pages, dims, raise_on_failure=False)
    rep = _report(args, "gs", {"field": F.to_json(), "p_max": d.p_max, "q_max": d.q_max, "n_max": n_max,
                               "gs_dims": dims, "E1": pages[1].to_json(), "E2": pages[2].to_json(),
                               "consistency": cons.to_json()})
    text = "\n".join([_dims_table(f"HH_GS^n  (field {F}, n <= {n_max}, q_max {d.q_max})", dims),
                      pages[1].table(), pages[2].table(),
                      f"consistency: {cons.mode} {'ok' if cons.ok else 'FAILED'}"])
    _emit(args, rep, text)
    return 0 if cons.ok else 1


def cmd_ss(args) -> int:
    F = _field(args)
    a, _ = _presheaf(args, F)
    d = GSDoubleComplex(a, q_max=args.max_q)
    pages = ss_pages(d)
    rep = _report(args, "ss", {"field": F.to_json(), "p_max": d.p_max, "q_max": d.q_max,
                               "pages": [pg.to_json() for pg in pages]})
    _emit(args, rep, "\n".join(pg.table() for pg in pages))
    return 0


def cmd_bw(args) -> int:
    F = _field(args)
    if args.poset:
        P = _parse(args.poset, "poset", poset_from_json)
        cat = poset_to_category(P)
        n = args.n_max if args.n_max is not None else args.max_q
        dims = bw_cohomology(constant_natural_system(cat, F), n)
        rep = _report(args, "bw", {"field": F.to_json(), "n_max": n, "system": "constant", "bw_dims": dims})
        _emit(args, rep, _dims_table(f"H^n_BW(C; k)  (field {F})", dims))
        return 0
    a, _ = _presheaf(args, F)
    P = longest_chain(a.base)
    rows = {}
    for q in range(args.max_q + 1):
        rows[str(q)] = bw_cohomology(hh_natural_system(a, q), P)
    cmp_ = e2_vs_bw(a, P, args.max_q, raise_on_mismatch=False)
    rep = _report(args, "bw", {"field": F.to_json(), "p_max": P, "q_max": args.max_q,
                               "bw_dims_by_q": rows, "e2_vs_bw": cmp_.to_json()})
    text = "\n".join([f"H^p_BW(C; HH^q)  (field {F})"] +
                     [f"  q={q}: {v}" for q, v in rows.items()] +
                     [f"E2 vs BW: {'ok' if cmp_.ok else 'MISMATCH'}"])
    _emit(args, rep, text)
    return 0 if cmp_.ok else 1


def cmd_roos(args) -> int:
    F = _field(args)
    if args.poset:
        P = _parse(args.poset, "poset", poset_from_json)
        cat = poset_to_category(P)
        n = args.n_max if args.n_max is not None else args.max_q
        dims = roos_cohomology(constant_functor(cat, F, covariant=not args.contravariant), n)
        rep = _report(args, "roos", {"field": F.to_json(), "n_max": n, "functor": "constant",
                                     "variance": "contravariant" if args.contravariant else "covariant",
                                     "lim_dims": dims})
        _emit(args, rep, _dims_table(f"lim^n  (constant functor, field {F})", dims))
        return 0
    a, _ = _presheaf(args, F)
    P = longest_chain(a.base)
    try:
        rows = {str(q): roos_cohomology(hh_functor(a, q), P) for q in range(args.max_q + 1)}
        cmp_ = selfduality_check(a, P, args.max_q, raise_on_mismatch=False)
    except CohomLabError as e:
        raise InputError(str(e)) from None
    rep = _report(args, "roos", {"field": F.to_json(), "p_max": P, "q_max": args.max_q,
                                 "lim_dims_by_q": rows, "selfduality": cmp_.to_json()})
    text = "\n".join([f"lim^p HH^q(A, A)  (field {F})"] + [f"  q={q}: {v}" for q, v in rows.items()] +
                     [f"self-duality: {'ok' if cmp_.ok else 'MISMATCH'}"])
    _emit(args, rep, text)
    return 0 if cmp_.ok else 1


def cmd_homepi(args) -> int:
    F = _field(args)
    if args.morphism:
        field = F if args.field is not None else None
        f = _parse(args.morphism, "morphism", lambda o: morphism_from_json(o, field))
    elif args.complex and args.subcomplex:
        S = _parse(args.complex, "complex", complex_from_json)
        T = _parse(args.subcomplex, "complex", complex_from_json)
        if not T.is_subcomplex_of(S):
            raise InputError(f"{args.subcomplex}: not a subcomplex of {args.complex}")
        PS = face_poset(S)
        f = restriction_morphism(PS, [S.normalize(x) for x in T.faces], F)
    elif args.poset and args.subposet:
        P = _parse(args.poset, "poset", poset_from_json)
        Q = _parse(args.subposet, "poset", poset_from_json)
        if not P.is_lower_ideal(Q.elements):
            raise InputError(f"{args.subposet}: not a lower ideal of {args.poset}")
        f = restriction_morphism(P, Q.elements, F)
    else:
        raise InputError("need --morphism, --complex with --subcomplex, or --poset with --subposet")
    cert = certify_hom_epi(f, args.n_max if args.n_max is not None else 3, args.threads)
    rep = _report(args, "homepi", {"field": f.source.field.to_json(), "source_dim": f.source.dim,
                                   "target_dim": f.target.dim, "certificate": cert.to_json()})
    text = "\n".join([f"status: {cert.status}", f"Tor dims: {cert.tor_dims}", f"epi: {cert.epi_ok}",
                      f"kernel idempotent: {cert.idempotent_kernel}", f"kernel projective: {cert.projective_kernel}"])
    _emit(args, rep, text)
    return 0


def cmd_colimit(args) -> int:
    diag = _parse(args.diagram, "diagram", diagram_from_json)
    try:
        K = colimit(diag)
    except CohomLabError as e:
        raise InputError(str(e)) from None
    incl = {label(p): {label(v): label(w) for v, w in m.items()} for p, m in K.inclusions.items()}
    rep = _report(args, "colimit", {"complex": {"vertices": [label(v) for v in K.complex.vertices],
                                                "maximal_faces": [[label(v) for v in f] for f in K.complex.maximal_faces()]},
                                    "inclusions": incl})
    text = "\n".join([f"vertices: {[label(v) for v in K.complex.vertices]}",
                      f"maximal faces: {[[label(v) for v in f] for f in K.complex.maximal_faces()]}"])
    _emit(args, rep, text)
    return 0


def cmd_limit(args) -> int:
    F = _field(args)
    diag = _parse(args.diagram, "diagram", diagram_from_json)
    try:
        K = colimit(diag)
        theta, L, _ = theta_map(diag, K, F)
    except CohomLabError as e:
        raise InputError(str(e)) from None
    rep = _report(args, "limit", {"field": F.to_json(), "limit_dim": L.dim, "incidence_dim": theta.source.dim,
                                  "theta_iso": True, "limit_algebra": algebra_to_json(L)})
    _emit(args, rep, f"dim lim I(F(Σ_p)) = {L.dim}\ndim I(F(colim)) = {theta.source.dim}\ntheta: isomorphism")
    return 0


def cmd_verify(args) -> int:
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    results = {}
    ok = True
    lines = []
    for name in names:
        checks = suites.SUITES[name](args.threads)
        results[name] = [c.to_json() for c in checks]
        for c in checks:
            ok &= c.ok
            lines.append(f"[{'PASS' if c.ok else 'FAIL'}] {name}: {c.name}: expected {c.expected}, computed {c.computed}")
    rep = _report(args, "verify", {"suites": results, "ok": ok})
    _emit(args, rep, "\n".join(lines))
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gs-cohomlab", description="Exact Hochschild, GS and BW cohomology.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=None, help=f"prime p or Q (default {DEFAULT_FIELD})")
    common.add_argument("--max-q", type=int, default=3, dest="max_q", help="Hochschild degree bound (default 3)")
    common.add_argument("--n-max", type=int, default=None, dest="n_max", help="total/outer degree bound")
    common.add_argument("--format", choices=["json", "table"], default="table")
    common.add_argument("--threads", type=int, default=1)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hh", parents=[common], help="Hochschild cohomology")
    p.add_argument("--algebra")
    p.add_argument("--poset")
    p.add_argument("--complex")
    p.add_argument("--normalized", action="store_true")
    p.set_defaults(fn=cmd_hh)

    for name, fn, hlp in (("gs", cmd_gs, "GS cohomology and spectral sequence"), ("ss", cmd_ss, "spectral sequence pages")):
        p = sub.add_parser(name, parents=[common], help=hlp)
        p.add_argument("--filtration")
        p.add_argument("--diagram")
        p.set_defaults(fn=fn)

    p = sub.add_parser("bw", parents=[common], help="Baues-Wirsching cohomology")
    p.add_argument("--poset", help="constant natural system on a poset")
    p.add_argument("--filtration")
    p.add_argument("--diagram")
    p.set_defaults(fn=cmd_bw)

    p = sub.add_parser("roos", parents=[common], help="higher limits via the Roos complex")
    p.add_argument("--poset", help="constant functor on a poset")
    p.add_argument("--contravariant", action="store_true")
    p.add_argument("--filtration")
    p.add_argument("--diagram")
    p.set_defaults(fn=cmd_roos)

    p = sub.add_parser("homepi", parents=[common], help="homological epimorphism certificate")
    p.add_argument("--morphism")
    p.add_argument("--complex")
    p.add_argument("--subcomplex")
    p.add_argument("--poset")
    p.add_argument("--subposet")
    p.set_defaults(fn=cmd_homepi)

    p = sub.add_parser("colimit", parents=[common], help="colimit of a diagram of complexes")
    p.add_argument("--diagram", required=True)
    p.set_defaults(fn=cmd_colimit)

    p = sub.add_parser("limit", parents=[common], help="limit of incidence algebras and the comparison map")
    p.add_argument("--diagram", required=True)
    p.set_defaults(fn=cmd_limit)

    p = sub.add_parser("verify", parents=[common], help="run a built-in verification suite")
    p.add_argument("suite", choices=list(suites.SUITES) + ["all"])
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.max_q < 0 or (args.n_max is not None and args.n_max < 0) or args.threads < 1:
        print("error: degree bounds must be >= 0 and --threads >= 1", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CohomLabError as e:
        print(f"error: {e.code}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
