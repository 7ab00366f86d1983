"""Command-line front end.

One binary, subcommand style::

    bcl build bm --d 3 -o bm3.cplx
    bcl info bm3.cplx --field Q --field Z/2
    bcl check bm3.cplx --manifold --balanced
    bcl cover bm3.cplx --t 2 --handle --check h-identity -o cover.cplx
    bcl certify lbt-inequality --input bm3.cplx
    bcl search --d 3 --class-sizes 3,3,3 --chi 0 --out census_dir

Machine-readable JSON goes to stdout (canonical form: sorted keys, compact
separators, integers only); human diagnostics go to stderr.  Exit codes:
0 success / all verdicts pass or inapplicable, 1 at least one fail
verdict, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from . import certify as certify_mod
from . import constructions, covers, files, search as search_mod
from .coloring import find_balanced_coloring, validate_coloring
from .core import Complex, bits, mask_of
from .errors import BclError
from .homology import (
    GF2,
    QQ,
    Field,
    betti,
    is_buchsbaum,
    is_buchsbaum_star,
    is_homology_manifold,
    is_homology_sphere,
)
from .report import canonical_json

__all__ = ["main"]


def _default_jobs() -> int:
    raw = os.environ.get("BCL_JOBS", "").strip()
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        return 1


def _emit(obj) -> None:
    sys.stdout.write(canonical_json(obj) + "\n")


def _note(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def _parse_ids(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    return [int(tok) for tok in text.replace(",", " ").split()]


def _load(path: str):
    C, kappa = files.read_complex(path)
    return C, kappa


def _field(text: str | None, default: Field) -> Field:
    return Field.parse(text) if text else default


# ---------------------------------------------------------------------------
# verbs

def _cmd_build(args) -> int:
    if args.kind == "cross":
        built = constructions.cross_polytope_boundary(args.d)
    elif args.kind == "st":
        if args.n is None:
            raise BclError("build st needs --n")
        built = constructions.stacked_cross_polytopal_sphere(args.n, args.d)
    else:
        built = (
            constructions.bm_from_handle_pipeline(args.d)
            if args.pipeline
            else constructions.bm(args.d)
        )
    C = built.complex
    files.write_complex(args.out, C, built.coloring)
    f = C.f_vector()
    _emit(
        {
            "construction": args.kind,
            "d": args.d,
            "n": C.n,
            "dim": C.dim,
            "f_vector": list(f.counts),
            "facets": len(C.facets),
            "path": args.out,
        }
    )
    return 0


def _cmd_info(args) -> int:
    C, kappa = _load(args.path)
    report: dict = {
        "path": args.path,
        "n": C.n,
        "dim": C.dim,
        "vertices": len(C.vertices),
        "pure": C.is_pure,
        "connected": C.is_connected(),
        "f_vector": list(C.f_vector().counts),
        "euler": C.euler_characteristic(),
        "colors_present": kappa is not None,
    }
    if C.is_pure and not C.is_empty:
        report["h_vector"] = list(C.h_vector().counts)
    if kappa is not None:
        report["balanced"] = validate_coloring(C, kappa)
    if not args.no_betti and not C.is_empty:
        out = {}
        for text in args.field or ["Q"]:
            fld = Field.parse(text)
            out[fld.label()] = list(betti(C, fld).betti)
        report["betti"] = out
    _emit(report)
    return 0


def _cmd_check(args) -> int:
    C, kappa = _load(args.path)
    jobs = args.jobs or _default_jobs()
    checks: dict[str, bool] = {}
    if args.pure:
        checks["pure"] = C.is_pure
    if args.closed:
        checks["closed_pseudomanifold"] = C.is_closed_pseudomanifold()
    if args.balanced:
        if kappa is not None:
            checks["balanced"] = validate_coloring(C, kappa)
        else:
            checks["balanced"] = find_balanced_coloring(C) is not None
    if args.manifold:
        checks["homology_manifold"] = is_homology_manifold(
            C, _field(args.field, QQ), jobs
        )
    if args.sphere:
        checks["homology_sphere"] = is_homology_sphere(C, _field(args.field, QQ), jobs)
    if args.buchsbaum:
        checks["buchsbaum"] = is_buchsbaum(C, _field(args.field, QQ))
    if args.buchsbaum_star:
        checks["buchsbaum_star"] = is_buchsbaum_star(C, _field(args.field, GF2))
    if not checks:
        raise BclError("no checks requested (try --pure/--balanced/--manifold/...)")
    ok = all(checks.values())
    _emit({"path": args.path, "checks": checks, "pass": ok})
    return 0 if ok else 1


def _cocycle_for(args, C: Complex) -> covers.Cocycle:
    if args.handle and args.cocycle:
        raise BclError("--handle and --cocycle are mutually exclusive")
    if args.handle:
        return covers.handle_cocycle(C, args.t)
    if args.cocycle:
        return files.read_cocycle(args.cocycle, args.t)
    raise BclError("need --handle or --cocycle FILE")


def _cmd_cover(args) -> int:
    C, kappa = _load(args.path)
    omega = _cocycle_for(args, C)
    cover = covers.cyclic_cover(C, omega)
    report: dict = {
        "t": omega.t,
        "base": {"n": C.n, "f_vector": list(C.f_vector().counts)},
        "cover": {
            "n": cover.n,
            "f_vector": list(cover.f_vector().counts),
            "connected": cover.is_connected(),
        },
    }
    if args.out:
        lifted = covers.lift_coloring(kappa, cover, C.n) if kappa else None
        files.write_complex(args.out, cover, lifted)
        report["path"] = args.out
    certs = []
    for name in args.check or []:
        if name == "h-identity":
            certs.append(covers.cover_h_identity_check(C, omega))
        else:
            certs.append(
                covers.cover_buchsbaum_star_check(C, omega, _field(args.field, GF2))
            )
    if certs:
        report["certificates"] = [c.to_dict() for c in certs]
    _emit(report)
    return 1 if any(c.verdict == "fail" for c in certs) else 0


def _cmd_certify(args) -> int:
    claim = args.claim
    rng = random.Random(args.seed)
    certs = []
    if claim == "alexander-duality":
        from .homology import alexander_duality_check

        C, _ = _load(args.input)
        fld = _field(args.field, QQ)
        if args.w is not None:
            certs.append(alexander_duality_check(C, mask_of(_parse_ids(args.w)), fld))
        else:
            vs = list(C.vertices)
            for _ in range(args.trials):
                w = [v for v in vs if rng.random() < 0.5]
                certs.append(alexander_duality_check(C, mask_of(w), fld))
    elif claim == "color-deletion-invariance":
        from .homology import color_deletion_invariance_check

        C, kappa = _load(args.input)
        if kappa is None:
            raise BclError("input file carries no colors")
        certs.append(
            color_deletion_invariance_check(
                C,
                kappa,
                mask_of(_parse_ids(args.w or "")),
                _field(args.field, QQ),
                check_manifold=not args.no_verify_manifold,
                jobs=args.jobs or _default_jobs(),
            )
        )
    elif claim == "graph-triple-witness":
        hand = certify_mod.GraphTriple(
            (1, 2, 3),
            frozenset({(1, 2), (2, 3)}),
            frozenset({(1, 2), (1, 3)}),
            frozenset({(2, 3), (1, 3)}),
            2,
        )
        instances = [hand]
        for _ in range(args.trials):
            instances.append(certify_mod.random_graph_triple(rng.randint(2, 6), rng))
        failures = []
        for idx, T in enumerate(instances):
            try:
                certify_mod.graph_triple_witness(T)
            except BclError as exc:
                failures.append({"index": idx, "error": str(exc)})
        from .report import certificate

        certs.append(
            certificate(
                "graph-triple-witness",
                {"trials": args.trials, "seed": args.seed},
                "pass" if not failures else "fail",
                {"instances": len(instances), "failures": failures},
            )
        )
    elif claim == "lbt-inequality":
        C, kappa = _load(args.input)
        if kappa is None:
            kappa = find_balanced_coloring(C)
        if kappa is None:
            raise BclError("input is not balanced")
        certs.append(
            certify_mod.lbt_inequality_check(C, kappa, args.t, _field(args.field, QQ))
        )
    elif claim == "link-edge-bound":
        C, kappa = _load(args.input)
        if kappa is None:
            raise BclError("input file carries no colors")
        vs = [args.vertex] if args.vertex is not None else list(C.vertices)
        for v in vs:
            certs.append(
                certify_mod.balanced_link_lbt_check(C, kappa, v, _field(args.field, QQ))
            )
    elif claim == "bm-hypotheses":
        C, kappa = _load(args.input)
        if kappa is None:
            raise BclError("input file carries no colors")
        certs.append(certify_mod.bm_hypotheses_check(C, kappa, _field(args.field, QQ)))
    elif claim == "four-class-deletion":
        C, kappa = _load(args.input)
        if kappa is None:
            raise BclError("input file carries no colors")
        certs.append(certify_mod.four_class_deletion_check(C, kappa))
    elif claim == "facet-count-contradiction":
        if args.d is None:
            raise BclError("facet-count-contradiction needs --d")
        certs.append(
            certify_mod.facet_count_contradiction_check(args.d, args.target)
        )
    elif claim == "cover-h-identity":
        C, _ = _load(args.input)
        omega = _cocycle_for(args, C)
        certs.append(covers.cover_h_identity_check(C, omega))
    elif claim == "cover-buchsbaum-star":
        C, _ = _load(args.input)
        omega = _cocycle_for(args, C)
        certs.append(
            covers.cover_buchsbaum_star_check(C, omega, _field(args.field, GF2))
        )
    else:  # pragma: no cover - argparse restricts choices
        raise BclError(f"unknown claim {claim!r}")
    payload = [c.to_dict() for c in certs]
    _emit(payload[0] if len(payload) == 1 else payload)
    return 1 if any(c.verdict == "fail" for c in certs) else 0


def _cmd_search(args) -> int:
    sizes = tuple(_parse_ids(args.class_sizes))
    spec = search_mod.SearchSpec(
        d=args.d,
        class_sizes=sizes,
        chi=args.chi,
        require_beta1=args.require_beta1,
        betti_profile=tuple(_parse_ids(args.betti)) if args.betti else None,
        closed_manifold=not args.no_manifold,
        connected=not args.no_connected,
        max_nodes=args.budget_nodes,
        max_seconds=args.budget_seconds,
        disable_prunes=frozenset(args.disable_prune or []),
    )
    jobs = args.jobs or _default_jobs()
    result = search_mod.enumerate_complexes(spec, jobs=jobs)
    cert = search_mod.verify_census(result, spec)
    report = {
        "spec": spec.payload(),
        "stats": result.stats,
        "census": [
            {"n": C.n, "facets": [list(bits(f)) for f in C.facets]}
            for C in result.complexes
        ],
        "verification": cert.to_dict(),
    }
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for idx, C in enumerate(result.complexes):
            kappa = find_balanced_coloring(C)
            files.write_complex(
                os.path.join(args.out, f"complex_{idx:03d}.cplx"), C, kappa
            )
        with open(os.path.join(args.out, "census.json"), "w", encoding="utf-8") as fh:
            fh.write(canonical_json(report) + "\n")
        _note(f"census written to {args.out}")
    _emit(report)
    return 0 if cert.verdict == "pass" else 1


# ---------------------------------------------------------------------------
# parser

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bcl", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    b = sub.add_parser("build", help="construct a complex and write a facet file")
    b.add_argument("kind", choices=["cross", "st", "bm"])
    b.add_argument("--d", type=int, required=True)
    b.add_argument("--n", type=int, help="vertex count (st only)")
    b.add_argument("--pipeline", action="store_true",
                   help="bm only: build via connected sums + handle")
    b.add_argument("-o", "--out", required=True)
    b.set_defaults(fn=_cmd_build)

    i = sub.add_parser("info", help="f/h-vectors, Euler, Betti numbers")
    i.add_argument("path")
    i.add_argument("--field", action="append", help="Q, Z/2, Z/p (repeatable)")
    i.add_argument("--no-betti", action="store_true")
    i.set_defaults(fn=_cmd_info)

    c = sub.add_parser("check", help="boolean predicates; exit 1 on any failure")
    c.add_argument("path")
    for flag in ("pure", "closed", "balanced", "manifold", "sphere", "buchsbaum"):
        c.add_argument(f"--{flag}", action="store_true")
    c.add_argument("--buchsbaum-star", action="store_true")
    c.add_argument("--field")
    c.add_argument("--jobs", type=int)
    c.set_defaults(fn=_cmd_check)

    v = sub.add_parser("cover", help="build a cyclic cover from a cocycle")
    v.add_argument("path")
    v.add_argument("--t", type=int, required=True)
    v.add_argument("--handle", action="store_true",
                   help="use the canonical handle cocycle (bm inputs)")
    v.add_argument("--cocycle", help="cocycle file")
    v.add_argument("--check", action="append",
                   choices=["h-identity", "buchsbaum-star"])
    v.add_argument("--field")
    v.add_argument("-o", "--out")
    v.set_defaults(fn=_cmd_cover)

    y = sub.add_parser("certify", help="emit a certificate JSON")
    y.add_argument(
        "claim",
        choices=[
            "alexander-duality",
            "color-deletion-invariance",
            "graph-triple-witness",
            "lbt-inequality",
            "link-edge-bound",
            "bm-hypotheses",
            "four-class-deletion",
            "facet-count-contradiction",
            "cover-h-identity",
            "cover-buchsbaum-star",
        ],
    )
    y.add_argument("--input")
    y.add_argument("--w", help="vertex ids, comma or space separated")
    y.add_argument("--vertex", type=int)
    y.add_argument("--field")
    y.add_argument("--t", type=int)
    y.add_argument("--cocycle")
    y.add_argument("--handle", action="store_true")
    y.add_argument("--trials", type=int, default=100)
    y.add_argument("--seed", type=int, default=0)
    y.add_argument("--d", type=int)
    y.add_argument("--target", type=int)
    y.add_argument("--jobs", type=int)
    y.add_argument("--no-verify-manifold", action="store_true")
    y.set_defaults(fn=_cmd_certify)

    s = sub.add_parser("search", help="enumerate balanced triangulations")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--class-sizes", required=True, help="e.g. 3,3,3")
    s.add_argument("--chi", type=int)
    s.add_argument("--require-beta1", action="store_true")
    s.add_argument("--betti", help="exact rational Betti profile, e.g. 0,2,1")
    s.add_argument("--no-manifold", action="store_true")
    s.add_argument("--no-connected", action="store_true")
    s.add_argument("--budget-nodes", type=int)
    s.add_argument("--budget-seconds", type=float)
    s.add_argument("--jobs", type=int)
    s.add_argument("--disable-prune", action="append", choices=list(search_mod.PRUNES))
    s.add_argument("--out", help="directory for facet files + census.json")
    s.set_defaults(fn=_cmd_search)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except BclError as exc:
        _note(f"error: {exc}")
        return 2
    except OSError as exc:
        _note(f"io error: {exc}")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
