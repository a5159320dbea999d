"""Command-line surface: seed checks, catalogs, computations, verification.

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage/config error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .derived import DerivedContext
from .hall import HallContext
from .literals import (
    LiteralError,
    dh_records,
    mh_records,
    parse_dh_element,
    parse_mh_element,
    torus_records,
)
from .qca import compare_with_psi
from .quiver import QuiverError, SeedError, check_form_lemmas, frame_principal, load_config
from .repcat import BoundExceeded, RepcatError
from . import report as rp
from .suites import SUITES, SuiteConfig, corrupt_lambda, run_suite

USAGE_ERROR = 2
VERIFY_ERROR = 1


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hallmorph",
        description="Exact Hall-algebra engine for morphism categories, "
        "with quantum cluster characters",
    )
    p.add_argument("--config", help="quiver config file (JSON)")
    p.add_argument("--q", type=int, help="field size (prime); overrides the config")
    p.add_argument("--max-dim", type=int, default=4,
                   help="total-dimension bound for catalogs and sweeps")
    p.add_argument("--samples", type=int, default=100, help="random samples per family")
    p.add_argument("--seed", type=int, default=12345, help="RNG seed (recorded in reports)")
    p.add_argument("--format", choices=["json", "csv", "text"], default="text")
    p.add_argument("--out", help="write the report to this file instead of stdout")
    p.add_argument("--figures", help="directory for rendered PNG figures")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("check-seed", help="framing, compatibility and form-lemma checks")

    c = sub.add_parser("catalog", help="build (or load) the indecomposable catalog")
    c.add_argument("--cache-dir", help="content-addressed catalog cache directory")

    c = sub.add_parser("compute", help="evaluate an operation on element literals")
    c.add_argument("what", choices=["hall-product", "delta", "psi", "ccchar",
                                    "gvector", "dh-psi"])
    c.add_argument("elements", nargs="+", help="element literals")

    c = sub.add_parser("verify", help="run a verification suite")
    c.add_argument("--suite", required=True,
                   choices=sorted(SUITES) + ["all"])
    c.add_argument("--assoc-samples", type=int, default=200)
    c.add_argument("--depth", type=int, default=5, help="mutation depth for qca")
    c.add_argument("--corrupt-lambda", nargs=2, type=int, metavar=("I", "J"),
                   help="negative control: tamper Lambda[i][j] before running")

    c = sub.add_parser("cluster-compare", help="match Psi images against BZ mutation")
    c.add_argument("--depth", type=int, default=5)
    return p


def _load_context(args):
    if not args.config:
        raise QuiverError("--config is required for this command")
    quiver, q_cfg, lam = load_config(args.config)
    q = args.q or q_cfg
    if q is None:
        raise QuiverError("no q given (config 'q' field or --q)")
    seed = frame_principal(quiver, q=q, lam=lam)
    return HallContext(seed, q)


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _figdir(args):
    if not args.figures:
        return None
    d = Path(args.figures)
    d.mkdir(parents=True, exist_ok=True)
    return d


def cmd_check_seed(args) -> int:
    hall = _load_context(args)
    seed = hall.seed
    import random

    rng = random.Random(args.seed)
    rows = [
        {"check": "lambda skew-symmetric", "ok": _is_skew(seed)},
        {"check": "lambda(-B~) = (D;0)", "ok": seed.is_compatible()},
        {"check": "-lambda B(Q~) diagonal (derived route)",
         "ok": seed.appendix_compatible()},
    ]
    fails = 0
    for _ in range(args.samples):
        a = tuple(rng.randint(-3, 3) for _ in range(seed.n))
        b = tuple(rng.randint(-3, 3) for _ in range(seed.n))
        if not check_form_lemmas(seed, a, b).ok:
            fails += 1
    rows.append({"check": f"form lemmas on {args.samples} sampled vector pairs",
                 "ok": fails == 0})
    rows.append({"check": "B~", "ok": True, "value": [list(r) for r in seed.btilde]})
    rows.append({"check": "lambda", "ok": True, "value": [list(r) for r in seed.lam]})
    _emit(args, rp.render_records(rows, args.format))
    figdir = _figdir(args)
    if figdir:
        rp.render_matrix_figure(
            [seed.btilde, seed.lam], ["B~", "Lambda"], figdir / "seed_matrices.png"
        )
    return 0 if all(r["ok"] for r in rows) else VERIFY_ERROR


def _is_skew(seed) -> bool:
    from . import matrices as im

    return im.is_skew(seed.lam)


def cmd_catalog(args) -> int:
    hall = _load_context(args)
    cat = hall.cat
    loaded = False
    if args.cache_dir:
        cache = Path(args.cache_dir)
        cache.mkdir(parents=True, exist_ok=True)
        path = cache / f"catalog-{cat.catalog_cache_key(args.max_dim)}.json"
        if path.exists():
            try:
                cat.load_catalog(path)
                loaded = True
            except RepcatError:
                loaded = False  # stale cache: rebuild below
        if not loaded:
            cat.save_catalog(path, args.max_dim)
    cat.ensure_catalog(args.max_dim)
    rows = [
        {
            "label": e.label,
            "dim": list(e.dim),
            "projective": e.projective,
            "injective": e.injective,
            "rigid": e.rigid,
            "aliases": list(e.aliases),
        }
        for e in cat.catalog(args.max_dim)
    ]
    _emit(args, rp.render_records(rows, args.format))
    return 0


def cmd_compute(args) -> int:
    hall = _load_context(args)
    hall.cat.ensure_catalog(args.max_dim)
    what = args.what
    out = []
    if what == "dh-psi":
        der = DerivedContext(hall.seed, hall.q)
        der.cat.ensure_catalog(args.max_dim)
        for lit in args.elements:
            x = parse_dh_element(der, lit)
            pipe = der.torus.zero()
            closed = der.torus.zero()
            for (mcls, pmult), c in x.items():
                pipe = pipe + der.psi_pipeline(
                    type(x).single((mcls, pmult), c)
                )
                closed = closed + der.psi_closed(mcls, pmult).scale(c)
            out.append(
                {
                    "element": lit,
                    "pipeline": torus_records(pipe),
                    "closed_form": torus_records(closed),
                    "equal": pipe == closed,
                }
            )
        _emit(args, rp.render_records(out, args.format))
        return 0 if all(r["equal"] for r in out) else VERIFY_ERROR

    if what == "hall-product":
        elts = [parse_mh_element(hall, lit) for lit in args.elements]
        prod = elts[0]
        for e in elts[1:]:
            prod = hall.mult_twisted(prod, e)
        _emit(args, rp.render_records(mh_records(prod), args.format))
        return 0

    status = 0
    for lit in args.elements:
        x = parse_mh_element(hall, lit)
        if what == "delta":
            d = hall.comult(x)
            recs = [
                {
                    "left": mh_records(type(x).single(t1, hall.one_scalar())),
                    "right": mh_records(type(x).single(t2, hall.one_scalar())),
                    "scalar": c.as_dict(),
                }
                for (t1, t2), c in d.items()
            ]
            out.append({"element": lit, "delta": recs})
        elif what == "psi":
            pipe = hall.psi_pipeline(x)
            closed = hall.torus.zero()
            for (alpha, mcls, pmult), c in x.items():
                closed = closed + hall.psi_closed(mcls, pmult, alpha).scale(c)
            equal = pipe == closed
            out.append(
                {
                    "element": lit,
                    "pipeline": torus_records(pipe),
                    "closed_form": torus_records(closed),
                    "equal": equal,
                }
            )
            if not equal:
                status = VERIFY_ERROR
        elif what == "ccchar":
            recs = []
            for (alpha, mcls, pmult), c in x.items():
                if any(alpha):
                    raise LiteralError("ccchar expects X(...) factors without K parts")
                recs.append(
                    {
                        "term": {"module_label": mcls.label()},
                        "character": torus_records(hall.cc_character(mcls, pmult).scale(c)),
                    }
                )
            out.append({"element": lit, "ccchar": recs})
        elif what == "gvector":
            psi = hall.psi_pipeline(x)
            out.append({"element": lit, "gvector": list(hall.torus.deg(psi))})
    _emit(args, rp.render_records(out, args.format))
    return status


def cmd_verify(args) -> int:
    hall = _load_context(args)
    if args.corrupt_lambda:
        i, j = args.corrupt_lambda
        hall = HallContext(corrupt_lambda(hall.seed, i, j), hall.q)
    cfg = SuiteConfig(
        max_total=args.max_dim,
        term_total=min(2, args.max_dim),
        samples=args.samples,
        assoc_samples=args.assoc_samples,
        rng_seed=args.seed,
        depth=args.depth,
    )
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    reports = [run_suite(name, hall, cfg) for name in names]
    _emit(args, rp.render_suites(reports, args.format))
    figdir = _figdir(args)
    if figdir:
        rp.render_suite_figure(reports, figdir / "suites.png")
    return 0 if all(r.ok for r in reports) else VERIFY_ERROR


def cmd_cluster_compare(args) -> int:
    hall = _load_context(args)
    rows = compare_with_psi(hall, args.depth, max_total=args.max_dim)
    _emit(args, rp.render_records(rows, args.format))
    figdir = _figdir(args)
    if figdir:
        rp.render_compare_figure(rows, figdir / "cluster_compare.png")
    return 0 if all(r["matched"] for r in rows) else VERIFY_ERROR


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "check-seed": cmd_check_seed,
        "catalog": cmd_catalog,
        "compute": cmd_compute,
        "verify": cmd_verify,
        "cluster-compare": cmd_cluster_compare,
    }
    try:
        return handlers[args.command](args)
    except (QuiverError, SeedError, LiteralError, BoundExceeded, FileNotFoundError,
            json.JSONDecodeError, RepcatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
