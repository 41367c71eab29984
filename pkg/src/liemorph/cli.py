"""Command line front end.

Subcommands mirror the library layers: generator identities, algebra
bases, coordinate law batteries, family construction and verification,
quotient morphisms, and compact duals.  run-all executes the whole
battery with one seed and emits a single report whose body is
byte-reproducible for a fixed seed.

Exit codes: 0 all checks passed, 1 a verification failed, 2 bad usage.
Reports print to stdout as JSON unless --out is given; relative --out
paths resolve under $LIEMORPH_OUT_DIR when that is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from .calculus import (
    BATTERY_FAMILIES,
    DEFAULT_SEED,
    battery_descriptors,
    coordinate_field,
    verify_lemma,
)
from .duality import dualize_family, verify_dual
from .families import (
    CONSTRUCTORS,
    DEMO_GROUPS,
    BiEigenFamily,
    EigenFamily,
    construct,
    family_from_dict,
    family_to_dict,
    verify_family,
)
from .groups import DEFAULT_SCALE, GroupDescriptor, parse_descriptor, verify_basis
from .linalg import check_identities
from .morphisms import (
    build_morphism,
    halfplane_quotient,
    morphism_from_dict,
    morphism_to_dict,
    random_morphism,
    verify_appendix_lemmas,
    verify_morphism,
)
from .report import jsonable, make_report, write_report

RUN_ALL_BASES = ("gl_r:3", "sl_r:3", "u_star:2", "sp_r:2", "so_star:3",
                 "u_pq:2,1", "so_pq:2,2", "sp_pq:2,1")


def _resolve_out(path: str) -> Path:
    p = Path(path)
    if not p.is_absolute():
        base = os.environ.get("LIEMORPH_OUT_DIR")
        if base:
            p = Path(base) / p
    return p


def _family_from_args(args) -> "EigenFamily | BiEigenFamily":
    if getattr(args, "family_file", None):
        with open(_resolve_out(args.family_file), encoding="utf-8") as fh:
            data = json.load(fh)
        if data.get("kind") == "dual-family":
            data = data["family"]
        return family_from_dict(data)
    if getattr(args, "constructor", None):
        group = args.group or DEMO_GROUPS[args.constructor]
        return construct(args.constructor, parse_descriptor(group))
    raise ValueError("need --family-file, or --constructor (with optional --group)")


def _parse_degree(text: str, fam) -> tuple[int, int]:
    parts = [int(x) for x in text.split(",")]
    if len(parts) == 1:
        if isinstance(fam, BiEigenFamily):
            raise ValueError("bi-eigenfamily degrees need the form d1,d2")
        return (parts[0], 0)
    if len(parts) == 2:
        if isinstance(fam, EigenFamily):
            raise ValueError("plain eigenfamily degrees are a single integer")
        return (parts[0], parts[1])
    raise ValueError(f"cannot parse degree {text!r}")


def _emit_report(args, command: str, body, ok: bool, t0: float) -> int:
    rep = make_report(command, body, wall_time_s=time.perf_counter() - t0,
                      argv=sys.argv[1:])
    if getattr(args, "out", None):
        path = write_report(rep, _resolve_out(args.out))
        print(f"wrote {path}  ok={ok}")
    else:
        json.dump(rep, sys.stdout, sort_keys=True, indent=2)
        print()
    return 0 if ok else 1


def _emit_artifact(args, artifact: dict) -> int:
    if getattr(args, "out", None):
        path = _resolve_out(args.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(artifact, fh, sort_keys=True, indent=2)
            fh.write("\n")
        print(f"wrote {path}")
    else:
        json.dump(artifact, sys.stdout, sort_keys=True, indent=2)
        print()
    return 0


# --- subcommand handlers -----------------------------------------------------

def _cmd_check_identities(args) -> int:
    t0 = time.perf_counter()
    rep = check_identities(max_size=args.max_size)
    body = {"max_size": args.max_size, "all_hold": rep.all_hold,
            "n_checks": len(rep.results), "results": jsonable(rep.results)}
    return _emit_report(args, "check-identities", body, rep.all_hold, t0)


def _cmd_basis(args) -> int:
    t0 = time.perf_counter()
    desc = parse_descriptor(args.group)
    rng = np.random.default_rng(args.seed)
    rep = verify_basis(desc, rng=rng, samples=args.samples)
    return _emit_report(args, "basis", jsonable(rep), rep.ok, t0)


def _cmd_verify_lemma(args) -> int:
    t0 = time.perf_counter()
    desc = parse_descriptor(args.group)
    if desc.family not in BATTERY_FAMILIES:
        raise ValueError(f"no coordinate law battery for {desc.family}")
    rep = verify_lemma(desc, samples=args.samples, tol=args.tol,
                       seed=args.seed, scale=args.scale)
    return _emit_report(args, "verify-lemma", jsonable(rep), rep.ok, t0)


def _cmd_make_family(args) -> int:
    fam = _family_from_args(args)
    return _emit_artifact(args, family_to_dict(fam))


def _cmd_verify_family(args) -> int:
    t0 = time.perf_counter()
    fam = _family_from_args(args)
    rep = verify_family(fam, samples=args.samples, tol=args.tol,
                        const_tol=args.const_tol, seed=args.seed,
                        scale=args.scale)
    return _emit_report(args, "verify-family", jsonable(rep), rep.ok, t0)


def _cmd_make_morphism(args) -> int:
    fam = _family_from_args(args)
    degree = _parse_degree(args.degree, fam)
    rng = np.random.default_rng(args.seed)
    morph = random_morphism(fam, degree, rng, n_terms=args.terms)
    return _emit_artifact(args, morphism_to_dict(morph))


def _cmd_verify_morphism(args) -> int:
    t0 = time.perf_counter()
    with open(_resolve_out(args.morphism_file), encoding="utf-8") as fh:
        morph = morphism_from_dict(json.load(fh))
    rep = verify_morphism(morph, samples=args.samples, tol=args.tol,
                          formula_tol=args.formula_tol, delta=args.delta,
                          seed=args.seed, scale=args.scale)
    return _emit_report(args, "verify-morphism", jsonable(rep), rep.ok, t0)


def _cmd_dualize(args) -> int:
    fam = _family_from_args(args)
    dual = dualize_family(fam)
    if isinstance(fam, EigenFamily):
        claimed = {"lambda": [-fam.lam.real, -fam.lam.imag],
                   "mu": [-fam.mu.real, -fam.mu.imag]}
    else:
        claimed = {"lambda1": [-fam.lam1.real, -fam.lam1.imag],
                   "mu1": [-fam.mu1.real, -fam.mu1.imag],
                   "lambda2": [-fam.lam2.real, -fam.lam2.imag],
                   "mu2": [-fam.mu2.real, -fam.mu2.imag],
                   "mu_cross": None if fam.mu_cross is None else
                   [-fam.mu_cross.real, -fam.mu_cross.imag]}
    artifact = {
        "kind": "dual-family",
        "family": family_to_dict(fam),
        "dual_label": dual.dual.label,
        "dual_kind": dual.dual.kind,
        "project_traceless": dual.dual.project_traceless,
        "claimed": claimed,
    }
    return _emit_artifact(args, artifact)


def _cmd_verify_dual(args) -> int:
    t0 = time.perf_counter()
    fam = _family_from_args(args)
    rep = verify_dual(dualize_family(fam), samples=args.samples, tol=args.tol,
                      membership_tol=args.membership_tol, seed=args.seed,
                      scale=args.scale)
    return _emit_report(args, "verify-dual", jsonable(rep), rep.ok, t0)


def _morphism_degrees(fam) -> list[tuple[int, int]]:
    if isinstance(fam, EigenFamily):
        return [(1, 0), (2, 0), (3, 0)]
    if fam.mu_cross is not None:
        return [(1, 1), (2, 1), (1, 2)]
    return [(1, 0), (2, 0), (3, 0), (0, 1), (0, 2), (0, 3)]


def _cmd_run_all(args) -> int:
    t0 = time.perf_counter()
    seed, scale, samples = args.seed, args.scale, args.samples
    oks: list[bool] = []
    body: dict = {"seed": seed, "scale": scale, "samples": samples,
                  "max_size": args.max_size}

    idrep = check_identities(max_size=args.max_size)
    oks.append(idrep.all_hold)
    body["identities"] = {"all_hold": idrep.all_hold,
                          "n_checks": len(idrep.results),
                          "failures": jsonable(idrep.failures())}

    bases = {}
    for text in RUN_ALL_BASES:
        rep = verify_basis(parse_descriptor(text),
                           rng=np.random.default_rng(seed))
        oks.append(rep.ok)
        bases[text] = jsonable(rep)
    body["bases"] = bases

    lemmas = {}
    for desc in battery_descriptors():
        rep = verify_lemma(desc, samples=samples, seed=seed, scale=scale)
        oks.append(rep.ok)
        lemmas[desc.text] = jsonable(rep)
    body["lemmas"] = lemmas

    families, morphisms, product_laws, duals = {}, {}, {}, {}
    for name in CONSTRUCTORS:
        fam = construct(name, parse_descriptor(DEMO_GROUPS[name]))
        key = f"{name}@{fam.descriptor.text}"

        frep = verify_family(fam, samples=samples, seed=seed, scale=scale)
        oks.append(frep.ok)
        families[key] = jsonable(frep)

        per_degree = {}
        for degree in _morphism_degrees(fam):
            rng = np.random.default_rng(seed)
            morph = random_morphism(fam, degree, rng)
            mrep = verify_morphism(morph, samples=samples, seed=seed,
                                   scale=scale)
            oks.append(mrep.ok)
            per_degree[f"deg{degree[0]},{degree[1]}"] = jsonable(mrep)
        morphisms[key] = per_degree

        arep = verify_appendix_lemmas(fam, samples=max(5, samples // 2),
                                      seed=seed, scale=scale)
        oks.append(arep.ok)
        product_laws[key] = jsonable(arep)

        drep = verify_dual(dualize_family(fam), samples=samples, seed=seed,
                           scale=scale)
        oks.append(drep.ok)
        duals[key] = jsonable(drep)
    body["families"] = families
    body["morphisms"] = morphisms
    body["product_laws"] = product_laws
    body["duals"] = duals

    fam2, morph2 = halfplane_quotient()
    hf = verify_family(fam2, samples=samples, seed=seed, scale=scale)
    hm = verify_morphism(morph2, samples=samples, tol=1e-10, seed=seed,
                         scale=scale)
    rng = np.random.default_rng(seed)
    from .groups import sample_point
    imag_max = max((morph2.p_field.value(g) / morph2.q_field.value(g)).imag
                   for g in (sample_point(fam2.descriptor, rng, scale)
                             for _ in range(samples)))
    oks.extend([hf.ok, hm.ok, imag_max < 0.0])
    body["halfplane"] = {"family": jsonable(hf), "morphism": jsonable(hm),
                         "imag_max": float(imag_max),
                         "imag_negative": imag_max < 0.0}

    desc = GroupDescriptor("gl_r", 2)
    raw = EigenFamily(descriptor=desc, name="coordinate-quotient",
                      generators=[coordinate_field(desc, "x", 1, 1),
                                  coordinate_field(desc, "x", 2, 2)],
                      labels=["x[1,1]", "x[2,2]"], lam=1.0, mu=0.0)
    neg = build_morphism(raw, [((1, 0), 1.0)], [((0, 1), 1.0)])
    nrep = verify_morphism(neg, samples=samples, seed=seed, scale=scale)
    oks.append(not nrep.ok)
    body["negative_control"] = {"morphism": jsonable(nrep),
                                "expected_failure": True,
                                "failed_as_expected": not nrep.ok}

    overall = all(oks)
    body["ok"] = overall
    return _emit_report(args, "run-all", body, overall, t0)


# --- parser ------------------------------------------------------------------

def _add_common(p, samples: int | None = None, tol: float | None = None):
    if samples is not None:
        p.add_argument("--samples", type=int, default=samples,
                       help=f"sample points per check (default {samples})")
    if tol is not None:
        p.add_argument("--tol", type=float, default=tol,
                       help=f"residual tolerance (default {tol:g})")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help=f"RNG seed (default {DEFAULT_SEED})")
    p.add_argument("--scale", type=float, default=DEFAULT_SCALE,
                   help=f"algebra coefficient scale (default {DEFAULT_SCALE})")
    p.add_argument("--out", help="write the JSON report to this file")


def _add_family_source(p):
    p.add_argument("--family-file", help="JSON family produced by make-family")
    p.add_argument("--constructor", choices=sorted(CONSTRUCTORS),
                   help="family constructor name")
    p.add_argument("--group", help="group descriptor, e.g. gl_r:3 or u_pq:2,1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liemorph",
        description="Eigenfamilies and harmonic morphisms on classical "
                    "matrix groups, with numerical verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-identities",
                       help="generator square and conjugation sums, exact "
                            "and floating point")
    p.add_argument("--max-size", type=int, default=8)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_check_identities)

    p = sub.add_parser("basis", help="orthonormal algebra basis checks")
    p.add_argument("--group", required=True)
    _add_common(p, samples=3)
    p.set_defaults(fn=_cmd_basis)

    p = sub.add_parser("verify-lemma",
                       help="coordinate tension/conformality laws on one group")
    p.add_argument("--group", required=True)
    _add_common(p, samples=20, tol=1e-9)
    p.set_defaults(fn=_cmd_verify_lemma)

    p = sub.add_parser("make-family", help="construct a family as JSON")
    _add_family_source(p)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_make_family)

    p = sub.add_parser("verify-family",
                       help="eigenvalue checks for a (bi-)eigenfamily")
    _add_family_source(p)
    _add_common(p, samples=20, tol=1e-9)
    p.add_argument("--const-tol", type=float, default=1e-8)
    p.set_defaults(fn=_cmd_verify_family)

    p = sub.add_parser("make-morphism",
                       help="random homogeneous quotient over a family")
    _add_family_source(p)
    p.add_argument("--degree", required=True,
                   help="single integer, or d1,d2 for bi-eigenfamilies")
    p.add_argument("--terms", type=int, default=3)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_make_morphism)

    p = sub.add_parser("verify-morphism",
                       help="harmonicity and conformality of a quotient")
    p.add_argument("--morphism-file", required=True)
    _add_common(p, samples=50, tol=1e-8)
    p.add_argument("--formula-tol", type=float, default=1e-10)
    p.add_argument("--delta", type=float, default=1e-6)
    p.set_defaults(fn=_cmd_verify_morphism)

    p = sub.add_parser("dualize",
                       help="transport a family to the compact dual group")
    _add_family_source(p)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_dualize)

    p = sub.add_parser("verify-dual",
                       help="sign-flipped eigenvalue checks on the dual group")
    _add_family_source(p)
    _add_common(p, samples=20, tol=1e-8)
    p.add_argument("--membership-tol", type=float, default=1e-10)
    p.set_defaults(fn=_cmd_verify_dual)

    p = sub.add_parser("run-all", help="full verification battery")
    p.add_argument("--max-size", type=int, default=6)
    _add_common(p, samples=20)
    p.set_defaults(fn=_cmd_run_all)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
