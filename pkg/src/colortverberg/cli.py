"""Command-line interface. Exit codes: 0 pass, 1 property failure, 2 input or resource error."""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .complex import Coloring, symm_deleted_join_cells
from .errors import InstanceError, MatchingError, PreconditionError, ResourceLimitError
from .families import make_bct_family, make_remark_counterexample
from .homology import build_chain_complex, reduced_homology_ranks
from .instance import Instance, instance_from_json, load_instance, load_points, save_instance
from .kneser import build_gamma, has_clique
from .morse import (
    check_matching_hypotheses,
    connectivity_certificate,
    field_from_json,
    field_to_json,
    replay_traces,
    run_matching,
    verify_acyclic,
    verify_critical_census,
    verify_pi_monotone,
    verify_vector_field,
)
from .params import Parameters, validate_parameters
from .pipeline import StageError, run_pipeline
from .tverberg import PointConfiguration, search_tverberg
from .unavoidability import DECIDERS

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _emit(obj, out: str | None = None) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _rc(ok: bool) -> int:
    return EXIT_OK if ok else EXIT_FAIL


# --- subcommands ------------------------------------------------------------


def cmd_validate(args) -> int:
    if args.instance:
        inst = load_instance(args.instance)
        r, k, s, d, m = inst.r, inst.k, inst.s, inst.d, inst.m
    else:
        r, k, s, d, m = args.r, args.k, args.s, args.d, args.m
    if r is None:
        raise InstanceError("validate needs --r or --instance")
    theorem = args.theorem.upper()
    if theorem == "TTRSU" and (s is None or d is None):
        raise InstanceError("TTRSU validation needs --s and --d")
    if theorem != "TTRSU" and k is None:
        raise InstanceError(f"{theorem} validation needs --k")
    rep = validate_parameters(r, k, s, d, m, theorem=theorem)
    _emit(rep)
    return _rc(rep["ok"])


def _bct_instance(r: int, k: int, s: int, d: int | None) -> Instance:
    if r < 2:
        raise InstanceError("the BCT family needs r >= 2")
    num = r * (k - 1) + s
    if d is None:
        if num % (r - 1) or num // (r - 1) < 1:
            raise InstanceError(f"no integer d >= 1 solves r(k-1)+s=(r-1)d for r={r}, k={k}, s={s}")
        d = num // (r - 1)
    params = Parameters(r=r, d=d, k=k, s=s, m=(2 * r - 1) * (k + 1))
    c = Coloring.contiguous(r, k)
    try:
        fam = make_bct_family(params, c)
    except ValueError as exc:
        raise InstanceError(str(exc)) from exc
    return Instance(fam, k, s, d, c)


def _counterexample_instance(r: int, s: int, k: int) -> Instance:
    try:
        m, fam = make_remark_counterexample(r, s, k)
    except ValueError as exc:
        raise InstanceError(str(exc)) from exc
    # pick d so that N = (r-1)(d+2)-s+1 when an integer solution exists
    num = m - 1 + s - 1
    d = num // (r - 1) - 2 if num % (r - 1) == 0 and num // (r - 1) >= 3 else 1
    return Instance(fam, k, s, d, None)


def _pipeline_out(inst: Instance, points: PointConfiguration | None, extra: dict, out: str | None) -> int:
    try:
        rep = run_pipeline(inst, points)
    except StageError as exc:
        if isinstance(exc.cause, (ResourceLimitError, InstanceError)):
            raise
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit({**extra, **rep.to_json()}, out)
    return _rc(rep.ok)


def cmd_demo(args) -> int:
    if args.family == "bct":
        inst = _bct_instance(args.r, args.k, args.s, args.d)
        rng = random.Random(args.seed)
        points = PointConfiguration.random(inst.m, inst.d, rng)
        extra = {"demo": "bct", "seed": args.seed, "points": points.to_json()}
    else:
        inst = _counterexample_instance(args.r, args.s, args.k)
        points = None
        extra = {"demo": "counterexample"}
    if args.write_instance:
        save_instance(inst, args.write_instance)
    extra["instance"] = inst.to_json()
    return _pipeline_out(inst, points, extra, args.out)


def cmd_pipeline(args) -> int:
    inst = load_instance(args.instance)
    points = load_points(args.points) if args.points else None
    return _pipeline_out(inst, points, {"instance_file": args.instance}, args.out)


def cmd_tverberg(args) -> int:
    inst = load_instance(args.instance)
    cells = symm_deleted_join_cells(inst.family, args.cap)
    if args.points:
        configs = [(None, load_points(args.points))]
    else:
        rng = random.Random(args.seed)
        configs = [(t, PointConfiguration.random(inst.m, inst.d, rng)) for t in range(args.trials)]
    results = []
    found = sound = 0
    for trial, config in configs:
        w = search_tverberg(config, inst.family, cells=cells)
        entry: dict = {"trial": trial} if trial is not None else {}
        if w is None:
            entry["result"] = "NONE_FOUND"
        else:
            problems = w.verify(config, inst.family)
            found += 1
            sound += not problems
            entry.update(result="FOUND", witness=w.to_json(), dims=w.dims(), problems=problems)
        results.append(entry)
    summary = {"trials": len(configs), "found": found, "sound": sound,
               "seed": None if args.points else args.seed}
    if len(configs) > 1 and not args.verbose:
        results = [e for e in results if e["result"] != "FOUND" or e["problems"]]
    _emit({"summary": summary, "results": results}, args.out)
    return _rc(found == sound == len(configs))


def cmd_check_unavoidable(args) -> int:
    inst = load_instance(args.instance)
    mode = args.mode
    if mode in ("r", "rs"):
        out = []
        for i, K in enumerate(inst.family, 1):
            s = 1 if mode == "r" else inst.s
            v = DECIDERS["rs"](K, inst.r, s, census=args.census, cap=args.cap)
            out.append({"complex": i, **v.to_json()})
        _emit({"mode": mode, "s": inst.s if mode == "rs" else 1, "complexes": out})
        return _rc(all(x["holds"] for x in out))
    if mode == "rainbow-rs":
        if inst.coloring is None:
            raise InstanceError("rainbow-rs mode needs a coloring in the instance")
        v = DECIDERS[mode](inst.family, inst.coloring, inst.s, census=args.census, cap=args.cap)
    else:
        v = DECIDERS[mode](inst.family, inst.s, census=args.census, cap=args.cap)
    _emit({"mode": mode, "s": inst.s, **v.to_json()})
    return _rc(v.holds)


def cmd_kneser(args) -> int:
    inst = load_instance(args.instance)
    c = None
    if args.rainbow:
        if inst.coloring is None:
            raise InstanceError("--rainbow needs a coloring in the instance")
        c = inst.coloring
    g = build_gamma(inst.family, inst.k, c)
    q = args.clique_size if args.clique_size is not None else inst.r - inst.s + 1
    res = has_clique(g, q)
    out = {"gamma": g.to_json(), "clique_size": q, "has_clique": res.found,
           "clique": list(res.clique), "nodes": res.nodes}
    _emit(out, args.out)
    return EXIT_OK


def cmd_morse_run(args) -> int:
    inst = load_instance(args.instance)
    if inst.coloring is None:
        raise InstanceError("the matching needs a coloring in the instance")
    run = run_matching(inst.family, inst.coloring, inst.k, inst.s, force=args.force, cap=args.cap)
    data = {"instance": inst.to_json(), "field": field_to_json(run.field),
            "critical_by_dim": {str(q): n for q, n in run.field.critical_by_dim().items()},
            "warnings": run.warnings}
    _emit(data, args.out)
    return EXIT_OK


def cmd_morse_verify(args) -> int:
    try:
        data = json.loads(Path(args.field).read_text())
        inst = instance_from_json(data["instance"])
        dvf = field_from_json(inst.m, data["field"])
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise InstanceError(f"bad field file {args.field}: {exc}") from exc
    need_cells = args.check in ("all", "field")
    cells = symm_deleted_join_cells(inst.family, args.cap) if need_cells else None
    out: dict = {}
    ok = True
    if args.check in ("all", "field"):
        rep = verify_vector_field(dvf, cells)
        out["field"] = rep.to_json()
        ok &= rep.ok
    if args.check in ("all", "acyclic"):
        acyc = verify_acyclic(dvf)
        out["acyclic"] = acyc.to_json()
        ok &= acyc.acyclic
    if args.check in ("all", "pi"):
        if inst.coloring is None:
            raise InstanceError("pi check needs a coloring in the instance")
        rep = verify_pi_monotone(dvf, replay_traces(dvf, inst.coloring, inst.k))
        out["pi"] = rep.to_json()
        ok &= rep.ok
    if args.check in ("all", "census"):
        rep = verify_critical_census(dvf, inst.params, inst.family)
        out["census"] = rep.to_json()
        ok &= rep.ok
    if args.check == "all":
        hyp = check_matching_hypotheses(inst.family, inst.coloring, inst.k, inst.s) if inst.coloring else \
            ["no coloring in the instance"]
        cert = connectivity_certificate(dvf, inst.params, inst.family, cells, hyp)
        out["certificate"] = cert.to_json()
        ok &= cert.certified
    out["status"] = "PASS" if ok else "FAIL"
    _emit(out, args.out)
    return _rc(ok)


def cmd_homology(args) -> int:
    inst = load_instance(args.instance)
    coeff = args.coefficients
    if coeff == "mod-p" and args.p is None:
        raise InstanceError("--coefficients mod-p needs --p")
    cc = build_chain_complex(inst.family, cap=args.cap)
    try:
        res = reduced_homology_ranks(cc, "mod" if coeff == "mod-p" else coeff, args.p, args.through_dim)
    except ValueError as exc:
        raise InstanceError(str(exc)) from exc
    out = {"cell_counts": {str(q): n for q, n in cc.cell_counts().items()}, **res.to_json()}
    _emit(out, args.out)
    return EXIT_OK


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="colortverberg", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, instance=True):
        if instance:
            sp.add_argument("--instance", required=True, help="instance JSON file")
        sp.add_argument("--cap", type=int, default=None, help="cap on (r+1)^m enumeration work")
        sp.add_argument("--out", default=None, help="write JSON here instead of stdout")

    sp = sub.add_parser("validate", help="check parameter identities")
    sp.add_argument("--theorem", default="CTCRUC", choices=["CTCRUC", "TTRSU", "BCT", "ctcruc", "ttrsu", "bct"])
    sp.add_argument("--instance")
    for name in ("r", "k", "s", "d", "m"):
        sp.add_argument(f"--{name}", type=int)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("demo", help="build a named family and run the pipeline")
    dsub = sp.add_subparsers(dest="family", required=True)
    for name in ("bct", "counterexample"):
        dp = dsub.add_parser(name)
        dp.add_argument("--r", type=int, required=True)
        dp.add_argument("--k", type=int, required=True)
        dp.add_argument("--s", type=int, required=True)
        if name == "bct":
            dp.add_argument("--d", type=int, default=None)
            dp.add_argument("--seed", type=int, default=0, help="seed for the random point configuration")
        dp.add_argument("--write-instance", default=None)
        dp.add_argument("--out", default=None)
        dp.set_defaults(func=cmd_demo)

    sp = sub.add_parser("tverberg", help="affine Tverberg search")
    tsub = sp.add_subparsers(dest="action", required=True)
    tp = tsub.add_parser("search")
    common(tp)
    tp.add_argument("--points", default=None, help="point file; random configurations if omitted")
    tp.add_argument("--seed", type=int, default=0)
    tp.add_argument("--trials", type=int, default=1)
    tp.add_argument("--verbose", action="store_true", help="list every witness, not only failures")
    tp.set_defaults(func=cmd_tverberg)

    sp = sub.add_parser("pipeline", help="run every stage on an instance")
    common(sp)
    sp.add_argument("--points", default=None)
    sp.set_defaults(func=cmd_pipeline)

    sp = sub.add_parser("check-unavoidable", help="decide unavoidability")
    common(sp)
    sp.add_argument("--mode", choices=sorted(DECIDERS), default="collective-rs")
    sp.add_argument("--census", action="store_true", help="count every violating partition")
    sp.set_defaults(func=cmd_check_unavoidable)

    sp = sub.add_parser("kneser", help="build Gamma and search for a clique")
    common(sp)
    sp.add_argument("--rainbow", action="store_true")
    sp.add_argument("--clique-size", type=int, default=None)
    sp.set_defaults(func=cmd_kneser)

    sp = sub.add_parser("morse", help="run or verify the matching")
    msub = sp.add_subparsers(dest="action", required=True)
    mp = msub.add_parser("run")
    common(mp)
    mp.add_argument("--force", action="store_true", help="run even when hypotheses fail")
    mp.set_defaults(func=cmd_morse_run)
    mp = msub.add_parser("verify")
    common(mp, instance=False)
    mp.add_argument("--field", required=True, help="file written by 'morse run'")
    mp.add_argument("--check", choices=["all", "field", "acyclic", "pi", "census"], default="all")
    mp.set_defaults(func=cmd_morse_verify)

    sp = sub.add_parser("homology", help="reduced homology of the symmetrized deleted join")
    common(sp)
    sp.add_argument("--coefficients", choices=["rational", "mod-p", "integer"], default="rational")
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--through-dim", type=int, default=None)
    sp.set_defaults(func=cmd_homology)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PreconditionError, MatchingError) as exc:
        # checked first: PreconditionError is a ValueError
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (InstanceError, ResourceLimitError, StageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
