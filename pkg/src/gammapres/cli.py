"""Command-line front end: ``gammapres <command> ...``.

Exit codes: 0 success, 1 computation failure (including a failed selftest),
2 usage or input-schema error, 3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
import warnings
from fractions import Fraction
from pathlib import Path

from . import __version__
from .config import CACHE_ENV, RunConfig
from .errors import CapacityError, GammapresError, NegativeMultiplicity, PreconditionError
from .io import (SchemaError, cover_from_json, decomposition_from_json, gamma_group_from_json,
                 group_from_json, load_json, local_data_from_json, module_from_json,
                 variety_from_json)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


def _rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# result cache

def _cache_key(command: str, args: argparse.Namespace, cfg: RunConfig) -> str:
    h = hashlib.sha256()
    h.update(f"{__version__}\0{command}\0".encode())
    for k in sorted(vars(args)):
        if k in ("func", "out", "config", "no_cache", "format"):
            continue
        v = getattr(args, k)
        h.update(f"{k}={v!r}\0".encode())
        if isinstance(v, str) and v.endswith(".json") and os.path.isfile(v):
            h.update(Path(v).read_bytes())
    h.update(json.dumps(cfg.to_dict() | {"cache_dir": None}, sort_keys=True).encode())
    return h.hexdigest()


def _cache_get(cfg: RunConfig, key: str):
    if not cfg.cache_dir:
        return None
    path = Path(cfg.cache_dir) / f"{key}.json"
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError):
        return None


def atomic_write(path: str | Path, data: bytes) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _cache_put(cfg: RunConfig, key: str, report) -> None:
    if cfg.cache_dir:
        atomic_write(Path(cfg.cache_dir) / f"{key}.json", _encode(report, "json"))


# output

def _encode(report, fmt: str) -> bytes:
    if fmt == "tsv" and isinstance(report, dict):
        lines = []
        for k in sorted(report):
            v = report[k]
            cell = v if isinstance(v, str) else json.dumps(v, sort_keys=True, ensure_ascii=False)
            lines.append(f"{k}\t{cell}")
        return ("\n".join(lines) + "\n").encode()
    return (json.dumps(report, sort_keys=True, indent=1, ensure_ascii=False) + "\n").encode()


def _emit(report, args, cfg: RunConfig) -> None:
    data = _encode(report, args.format or cfg.output_format)
    if getattr(args, "out", None):
        atomic_write(args.out, data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


# commands: each returns a JSON-ready report

def cmd_cohom(args, cfg):
    from .cohomology import h0_dim, h1_report, h2_report
    g = group_from_json(load_json(args.group), "group")
    if g.order > cfg.group_order_cap:
        raise CapacityError(f"|G| = {g.order} exceeds group cap {cfg.group_order_cap}")
    a = module_from_json(load_json(args.module), g, "module")
    if args.degree == 0:
        rep = {"degree": 0, "dim_cohomology": h0_dim(g, a), "prime": a.prime,
               "group_order": g.order, "module_dim": a.dim}
    elif args.degree == 1:
        rep = h1_report(g, a).to_dict()
    else:
        cap = cfg.h2_order_cap if args.method == "relation" else None
        if args.method == "relation" and g.order > cfg.h2_order_cap:
            raise CapacityError(f"|G| = {g.order} exceeds H² cap {cfg.h2_order_cap}")
        rep = h2_report(g, a, method=args.method, cap=cap).to_dict()
    rep["provenance"] = "computed"
    return rep


def cmd_mult(args, cfg):
    from .presentations import presentation_report
    h = gamma_group_from_json(load_json(args.gamma), "gamma")
    sd = h.semidirect.group
    raw = load_json(args.module)
    mods = raw if isinstance(raw, list) else [raw]
    modules = [module_from_json(m, sd, f"module[{i}]") for i, m in enumerate(mods)]
    oracle = cover_from_json(load_json(args.oracle), "oracle") if args.oracle else None
    if oracle is not None and oracle.source.g.order > cfg.group_order_cap:
        raise CapacityError(f"|F| = {oracle.source.g.order} exceeds group cap {cfg.group_order_cap}")
    return presentation_report(args.n, h, modules, oracle=oracle,
                               with_relator_rank=not args.no_relator_rank).to_dict()


def cmd_relator_rank(args, cfg):
    from .presentations import relator_rank
    h = gamma_group_from_json(load_json(args.gamma), "gamma")
    rep = relator_rank(args.n, h, primes=cfg.primes)
    rep["provenance"] = "lower-bound"
    return rep


def cmd_proc(args, cfg):
    from .varieties import pro_c_completion, variety_contains
    h = gamma_group_from_json(load_json(args.gamma), "gamma")
    c = variety_from_json(load_json(args.variety), "variety")
    q, hom = pro_c_completion(h, c)
    kernel = sorted(int(x) for x in range(h.g.order) if hom.full_map[x] == q.g.identity)
    return {"order": h.g.order, "completion_order": q.g.order, "kernel": kernel,
            "member": variety_contains(c, h).to_dict(), "completion": q.to_dict(),
            "provenance": "computed"}


def cmd_height(args, cfg):
    from .varieties import height_report
    g = group_from_json(load_json(args.group), "group")
    rep = height_report(g, hat=args.hat).to_dict()
    rep["provenance"] = "computed"
    return rep


def cmd_sample(args, cfg):
    from .randmodel import sample_quotients
    f = gamma_group_from_json(load_json(args.gamma_group), "gamma-group")
    seed = cfg.seed if args.seed is None else args.seed
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        hist = sample_quotients(f, args.relations, args.draws, seed, cap=cfg.group_order_cap)
    rep = hist.to_dict()
    rep["provenance"] = "sampled"
    return rep


def cmd_genprob(args, cfg):
    from .randmodel import decompose, exhaustive_generation_probability, generation_probability
    out = {"n_plus_u": args.relations}
    if args.decomp:
        decomp = decomposition_from_json(load_json(args.decomp), "decomp")
    else:
        f = gamma_group_from_json(load_json(args.gamma_group), "gamma-group")
        r = args.subgroup if args.subgroup is not None else range(f.g.order)
        decomp = decompose(f, r)
        if args.exhaustive:
            out["exhaustive"] = _rational(exhaustive_generation_probability(
                f, r, args.relations, budget=cfg.enumeration_budget))
    out["decomposition"] = decomp.to_dict()
    out["probability"] = _rational(generation_probability(decomp, args.relations))
    out["provenance"] = "formula"
    return out


def cmd_formula(args, cfg):
    from .arith import EVALUATORS
    if args.op not in EVALUATORS:
        raise SchemaError(f"unknown op '{args.op}'; choose from {sorted(EVALUATORS)}")
    data = local_data_from_json(load_json(args.data), "data")
    val = EVALUATORS[args.op](args.n, data)
    rep = {"op": args.op, "n": args.n, "value": _rational(val), "inputs": data.to_dict(),
           "provenance": "evaluator-input"}
    if args.op == "delta_nf_bound":
        rep["equality"] = "undecided"
    return rep


def cmd_selftest(args, cfg):
    from .acceptance import DEFAULT_SEED, bundle_bytes, run_all
    seed = args.seed if args.seed is not None else (cfg.seed or DEFAULT_SEED)
    only = {int(x) for x in args.only.split(",")} if args.only else None
    results = run_all(seed, only=only, echo=lambda line: print(line, file=sys.stderr, flush=True))
    data = bundle_bytes(results, seed)
    if args.out:
        atomic_write(args.out, data)
    ok = all(r.passed for r in results)
    print(f"{sum(r.passed for r in results)}/{len(results)} checks passed", file=sys.stderr)
    return ok


# GENPROB prints the bare rational; everything else emits a report

def _run_genprob(args, cfg, report):
    if args.out:
        atomic_write(args.out, _encode(report, args.format or cfg.output_format))
    print(report["probability"])


COMMANDS = {
    "cohom": cmd_cohom, "mult": cmd_mult, "relator-rank": cmd_relator_rank, "proc": cmd_proc,
    "height": cmd_height, "sample": cmd_sample, "genprob": cmd_genprob, "formula": cmd_formula,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="RunConfig JSON file")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "tsv"), help="override the configured format")
    common.add_argument("--no-cache", action="store_true", help="bypass the result cache")

    p = argparse.ArgumentParser(prog="gammapres", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("cohom", parents=[common], help="dim H^0/H^1/H^2 of a finite group")
    s.add_argument("--group", required=True)
    s.add_argument("--module", required=True)
    s.add_argument("--degree", type=int, choices=(0, 1, 2), required=True)
    s.add_argument("--method", choices=("relation", "cochain"), default="relation")

    s = sub.add_parser("mult", parents=[common], help="multiplicity report for a Γ-group")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--gamma", required=True)
    s.add_argument("--module", required=True, help="one module object or a list of them")
    s.add_argument("--oracle", help="cover JSON for the oracle column")
    s.add_argument("--no-relator-rank", action="store_true")

    s = sub.add_parser("relator-rank", parents=[common], help="relator-rank lower bound")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--gamma", required=True)

    s = sub.add_parser("proc", parents=[common], help="pro-C completion of a Γ-group")
    s.add_argument("--gamma", required=True)
    s.add_argument("--variety", required=True)

    s = sub.add_parser("height", parents=[common], help="socle height of a group")
    s.add_argument("--group", required=True)
    s.add_argument("--hat", action="store_true", help="also the max over subquotients")

    s = sub.add_parser("sample", parents=[common], help="Monte-Carlo quotient histogram")
    s.add_argument("--gamma-group", required=True)
    s.add_argument("--relations", type=int, required=True, help="number of random relations n+u")
    s.add_argument("--draws", type=int, required=True)
    s.add_argument("--seed", type=int)

    s = sub.add_parser("genprob", parents=[common], help="exact generation probability")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--decomp")
    src.add_argument("--gamma-group")
    s.add_argument("--subgroup", type=lambda t: [int(x) for x in t.split(",")],
                   help="elements of the relation subgroup (default: all of F)")
    s.add_argument("--relations", type=int, required=True)
    s.add_argument("--exhaustive", action="store_true", help="also enumerate (needs --gamma-group)")

    s = sub.add_parser("formula", parents=[common], help="closed-form arithmetic evaluators")
    s.add_argument("--op", required=True)
    s.add_argument("--data", required=True)
    s.add_argument("--n", type=int, default=0)

    s = sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    s.add_argument("--seed", type=int)
    s.add_argument("--only", help="comma-separated check ids")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        try:
            cfg = RunConfig.load(args.config)
        except (OSError, json.JSONDecodeError, TypeError, PreconditionError) as e:
            raise SchemaError(f"config: {e}") from None
        if args.command == "selftest":
            return EXIT_OK if cmd_selftest(args, cfg) else EXIT_FAIL
        key = None if args.no_cache else _cache_key(args.command, args, cfg)
        report = _cache_get(cfg, key) if key else None
        if report is None:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", NegativeMultiplicity)
                report = COMMANDS[args.command](args, cfg)
            report = json.loads(_encode(report, "json"))
            if key:
                _cache_put(cfg, key, report)
        if args.command == "genprob":
            _run_genprob(args, cfg, report)
        else:
            _emit(report, args, cfg)
        return EXIT_OK
    except SchemaError as e:
        print(f"gammapres: schema error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as e:
        print(f"gammapres: capacity: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except PreconditionError as e:
        print(f"gammapres: precondition: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (GammapresError, AssertionError) as e:
        print(f"gammapres: failed: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
