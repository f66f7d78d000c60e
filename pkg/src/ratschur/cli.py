"""Batch command line front end.  stdout carries the report, stderr diagnostics.

Exit codes: 0 all asserted checks passed, 1 a check failed, 2 invalid input
(including slow-tier work requested without ``--tier slow``).
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from dataclasses import dataclass
from math import comb
from typing import Any, Sequence

from . import brauer, schur
from .presentation import check_ordinary_relations, check_rational_relations
from .tableaux import weyl_dim
from .weights import (
    enum_dominant,
    enum_weights,
    format_weight,
    is_saturated,
    member_by_partial_sums,
    parse_weight,
    to_bipartition,
)

SCHEMA = "ratschur/1"
DEFAULT_SEED = 20240615
log = logging.getLogger("ratschur")

# largest tensor-space dimension each route handles in the fast tier
FAST_LIMITS = {"ordinary": 3**5, "envelope": 3**4, "centralizer": 4**3}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    r: int | None = None
    s: int | None = None
    d: int | None = None
    format: str = "json"
    seed: int = DEFAULT_SEED
    tier: str = "fast"
    extra: dict | None = None


def _require(cfg: RunConfig, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(cfg, n) is None]
    if missing:
        raise UsageError(f"{cfg.command} requires {', '.join(missing)}")
    if cfg.n is not None and cfg.n < 2:
        raise UsageError("--n must be at least 2")
    for name in ("r", "s", "d"):
        v = getattr(cfg, name)
        if v is not None and v < 0:
            raise UsageError(f"--{name} must be nonnegative")


def _gate(cfg: RunConfig, route: str, tensor_dim: int) -> None:
    if cfg.tier != "slow" and tensor_dim > FAST_LIMITS[route]:
        raise UsageError(
            f"tensor space of dimension {tensor_dim} exceeds the fast-tier limit "
            f"{FAST_LIMITS[route]} for {route}; rerun with --tier slow"
        )


# -- commands -------------------------------------------------------------------


def cmd_weights(cfg: RunConfig) -> tuple[dict, bool]:
    _require(cfg, "n", "r", "s")
    n, r, s = cfg.n, cfg.r, cfg.s
    if cfg.extra.get("dominant"):
        ws = enum_dominant(n, r, s)
    else:
        ws = sorted(enum_weights(n, r, s), reverse=True)
    report: dict[str, Any] = {"weights": [list(w) for w in ws], "count": len(ws)}
    checks = {"partial_sums_agree": all(member_by_partial_sums(w, n, r, s) for w in ws)}
    if cfg.extra.get("dominant"):
        checks["saturated"] = is_saturated(ws, n, r, s)
        report["bipartitions"] = [str(to_bipartition(w)) for w in ws]
    report["checks"] = checks
    return report, all(checks.values())


def cmd_weyl_dim(cfg: RunConfig) -> tuple[dict, bool]:
    _require(cfg, "n")
    lam = parse_weight(cfg.extra["lambda"])
    return {"lambda": list(lam), "dim": weyl_dim(lam, cfg.n)}, True


def cmd_schur_dim(cfg: RunConfig) -> tuple[dict, bool]:
    _require(cfg, "n", "d")
    _gate(cfg, "ordinary", cfg.n**cfg.d)
    cods = schur.build_ordinary_schur(cfg.n, cfg.d)
    dim = schur.codeterminant_rank(cods)
    binom = comb(cfg.n**2 + cfg.d - 1, cfg.d)
    tableau_sum = sum(weyl_dim(lam, cfg.n) ** 2 for lam in enum_dominant(cfg.n, cfg.d, 0))
    checks = {"rank_eq_binomial": dim == binom, "rank_eq_count": dim == len(cods), "tableau_sum": tableau_sum == binom}
    return {"dim": dim, "codeterminants": len(cods), "binomial": binom, "checks": checks}, all(checks.values())


def _rational_method(cfg: RunConfig, method: str) -> dict:
    n, r, s = cfg.n, cfg.r, cfg.s
    if method == "quotient":
        _gate(cfg, "ordinary", n ** schur.quotient_degree(n, r, s))
        alg = schur.build_rational_quotient(n, r, s)
        return {
            "dim": alg.dim,
            "kernel_dim": alg.quotient.kernel_dim,
            "ambient_dim": alg.quotient.full_rank,
            "weyl_table": alg.weyl_data,
        }
    if method == "envelope":
        _gate(cfg, "envelope", n ** (r + s))
        alg = schur.build_rational_envelope(n, r, s)
        return {"dim": alg.dim, "weyl_table": alg.weyl_data}
    if method == "centralizer":
        _gate(cfg, "centralizer", n ** (r + s))
        return {"dim": brauer.brauer_commutant(n, r, s).dim, "swd_hypothesis": n >= r + s}
    raise UsageError(f"unknown method {method!r}")


def _weyl_json(table) -> list[dict]:
    return [{"lambda": format_weight(lam), "dim": k} for lam, k in table]


def cmd_rational(cfg: RunConfig) -> tuple[dict, bool]:
    _require(cfg, "n", "r", "s")
    methods = cfg.extra.get("method") or ["quotient"]
    table = schur.rational_weyl_data(cfg.n, cfg.r, cfg.s)
    expected = sum(k * k for _, k in table)
    results = {m: _rational_method(cfg, m) for m in dict.fromkeys(methods)}
    dims = {m: res["dim"] for m, res in results.items()}
    agreement = {a: {b: dims[a] == dims[b] for b in dims} for a in dims}
    checks = {}
    for m, res in results.items():
        if m == "centralizer" and not res["swd_hypothesis"]:
            continue
        checks[f"{m}_eq_weyl_sum"] = res["dim"] == expected
        if "weyl_table" in res:
            checks[f"{m}_weyl_table"] = res["weyl_table"] == table
    first = methods[0]
    report = {
        "n": cfg.n,
        "r": cfg.r,
        "s": cfg.s,
        "method": first,
        "dim": dims[first],
        "expected_dim": expected,
        "weyl_table": _weyl_json(table),
        "methods": {m: {k: (_weyl_json(v) if k == "weyl_table" else v) for k, v in res.items()} for m, res in results.items()},
        "agreement": agreement,
        "checks": checks,
    }
    return report, all(checks.values())


def cmd_brauer_mult(cfg: RunConfig) -> tuple[dict, bool]:
    _require(cfg, "r", "s")
    r, s = cfg.r, cfg.s
    try:
        D1 = brauer.parse_diagram(cfg.extra["d1"], r, s)
        D2 = brauer.parse_diagram(cfg.extra["d2"], r, s)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    D, loops = brauer.compose(D1, D2)
    product = brauer.multiply(brauer.DiagramElement.of(D1), brauer.DiagramElement.of(D2))
    return {"r": r, "s": s, "composite": brauer.format_diagram(D), "loops": loops, "product": product.to_json()}, True


def cmd_swd(cfg: RunConfig) -> tuple[dict, bool]:
    _require(cfg, "n", "r", "s")
    n, r, s = cfg.n, cfg.r, cfg.s
    _gate(cfg, "centralizer", n ** (r + s))
    report = brauer.double_centralizer_check(n, r, s)
    rng = random.Random(cfg.seed)
    diagrams = brauer.enum_diagrams(r, s)
    samples = cfg.extra.get("samples", 50)
    mult_ok = True
    for _ in range(samples):
        D1, D2 = rng.choice(diagrams), rng.choice(diagrams)
        D, loops = brauer.compose(D1, D2)
        lhs = brauer.action_matrix(D1, n) @ brauer.action_matrix(D2, n)
        mult_ok &= lhs == brauer.action_matrix(D, n) * (n**loops)
    out = report.to_dict()
    out["commuting_actions"] = brauer.commuting_actions_check(n, r, s)
    out["multiplicative_samples"] = samples
    out["multiplicative"] = mult_ok
    return out, report.passed and mult_ok and out["commuting_actions"]


def cmd_relations(cfg: RunConfig) -> tuple[dict, bool]:
    if cfg.d is not None:
        _require(cfg, "n", "d")
        if cfg.r is not None or cfg.s is not None:
            raise UsageError("give either --d or --r/--s, not both")
        _gate(cfg, "ordinary", cfg.n**cfg.d)
        rep = check_ordinary_relations(cfg.n, cfg.d)
        head = {"n": cfg.n, "d": cfg.d}
    else:
        _require(cfg, "n", "r", "s")
        _gate(cfg, "envelope", cfg.n ** (cfg.r + cfg.s))
        rep = check_rational_relations(cfg.n, cfg.r, cfg.s)
        head = {"n": cfg.n, "r": cfg.r, "s": cfg.s}
    return {**head, "relations": rep.to_json(), "all_hold": rep.all_hold}, rep.all_hold


COMMANDS = {
    "weights": cmd_weights,
    "weyl-dim": cmd_weyl_dim,
    "schur-dim": cmd_schur_dim,
    "rational": cmd_rational,
    "brauer-mult": cmd_brauer_mult,
    "swd": cmd_swd,
    "relations": cmd_relations,
}


# -- plumbing -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--tier", choices=["fast", "slow"], default="fast")
    common.add_argument("-v", "--verbose", action="store_true", help="timing diagnostics on stderr")

    p = _Parser(prog="ratschur", description="Rational Schur algebra constructions and checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_, **params):
        sp = sub.add_parser(name, parents=[common], help=help_)
        for flag in params.get("ints", ()):
            sp.add_argument(f"--{flag}", type=int)
        return sp

    sp = add("weights", "weights of mixed tensor space", ints="nrs")
    sp.add_argument("--dominant", action="store_true")
    sp = add("weyl-dim", "dimension of a Weyl module", ints="n")
    sp.add_argument("--lambda", dest="lam", required=True, help='comma-separated, e.g. "2,0,-1"')
    add("schur-dim", "dimension of S(n,d) from the codeterminant basis", ints="nd")
    sp = add("rational", "dimension and Weyl table of S(n;r,s)", ints="nrs")
    sp.add_argument(
        "--method", action="append", choices=["quotient", "envelope", "centralizer"], help="repeatable"
    )
    sp = add("brauer-mult", "multiply two walled Brauer diagrams", ints="rs")
    sp.add_argument("--d1", required=True, help='edges, e.g. "t1-b1, t-1-b-1"')
    sp.add_argument("--d2", required=True)
    sp = add("swd", "double centralizer report", ints="nrs")
    sp.add_argument("--samples", type=int, default=50)
    add("relations", "check a presentation on tensor space", ints="nrsd")
    return p


def _to_text(obj: Any, prefix: str = "") -> list[str]:
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not all(isinstance(x, (int, str)) for x in v):
                lines.append(f"{prefix}{k}:")
                lines += _to_text(v, prefix + "  ")
            else:
                lines.append(f"{prefix}{k}: {_scalar_text(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                lines.append(f"{prefix}- " + ", ".join(f"{k}={_scalar_text(v)}" for k, v in item.items()))
            else:
                lines.append(f"{prefix}- {_scalar_text(item)}")
    return lines


def _scalar_text(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_scalar_text(x) for x in v) + "]"
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


def emit(report: dict, fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "json":
        stream.write(json.dumps(report, sort_keys=False) + "\n")
    else:
        stream.write("\n".join(_to_text(report)) + "\n")


def run(cfg: RunConfig, stream=None) -> int:
    start = time.perf_counter()
    try:
        body, ok = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        emit({"schema": SCHEMA, "command": cfg.command, "ok": False, "error": {"type": "usage", "message": str(exc)}}, cfg.format, stream)
        return 2
    except ValueError as exc:
        emit({"schema": SCHEMA, "command": cfg.command, "ok": False, "error": {"type": "invalid", "message": str(exc)}}, cfg.format, stream)
        return 2
    log.info("%s finished in %.2fs", cfg.command, time.perf_counter() - start)
    emit({"schema": SCHEMA, "command": cfg.command, "ok": ok, **body}, cfg.format, stream)
    return 0 if ok else 1


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        emit({"schema": SCHEMA, "command": None, "ok": False, "error": {"type": "usage", "message": str(exc)}}, "json")
        return 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    extra = {k: v for k, v in vars(args).items() if k not in {"command", "n", "r", "s", "d", "format", "seed", "tier", "verbose"}}
    if "lam" in extra:
        extra["lambda"] = extra.pop("lam")
    cfg = RunConfig(
        command=args.command,
        n=getattr(args, "n", None),
        r=getattr(args, "r", None),
        s=getattr(args, "s", None),
        d=getattr(args, "d", None),
        format=args.format,
        seed=args.seed,
        tier=args.tier,
        extra=extra,
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
