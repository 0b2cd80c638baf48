"""Command line: constants ledger, zero-free-region widths, verification suites, distances.

Exit codes: 0 all checks pass, 1 a mathematical assertion failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path
from typing import Any

import numpy as np

from . import suites
from .arithmetic import NumberField, character_group
from .errors import PretentiousError
from .hadamard import load_zeros
from .metric import MetricPoint, distance, distance_sq_expansion
from .repdata import (
    AutomorphicRepData,
    ConstantRule,
    TableRule,
    contragredient,
    from_character,
    random_synthetic_rep,
    trivial_rep,
)
from .zfr import case_ledger, final_constant_checks, region_width

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    return f"{x:.10g}"


# ----------------------------------------------------------------------------
# configuration documents
# ----------------------------------------------------------------------------


def _complex(v: Any) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, str):
        return complex(v.replace(" ", ""))
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    raise UsageError(f"cannot read {v!r} as a complex number")


def _field(doc: Any) -> NumberField:
    if doc in (None, "rational", "Q"):
        return NumberField.rational()
    if isinstance(doc, dict) and "quadratic" in doc:
        return NumberField.quadratic(int(doc["quadratic"]))
    raise UsageError(f"unknown field {doc!r}")


def _ideal_key(key: str) -> tuple[int, int]:
    p, _, conj = str(key).partition("/")
    return int(p), int(conj or 0)


def rep_from_config(doc: dict) -> AutomorphicRepData:
    """Build a representation from a RepConfig document (see README)."""
    if not isinstance(doc, dict):
        raise UsageError("representation entry must be an object")
    kind = doc.get("kind")
    field = _field(doc.get("field"))
    if kind == "trivial":
        return trivial_rep(field)
    if kind == "dirichlet":
        if field.kind != "rational":
            raise UsageError("Dirichlet characters are defined over the rationals only")
        q, idx = int(doc["modulus"]), int(doc.get("index", 0))
        group = character_group(q)
        if not 0 <= idx < len(group):
            raise UsageError(f"character index {idx} out of range for modulus {q} ({len(group)} characters)")
        rep = from_character(group[idx])
        return contragredient(rep) if doc.get("conjugate") else rep
    if kind == "synthetic":
        degree = int(doc.get("degree", 1))
        theta = doc.get("theta")
        cutoff = int(doc.get("cutoff", 10**5))
        if "seed" in doc:
            return random_synthetic_rep(
                np.random.default_rng(int(doc["seed"])),
                field,
                degree,
                None if theta is None else float(theta),
                cutoff,
                self_dual=bool(doc.get("self_dual", False)),
                label=str(doc.get("label", "")),
            )
        if "constant" in doc:
            rule = ConstantRule(tuple(_complex(a) for a in doc["constant"]))
        elif "satake" in doc:
            entries = {_ideal_key(k): [_complex(a) for a in v] for k, v in doc["satake"].items()}
            rule = TableRule.from_entries(field, cutoff, degree, entries)
        else:
            raise UsageError("synthetic representation needs 'seed', 'constant' or 'satake'")
        ramified = {_ideal_key(k): tuple(_complex(a) for a in v) for k, v in doc.get("ramified", {}).items()}
        langlands = doc.get("langlands")
        if langlands is not None:
            langlands = tuple(tuple(_complex(mu) for mu in per) for per in langlands)
        return AutomorphicRepData(
            degree,
            field,
            rule,
            ramified=ramified,
            langlands=langlands or (),
            conductor_norm=int(doc.get("conductor_norm", 1)),
            theta=None if theta is None else float(theta),
            self_dual=bool(doc.get("self_dual", False)),
            label=str(doc.get("label", "")),
        )
    raise UsageError(f"unknown representation kind {kind!r}")


def load_config(path: str | Path) -> tuple[AutomorphicRepData, AutomorphicRepData]:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(doc, dict) or doc.get("schema_version") != SCHEMA_VERSION:
        raise UsageError(f"config must be an object with schema_version = {SCHEMA_VERSION}")
    try:
        if "rep" in doc:
            rep = rep_from_config(doc["rep"])
            return rep, rep
        return rep_from_config(doc["left"]), rep_from_config(doc["right"])
    except KeyError as exc:
        raise UsageError(f"missing config key {exc}") from None
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid config value: {exc}") from None


# ----------------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------------


def cmd_constants(args, out) -> int:
    ledger = case_ledger()
    checks = final_constant_checks(ledger)
    header = ["case_id", "computed", "paper", "delta", "pass"] + (["exact_c1"] if args.exact_c1 else [])
    rows = []
    for e in ledger:
        row = [e.case_id, fmt(e.threshold_value), fmt(e.paper_value), fmt(e.delta), "pass" if e.passed else "fail"]
        if args.exact_c1:
            row.append(fmt(e.exact_c1_value))
        rows.append(row)
    if args.csv:
        w = csv.writer(out, lineterminator="\r\n")
        w.writerow(header)
        w.writerows(rows)
    else:
        widths = [max(len(str(r[i])) for r in rows + [header]) for i in range(len(header))]
        for r in [header] + rows:
            out.write("  ".join(str(c).ljust(wd) for c, wd in zip(r, widths)).rstrip() + "\n")
        for c in checks:
            out.write(f"{c.name}: {fmt(c.lhs)} vs {fmt(c.rhs)} {'pass' if c.holds else 'fail'}\n")
    ok = all(e.passed for e in ledger) and all(c.holds for c in checks)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_zfr(args, out) -> int:
    if args.theorem in (2, 3) and (args.mprime is None or args.condprime is None):
        raise UsageError(f"theorem {args.theorem} requires --mprime and --condprime")
    w = region_width(
        args.theorem, args.m, args.mprime, args.cond, args.condprime, args.t, args.degree, args.self_dual
    )
    out.write(f"width {fmt(w)}\n")
    out.write(f"boundary sigma >= {fmt(1 - w)}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    name = args.suite
    if name == "metric-axioms":
        res = suites.metric_axioms(args.seed, args.n or 100, args.sigma or 1.5, args.X or 1e5)
    elif name == "psd":
        res = suites.psd_families(bound=int(args.X or 1e4), seed=args.seed, n_triples=args.n or 50)
    elif name == "hijt":
        res = suites.hijt()
    elif name == "conductor":
        res = suites.conductor_suite(args.seed if args.seed is not None else 7, args.n or 10**5)
    elif name == "hadamard":
        if not args.zeros:
            raise UsageError("verify hadamard requires --zeros")
        try:
            zeros = load_zeros(args.zeros)
        except OSError as exc:
            raise UsageError(f"cannot read zero table: {exc}") from None
        res = suites.hadamard_suite(zeros, args.sigma or 1.5, X=args.X or 1e5)
    elif name == "tails":
        res = suites.tails(args.seed, args.n or 50, X=args.X or 1e4)
    elif name == "three-four-one":
        res = suites.three_four_one(args.sigma or 1.1, args.X or 1e5)
    else:  # argparse restricts choices
        raise UsageError(f"unknown suite {name}")
    out.write("\n".join(res.lines()) + "\n")
    return EXIT_OK if res.passed else EXIT_FAIL


def cmd_distance(args, out) -> int:
    if not args.sigma > 1:
        raise UsageError("sigma must exceed 1")
    left, right = load_config(args.config)
    x1 = MetricPoint(left, args.gamma1, args.delta1)
    x2 = MetricPoint(right, args.gamma2, args.delta2)
    d = distance(x1, x2, args.sigma, args.X)
    out.write(f"D_sigma {fmt(d.value)}\n")
    out.write(f"tail_bound {fmt(d.tail_bound)}\n")
    if not args.expansion:
        return EXIT_OK
    rec = distance_sq_expansion(x1, x2, args.sigma, args.X)
    names = ("log_11", "log_22", "log_12", "E_11", "E_22", "E_12")
    for n, v in zip(names, rec.log_terms + rec.e_terms):
        out.write(f"{n} {fmt(v)}\n")
    out.write(f"D_sigma^2 {fmt(rec.distance_sq)}\n")
    out.write(f"residual {fmt(rec.residual)}\n")
    out.write(f"combined_tail {fmt(rec.tail_bound)}\n")
    return EXIT_OK if abs(rec.residual) <= rec.tail_bound else EXIT_FAIL


def _sign(v: str) -> int:
    i = int(v)
    if i not in (1, -1):
        raise argparse.ArgumentTypeError("sign must be +1 or -1")
    return i


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pretentious", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("constants", help="print the zero-free-region constants ledger")
    c.add_argument("--csv", action="store_true")
    c.add_argument("--exact-c1", action="store_true", help="add the column computed with full-precision k, k'")
    c.set_defaults(func=cmd_constants)

    z = sub.add_parser("zfr", help="zero-free region width")
    z.add_argument("--theorem", type=int, choices=(1, 2, 3), required=True)
    z.add_argument("--m", type=int, required=True)
    z.add_argument("--mprime", type=int)
    z.add_argument("--cond", type=float, required=True)
    z.add_argument("--condprime", type=float)
    z.add_argument("--t", type=float, default=0.0)
    z.add_argument("--degree", type=int, default=1)
    z.add_argument("--self-dual", action="store_true")
    z.set_defaults(func=cmd_zfr)

    v = sub.add_parser("verify", help="run a seeded verification suite")
    v.add_argument(
        "suite", choices=("metric-axioms", "psd", "hijt", "conductor", "hadamard", "tails", "three-four-one")
    )
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--n", type=int)
    v.add_argument("--zeros")
    v.add_argument("--X", type=float)
    v.add_argument("--sigma", type=float)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("distance", help="D_sigma between two configured points")
    d.add_argument("--config", required=True)
    d.add_argument("--sigma", type=float, required=True)
    d.add_argument("--X", type=float, default=1e5)
    d.add_argument("--gamma1", type=float, default=0.0)
    d.add_argument("--gamma2", type=float, default=0.0)
    d.add_argument("--delta1", type=_sign, default=1)
    d.add_argument("--delta2", type=_sign, default=1)
    d.add_argument("--expansion", action="store_true")
    d.set_defaults(func=cmd_distance)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, PretentiousError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
