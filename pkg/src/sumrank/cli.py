"""Command-line harness: keygen, distinguish, recover, experiment, inspect.

Exit codes: 0 structured / recovered, 2 malformed input or unsupported regime,
3 unstructured / recovery failed, 4 inconclusive.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .codes import GlrsParams, canonical_generator, lrs_form, random_code, random_glrs, scale_blocks
from .distinguishers import (
    Verdict,
    glrs_multiplier_sweep,
    intersection_distinguisher,
    overbeck_distinguisher,
    square_distinguisher,
)
from .errors import (
    BudgetExhausted,
    NoValidJ,
    PreconditionViolated,
    StructureNotFound,
    SumRankError,
    UnsupportedRegime,
)
from .field_core import FieldCtx, OreCtx, build_field, conjugate, sample_class_reps
from .isometry import random_disguise, transport_params
from .moore_linalg import rank
from .recovery import recover_full
from .sum_rank import Composition, min_distance_bruteforce, sum_rank_weight

EXIT_OK = 0
EXIT_MALFORMED = 2
EXIT_NEGATIVE = 3
EXIT_INCONCLUSIVE = 4

INCONCLUSIVE_ERRORS = (NoValidJ, PreconditionViolated, BudgetExhausted)


class UsageError(Exception):
    """Bad command-line input; maps to exit code 2."""


# --- parsing helpers -------------------------------------------------------------


def parse_field(text: str) -> FieldCtx:
    try:
        p, s, m = (int(t) for t in text.split(","))
    except ValueError as exc:
        raise UsageError(f"--field expects p,s,m, got {text!r}") from exc
    return build_field(p, s, m)


def parse_element(F: FieldCtx, text: str | int | list) -> int:
    """A single integer is the packed element; a comma list is its coefficient vector."""
    if isinstance(text, list):
        return F.from_coeffs(text)
    text = str(text).strip()
    if "," in text:
        return F.from_coeffs([int(t) for t in text.split(",") if t])
    x = int(text)
    if not 0 <= x < F.order:
        raise UsageError(f"{x} is not an element of a field of order {F.order}")
    return x


def matrix_to_json(F: FieldCtx, M: Sequence[Sequence[int]]) -> list:
    return [[F.to_coeffs(x) for x in row] for row in M]


def matrix_from_json(F: FieldCtx, obj: list) -> list[list[int]]:
    return [[F.from_coeffs(x) for x in row] for row in obj]


def _dump(obj, path: str | None = None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path is None:
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _ore_from(args, F: FieldCtx, obj: dict | None = None) -> OreCtx:
    theta_l = args.theta_l
    gamma = args.gamma
    if obj is not None:
        if theta_l is None and "theta_l" in obj:
            theta_l = obj["theta_l"]
        if gamma is None and "gamma" in obj:
            gamma = obj["gamma"]
    return OreCtx(F, 1 if theta_l is None else int(theta_l), parse_element(F, gamma) if gamma is not None else 0)


def _read_generator(args) -> tuple[FieldCtx, Composition, list[list[int]], dict]:
    obj = _load(args.generator)
    if not isinstance(obj, dict) or "generator" not in obj:
        raise UsageError("generator file needs a 'generator' entry")
    F = FieldCtx.from_json(obj["field"]) if "field" in obj else parse_field(args.field)
    comp = Composition(obj["comp"]) if "comp" in obj else Composition.parse(args.comp)
    G = matrix_from_json(F, obj["generator"])
    if any(len(r) != comp.n for r in G):
        raise UsageError("generator width differs from the composition length")
    return F, comp, G, obj


def _read_a_file(path: str, F: FieldCtx) -> tuple[list[int], list[int] | None]:
    """A list of elements, params JSON with "a" (and maybe "v"), or a disguise file."""
    obj = _load(path)
    if isinstance(obj, dict) and "transported" in obj:
        obj = obj["transported"]
    if isinstance(obj, list):
        return [parse_element(F, x) for x in obj], None
    if isinstance(obj, dict) and "a" in obj:
        a = [parse_element(F, x) for x in obj["a"]]
        v = [parse_element(F, x) for x in obj["v"]] if "v" in obj else None
        return a, v
    raise UsageError(f"{path} does not contain evaluation parameters")


# --- keygen --------------------------------------------------------------------


def _config_common(args) -> tuple[FieldCtx, OreCtx, Composition, int]:
    F = parse_field(args.field)
    ore = OreCtx(F, args.theta_l if args.theta_l is not None else 1, parse_element(F, args.gamma or 0))
    if not args.comp or args.k is None:
        raise UsageError("--comp and --k are required")
    comp = Composition.parse(args.comp)
    comp.check_fits(F.m)
    if not 1 <= args.k <= comp.n:
        raise UsageError(f"--k must lie in 1..{comp.n}")
    return F, ore, comp, args.k


def cmd_keygen(args) -> int:
    F, ore, comp, k = _config_common(args)
    rng = random.Random(f"{args.seed}:keygen")
    p = random_glrs(ore, comp, k, rng, args.multipliers)
    G, iso, S = random_disguise(p, rng, args.semilinear)
    hat = transport_params(iso, p)
    out = args.out or "."
    os.makedirs(out, exist_ok=True)
    _dump(p.to_json(), os.path.join(out, "secret_params.json"))
    _dump(
        {
            "field": F.to_json(),
            "comp": comp.to_json(),
            "k": k,
            "theta_l": hat.ore.l,
            "gamma": F.to_coeffs(hat.ore.gamma),
            "generator": matrix_to_json(F, G),
        },
        os.path.join(out, "public_generator.json"),
    )
    _dump(
        {
            "isometry": iso.to_json(F),
            "S": matrix_to_json(F, S),
            "transported": hat.to_json(),
        },
        os.path.join(out, "disguise.json"),
    )
    print(json.dumps({"out": out, "rank": rank(F, G, comp.n)}))
    return EXIT_OK


# --- distinguish ------------------------------------------------------------------


def _exit_for(v: Verdict) -> int:
    if not v.conclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK if v.structured else EXIT_NEGATIVE


def _run_method(method, F, G, comp, ore, a, v, j, sweep_mult, budget) -> tuple[Verdict, dict]:
    extra: dict = {}
    if method == "square":
        return square_distinguisher(F, G, comp), extra
    if a is None:
        raise UsageError(f"method {method!r} needs --a-file")
    if method == "overbeck" and sweep_mult:
        found = glrs_multiplier_sweep(F, G, a, comp, ore, j, budget)
        extra["multipliers"] = [F.to_coeffs(x) for x in found] if found else None
        if found is not None:
            G = scale_blocks(F, G, [F.inv(x) for x in found], comp)
    elif v is not None:
        G = scale_blocks(F, G, [F.inv(x) for x in v], comp)
    fn = overbeck_distinguisher if method == "overbeck" else intersection_distinguisher
    return fn(F, G, a, comp, ore, j), extra


def cmd_distinguish(args) -> int:
    F, comp, G, obj = _read_generator(args)
    ore = _ore_from(args, F, obj)
    a = v = None
    if args.a_file:
        a, v = _read_a_file(args.a_file, F)
        if len(a) != comp.ell or (v is not None and len(v) != comp.ell):
            raise UsageError("evaluation parameters do not match the number of blocks")
    if args.method in ("overbeck", "intersection") and a is None:
        raise UsageError(f"method {args.method!r} needs --a-file")
    candidates = [(ore, a)]
    if args.sweep_derivations:
        seen = set()
        candidates = []
        for t in range(F.degree):
            o = ore.with_gamma(F.frob(ore.gamma, t))
            at = [F.frob(x, t) for x in a] if a is not None else None
            key = (o.gamma, tuple(at) if at else None)
            if key not in seen:
                seen.add(key)
                candidates.append((o, at))
    results = []
    final = None
    for o, at in candidates:
        verdict, extra = _run_method(args.method, F, G, comp, o, at, v, args.j, args.sweep_multipliers, args.budget)
        rec = verdict.to_json()
        rec["gamma"] = F.to_coeffs(o.gamma)
        rec.update(extra)
        results.append(rec)
        final = verdict
        if verdict.structured:
            break
    out = dict(results[-1])
    if args.sweep_derivations:
        out["candidates"] = results
    _dump(out)
    return _exit_for(final)


# --- recover ---------------------------------------------------------------------


def cmd_recover(args) -> int:
    F, comp, G, obj = _read_generator(args)
    ore = _ore_from(args, F, obj)
    if not ore.zero_derivation:
        raise UnsupportedRegime("recovery for a nonzero derivation is not supported")
    a = v = None
    if args.a_file:
        a, v = _read_a_file(args.a_file, F)
    try:
        report = recover_full(F, G, comp, ore, a=a, v=v)
    except StructureNotFound as exc:
        _dump({"verified": False, "error": type(exc).__name__, "message": str(exc)})
        return EXIT_NEGATIVE
    data = report.to_json()
    if not args.timing:
        data.pop("elapsed")
    _dump(data, args.report)
    if args.report:
        print(json.dumps({"verified": True, "method": report.method, "report": args.report}))
    return EXIT_OK


# --- experiment ---------------------------------------------------------------------


@dataclass(frozen=True)
class ExperimentConfig:
    field: tuple[int, int, int]
    theta_l: int
    gamma: int
    comp: tuple[int, ...]
    k: int
    trials: int
    seed: str
    method: str
    multipliers: str
    semilinear: bool
    ground_truth: str
    j: int | None = None
    budget: int | None = None
    timing: bool = False


def _trial_kind(cfg: ExperimentConfig, t: int) -> str:
    if cfg.ground_truth == "mixed":
        return "structured" if t % 2 == 0 else "random"
    return cfg.ground_truth


def _wrong_representatives(ore: OreCtx, a: Sequence[int], rng: random.Random) -> list[int]:
    F = ore.field
    out = []
    for ai in a:
        while True:
            b = conjugate(ore, ai, F.random_element(rng, nonzero=True))
            if b != ai:
                out.append(b)
                break
    return out


def run_trial(cfg: ExperimentConfig, t: int) -> dict:
    """One reproducible trial; depends only on (cfg, t)."""
    rng = random.Random(f"{cfg.seed}:{t}")
    F = build_field(*cfg.field)
    ore = OreCtx(F, cfg.theta_l, cfg.gamma)
    comp = Composition(cfg.comp)
    kind = _trial_kind(cfg, t)
    start = time.perf_counter()
    a = v = None
    if kind == "random":
        G = random_code(F, comp, cfg.k, rng)
        o = ore
        if cfg.method != "recover" or not ore.is_identity:
            a = sample_class_reps(ore, comp.ell, rng)
    else:
        p = random_glrs(ore, comp, cfg.k, rng, cfg.multipliers)
        G, iso, _ = random_disguise(p, rng, cfg.semilinear)
        hat = transport_params(iso, p)
        o = hat.ore
        if cfg.method == "recover":
            if not ore.is_identity:
                a, v = list(hat.a), list(hat.v)
        else:
            a = list(lrs_form(hat).a)
            if kind == "wrong-rep":
                a = _wrong_representatives(o, a, rng)
    statistic = ""
    try:
        if cfg.method == "recover":
            try:
                rep = recover_full(F, G, comp, o, a=a, v=v)
                verdict = "recovered" if rep.verified else "failed"
            except StructureNotFound:
                verdict = "failed"
        else:
            if cfg.method == "square":
                vd = square_distinguisher(F, G, comp)
            elif cfg.method == "overbeck":
                vd = overbeck_distinguisher(F, G, a, comp, o, cfg.j)
            else:
                vd = intersection_distinguisher(F, G, a, comp, o, cfg.j)
            statistic = vd.statistic
            verdict = ("structured" if vd.structured else "unstructured") if vd.conclusive else "inconclusive"
    except INCONCLUSIVE_ERRORS:
        verdict = "inconclusive"
    elapsed = f"{time.perf_counter() - start:.6f}" if cfg.timing else ""
    return {"trial_id": t, "ground_truth": kind, "verdict": verdict, "statistic": statistic, "elapsed": elapsed}


def _run_trial_star(item):
    return run_trial(*item)


def run_experiment(cfg: ExperimentConfig, workers: int = 1) -> list[dict]:
    items = [(cfg, t) for t in range(cfg.trials)]
    if workers <= 1:
        return [run_trial(c, t) for c, t in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(_run_trial_star, items))
    return sorted(rows, key=lambda r: r["trial_id"])


CSV_COLUMNS = ["trial_id", "ground_truth", "verdict", "statistic", "elapsed"]
POSITIVE = {"structured", "recovered"}


def rows_to_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def summarize(rows: Sequence[dict]) -> dict:
    out: dict = {"trials": len(rows)}
    for kind in ("structured", "random", "wrong-rep"):
        sel = [r for r in rows if r["ground_truth"] == kind]
        if not sel:
            continue
        pos = sum(r["verdict"] in POSITIVE for r in sel)
        inc = sum(r["verdict"] == "inconclusive" for r in sel)
        key = {"structured": "true_positive_rate", "random": "false_positive_rate", "wrong-rep": "wrong_rep_detection_rate"}[kind]
        out[key] = pos / len(sel)
        out[f"{kind}_trials"] = len(sel)
        out[f"{kind}_inconclusive"] = inc
    return out


def _validate_config(cfg: ExperimentConfig) -> None:
    F = build_field(*cfg.field)
    ore = OreCtx(F, cfg.theta_l, cfg.gamma)
    comp = Composition(cfg.comp)
    comp.check_fits(F.m)
    if cfg.trials < 1:
        raise UsageError("--trials must be at least 1")
    if cfg.method not in ("square", "overbeck", "intersection", "recover"):
        raise UsageError(f"unknown method {cfg.method!r}")
    if cfg.ground_truth == "wrong-rep" and ore.is_identity:
        raise UsageError("with theta = Id every conjugacy class is a single element")
    if cfg.method == "recover" and not ore.zero_derivation:
        raise UnsupportedRegime("recovery for a nonzero derivation is not supported")
    # one dry parameter draw surfaces class-count and dimension errors up front
    random_glrs(ore, comp, cfg.k, random.Random(0), cfg.multipliers)


def cmd_experiment(args) -> int:
    F, ore, comp, k = _config_common(args)
    cfg = ExperimentConfig(
        field=(F.p, F.s, F.m),
        theta_l=ore.l,
        gamma=ore.gamma,
        comp=comp.parts,
        k=k,
        trials=args.trials,
        seed=str(args.seed),
        method=args.method,
        multipliers=args.multipliers,
        semilinear=args.semilinear,
        ground_truth=args.ground_truth,
        j=args.j,
        budget=args.budget,
        timing=args.timing,
    )
    _validate_config(cfg)
    rows = run_experiment(cfg, args.workers)
    text = rows_to_csv(rows)
    summary = summarize(rows)
    summary["config"] = {k_: (list(v_) if isinstance(v_, tuple) else v_) for k_, v_ in cfg.__dict__.items()}
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "trials.csv"), "w", newline="") as fh:
            fh.write(text)
        _dump(summary, os.path.join(args.out, "summary.json"))
        print(json.dumps({k_: v_ for k_, v_ in summary.items() if k_ != "config"}, sort_keys=True))
    else:
        sys.stdout.write(text)
        print(json.dumps(summary, sort_keys=True), file=sys.stderr)
    return EXIT_OK


# --- inspect ----------------------------------------------------------------------


def cmd_inspect(args) -> int:
    obj = _load(args.file)
    if isinstance(obj, dict) and "generator" in obj:
        F, comp, G, _ = _read_generator(argparse.Namespace(generator=args.file, field=None, comp=None))
        info = {
            "kind": "generator",
            "field": F.to_json(),
            "comp": comp.to_json(),
            "rows": len(G),
            "rank": rank(F, G, comp.n),
            "row_weights": [sum_rank_weight(F, r, comp) for r in G],
        }
    elif isinstance(obj, dict) and "beta" in obj:
        p = GlrsParams.from_json(obj)
        G = canonical_generator(p)
        info = {"kind": "params", "valid": True, "n": p.n, "k": p.k, "ell": p.comp.ell,
                "rank": rank(p.field, G, p.n), "singleton_bound": p.n - p.k + 1}
        if args.min_distance:
            info["min_distance"] = min_distance_bruteforce(p.field, G, p.comp)
    elif isinstance(obj, dict) and "isometry" in obj:
        info = {"kind": "disguise", "aut_t": obj["isometry"].get("aut_t", 0), "pi": obj["isometry"]["pi"]}
    else:
        raise UsageError(f"unrecognized file {args.file}")
    _dump(info)
    return EXIT_OK


# --- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sumrank", description="GLRS code experiments in the sum-rank metric")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--field", default="3,1,2", help="p,s,m for F_{q^m} with q = p^s")
        p.add_argument("--theta-l", type=int, default=None, help="theta = x -> x^(q^l); 0 is the identity")
        p.add_argument("--gamma", default=None, help="derivation element (packed int or coefficient list)")
        p.add_argument("--comp", default=None, help="block lengths, e.g. 2,2,3")
        p.add_argument("--k", type=int, default=None)
        p.add_argument("--seed", default="0")

    kg = sub.add_parser("keygen", help="random GLRS instance and disguised public generator")
    common(kg)
    kg.add_argument("--multipliers", choices=("ones", "random"), default="ones")
    kg.add_argument("--semilinear", action="store_true")
    kg.add_argument("--out", default=None, help="output directory")
    kg.set_defaults(func=cmd_keygen)

    ds = sub.add_parser("distinguish", help="run a distinguisher on a generator file")
    common(ds)
    ds.add_argument("generator")
    ds.add_argument("--method", choices=("square", "overbeck", "intersection"), default="overbeck")
    ds.add_argument("--a-file", default=None)
    ds.add_argument("--j", type=int, default=None)
    ds.add_argument("--budget", type=int, default=None)
    ds.add_argument("--sweep-derivations", action="store_true")
    ds.add_argument("--sweep-multipliers", action="store_true")
    ds.set_defaults(func=cmd_distinguish)

    rc = sub.add_parser("recover", help="recover canonical parameters from a generator file")
    common(rc)
    rc.add_argument("generator")
    rc.add_argument("--a-file", default=None, help="known evaluation parameters (and multipliers)")
    rc.add_argument("--report", default=None, help="write the report here instead of stdout")
    rc.add_argument("--timing", action="store_true")
    rc.set_defaults(func=cmd_recover)

    ex = sub.add_parser("experiment", help="Monte-Carlo campaign")
    common(ex)
    ex.add_argument("--trials", type=int, default=100)
    ex.add_argument("--method", choices=("square", "overbeck", "intersection", "recover"), default="overbeck")
    ex.add_argument("--multipliers", choices=("ones", "random"), default="ones")
    ex.add_argument("--semilinear", action="store_true")
    ex.add_argument("--ground-truth", choices=("mixed", "structured", "random", "wrong-rep"), default="mixed")
    ex.add_argument("--j", type=int, default=None)
    ex.add_argument("--budget", type=int, default=None)
    ex.add_argument("--workers", type=int, default=1)
    ex.add_argument("--timing", action="store_true", help="fill the elapsed column (breaks byte-identical output)")
    ex.add_argument("--out", default=None)
    ex.set_defaults(func=cmd_experiment)

    ins = sub.add_parser("inspect", help="summarize a generator, params or disguise file")
    ins.add_argument("file")
    ins.add_argument("--min-distance", action="store_true")
    ins.set_defaults(func=cmd_inspect)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code else EXIT_OK
    try:
        return args.func(args)
    except INCONCLUSIVE_ERRORS as exc:
        print(f"inconclusive: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except UnsupportedRegime as exc:
        print(f"unsupported regime: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (UsageError, SumRankError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
