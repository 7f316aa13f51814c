"""Command-line entry point: manifest runs and thin per-module subcommands.

Exit codes: 0 all checks passed, 1 some check failed, 2 malformed manifest or
bad flags, 3 internal error while running a check.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Sequence

from .checks import REGISTRY, ManifestError, level, odd_prime, run_check, validate
from .factorization import _jsonify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
REPORT_FORMAT = "skein-lattice-report"
REPORT_VERSION = 1


class UsageError(Exception):
    pass


def thread_count() -> int:
    """Worker bound from SKEIN_LATTICE_THREADS (0 or unset = number of CPUs)."""
    raw = os.environ.get("SKEIN_LATTICE_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"SKEIN_LATTICE_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise UsageError("SKEIN_LATTICE_THREADS must be >= 0")
    return n or os.cpu_count() or 1


def dumps(obj: Any) -> str:
    return json.dumps(_jsonify(obj), indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# manifests
# ---------------------------------------------------------------------------

def load_manifest(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ManifestError(f"cannot read manifest: {exc}") from exc
    if not text.strip():
        return {"checks": []}
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"manifest is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ManifestError("manifest must be a JSON object")
    unknown = set(data) - {"checks", "output", "timings", "description"}
    if unknown:
        raise ManifestError(f"unknown manifest keys {sorted(unknown)}")
    checks = data.get("checks", [])
    if not isinstance(checks, list):
        raise ManifestError("'checks' must be a list")
    if "output" in data and not isinstance(data["output"], str):
        raise ManifestError("'output' must be a path string")
    data["checks"] = [validate(c) for c in checks]
    return data


def _execute(item: tuple[str, dict, bool]) -> dict:
    cid, params, timed = item
    start = time.perf_counter()
    try:
        v = run_check(cid, params)
        entry = {"id": cid, "params": params, "status": "pass" if v.ok else "fail",
                 "witnesses": _jsonify(v.witnesses)}
        if v.note:
            entry["note"] = v.note
    except Exception as exc:  # reported, never swallowed
        entry = {"id": cid, "params": params, "status": "error",
                 "witnesses": {"error": f"{type(exc).__name__}: {exc}"}}
    if timed:
        entry["wall_time"] = round(time.perf_counter() - start, 3)
    return entry


def execute_checks(checks: Sequence[tuple[str, dict]], timed: bool = False,
                   workers: int | None = None) -> list[dict]:
    """Run checks, possibly in parallel; results keep manifest order."""
    items = [(cid, params, timed) for cid, params in checks]
    workers = thread_count() if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [_execute(it) for it in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(_execute, items))


def build_report(results: list[dict]) -> dict:
    counts = {s: sum(r["status"] == s for r in results) for s in ("pass", "fail", "error")}
    return {"format": REPORT_FORMAT, "version": REPORT_VERSION, "checks": results,
            "summary": {"total": len(results), **counts}}


def run_manifest(path: str | Path, output: str | Path | None = None) -> int:
    """Execute a manifest and write its JSON report; returns the exit code."""
    try:
        manifest = load_manifest(path)
        workers = thread_count()
    except (ManifestError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    results = execute_checks(manifest["checks"], bool(manifest.get("timings", False)), workers)
    report = build_report(results)
    out = output or manifest.get("output")
    if out is None:
        out = Path(path).with_suffix(".report.json")
    elif not Path(out).is_absolute() and output is None:
        out = Path(path).parent / out
    Path(out).write_text(dumps(report), encoding="utf-8")
    for r in results:
        print(f"{r['status'].upper():5s} {r['id']} {json.dumps(r['params'], sort_keys=True)}")
    s = report["summary"]
    print(f"{s['pass']}/{s['total']} passed -> {out}")
    if s["error"]:
        return EXIT_INTERNAL
    return EXIT_OK if s["fail"] == 0 else EXIT_FAIL


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _emit(args: argparse.Namespace, verdict, summary: list[str]) -> int:
    if args.json:
        sys.stdout.write(dumps(verdict.to_json()))
    else:
        print("\n".join(summary))
        print("PASS" if verdict.ok else "FAIL")
    return EXIT_OK if verdict.ok else EXIT_FAIL


def _presentation_from_args(args: argparse.Namespace):
    from .invariants import ChainLinkPresentation
    if args.presentation:
        try:
            return ChainLinkPresentation.from_json(json.loads(Path(args.presentation).read_text()))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read presentation: {exc}") from exc
    if args.lens:
        n, q = args.lens
        try:
            return ChainLinkPresentation.lens(n, q)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if args.chain is not None:
        return ChainLinkPresentation.chain(args.chain)
    return None


def cmd_run(args: argparse.Namespace) -> int:
    return run_manifest(args.manifest, args.output)


def cmd_gram(args: argparse.Namespace) -> int:
    from .checks import check_gram
    v = check_gram({"p": args.p, "family": args.family, "genus": args.genus})
    rep = v.witnesses["gram"]
    lines = [f"Gram matrix of {args.family} (p = {args.p}, genus {args.genus}):"]
    lines += ["  [" + ", ".join(str(c) for c in row) + "]" for row in rep.matrix]
    lines.append(f"det = {rep.determinant}  (unit: {rep.is_unit}, integral: {rep.integral})")
    return _emit(args, v, lines)


def cmd_invariant(args: argparse.Namespace) -> int:
    from .factorization import Verdict
    from .invariants import invariant_I, invariant_theta
    L = _presentation_from_args(args)
    if L is None:
        raise UsageError("give --lens N Q, --chain F1 F2 ... or --presentation FILE")
    I = invariant_I(L, args.p)
    th = invariant_theta(L, args.p)
    v = Verdict("invariant", I.is_integral, {"p": args.p, "presentation": L, "I": I, "theta": th})
    return _emit(args, v, [f"M = {L}", f"I_{args.p}(M) = {I}", f"  {json.dumps(I.to_json())}",
                           f"theta_{args.p}(M) = {th}"])


def cmd_factorize(args: argparse.Namespace) -> int:
    from .checks import check_factorization, check_kappa, check_product_formula
    from .factorization import Verdict
    params: dict = {"r": args.r}
    L = _presentation_from_args(args)
    if L is not None:
        params["presentations"] = [L.to_json()]
    parts = [check_kappa({"r": args.r}), check_product_formula(params),
             check_factorization({"r": args.r})]
    v = Verdict("factorize", all(p.ok for p in parts), {"r": args.r, "parts": parts})
    lines = [f"p = {2 * args.r} = 2 * {args.r}"]
    lines += [f"  {p.name}: {'pass' if p.ok else 'FAIL'}" for p in parts]
    return _emit(args, v, lines)


def cmd_fkb(args: argparse.Namespace) -> int:
    from .factorization import FactorizationContext, Verdict
    from .fkb import BoundedManifold, fkb_generators, fkb_ideal, fkb_product_check
    N = BoundedManifold(args.cable, args.color, tuple(args.omega), args.twist)
    gens = fkb_generators(N, args.p)
    J = fkb_ideal(N, args.p)
    parts = {"N": N, "p": args.p, "generators": gens, "ideal": J, "norm": J.norm()}
    ok = True
    lines = [f"N = {N}", f"generators of J_{args.p}(N):"] + [f"  {g}" for g in gens]
    lines.append(f"J_{args.p}(N): norm {J.norm()}, unit ideal: {J.is_unit_ideal()}")
    if args.p % 2 == 0 and args.p > 2:
        pc = fkb_product_check(N, FactorizationContext(args.p // 2))
        parts["product"] = pc
        ok = pc.ok
        lines.append(f"J_p = i_r(J_2) j_r(J_r): {pc.ok}")
    return _emit(args, Verdict("fkb", ok, parts), lines)


def cmd_bases(args: argparse.Namespace) -> int:
    from .bases import build_family, families_for, gram
    from .checks import check_bases
    from .factorization import Verdict
    if args.verify:
        v = check_bases({"p": args.p, "genus": args.genus})
        w = v.witnesses["parts"][0]["witnesses"]
        lines = [f"families at p = {args.p}, genus {args.genus}: {', '.join(w['families'])}"]
        lines += [f"  gram {k}: unimodular {x}" for k, x in w["gram_unimodular"].items()]
        lines += [f"  {k}: unimodular {x}" for k, x in w["pairwise_unimodular"].items()]
        lines += [f"  sweep {k}: {x['ok']}" for k, x in w["generator_sweeps"].items()]
        return _emit(args, v, lines)
    fids = [args.family] if args.family else list(families_for(args.p, args.genus))
    if not fids or any(f not in families_for(args.p, args.genus) for f in fids):
        raise UsageError(f"no such family at p = {args.p}, genus {args.genus}")
    fams = [build_family(f, args.p, args.genus) for f in fids]
    grams = [gram(f) for f in fams]
    v = Verdict("bases", all(g.is_unit for g in grams), {"families": fams})
    lines = [f"{f.family_id}: {len(f)} vectors, Gram det {g.determinant}"
             for f, g in zip(fams, grams)]
    return _emit(args, v, lines)


def _level(s: str) -> int:
    try:
        return level(int(s))
    except (ValueError, ManifestError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _odd_prime(s: str) -> int:
    try:
        return odd_prime(int(s))
    except (ValueError, ManifestError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _twice_odd(s: str) -> int:
    p = _level(s)
    if p % 2 or p == 2:
        raise argparse.ArgumentTypeError(f"p = {p} must be twice an odd prime")
    return p


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="skein-lattice",
                                 description="Exact integral TQFT lattices and invariants.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_json(p: argparse.ArgumentParser) -> None:
        p.add_argument("--json", action="store_true", help="print the full JSON certificate")

    def add_presentation(p: argparse.ArgumentParser) -> None:
        g = p.add_mutually_exclusive_group()
        g.add_argument("--lens", nargs=2, type=int, metavar=("N", "Q"), help="lens space L(N, Q)")
        g.add_argument("--chain", nargs="+", type=int, metavar="F", help="surgery on a chain")
        g.add_argument("--presentation", metavar="FILE", help="presentation JSON file")

    p = sub.add_parser("run", help="execute a manifest and write a JSON report")
    p.add_argument("manifest")
    p.add_argument("--output", "-o", help="report path (overrides the manifest)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("checks", help="list manifest check ids")
    p.set_defaults(func=lambda a: print("\n".join(f"{c.id:24s} {c.summary}  params: "
                                                  f"{', '.join(c.params) or '-'}"
                                                  for c in REGISTRY.values())) or EXIT_OK)

    p = sub.add_parser("gram", help="Gram matrix of a basis family")
    p.add_argument("--p", type=_level, required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--genus", type=int, default=1)
    add_json(p)
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("invariant", help="I_p and theta_p of a closed 3-manifold")
    p.add_argument("--p", type=_level, required=True)
    add_presentation(p)
    add_json(p)
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("factorize", help="factorization checks for p = 2r")
    p.add_argument("--r", type=_odd_prime, required=True)
    add_presentation(p)
    add_json(p)
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("fkb", help="FKB ideal of a solid torus with a vacuum-state recipe")
    p.add_argument("--p", type=_level, required=True)
    p.add_argument("--cable", type=int, default=0, help="parallel banded copies of the core")
    p.add_argument("--color", type=int, default=0, help="Jones-Wenzl color of one more core")
    p.add_argument("--omega", type=int, nargs="*", default=[], help="framings of omega curves")
    p.add_argument("--twist", type=int, default=0)
    add_json(p)
    p.set_defaults(func=cmd_fkb)

    p = sub.add_parser("bases", help="basis families and their verification")
    p.add_argument("--p", type=_level, required=True)
    p.add_argument("--family")
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--verify", choices=["all"])
    add_json(p)
    p.set_defaults(func=cmd_bases)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ManifestError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
