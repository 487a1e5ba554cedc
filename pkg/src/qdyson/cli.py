"""Command-line surface: evaluate constant terms, run verification
suites, and scan the nonvanishing evidence box with a resumable cache.

Exit status contract: 0 on success, 1 when a suite finds an identity
violation, 2 on usage or environment errors.  Identical flags produce
byte-identical stdout and output files (timings go to stderr), so scan
outputs can be diffed across runs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from . import __version__
from .dyson import (
    CTQuery,
    Report,
    constant_term,
    cyclic_suite,
    distinct_parts_suite,
    kadell_suite,
    largest_part_suite,
    nonvanishing_queries,
    nonvanishing_scan,
    orthogonality_scan,
    qdyson_suite,
    roots_suite,
    shifted_reduction_suite,
    _parallel_values,
)
from .qseries import PoleError


class CliError(ValueError):
    """Bad flag value; the message names the offending flag."""


def _parse_vec(text: str, flag: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise CliError(f"{flag}: expected comma-separated integers, got {text!r}") from None


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _workers(args: argparse.Namespace) -> int:
    env = os.environ.get("QDYSON_THREADS")
    if env is not None:
        try:
            return max(1, int(env))
        except ValueError:
            raise CliError(f"QDYSON_THREADS: expected an integer, got {env!r}") from None
    return max(1, args.parallelism)


def cmd_eval(args: argparse.Namespace) -> int:
    v = _parse_vec(args.v, "--v")
    lam = _parse_vec(args.lam, "--lambda")
    a = _parse_vec(args.a, "--a")
    if not v:
        raise CliError("--v: must name at least one entry")
    if len(a) != len(v):
        raise CliError(f"--a: expected {len(v)} entries to match --v, got {len(a)}")
    try:
        query = CTQuery(len(v) - 1, v, lam, a, args.m)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    value = constant_term(query)
    if args.json:
        print(_dump(value.to_json()))
    else:
        print(str(value))
    return 0


def _report_lines(name: str, report: Report) -> list[str]:
    lines = [f"suite {name}: checked {report.checked}, violations {len(report.violations)}"]
    for viol in report.violations[:20]:
        lines.append(f"  query {_dump(viol.query.to_json())}: got {viol.got}")
    if len(report.violations) > 20:
        lines.append(f"  ... and {len(report.violations) - 20} more")
    return lines


def cmd_verify(args: argparse.Namespace) -> int:
    workers = _workers(args)
    n, w, amax, rmax = args.n, args.max_weight, args.max_a, args.max_r
    suites = {
        "qdyson": lambda: qdyson_suite(n, amax, workers=workers),
        "kadell": lambda: kadell_suite(n, rmax, amax),
        "reduce": lambda: largest_part_suite(n, w, amax),
        "reduce-m": lambda: shifted_reduction_suite(n, w, amax),
        "distinct": lambda: distinct_parts_suite(n, w, amax),
        "cai": lambda: orthogonality_scan(n, w, amax, workers=workers),
        "converse": lambda: nonvanishing_scan(n, w, amax, workers=workers),
        "roots": lambda: roots_suite(n, w, amax),
        "cyclic": lambda: cyclic_suite(),
    }
    report = suites[args.suite]()
    if args.json:
        payload = {"suite": args.suite}
        payload.update(report.to_json(include_elapsed=False))
        print(_dump(payload))
    else:
        print("\n".join(_report_lines(args.suite, report)))
    print(f"elapsed {report.elapsed:.2f}s", file=sys.stderr)
    return 0 if report.passed else 1


def _scan_signature(n: int, weight_max: int, a_max: int) -> str:
    key = _dump(
        {
            "kind": "nonvanishing-scan",
            "engine": __version__,
            "n": n,
            "max_weight": weight_max,
            "max_a": a_max,
        }
    )
    return hashlib.sha256(key.encode("utf-8")).hexdigest()


def _load_cached(path: str, signature: str) -> dict[str, dict]:
    # stale or unreadable caches are ignored, never trusted
    try:
        with open(path, "r", encoding="utf-8") as handle:
            obj = json.load(handle)
    except (OSError, json.JSONDecodeError):
        return {}
    if not isinstance(obj, dict) or obj.get("signature") != signature:
        return {}
    out = {}
    for row in obj.get("results", []):
        try:
            out[_dump(row["query"])] = row["value"]
        except (KeyError, TypeError):
            return {}
    return out


def cmd_scan(args: argparse.Namespace) -> int:
    workers = _workers(args)
    n, weight_max, a_max = args.n, args.max_weight, args.max_a
    start = time.perf_counter()
    signature = _scan_signature(n, weight_max, a_max)
    queries = nonvanishing_queries(n, weight_max, a_max)
    cached = _load_cached(args.out, signature) if args.out else {}
    keys = [_dump(query.to_json()) for query in queries]
    missing = [query for query, key in zip(queries, keys) if key not in cached]
    values = _parallel_values(missing, workers)
    fresh = {key: None for key in keys}
    for query, value in zip(missing, values):
        fresh[_dump(query.to_json())] = value.to_json()
    rows = []
    zeros = 0
    for query, key in zip(queries, keys):
        value_json = cached.get(key) if fresh[key] is None else fresh[key]
        rows.append({"query": query.to_json(), "value": value_json})
        if not value_json["terms"]:
            zeros += 1
    document = {
        "signature": signature,
        "engine": __version__,
        "n": n,
        "max_weight": weight_max,
        "max_a": a_max,
        "results": rows,
    }
    text = _dump(document) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
        print(
            f"scan n={n} weight<={weight_max} a<={a_max}: "
            f"{len(rows)} values, {zeros} zero, wrote {args.out}"
        )
    else:
        sys.stdout.write(text)
    # cache-dependent counters stay off stdout so reruns are byte-identical
    print(
        f"computed {len(missing)}, cached {len(rows) - len(missing)}, "
        f"elapsed {time.perf_counter() - start:.2f}s",
        file=sys.stderr,
    )
    return 1 if zeros else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdyson",
        description="Exact generalized q-Dyson constant terms: evaluate, verify, scan.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one constant term")
    p_eval.add_argument("--v", required=True, help="comma-separated exponents of x^v")
    p_eval.add_argument(
        "--lambda", dest="lam", default="", help="partition parts; empty string for the empty partition"
    )
    p_eval.add_argument("--a", required=True, help="comma-separated weights")
    p_eval.add_argument("--m", type=int, default=0, help="alphabet shift cutoff (default 0)")
    p_eval.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p_eval.set_defaults(func=cmd_eval)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument(
        "--suite",
        required=True,
        choices=[
            "qdyson",
            "kadell",
            "reduce",
            "reduce-m",
            "distinct",
            "cai",
            "converse",
            "roots",
            "cyclic",
        ],
    )
    p_verify.add_argument("--n", type=int, default=1, help="number of variables minus one")
    p_verify.add_argument("--max-a", type=int, default=2, dest="max_a")
    p_verify.add_argument("--max-weight", type=int, default=4, dest="max_weight")
    p_verify.add_argument("--max-r", type=int, default=3, dest="max_r")
    p_verify.add_argument("--json", action="store_true")
    p_verify.add_argument("--parallelism", type=int, default=1, help="worker count")
    p_verify.set_defaults(func=cmd_verify)

    p_scan = sub.add_parser("scan", help="tabulate the nonvanishing evidence box")
    p_scan.add_argument("--n", type=int, default=1)
    p_scan.add_argument("--max-weight", type=int, default=4, dest="max_weight")
    p_scan.add_argument("--max-a", type=int, default=2, dest="max_a")
    p_scan.add_argument("--out", default=None, help="output/cache path (stdout when omitted)")
    p_scan.add_argument("--parallelism", type=int, default=1, help="worker count")
    p_scan.set_defaults(func=cmd_scan)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, PoleError, ZeroDivisionError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
