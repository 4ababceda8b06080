"""``pvcast`` command line.

Every subcommand prints one JSON report (``enumerate`` can print CSV instead).
Exit codes: 0 affirmative, 2 usage/parse error, 3 not a solution,
4 verification negative, 5 unsupported input.

Defaults for ``--trials``, ``--bound``, ``--prime`` and ``--seed`` may come from
a ``key = value`` file named by ``$PVCAST_CONFIG``; flags win over the file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from pathlib import Path
from typing import Any

from . import __version__
from .castle import (
    NotASolution,
    UnsupportedA,
    algebra_key,
    descend,
    enumerate_solutions,
    is_essential,
    repetition_filter,
    residual,
    sort_key,
)
from .dsl import ArityMismatch, ParseError, parse, parse_solution, parse_triplet, render
from .exactmat import DEFAULT_PRIME, is_prime
from .pv import DEFAULT_BOUND, DEFAULT_TRIALS, NoGenericFound, castling_check, is_pv_type_ifps
from .reps import UnsupportedRep, tensor_triplet

SCHEMA = "pvcast.report/1"
CONFIG_ENV = "PVCAST_CONFIG"
DEFAULT_MAX_DIM = 500

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NOT_SOLUTION = 3
EXIT_NEGATIVE = 4
EXIT_UNSUPPORTED = 5

_CONFIG_KEYS = {"trials": int, "bound": int, "prime": int, "seed": int}


class ConfigError(ValueError):
    pass


class TooLarge(ValueError):
    """Space dimension beyond ``--max-dim``."""


def load_config(path: str | os.PathLike | None = None) -> dict[str, int]:
    """Read ``key = value`` lines; ``#`` starts a comment."""
    if path is None:
        path = os.environ.get(CONFIG_ENV)
        if not path:
            return {}
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (s.strip() for s in line.partition("="))
        if not sep or key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: expected one of {sorted(_CONFIG_KEYS)} = value")
        try:
            out[key] = _CONFIG_KEYS[key](value)
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: bad value {value!r} for {key}") from None
    return out


def _report(command: str, text: str | None, options: dict, results: dict,
            seed: int | None = None) -> dict[str, Any]:
    return {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "options": options,
        "input": text,
        "seed": seed,
        "results": results,
    }


def _error(command: str, text: str | None, exc: Exception, options: dict | None = None) -> dict:
    err = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ParseError):
        err["message"] = exc.message
        err["span"] = [exc.span.start, exc.span.end]
    return _report(command, text, options or {}, {"error": err})


def cmd_residual(text: str) -> tuple[dict, int]:
    try:
        sol = parse_solution(text)
    except ValueError as exc:
        return _error("residual", text, exc), EXIT_USAGE
    r = residual(sol)
    results = {"residual": r, "is_solution": r == 0, "algebra_dim": sol.algebra_dim,
               "space_dim": sol.space_dim}
    return _report("residual", render(sol), {}, results), EXIT_OK if r == 0 else EXIT_NOT_SOLUTION


def enumerate_report(a: int, max_part: int, max_k: int, essential_only: bool = False,
                     exclude_repetition: bool = False) -> tuple[dict, int]:
    options = {"a": a, "max_part": max_part, "max_k": max_k, "essential_only": essential_only,
               "exclude_repetition": exclude_repetition}
    if max_part < 1 or max_k < 1:
        return _error("enumerate", None, ValueError("bounds must be positive"), options), EXIT_USAGE
    try:
        sols = enumerate_solutions(a, max_part, max_k)
    except UnsupportedA as exc:
        return _error("enumerate", None, exc, options), EXIT_UNSUPPORTED
    if essential_only:
        sols = {s for s in sols if is_essential(s)}
    if exclude_repetition:
        sols = repetition_filter(sols, a)
    rows = [{"solution": render(s), "k": s.k, "residual": residual(s), "essential": is_essential(s),
             "algebra": list(algebra_key(s))}
            for s in sorted(sols, key=sort_key)]
    results = {"count": len(rows), "solutions": rows,
               "all_residuals_zero": all(r["residual"] == 0 for r in rows)}
    return _report("enumerate", None, options, results), EXIT_OK


def enumerate_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["solution", "k", "residual", "essential"])
    for r in report["results"]["solutions"]:
        w.writerow([r["solution"], r["k"], r["residual"], str(r["essential"]).lower()])
    return buf.getvalue()


def cmd_descend(text: str) -> tuple[dict, int]:
    try:
        sol = parse_solution(text)
    except ValueError as exc:
        return _error("descend", text, exc), EXIT_USAGE
    try:
        base, path = descend(sol)
    except NotASolution as exc:
        return _error("descend", render(sol), exc), EXIT_NOT_SOLUTION
    except UnsupportedA as exc:
        return _error("descend", render(sol), exc), EXIT_UNSUPPORTED
    results = {"base": render(base), "path": path, "path_length": len(path)}
    return _report("descend", render(sol), {}, results), EXIT_OK


def cmd_verify(text: str, trials: int = DEFAULT_TRIALS, bound: int = DEFAULT_BOUND, seed: int = 0,
               prime: int = DEFAULT_PRIME, max_dim: int = DEFAULT_MAX_DIM,
               timings: bool = False) -> tuple[dict, int]:
    options = {"trials": trials, "bound": bound, "prime": prime, "max_dim": max_dim}
    t0 = time.perf_counter()
    try:
        obj = parse(text)
    except UnsupportedRep as exc:
        return _error("verify", text, exc, options), EXIT_UNSUPPORTED
    except ValueError as exc:
        return _error("verify", text, exc, options), EXIT_USAGE
    sol = None
    try:
        if hasattr(obj, "parts"):
            sol = obj
            if sol.space_dim > max_dim:
                raise TooLarge(f"space dimension {sol.space_dim} exceeds --max-dim {max_dim}")
            triplet = tensor_triplet(sol)
        else:
            triplet = obj
    except ArityMismatch as exc:
        return _error("verify", text, exc, options), EXIT_USAGE
    except (UnsupportedA, UnsupportedRep, TooLarge) as exc:
        return _error("verify", text, exc, options), EXIT_UNSUPPORTED
    if triplet.space_dim > max_dim:
        exc = TooLarge(f"space dimension {triplet.space_dim} exceeds --max-dim {max_dim}")
        return _error("verify", text, exc, options), EXIT_UNSUPPORTED
    t1 = time.perf_counter()
    ok, cert = is_pv_type_ifps(triplet, sol, trials, bound, seed, prime)
    t2 = time.perf_counter()
    results = {
        "triplet": render(triplet),
        "dimension_match": triplet.algebra.dim == triplet.space_dim,
        "pv_type_ifps": ok,
        "certificate": cert.to_dict(),
    }
    if sol is not None:
        results["residual"] = residual(sol)
    if timings:
        results["timings"] = {"build_s": round(t1 - t0, 6), "certify_s": round(t2 - t1, 6)}
    return _report("verify", render(obj), options, results, seed), EXIT_OK if ok else EXIT_NEGATIVE


def cmd_castle_check(text: str, n: int, trials: int = DEFAULT_TRIALS, bound: int = DEFAULT_BOUND,
                     seed: int = 0, prime: int = DEFAULT_PRIME,
                     timings: bool = False) -> tuple[dict, int]:
    options = {"n": n, "trials": trials, "bound": bound, "prime": prime}
    t0 = time.perf_counter()
    try:
        triplet = parse_triplet(text)
    except (ParseError, ArityMismatch) as exc:
        return _error("castle-check", text, exc, options), EXIT_USAGE
    except UnsupportedRep as exc:
        return _error("castle-check", text, exc, options), EXIT_UNSUPPORTED
    m = triplet.space_dim
    if not 1 <= n < m:
        exc = ValueError(f"--n must satisfy 1 <= n < m = {m}, got {n}")
        return _error("castle-check", render(triplet), exc, options), EXIT_USAGE
    try:
        report = castling_check(triplet.rep, n, trials, bound, seed, prime)
    except NoGenericFound as exc:
        return _error("castle-check", render(triplet), exc, options), EXIT_NEGATIVE
    results = report.to_dict()
    if timings:
        results["timings"] = {"total_s": round(time.perf_counter() - t0, 6)}
    return (_report("castle-check", render(triplet), options, results, seed),
            EXIT_OK if report.ok else EXIT_NEGATIVE)


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _search_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--trials", type=int, help=f"random points to try (default {DEFAULT_TRIALS})")
    p.add_argument("--bound", type=int, help=f"coordinate bound for random points (default {DEFAULT_BOUND})")
    p.add_argument("--seed", type=int, help="RNG seed (default 0)")
    p.add_argument("--prime", type=int, help="modulus for the rank pre-screen (default 2^61-1)")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte-identical output)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pvcast", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"pvcast {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("residual", help="evaluate the balance equation for a solution")
    p.add_argument("solution")

    p = sub.add_parser("enumerate", help="castling tree of solutions for a in {2,3,5}")
    p.add_argument("a", type=int)
    p.add_argument("--max-part", type=int, default=200)
    p.add_argument("--max-k", type=int, default=3)
    p.add_argument("--essential-only", action="store_true")
    p.add_argument("--exclude-repetition", action="store_true",
                   help="for a=3 drop solutions containing a part 2")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("descend", help="sc-transform a solution down to its base")
    p.add_argument("solution")

    p = sub.add_parser("verify", help="certify a solution or triplet as a PV of type IFPS")
    p.add_argument("input")
    _search_args(p)
    p.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM,
                   help="refuse triplets with a larger space (default %(default)s)")

    p = sub.add_parser("castle-check", help="compare both sides of a c-transformation")
    p.add_argument("triplet")
    p.add_argument("--n", type=int, required=True)
    _search_args(p)
    return parser


def _search_settings(args: argparse.Namespace, config: dict[str, int]) -> dict[str, int]:
    out = {
        "trials": DEFAULT_TRIALS, "bound": DEFAULT_BOUND, "seed": 0, "prime": DEFAULT_PRIME,
    }
    out.update(config)
    for key in out:
        if getattr(args, key, None) is not None:
            out[key] = getattr(args, key)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    if args.command == "residual":
        report, code = cmd_residual(args.solution)
    elif args.command == "descend":
        report, code = cmd_descend(args.solution)
    elif args.command == "enumerate":
        report, code = enumerate_report(args.a, args.max_part, args.max_k, args.essential_only,
                                        args.exclude_repetition)
        if code == EXIT_OK and args.format == "csv":
            out.write(enumerate_csv(report))
            return code
    else:
        try:
            settings = _search_settings(args, load_config())
        except (ConfigError, OSError) as exc:
            print(f"pvcast: config error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        if settings["trials"] < 1 or settings["bound"] < 0 or not is_prime(settings["prime"]) \
                or settings["prime"] < 2**60:
            print("pvcast: --trials must be >= 1, --bound >= 0 and --prime a prime >= 2^60",
                  file=sys.stderr)
            return EXIT_USAGE
        common = {k: settings[k] for k in ("trials", "bound", "seed", "prime")}
        if args.command == "verify":
            report, code = cmd_verify(args.input, max_dim=args.max_dim, timings=args.timings, **common)
        else:
            report, code = cmd_castle_check(args.triplet, args.n, timings=args.timings, **common)
    out.write(dumps(report))
    if "error" in report["results"]:
        err = report["results"]["error"]
        span = f" (bytes {err['span'][0]}..{err['span'][1]})" if "span" in err else ""
        print(f"pvcast: {err['type']}: {err['message']}{span}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
