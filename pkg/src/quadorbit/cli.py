"""Command-line surface: orbit inspection, table dumps, and sweep experiments.

Every command writes CSV (tables), plain text, or JSON, chosen with
--format; output is byte-deterministic for identical flags, including the
sampling seed of the sweep command.  Exit codes: 0 ok, 1 usage or domain
error, 2 theory-vs-brute mismatch, 3 bound violation.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from . import __version__
from .diagram import (
    analogous_two_safe_primes,
    brute_census,
    census,
    cycle_modulus,
    is_maximal_prime,
    two_safe_primes,
)
from .errors import BudgetExceededError, DomainError
from .generator import (
    KIND_DICKSON,
    KIND_LOGISTIC,
    KIND_LOGISTIC_GENERAL,
    GeneratorSpec,
    orbit,
    predict_orbit,
)
from .ivsets import KIND_SPLIT, build_iv_set, in_iv_set, param_fibers
from .lcp import (
    BOUND_SLACK,
    bound_dickson,
    bound_quadratic,
    bound_sqrt,
    profile_for_seed,
)
from .numtheory import is_prime, primes_in_range

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2
EXIT_BOUND = 3

EXHAUSTIVE_MAX_BITS = 24

_JOBS_ENV = "QUADORBIT_JOBS"


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors by default; 2 is reserved for
    # theory-vs-brute mismatches here.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(lines: list[str], out: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _meta(command: str, pairs: list[tuple[str, object]]) -> list[str]:
    lines = [f"# quadorbit {__version__}", f"# command: {command}"]
    lines.extend(f"# {key}: {value}" for key, value in pairs)
    return lines


def _fmt(value: object) -> str:
    if isinstance(value, float):
        return f"{value:.6f}"
    if value is None:
        return ""
    return str(value)


def _json_dump(obj: object) -> list[str]:
    return [json.dumps(obj, indent=2, sort_keys=True)]


def cmd_orbit(args: argparse.Namespace) -> int:
    kind = {"logistic": KIND_LOGISTIC, "dickson2": KIND_DICKSON, "logistic-general": KIND_LOGISTIC_GENERAL}[args.kind]
    spec = GeneratorSpec(kind=kind, p=args.p, seed=args.seed, mu=args.mu)
    rep = orbit(spec, args.max_steps)
    payload: dict[str, object] = {
        "p": args.p,
        "seed": spec.seed,
        "kind": args.kind,
        "tail": rep.tail,
        "cycle": rep.cycle,
        "tail_length": rep.tail_length,
        "period": rep.period,
    }
    matched = True
    if args.predict:
        if kind == KIND_LOGISTIC_GENERAL:
            raise DomainError("prediction is only available for control parameter 4")
        if kind == KIND_DICKSON:
            # Shadow seed of the logistic chain this Dickson orbit conjugates.
            pred_seed = (spec.seed - 2) * pow(4, -1, args.p) % args.p
            pred = predict_orbit(args.p, pred_seed, "any")
        elif in_iv_set(spec.seed, args.p):
            pred = predict_orbit(args.p, spec.seed, "iv_set")
        else:
            pred = predict_orbit(args.p, spec.seed, "any")
        matched = pred.tail_length == rep.tail_length and pred.period == rep.period
        payload.update(
            {
                "predicted_tail_length": pred.tail_length,
                "predicted_period": pred.period,
                "degenerate": pred.degenerate,
                "match": matched,
            }
        )
    if args.format == "json":
        lines = _json_dump(payload)
    elif args.format == "csv":
        keys = list(payload)
        row = [
            " ".join(map(str, payload[k])) if isinstance(payload[k], list) else _fmt(payload[k])
            for k in keys
        ]
        lines = _meta("orbit", []) + [",".join(keys), ",".join(row)]
    else:
        lines = []
        for key, value in payload.items():
            if isinstance(value, list):
                lines.append(f"{key}: {' '.join(map(str, value))}")
            else:
                lines.append(f"{key}: {value}")
    _emit(lines, args.out)
    return EXIT_OK if matched else EXIT_MISMATCH


def cmd_ivset(args: argparse.Namespace) -> int:
    iv = build_iv_set(args.p)
    if args.format == "json":
        lines = _json_dump({"p": iv.p, "kind": iv.kind, "elements": iv.elements})
    else:
        meta = _meta("ivset", [("p", iv.p), ("kind", iv.kind), ("size", len(iv.elements))])
        if not iv.elements:
            meta.append("# note: initial-value set is empty")
        lines = meta + ["element"] + [str(a) for a in iv.elements]
    _emit(lines, args.out)
    return EXIT_OK


def cmd_fibers(args: argparse.Namespace) -> int:
    fibers = param_fibers(args.p)
    iv = build_iv_set(args.p)
    split = iv.kind == KIND_SPLIT
    pairs: list[tuple[str, object]] = [("p", args.p), ("kind", iv.kind)]
    if not split:
        ns = next(iter(fibers.values()))[0].ctx.non_residue
        pairs.append(("extension", f"x^2 - {ns}"))
    if args.format == "json":
        if split:
            data = {str(a): fiber for a, fiber in fibers.items()}
        else:
            data = {str(a): [[t.c0, t.c1] for t in fiber] for a, fiber in fibers.items()}
        lines = _json_dump({"p": args.p, "kind": iv.kind, "fibers": data})
    else:
        lines = _meta("fibers", pairs)
        if split:
            lines.append("element,t1,t2,t3,t4")
            for a, fiber in fibers.items():
                lines.append(",".join(map(str, [a, *fiber])))
        else:
            lines.append("element," + ",".join(f"t{i}_c0,t{i}_c1" for i in range(1, 5)))
            for a, fiber in fibers.items():
                cells = [str(a)]
                for t in fiber:
                    cells.extend((str(t.c0), str(t.c1)))
                lines.append(",".join(cells))
    _emit(lines, args.out)
    return EXIT_OK


def cmd_census(args: argparse.Namespace) -> int:
    result = census(args.p)
    brute = brute_census(args.p) if args.brute else None
    match = brute is None or result.period_counter() == brute
    if args.format == "json":
        payload: dict[str, object] = {
            "p": result.p,
            "modulus": result.modulus,
            "rows": [
                {
                    "divisor": r.divisor,
                    "order_of_2": r.order_of_2,
                    "totient": r.totient,
                    "cycles": r.cycles,
                    "period": r.period,
                    "minus_one_reachable": r.minus_one_reachable,
                }
                for r in result.rows
            ],
        }
        if brute is not None:
            payload["brute"] = {str(k): v for k, v in sorted(brute.items())}
            payload["brute_match"] = match
        lines = _json_dump(payload)
    else:
        pairs: list[tuple[str, object]] = [("p", result.p), ("modulus", result.modulus)]
        if brute is not None:
            observed = " ".join(f"{period}x{count}" for period, count in sorted(brute.items()))
            pairs.append(("brute", observed))
            pairs.append(("brute_match", str(match).lower()))
        lines = _meta("census", pairs)
        lines.append("divisor,order_of_2,totient,cycles,period,minus_one_reachable")
        for r in result.rows:
            lines.append(
                ",".join(
                    map(
                        str,
                        (r.divisor, r.order_of_2, r.totient, r.cycles, r.period, str(r.minus_one_reachable).lower()),
                    )
                )
            )
    _emit(lines, args.out)
    return EXIT_OK if match else EXIT_MISMATCH


def cmd_safeprimes(args: argparse.Namespace) -> int:
    values = analogous_two_safe_primes(args.limit) if args.analogous else two_safe_primes(args.limit)
    if args.format == "json":
        lines = _json_dump({"limit": args.limit, "analogous": args.analogous, "primes": values})
    elif args.format == "csv":
        lines = _meta("safeprimes", [("limit", args.limit), ("analogous", args.analogous)])
        lines.append("p")
        lines.extend(str(p) for p in values)
    else:
        lines = [str(p) for p in values]
    _emit(lines, args.out)
    return EXIT_OK


def cmd_lcp(args: argparse.Namespace) -> int:
    p = args.p
    seed = args.seed
    if seed is None:
        iv = build_iv_set(p)
        if not iv.elements:
            raise DomainError(f"no initial-value elements for p={p}; pass --seed")
        seed = iv.elements[0]
    if args.bounds and not in_iv_set(seed, p):
        raise DomainError(f"--bounds needs a seed in the initial-value set, got {seed}")
    prof = profile_for_seed(p, seed, args.n_max)
    t = prof.period
    m = cycle_modulus(p)
    l_s = prof.linear_complexity
    violated = False
    pairs: list[tuple[str, object]] = [
        ("p", p),
        ("seed", seed),
        ("period", t),
        ("modulus", m),
        ("linear_complexity", l_s),
    ]
    rows = []
    for n, length in enumerate(prof.profile, start=1):
        row: dict[str, object] = {"N": n, "L": length}
        if args.bounds:
            quad = bound_quadratic(n, t, m)
            sqr = bound_sqrt(n, l_s)
            dick = bound_dickson(n, t, p)
            if length < quad - BOUND_SLACK or length < sqr - BOUND_SLACK:
                violated = True
            row["bound_quadratic"] = max(0.0, quad)
            row["bound_sqrt"] = max(0.0, sqr)
            row["bound_dickson"] = max(0.0, dick)
        rows.append(row)
    if args.bounds:
        pairs.append(("clamping", "negative bound values are printed as 0"))
        pairs.append(("bounds_hold", str(not violated).lower()))
    if args.format == "json":
        payload: dict[str, object] = {"p": p, "seed": seed, "period": t, "linear_complexity": l_s, "rows": rows}
        if args.bounds:
            payload["bounds_hold"] = not violated
        lines = _json_dump(payload)
    else:
        lines = _meta("lcp", pairs)
        header = list(rows[0]) if rows else ["N", "L"]
        lines.append(",".join(header))
        for row in rows:
            lines.append(",".join(_fmt(row[k]) for k in header))
    _emit(lines, args.out)
    return EXIT_BOUND if violated else EXIT_OK


@dataclass(frozen=True)
class SweepRow:
    """Per-bit-size aggregate over one prime residue class."""

    bit_size: int
    prime_class: str
    primes_tested: int
    pct_maximal: float
    mean_cycles: float | None
    mean_period_per_cycle: float | None
    mean_period_per_seed: float | None


def _sampling_rng(seed: int, bit_size: int, residue: int) -> random.Random:
    # Mixed into one int so reruns are reproducible regardless of hash seeds.
    return random.Random((seed * 1000003 + bit_size) * 4 + residue)


def _primes_for_cell(bit_size: int, residue: int, sample: int, seed: int) -> tuple[list[int], bool]:
    lo, hi = 1 << (bit_size - 1), 1 << bit_size
    if bit_size <= EXHAUSTIVE_MAX_BITS:
        return [p for p in primes_in_range(lo, hi) if p > 3 and p % 4 == residue], False
    rng = _sampling_rng(seed, bit_size, residue)
    found: set[int] = set()
    while len(found) < sample:
        candidate = rng.randrange(lo // 4, hi // 4) * 4 + residue
        if lo <= candidate < hi and candidate not in found and is_prime(candidate):
            found.add(candidate)
    return sorted(found), True


def _prime_stats(task: tuple[int, bool]) -> tuple[bool, int, float, float] | tuple[bool]:
    p, want_census = task
    maximal = is_maximal_prime(p).is_maximal
    if not want_census:
        return (maximal,)
    result = census(p)
    cycles = result.cycle_count()
    states = result.state_count()
    per_seed = sum(r.cycles * r.period * r.period for r in result.rows) / states
    return maximal, cycles, states / cycles, per_seed


def cmd_sweep(args: argparse.Namespace) -> int:
    if not 3 <= args.n_min <= args.n_max:
        raise DomainError(f"need 3 <= n_min <= n_max, got {args.n_min}..{args.n_max}")
    residues = {"3mod4": [3], "1mod4": [1], "both": [3, 1]}[args.prime_class]
    want_census = args.kind in ("cycles", "periods")
    jobs = max(1, int(os.environ.get(_JOBS_ENV, "1")))
    deadline = time.monotonic() + args.budget_seconds if args.budget_seconds else None
    rows: list[SweepRow] = []
    truncated = False
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for bit_size in range(args.n_min, args.n_max + 1):
            for residue in residues:
                if deadline is not None and time.monotonic() > deadline:
                    truncated = True
                    break
                primes, _sampled = _primes_for_cell(bit_size, residue, args.sample, args.seed)
                tasks = [(p, want_census) for p in primes]
                if pool is not None:
                    stats = list(pool.map(_prime_stats, tasks, chunksize=64))
                else:
                    stats = [_prime_stats(task) for task in tasks]
                n = len(stats)
                pct = 100.0 * sum(1 for s in stats if s[0]) / n if n else 0.0
                label = f"{residue}mod4"
                if want_census and n:
                    rows.append(
                        SweepRow(
                            bit_size=bit_size,
                            prime_class=label,
                            primes_tested=n,
                            pct_maximal=pct,
                            mean_cycles=sum(s[1] for s in stats) / n,
                            mean_period_per_cycle=sum(s[2] for s in stats) / n,
                            mean_period_per_seed=sum(s[3] for s in stats) / n,
                        )
                    )
                else:
                    rows.append(
                        SweepRow(
                            bit_size=bit_size,
                            prime_class=label,
                            primes_tested=n,
                            pct_maximal=pct,
                            mean_cycles=None,
                            mean_period_per_cycle=None,
                            mean_period_per_seed=None,
                        )
                    )
            if truncated:
                break
    finally:
        if pool is not None:
            pool.shutdown()
    pairs: list[tuple[str, object]] = [
        ("kind", args.kind),
        ("bits", f"{args.n_min}..{args.n_max}"),
        ("classes", args.prime_class),
        ("enumeration", f"exhaustive for N <= {EXHAUSTIVE_MAX_BITS}, else {args.sample} sampled primes per cell"),
        ("sampling_seed", args.seed),
        ("mean_period_per_cycle", "mean over primes of (IV states / cycle count)"),
        ("mean_period_per_seed", "mean over primes of sum(n_d * c_d^2) / IV states"),
    ]
    if truncated:
        pairs.append(("truncated", "budget exceeded; output is partial"))
    if args.format == "json":
        payload = {
            "kind": args.kind,
            "sampling_seed": args.seed,
            "truncated": truncated,
            "rows": [asdict(row) for row in rows],
        }
        lines = _json_dump(payload)
    else:
        lines = _meta("sweep", pairs)
        lines.append(
            "bit_size,prime_class,primes_tested,pct_maximal,mean_cycles,mean_period_per_cycle,mean_period_per_seed"
        )
        for row in rows:
            lines.append(
                ",".join(
                    _fmt(v)
                    for v in (
                        row.bit_size,
                        row.prime_class,
                        row.primes_tested,
                        row.pct_maximal,
                        row.mean_cycles,
                        row.mean_period_per_cycle,
                        row.mean_period_per_seed,
                    )
                )
            )
    _emit(lines, args.out)
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser, formats: tuple[str, ...], default: str) -> None:
    parser.add_argument("--format", choices=formats, default=default)
    parser.add_argument("--out", default=None, help="write output to FILE instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quadorbit", description=__doc__)
    parser.add_argument("--version", action="version", version=f"quadorbit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_orbit = sub.add_parser("orbit", help="tail and cycle of one orbit, optionally with prediction")
    p_orbit.add_argument("--p", type=int, required=True)
    p_orbit.add_argument("--seed", type=int, required=True)
    p_orbit.add_argument("--kind", choices=("logistic", "dickson2", "logistic-general"), default="logistic")
    p_orbit.add_argument("--mu", type=int, default=None, help="control parameter for logistic-general")
    p_orbit.add_argument("--max-steps", type=int, default=None)
    p_orbit.add_argument("--predict", action="store_true", help="cross-check against the analytic prediction")
    _add_common(p_orbit, ("text", "csv", "json"), "text")
    p_orbit.set_defaults(func=cmd_orbit)

    p_ivset = sub.add_parser("ivset", help="the long-period initial-value set of F_p")
    p_ivset.add_argument("--p", type=int, required=True)
    _add_common(p_ivset, ("csv", "json"), "csv")
    p_ivset.set_defaults(func=cmd_ivset)

    p_fibers = sub.add_parser("fibers", help="four-to-one parameter fibers over the initial-value set")
    p_fibers.add_argument("--p", type=int, required=True)
    _add_common(p_fibers, ("csv", "json"), "csv")
    p_fibers.set_defaults(func=cmd_fibers)

    p_census = sub.add_parser("census", help="predicted cycle structure, optionally checked by brute force")
    p_census.add_argument("--p", type=int, required=True)
    p_census.add_argument("--brute", action="store_true", help="cross-check against exhaustive orbit walking")
    _add_common(p_census, ("csv", "json"), "csv")
    p_census.set_defaults(func=cmd_census)

    p_sweep = sub.add_parser("sweep", help="aggregate statistics per bit size and prime class")
    p_sweep.add_argument("--kind", choices=("maximal", "cycles", "periods"), required=True)
    p_sweep.add_argument("--n-min", type=int, required=True)
    p_sweep.add_argument("--n-max", type=int, required=True)
    p_sweep.add_argument("--class", dest="prime_class", choices=("3mod4", "1mod4", "both"), default="both")
    p_sweep.add_argument("--sample", type=int, default=200, help="primes per cell above the exhaustive range")
    p_sweep.add_argument("--seed", type=int, default=0, help="sampling seed, recorded in the output")
    p_sweep.add_argument("--budget-seconds", type=float, default=None)
    _add_common(p_sweep, ("csv", "json"), "csv")
    p_sweep.set_defaults(func=cmd_sweep)

    p_lcp = sub.add_parser("lcp", help="linear complexity profile, optionally with the lower-bound curves")
    p_lcp.add_argument("--p", type=int, required=True)
    p_lcp.add_argument("--seed", type=int, default=None, help="defaults to the smallest initial-value element")
    p_lcp.add_argument("--n-max", type=int, default=None, help="defaults to twice the period")
    p_lcp.add_argument("--bounds", action="store_true")
    _add_common(p_lcp, ("csv", "json"), "csv")
    p_lcp.set_defaults(func=cmd_lcp)

    p_safe = sub.add_parser("safeprimes", help="2-safe primes (or the p = 2*p1 - 1 analogue)")
    p_safe.add_argument("--limit", type=int, required=True)
    p_safe.add_argument("--analogous", action="store_true")
    _add_common(p_safe, ("text", "csv", "json"), "text")
    p_safe.set_defaults(func=cmd_safeprimes)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, BudgetExceededError) as exc:
        print(f"quadorbit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
