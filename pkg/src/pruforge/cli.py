"""Command-line front end.

Exit codes: 0 success, 1 usage or parameter error, 2 Monte Carlo FAIL,
verification failure, or a failed bound check.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from fractions import Fraction
from pathlib import Path

from . import density, prugen
from .errors import ParameterError, PruforgeError
from .numtheory import PrimalityConfig
from .sampling import RandomStream, default_seed, parse_seed

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAIL = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def _nat(text: str) -> int:
    try:
        value = int(text, 0) if text.lower().startswith("0x") else int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {text!r}")
    return value


def _positive(text: str) -> int:
    value = _nat(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _seed(text: str) -> int:
    try:
        return parse_seed(text)
    except PruforgeError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="pruforge",
        description="Generate (p, q, omega) with p | q - 1 and omega of order p mod q; "
        "measure prime density in 2kp + 1.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a triple")
    lam = g.add_mutually_exclusive_group(required=True)
    lam.add_argument("--lambda-bits", type=_positive, help="lambda = 2**B")
    lam.add_argument("--lambda-dec", type=_nat, help="lambda as an exact decimal")
    g.add_argument("--epsilon", type=_rational, required=True)
    g.add_argument("--practical", action="store_true",
                   help="allow lambda below the rigorous threshold")
    g.add_argument("--seed", type=_seed)
    g.add_argument("--rounds", type=_positive, default=64)
    g.add_argument("--json", default="-", metavar="PATH", help="output file, '-' for stdout")

    v = sub.add_parser("verify", help="check a triple")
    v.add_argument("--p", type=_nat)
    v.add_argument("--q", type=_nat)
    v.add_argument("--omega", type=_nat)
    v.add_argument("--lambda", dest="lam", type=_nat)
    v.add_argument("--json", metavar="PATH", help="read the triple from JSON ('-' for stdin)")
    v.add_argument("--rounds", type=_positive, default=64)

    m = sub.add_parser("min-lambda", help="rigorous lambda thresholds")
    m.add_argument("--epsilon", type=_rational)
    m.add_argument("--mu", type=_rational)
    m.add_argument("--ln-k", type=_rational)

    d = sub.add_parser("density", help="prime proportion sweep by bitsize")
    d.add_argument("--bits-lo", type=_positive, required=True)
    d.add_argument("--bits-hi", type=_positive, required=True)
    d.add_argument("--exact-max-bits", type=_nat, default=14)
    d.add_argument("--samples", type=_positive, default=density.MIN_SAMPLES)
    d.add_argument("--seed", type=_seed, required=True)
    d.add_argument("--csv", required=True, metavar="PATH")
    d.add_argument("--records", metavar="PATH", help="per-prime records CSV")
    d.add_argument("--plot", metavar="PATH",
                   help="p,proportion file (default: CSV path with _plot suffix)")
    d.add_argument("--jobs", type=_positive, default=1)
    d.add_argument("--rounds", type=_positive, default=64)

    r = sub.add_parser("rs62", help="count primes in (lambda, 2 lambda) against (3/5) lambda / ln lambda")
    r.add_argument("--lambda", dest="lam", type=_nat, required=True)
    return parser


def _emit(text: str, path: str | None, out):
    if path is None or path == "-":
        out.write(text)
    else:
        Path(path).write_text(text)


def _cmd_gen(args, out, err) -> int:
    lam = 2**args.lambda_bits if args.lambda_bits is not None else args.lambda_dec
    seed = args.seed if args.seed is not None else default_seed()
    print(f"seed: {seed}", file=err)
    outcome = prugen.generate(
        lam, args.epsilon, RandomStream(seed), allow_practical=args.practical,
        cfg=PrimalityConfig(args.rounds),
    )
    if not outcome.ok:
        print(f"FAIL {outcome.stage}", file=out)
        return EXIT_FAIL
    _emit(outcome.triple.to_json() + "\n", args.json, out)
    return EXIT_OK


def _cmd_verify(args, out, err) -> int:
    if args.json is not None:
        text = sys.stdin.read() if args.json == "-" else Path(args.json).read_text()
        t = prugen.PruTriple.from_json(text)
    else:
        missing = [n for n in ("p", "q", "omega", "lam") if getattr(args, n) is None]
        if missing:
            raise _UsageError("verify needs --p, --q, --omega and --lambda, or --json")
        t = prugen.PruTriple(args.p, args.q, args.omega, args.lam)
    ok = prugen.verify_triple(t, PrimalityConfig(args.rounds))
    print("true" if ok else "false", file=out)
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_min_lambda(args, out, err) -> int:
    if args.epsilon is not None:
        if args.mu is not None or args.ln_k is not None:
            raise _UsageError("use either --epsilon or --mu with --ln-k")
        value = prugen.min_lambda(args.epsilon)
    elif args.mu is not None and args.ln_k is not None:
        value = prugen.min_lambda_for_coprime(args.mu, args.ln_k)
    else:
        raise _UsageError("min-lambda needs --epsilon, or --mu with --ln-k")
    print(f"min_lambda {value}", file=out)
    print(f"bit_length {value.bit_length()}", file=out)
    return EXIT_OK


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _cmd_density(args, out, err) -> int:
    print(f"seed: {args.seed}", file=err)
    res = density.run_bitsize_sweep(
        args.bits_lo, args.bits_hi, args.seed,
        exact_max_bits=args.exact_max_bits, n_samples=args.samples,
        jobs=args.jobs, cfg=PrimalityConfig(args.rounds),
    )
    f6 = lambda x: density.format_fixed(x, 6)  # noqa: E731
    table = _csv_text(
        ["bitsize", "n_primes", "min", "avg", "max", "theory"],
        [[r.bitsize, r.n_primes, f6(r.min), f6(r.avg), f6(r.max), f6(r.theory)] for r in res.rows],
    )
    _emit(table, args.csv, out)
    plot_path = args.plot
    if plot_path is None and args.csv != "-":
        p = Path(args.csv)
        plot_path = str(p.with_name(p.stem + "_plot" + (p.suffix or ".csv")))
    if plot_path is not None:
        _emit(_csv_text(["p", "proportion"], [[r.p, f6(r.proportion)] for r in res.records]),
              plot_path, out)
    if args.records is not None:
        rows = [
            [r.p, r.bitsize, r.candidates, r.hits, f6(r.proportion), r.method,
             "" if r.seed is None else r.seed]
            for r in res.records
        ]
        _emit(_csv_text(["p", "bitsize", "candidates", "hits", "proportion", "method", "seed"], rows),
              args.records, out)
    return EXIT_OK


def _cmd_rs62(args, out, err) -> int:
    res = density.rs62_check(args.lam)
    print(f"count {res.count}", file=out)
    print(f"bound {res.bound:.6f}", file=out)
    print(f"ok {'true' if res.ok else 'false'}", file=out)
    return EXIT_OK if res.ok else EXIT_FAIL


_COMMANDS = {
    "gen": _cmd_gen,
    "verify": _cmd_verify,
    "min-lambda": _cmd_min_lambda,
    "density": _cmd_density,
    "rs62": _cmd_rs62,
}


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args, out, err)
    except _UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except ParameterError as exc:
        print(f"pruforge: parameter error: {exc}", file=err)
        return EXIT_USAGE
    except (PruforgeError, OSError) as exc:
        print(f"pruforge: error: {exc}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
