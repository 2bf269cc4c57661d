"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 verification failure,
3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from . import engine, monomial, verify
from .linalg import image_chain, naive_chain
from .report import ReportDoc, dat_lines, frac_str, json_int, metadata, to_csv
from .ring import (CapacityError, ParseError, Polynomial, check_capacity, default_capacity,
                   parse_polynomial, truncate, variables_used)

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_CAPACITY = 0, 1, 2, 3
COMMANDS = ("table", "xi", "estimates", "pair", "monomial", "verify", "bench")


class UsageError(ValueError):
    pass


class VerificationFailed(RuntimeError):
    def __init__(self, doc: ReportDoc):
        super().__init__("verification failed")
        self.doc = doc


@dataclass
class RunConfig:
    command: str
    f: str | None = None
    nvars: int | None = None
    p: int | None = None
    e_range: tuple[int, int] | None = None
    t_values: list[Fraction] = field(default_factory=list)
    alpha_points: list[Fraction] = field(default_factory=list)
    exponents: list[int] | None = None
    fmt: str = "csv"
    out: str | None = None
    capacity: int = field(default_factory=default_capacity)
    seed: int | None = None
    corrupt: bool = False

    def polynomial(self) -> Polynomial:
        if self.f is None or self.p is None:
            raise UsageError("--f and --p are required")
        nvars = self.nvars or max(2, variables_used(self.f))
        return parse_polynomial(self.f, nvars, self.p)

    def e_values(self) -> range:
        if self.e_range is None:
            raise UsageError("--e is required")
        lo, hi = self.e_range
        return range(lo, hi + 1)

    def meta(self, nvars: int | None = None) -> dict:
        return metadata(self.command, self.f, self.p, nvars or self.nvars, self.e_range, self.capacity)


def parse_e(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = (int(s) for s in text.split("..", 1))
    else:
        lo = hi = int(text)
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"empty or negative e range {text!r}")
    return lo, hi


def parse_rationals(text: str) -> list[Fraction]:
    out = []
    for part in text.split(","):
        try:
            x = Fraction(part.strip())
        except (ValueError, ZeroDivisionError):
            raise argparse.ArgumentTypeError(f"not a rational: {part!r}") from None
        if not 0 <= x <= 1:
            raise argparse.ArgumentTypeError(f"{part} is outside [0, 1]")
        out.append(x)
    return out


def _estimate_range(config: RunConfig) -> tuple[int, int]:
    # a single --e k means e = 1..k for the estimate sequences
    lo, hi = config.e_range or (1, 1)
    return (1, hi) if lo == hi else (max(lo, 1), hi)


# ---------------------------------------------------------------------------
# commands


def _table_dict(table: engine.LengthTable) -> dict:
    return {
        "e": table.e,
        "mu": table.mu,
        "lengths": [json_int(v) for v in table.lengths],
        "c": [frac_str(engine.c_value(table, t)) for t in range(table.mu)],
        "total": json_int(sum(table.lengths)),
    }


def cmd_table(config: RunConfig) -> ReportDoc:
    f = config.polynomial()
    doc = ReportDoc("table", config.meta(f.nvars))
    for e in config.e_values():
        check_capacity(f.p, e, f.nvars, config.capacity)
        doc.tables.append(_table_dict(engine.length_table(f, e, capacity=config.capacity)))
    return doc


def cmd_xi(config: RunConfig) -> ReportDoc:
    f = config.polynomial()
    doc = ReportDoc("xi", config.meta(f.nvars))
    for e in config.e_values():
        check_capacity(f.p, e, f.nvars, config.capacity)
        step = engine.xi_step(engine.length_table(f, e, capacity=config.capacity))
        doc.steps.append({
            "e": e,
            "breakpoints": [[frac_str(x), frac_str(y)] for x, y in step.breakpoints()],
            "value_at_one": frac_str(step.value_at_one),
        })
    for alpha in config.alpha_points:
        for e in config.e_values():
            table = engine.length_table(f, e, capacity=config.capacity)
            lower, upper = engine.bracket(table, alpha)
            doc.brackets.append({
                "alpha": frac_str(alpha),
                "e": e,
                "lower_index": math.ceil(alpha * table.q),
                "lower": frac_str(lower),
                "upper_index": math.floor(alpha * table.q) - 1,
                "upper": frac_str(upper) if upper is not None else None,
            })
    return doc


def _sequence_dict(seq: engine.EstimateSequence) -> dict:
    return {
        "kind": seq.kind,
        "monotonicity": seq.monotonicity,
        "monotone": seq.is_monotone(),
        "values": [[e, frac_str(v)] for e, v in seq.values],
        "notes": list(seq.notes),
    }


def cmd_estimates(config: RunConfig) -> ReportDoc:
    f = config.polynomial()
    lo, hi = _estimate_range(config)
    check_capacity(f.p, hi, f.nvars, config.capacity)
    doc = ReportDoc("estimates", config.meta(f.nvars))
    for fn in (engine.ehk_estimates, engine.fsig_estimates, engine.fpt_estimates):
        seq = fn(f, hi, capacity=config.capacity)
        seq = engine.EstimateSequence(seq.kind, tuple(v for v in seq.values if v[0] >= lo),
                                      seq.monotonicity, seq.notes)
        doc.estimates.append(_sequence_dict(seq))
    return doc


def cmd_pair(config: RunConfig) -> ReportDoc:
    f = config.polynomial()
    if not config.t_values:
        raise UsageError("--t is required for pair")
    doc = ReportDoc("pair", config.meta(f.nvars))
    for e in config.e_values():
        check_capacity(f.p, e, f.nvars, config.capacity)
        table = engine.length_table(f, e, capacity=config.capacity)
        for t in config.t_values:
            est = engine.pair_fsignature_estimate(f, e, t, capacity=config.capacity)
            doc.pair.append({
                "e": e,
                "t": frac_str(t),
                "exponent": engine.pair_exponent(f.p, e, t),
                "estimate": frac_str(est),
                "one_minus_phi": frac_str(1 - engine.phi_partial(table, t)),
            })
    return doc


def _monomial_spec(config: RunConfig) -> monomial.MonomialSpec:
    if config.p is None:
        raise UsageError("--p is required")
    if config.exponents is not None:
        return monomial.MonomialSpec(tuple(config.exponents), config.p)
    f = config.polynomial()
    if len(f.terms) != 1:
        raise UsageError("monomial needs --exponents or a single-term --f")
    return monomial.MonomialSpec(f.terms[0][0], config.p)


def cmd_monomial(config: RunConfig) -> ReportDoc:
    spec = _monomial_spec(config)
    poly = monomial.xi_polynomial(spec)
    cls = monomial.classify(spec)
    doc = ReportDoc("monomial", config.meta(len(spec.alphas)))
    doc.oracle = {
        "alphas": list(spec.alphas),
        "beta": monomial.elementary_symmetric(spec),
        "xi_coefficients": list(poly.coefficients),
        "xi_valid_below": frac_str(poly.valid_below),
        "ehk": frac_str(poly(0)),
        "fpt": frac_str(monomial.exact_fpt(spec)),
        "left_limit_at_fpt": frac_str(monomial.left_limit_at_fpt(spec)),
        "continuous": cls.continuous,
        "limit_exists_at_fpt": cls.limit_exists_at_fpt,
        "epsilon": asdict(cls.analysis),
        "limsup_at_fpt": frac_str(monomial.limsup_at_fpt(spec)),
        "liminf_at_fpt_derived": frac_str(monomial.liminf_at_fpt(spec)),
        "ehk_times_fpt": frac_str(monomial.hk_times_fpt(spec)),
    }
    return doc


def monomial_samples(spec: monomial.MonomialSpec, count: int = 64):
    poly = monomial.xi_polynomial(spec)
    end = poly.valid_below
    return [(end * i / count, poly(end * i / count)) for i in range(count + 1)]


def cmd_verify(config: RunConfig) -> ReportDoc:
    if config.f is not None:
        f = config.polynomial()
        e_max = config.e_range[1] if config.e_range else 2
        corpus = verify.Corpus((verify.CorpusEntry(config.f, f.p, f.nvars, e_max),))
    else:
        corpus = verify.default_corpus()
    if config.seed is not None:
        corpus = verify.Corpus(corpus.entries + tuple(verify.random_entries(config.seed)))
    results = verify.run_corpus(corpus, config.capacity, corrupt=config.corrupt)
    doc = ReportDoc("verify", config.meta())
    doc.checks = [
        {"check_id": r.check_id, "subject": r.subject, "passed": r.passed,
         "skipped": r.skipped, "witness": r.witness, "note": r.note}
        for r in results
    ]
    for r in results:
        if r.skipped:
            print(f"notice: {r.subject}: {r.note}", file=sys.stderr)
    if not verify.all_passed(results):
        raise VerificationFailed(doc)
    return doc


def _monomial_dims(spec: monomial.MonomialSpec, e: int) -> tuple[int, ...]:
    q = spec.p**e
    dims = []
    for t in range(q + 1):
        d = math.prod(max(q - t * a, 0) for a in spec.alphas)
        dims.append(d)
        if d == 0:
            break
    return tuple(dims)


def cmd_bench(config: RunConfig) -> ReportDoc:
    f = config.polynomial()
    doc = ReportDoc("bench", config.meta(f.nvars))
    spec = monomial.MonomialSpec(f.terms[0][0], f.p) if f.is_monomial else None
    if spec is None:
        print("notice: f is not a monomial; counting strategy skipped", file=sys.stderr)
    mismatch = False
    for e in config.e_values():
        check_capacity(f.p, e, f.nvars, config.capacity)
        g = truncate(f, e)
        runs = {}
        start = time.perf_counter()
        runs["incremental"] = (image_chain(g, capacity=config.capacity).dims, time.perf_counter() - start)
        start = time.perf_counter()
        runs["naive"] = (naive_chain(g, capacity=config.capacity).dims, time.perf_counter() - start)
        if spec is not None:
            start = time.perf_counter()
            runs["counting"] = (_monomial_dims(spec, e), time.perf_counter() - start)
        reference = runs["incremental"][0]
        for name, (dims, seconds) in runs.items():
            agrees = dims == reference
            mismatch = mismatch or not agrees
            doc.bench.append({"strategy": name, "e": e, "seconds": seconds, "agrees": agrees,
                              "dims": [json_int(d) for d in dims]})
    if mismatch:
        raise VerificationFailed(doc)
    return doc


HANDLERS = {
    "table": cmd_table,
    "xi": cmd_xi,
    "estimates": cmd_estimates,
    "pair": cmd_pair,
    "monomial": cmd_monomial,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


# ---------------------------------------------------------------------------
# argument handling


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fxi", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--f", help="polynomial, e.g. 'x^2 + y^3' or 'x1*x2^2*x3^3'")
    parser.add_argument("--nvars", type=int, help="number of variables (default: inferred, at least 2)")
    parser.add_argument("--p", type=int, help="prime characteristic")
    parser.add_argument("--e", type=parse_e, help="Frobenius exponent k or range a..b")
    parser.add_argument("--t", type=parse_rationals, default=[], help="rationals in [0,1] for pair")
    parser.add_argument("--alpha", type=parse_rationals, default=[],
                        help="rational points in [0,1] for xi brackets")
    parser.add_argument("--exponents", help="monomial exponents, e.g. 1,2,3")
    parser.add_argument("--format", choices=("csv", "json", "dat"), default="csv")
    parser.add_argument("--out", help="output file (csv/json) or directory (dat)")
    parser.add_argument("--capacity", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    exponents = None
    if args.exponents:
        try:
            exponents = [int(a) for a in args.exponents.split(",")]
        except ValueError:
            raise UsageError(f"bad --exponents {args.exponents!r}") from None
    return RunConfig(
        command=args.command, f=args.f, nvars=args.nvars, p=args.p, e_range=args.e,
        t_values=args.t, alpha_points=args.alpha, exponents=exponents, fmt=args.format,
        out=args.out, capacity=args.capacity if args.capacity is not None else default_capacity(),
        seed=args.seed, corrupt=args.corrupt,
    )


def _write_dat(config: RunConfig, doc: ReportDoc) -> None:
    if config.out is None:
        raise UsageError("--format dat needs --out DIRECTORY")
    outdir = Path(config.out)
    outdir.mkdir(parents=True, exist_ok=True)
    if config.command == "xi":
        for step in doc.steps:
            points = [(Fraction(x), Fraction(y)) for x, y in step["breakpoints"]]
            (outdir / f"xi_e{step['e']}.dat").write_text(dat_lines(points))
    elif config.command == "monomial":
        spec = _monomial_spec(config)
        name = "xi_poly_" + "_".join(map(str, spec.alphas)) + ".dat"
        (outdir / name).write_text(dat_lines(monomial_samples(spec)))
    else:
        raise UsageError("--format dat is only available for xi and monomial")


def emit(config: RunConfig, doc: ReportDoc) -> None:
    if config.fmt == "dat":
        _write_dat(config, doc)
        return
    text = doc.to_json() + "\n" if config.fmt == "json" else to_csv(doc)
    if config.out:
        Path(config.out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
        doc = HANDLERS[config.command](config)
        emit(config, doc)
    except VerificationFailed as exc:
        emit(config, exc.doc)
        print("verification failed", file=sys.stderr)
        return EXIT_VERIFY
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ParseError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
