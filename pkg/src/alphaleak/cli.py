"""Command-line front end: ``alphaleak measure | adversary | verify``.

Exit status is 0 on success, 1 for bad input (unreadable or invalid problem
files, malformed flags) and 2 when verification fails.
"""

import argparse
import csv
import enum
import logging
import math
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Optional

from .errors import AlphaLeakError, ParseError, VerificationFailure
from .gain import check_order
from .leakage import (
    alpha_leakage,
    arimoto_mi,
    leakage_report,
    live_outputs,
    maximal_leakage,
    optimal_phi,
    pointwise_maximal_leakage,
    sibson_mi,
    y_elementary_leakage,
)
from .oracle.grid import parse_resolution
from .problem import ProblemSpec, dump_problem, parse_problem  # noqa: F401 (re-exported)
from .verify import DEFAULT_ALPHAS, corrupted_maximizer, run_verify

log = logging.getLogger("alphaleak")

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2
LN2 = math.log(2.0)
CSV_HEADER = ("alpha", "measure", "y", "value_nats", "value_bits")


class Measure(enum.Enum):
    RENYI_DIV_Y = "renyi_div_y"
    SIBSON = "sibson"
    ARIMOTO = "arimoto"
    ALPHA_LEAKAGE = "alpha_leakage"
    PML = "pml"
    MAXIMAL_LEAKAGE = "maximal_leakage"


MEASURE_ORDER = {m: i for i, m in enumerate(Measure)}
DEFAULT_MEASURES = frozenset({Measure.RENYI_DIV_Y, Measure.SIBSON, Measure.PML})
# Measures defined only at alpha = inf; they are reported once, under "inf".
INF_ONLY = frozenset({Measure.PML, Measure.MAXIMAL_LEAKAGE})


@dataclass(frozen=True)
class ReportRow:
    alpha: str
    measure: Measure
    y: Optional[str]
    value_nats: float
    value_bits: float


def format_number(x):
    """12 significant digits; ``inf``/``-inf``/``nan`` spelled out; no negative zero."""
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return "%.12g" % (0.0 if x == 0 else x)


def format_alpha(alpha):
    return "inf" if math.isinf(alpha) else format_number(alpha)


def parse_alphas(text):
    """``"0,0.5,1,2,inf"`` -> sorted, de-duplicated orders."""
    out = set()
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            out.add(check_order(float(item)))
        except (ValueError, AlphaLeakError):
            raise ParseError(f"invalid order {item!r}: expected a number >= 0 or 'inf'") from None
    if not out:
        raise ParseError("at least one order is required")
    return sorted(out)


def parse_measures(text):
    out = set()
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            out.add(Measure(item))
        except ValueError:
            names = ", ".join(m.value for m in Measure)
            raise ParseError(f"unknown measure {item!r}; choose from {names}") from None
    if not out:
        raise ParseError("at least one measure is required")
    return out


def _row(alpha, measure, y, nats):
    return ReportRow(format_alpha(alpha), measure, y, nats, nats / LN2)


def run_measure(spec, alphas, measures=DEFAULT_MEASURES, base="nats"):
    """Evaluate ``measures`` at every order in ``alphas``.

    Per-output rows are produced for ``renyi_div_y`` and ``pml``. ``pml`` and
    ``maximal_leakage`` are alpha = inf quantities and appear once each under
    ``inf`` whatever the grid. ``alpha_leakage`` exists only for finite
    positive orders; other orders are skipped with a warning. ``base`` only
    names the caller's preferred unit: rows always carry both.
    """
    if base not in ("nats", "bits"):
        raise ParseError(f"unknown base {base!r}")
    if not alphas:
        raise ParseError("at least one order is required")
    prior, channel = spec.prior, spec.channel
    ys = live_outputs(prior, channel)
    rows = []
    for m in measures:
        if m in INF_ONLY:
            if m is Measure.PML:
                rows += [_row(math.inf, m, y, pointwise_maximal_leakage(prior, channel, y))
                         for y in ys]
            else:
                rows.append(_row(math.inf, m, None, maximal_leakage(prior, channel)))
            continue
        for a in alphas:
            if m is Measure.RENYI_DIV_Y:
                rows += [_row(a, m, y, y_elementary_leakage(prior, channel, y, a)) for y in ys]
            elif m is Measure.SIBSON:
                rows.append(_row(a, m, None, sibson_mi(prior, channel, a)))
            elif m is Measure.ARIMOTO:
                rows.append(_row(a, m, None, arimoto_mi(prior, channel, a)))
            elif m is Measure.ALPHA_LEAKAGE:
                if a == 0 or math.isinf(a):
                    log.warning("alpha_leakage is undefined at alpha=%s; skipped", format_alpha(a))
                    continue
                rows.append(_row(a, m, None, alpha_leakage(prior, channel, a)))
    y_index = {y: i for i, y in enumerate(channel.output_labels)}
    rows.sort(key=lambda r: (MEASURE_ORDER[r.measure], float(r.alpha),
                             -1 if r.y is None else y_index[r.y]))
    return rows


@contextmanager
def _open_out(out):
    if out is None or out == "-":
        yield sys.stdout
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            yield fh


def emit_csv(rows, out=None):
    """Write ``rows`` as CSV to the path ``out``, or to standard output."""
    with _open_out(out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in rows:
            w.writerow((r.alpha, r.measure.value, "" if r.y is None else r.y,
                        format_number(r.value_nats), format_number(r.value_bits)))


def emit_adversary(spec, alphas, base, out=None):
    """Optimal strategy rows: ``alpha, y, leakage, P(xhat | y)`` per input symbol."""
    unit = LN2 if base == "bits" else 1.0
    with _open_out(out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("alpha", "y", f"leakage_{base}") + tuple(spec.prior.labels))
        for a in alphas:
            rep = leakage_report(spec.prior, spec.channel, a)
            for y in rep.strategy.input_labels:
                probs = rep.strategy.rows[rep.strategy.input_labels.index(y)]
                w.writerow((format_alpha(a), y, format_number(rep.per_y[y] / unit))
                           + tuple(format_number(v) for v in probs))
            for y in rep.dropped_outputs:
                log.warning("output %s has zero probability; no strategy row", y)


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with the input-error status rather than argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="alphaleak", description="Order-alpha leakage measures.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, alphas_default):
        p.add_argument("--input", required=True, metavar="PATH", help="problem JSON document")
        p.add_argument("--alphas", default=alphas_default, metavar="LIST",
                       help="comma-separated orders, 'inf' allowed (default: %(default)s)")
        p.add_argument("--output", metavar="PATH", help="write here instead of standard output")

    m = sub.add_parser("measure", help="leakage measures as CSV")
    common(m, "0,0.5,1,2,inf")
    m.add_argument("--measures", default="renyi_div_y,sibson,pml", metavar="LIST",
                   help="from: " + ", ".join(x.value for x in Measure) + " (default: %(default)s)")
    m.add_argument("--base", choices=("nats", "bits"), default="nats")

    a = sub.add_parser("adversary", help="optimal adversary strategies as CSV")
    common(a, "0,0.5,1,2,inf")
    a.add_argument("--base", choices=("nats", "bits"), default="nats",
                   help="unit of the leakage column")

    v = sub.add_parser("verify", help="check every property with independent oracles")
    common(v, ",".join(format_alpha(x) for x in DEFAULT_ALPHAS))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--grid-res", default="1/1000", metavar="1/K")
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--fault", choices=("maximizer",), help=argparse.SUPPRESS)
    return parser


def _verify(args, spec, alphas):
    if args.trials < 0:
        raise ParseError("--trials must be non-negative")
    maximizer = corrupted_maximizer if args.fault == "maximizer" else optimal_phi
    report = run_verify(spec, alphas, seed=args.seed, grid_res=parse_resolution(args.grid_res),
                        trials=args.trials, maximizer=maximizer)
    with _open_out(args.output) as fh:
        fh.write(report.render())
    report.raise_for_failure()


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        spec = parse_problem(args.input)
        alphas = parse_alphas(args.alphas)
        if args.command == "measure":
            rows = run_measure(spec, alphas, parse_measures(args.measures), args.base)
            emit_csv(rows, args.output)
        elif args.command == "adversary":
            emit_adversary(spec, alphas, args.base, args.output)
        else:
            _verify(args, spec, alphas)
    except VerificationFailure as exc:
        print(f"alphaleak: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (AlphaLeakError, OSError) as exc:
        print(f"alphaleak: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
