"""Command-line front end.

Subcommands dispatch the library operations and write one CSV or JSON
document with the fixed report schema.  Exit codes: 2 usage error,
3 numeric-range rejection, 4 quadrature non-convergence, 5 tainted
simulation.
"""

import argparse
import csv
import io
import json
import sys

from .asymptotics import leading_expectation
from .errors import (
    AmbiguousRareError,
    DixieError,
    LawParseError,
    QuadratureConvergenceError,
    StateSpaceError,
    TaintedSimulationError,
    WeightRangeError,
)
from .experiments import (
    REPORT_COLUMNS,
    RunReport,
    study_figure1,
    study_schur,
    study_table1,
    study_theorem1,
)
from .montecarlo import (
    SimulationConfig,
    interarrival_stats,
    simulate_summary,
)
from .quadrature import (
    CollectorQuery,
    QuadratureConfig,
    exact_rising_moment,
    markov_oracle,
    theorem1_estimate,
)
from .weights import (
    InterlacedFamily,
    interlace,
    parse_law,
    single_law_distribution,
)

EXIT_USAGE = 2
EXIT_RANGE = 3
EXIT_QUADRATURE = 4
EXIT_TAINTED = 5


def format_value(v):
    if v is None:
        return ""
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def write_report_csv(report, stream):
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(REPORT_COLUMNS)
    for row in report.rows:
        w.writerow([format_value(v) for v in row.as_tuple()])


def write_report_json(report, stream):
    docs = []
    for row in report.rows:
        docs.append(
            {
                c: (format_value(v) if isinstance(v, float) else v)
                for c, v in zip(REPORT_COLUMNS, row.as_tuple())
            }
        )
    json.dump(docs, stream, indent=2)
    stream.write("\n")


_INT_COLUMNS = {"M", "N", "m", "r"}


def read_report_csv(stream):
    """Parse a report CSV back into column-keyed dicts (round-trip aid)."""
    reader = csv.reader(stream)
    header = next(reader)
    if tuple(header) != REPORT_COLUMNS:
        raise ValueError(f"unexpected report header {header!r}")
    out = []
    for raw in reader:
        rec = {}
        for col, cell in zip(header, raw):
            if cell == "":
                rec[col] = None
            elif col in _INT_COLUMNS:
                rec[col] = int(cell)
            elif col in ("study_id", "family"):
                rec[col] = cell
            else:
                rec[col] = float(cell)
        out.append(rec)
    return out


def _family_args(p, need_m=True):
    p.add_argument("--beta", help="first subfamily law, e.g. uniform")
    p.add_argument("--delta", help="second subfamily law, e.g. zipf:p=1")
    p.add_argument("--eta", help="third subfamily law")
    p.add_argument(
        "--law",
        action="append",
        default=None,
        help="ordered subfamily law (repeatable; alternative to "
        "--beta/--delta/--eta)",
    )
    p.add_argument("--rare", type=int, default=None,
                   help="index of the rare subfamily (default: the unique "
                   "decaying one)")
    if need_m:
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--M", type=int, help="coupons per subfamily")
        g.add_argument("--N", type=int,
                       help="total coupons (must divide by the subfamily "
                       "count)")


def _out_args(p):
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _quad_args(p):
    p.add_argument("--rel-tol", type=float, default=1e-8)
    p.add_argument("--max-subdivisions", type=int, default=2000)


def _parse_laws(args):
    tokens = []
    if args.law:
        tokens = list(args.law)
    else:
        for name in ("beta", "delta", "eta"):
            tok = getattr(args, name)
            if tok is not None:
                tokens.append(tok)
    if not tokens:
        raise LawParseError(
            "no subfamily laws given (use --beta/--delta or --law)"
        )
    return tuple(parse_law(t) for t in tokens)


def _parse_family(args):
    laws = _parse_laws(args)
    size = args.M
    if size is None:
        if args.N % len(laws) != 0:
            raise LawParseError(
                f"--N {args.N} not divisible by {len(laws)} subfamilies"
            )
        size = args.N // len(laws)
    return InterlacedFamily(laws, size, args.rare)


def _quad_config(args):
    return QuadratureConfig(
        rel_tol=args.rel_tol, max_subdivisions=args.max_subdivisions
    )


def _emit(report, args):
    writer = write_report_csv if args.format == "csv" else write_report_json
    if args.out:
        with open(args.out, "w", newline="") as fh:
            writer(report, fh)
    else:
        buf = io.StringIO()
        writer(report, buf)
        sys.stdout.write(buf.getvalue())


def _cmd_exact(args):
    fam = _parse_family(args)
    dist = interlace(fam)
    res = exact_rising_moment(
        dist, CollectorQuery(m=args.m, r=args.r), _quad_config(args)
    )
    report = RunReport()
    report.add(
        study_id="exact", family=fam.spec(), M=fam.size, N=fam.n_types,
        m=args.m, r=args.r, exact=res.value,
    )
    return report


def _cmd_simulate(args):
    fam = _parse_family(args)
    dist = interlace(fam)
    summary = simulate_summary(
        dist, args.m, SimulationConfig(args.trials, args.seed, args.draw_cap)
    ).require_clean()
    value = summary.mean if args.r == 1 else summary.second_rising
    report = RunReport()
    report.add(
        study_id="simulate", family=fam.spec(), M=fam.size, N=fam.n_types,
        m=args.m, r=args.r, simulated=value, sim_stderr=summary.stderr,
    )
    return report


def _cmd_asymptotic(args):
    fam = _parse_family(args)
    lead = leading_expectation(fam, args.m)
    report = RunReport()
    report.add(
        study_id="asymptotic", family=fam.spec(), M=fam.size,
        N=fam.n_types, m=args.m, r=1, asymptotic=lead.value_at(fam.size),
    )
    return report


def _cmd_compare(args):
    fam = _parse_family(args)
    dist = interlace(fam)
    cfg = _quad_config(args)
    exact = exact_rising_moment(dist, CollectorQuery(m=args.m), cfg).value
    summary = simulate_summary(
        dist, args.m, SimulationConfig(args.trials, args.seed, args.draw_cap)
    ).require_clean()
    lead = leading_expectation(fam, args.m).value_at(fam.size)
    report = RunReport()
    report.add(
        study_id="compare", family=fam.spec(), M=fam.size, N=fam.n_types,
        m=args.m, r=1, exact=exact, simulated=summary.mean,
        sim_stderr=summary.stderr, asymptotic=lead,
        ratio_exact_over_asymptotic=exact / lead,
    )
    return report


def _cmd_theorem1_single(args):
    fam = _parse_family(args)
    estimate = theorem1_estimate(fam, args.m, _quad_config(args))
    report = RunReport()
    report.add(
        study_id="theorem1:product", family=fam.spec(), M=fam.size,
        N=fam.n_types, m=args.m, r=1, asymptotic=estimate,
    )
    return report


def _cmd_theorem1(args):
    laws = _parse_laws(args)
    sizes = args.sizes or [25, 50, 100, 200]
    return study_theorem1(
        laws, m=args.m, sizes=sizes, rare_index=args.rare,
        qcfg=_quad_config(args),
    )


def _cmd_oracle(args):
    law = parse_law(args.dist)
    dist = single_law_distribution(law, args.N)
    value = markov_oracle(dist, CollectorQuery(m=args.m, r=args.r))
    report = RunReport()
    report.add(
        study_id="oracle", family=law.spec(), N=args.N, m=args.m,
        r=args.r, exact=value,
    )
    return report


def _cmd_interarrival(args):
    fam = _parse_family(args)
    stats = interarrival_stats(fam, args.draws, args.seed)
    report = RunReport()
    report.add(
        study_id="interarrival:mean", family=fam.spec(), M=fam.size,
        N=fam.n_types, exact=stats.expected_mean,
        simulated=stats.sample_mean,
        ratio_exact_over_asymptotic=stats.sample_mean / stats.expected_mean,
    )
    report.add(
        study_id="interarrival:var", family=fam.spec(), M=fam.size,
        N=fam.n_types, exact=stats.expected_var,
        simulated=stats.sample_var,
        ratio_exact_over_asymptotic=stats.sample_var / stats.expected_var,
    )
    return report


def _cmd_figure1(args):
    return study_figure1(m=args.m, trials=args.trials, seed=args.seed)


def _cmd_schur(args):
    return study_schur(r_moment=args.r, m=args.m)


def _cmd_table1(args):
    return study_table1(m=args.m)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dixie",
        description="Exact, simulated, and asymptotic stopping times for "
        "interlaced coupon collection.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        _out_args(p)
        return p

    p = add("exact", _cmd_exact, "exact expectation / rising moment")
    _family_args(p)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--r", type=int, default=1)
    _quad_args(p)

    p = add("simulate", _cmd_simulate, "Monte Carlo summary")
    _family_args(p)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--r", type=int, choices=(1, 2), default=1)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--draw-cap", type=int, default=10**9)

    p = add("asymptotic", _cmd_asymptotic, "leading-term value")
    _family_args(p)
    p.add_argument("--m", type=int, default=1)

    p = add("compare", _cmd_compare, "exact + simulated + leading term")
    _family_args(p)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--draw-cap", type=int, default=10**9)
    _quad_args(p)

    p = add("estimate", _cmd_theorem1_single,
            "rare-subfamily product estimate at one size")
    _family_args(p)
    p.add_argument("--m", type=int, default=1)
    _quad_args(p)

    p = add("theorem1", _cmd_theorem1,
            "product-estimate convergence study over an M grid")
    _family_args(p, need_m=False)
    p.add_argument("--sizes", type=int, nargs="+", default=None)
    p.add_argument("--m", type=int, default=1)
    _quad_args(p)

    p = add("oracle", _cmd_oracle, "exact small-N chain oracle")
    p.add_argument("--dist", required=True, help="law spec, e.g. uniform")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--r", type=int, choices=(1, 2), default=1)

    p = add("interarrival", _cmd_interarrival,
            "rare-coupon interarrival moments")
    _family_args(p)
    p.add_argument("--draws", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)

    p = add("figure1", _cmd_figure1, "simulation vs exact vs leading term")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=int, default=20240917)

    p = add("schur", _cmd_schur, "uniform-is-best ordering experiment")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--r", type=int, default=1)

    p = add("table1", _cmd_table1, "leading-term ratio table")
    p.add_argument("--m", type=int, default=1)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.fn(args)
        _emit(report, args)
    except (LawParseError, AmbiguousRareError) as exc:
        print(f"dixie: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (WeightRangeError, StateSpaceError, ValueError) as exc:
        print(f"dixie: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except QuadratureConvergenceError as exc:
        print(
            f"dixie: {exc} (partial value {exc.partial_value:.12g}, "
            f"error estimate {exc.est_error:.3g})",
            file=sys.stderr,
        )
        return EXIT_QUADRATURE
    except TaintedSimulationError as exc:
        print(f"dixie: {exc}", file=sys.stderr)
        return EXIT_TAINTED
    except DixieError as exc:
        print(f"dixie: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
