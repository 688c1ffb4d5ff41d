"""Command-line interface.

Subcommands: ``measure`` (index of one data file), ``test-one`` (one-sample
group t-test), ``compare`` (two-region comparison report), ``simulate``
(preset or spec-file Monte Carlo runs), and ``tailindex`` (rank-size tail
exponent).  Exit codes: 0 success, 1 usage error, 2 data error, 3
numeric/degenerate error.
"""

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .distributions import B0, SMParams, theoretical_index
from .errors import DegenerateSampleError, DomainError, InsufficientDataError
from .grouptests import one_sample_group_test, two_sample_group_test
from .measures import Measure, Sample, estimate
from .montecarlo import (
    SimSpec,
    TestSpec,
    format_cells_text,
    resolve_workers,
    run_power_experiment,
    run_size_experiment,
    write_cells_csv,
    write_density_csv,
    z_s_density_diagnostic,
)
from .presets import preset_catalog
from .resampling import ResamplingSpec, asymptotic_test, bootstrap_test, permutation_test
from .tailindex import rank_size_estimate

# q1/q2 combinations of the regional comparison table layout
TABLE_A1_COMBOS = (
    (4, 4), (8, 8), (12, 12), (16, 16),
    (4, 3), (8, 6), (12, 9), (16, 12),
    (4, 2), (8, 4), (12, 6), (16, 8),
    (8, 2), (12, 3), (16, 4),
)


class UsageError(Exception):
    exit_code = 1


class DataError(Exception):
    exit_code = 2


class NumericError(Exception):
    exit_code = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(x):
    if x is None:
        return "-"
    if isinstance(x, float) and not np.isfinite(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.4g}"


@dataclass(frozen=True)
class IncomeFile:
    """Delimited text source: one income per row in the selected column."""

    path: str
    column: int = 1
    divisor_column: int | None = None
    delimiter: str = ","


def load_income_file(spec):
    """Parse an IncomeFile into a Sample.

    Rows whose fields do not parse as numbers are skipped and counted, with
    a summary printed to stderr; values that are not strictly positive after
    normalization are data errors naming the row.
    """
    try:
        text = Path(spec.path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {spec.path}: {exc}") from exc
    values = []
    skipped = 0
    first_bad = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split(spec.delimiter)]
        try:
            value = float(fields[spec.column - 1])
            if spec.divisor_column is not None:
                divisor = float(fields[spec.divisor_column - 1])
                if divisor <= 0:
                    raise DataError(
                        f"{spec.path}: row {lineno} has nonpositive divisor {divisor:g}"
                    )
                value /= divisor
        except (ValueError, IndexError):
            skipped += 1
            if first_bad is None:
                first_bad = (lineno, line)
            continue
        if value <= 0:
            raise DataError(f"{spec.path}: row {lineno} has nonpositive income {value:g}")
        values.append(value)
    if not values:
        where = f"row {first_bad[0]}: {first_bad[1]!r}" if first_bad else "empty file"
        raise DataError(f"{spec.path}: no parseable income values ({where})")
    if skipped:
        print(
            f"note: {spec.path}: skipped {skipped} unparseable row(s), "
            f"first at row {first_bad[0]}: {first_bad[1]!r}",
            file=sys.stderr,
        )
    return Sample(np.asarray(values), label=spec.path)


@dataclass(frozen=True)
class RegionComparisonReport:
    """Comparison of one measure across two samples, Table-A1-style rows."""

    measure: Measure
    label_i: str
    label_y: str
    estimate_i: object
    estimate_y: object
    tail_i: object
    tail_y: object
    n1: int
    n2: int
    rows: tuple  # (test label, p-value, statistic, validity or None)

    @property
    def size_ratio(self):
        return self.n1 / self.n2


def _file_args(parser, prefix="", required=True):
    dest = prefix.replace("-", "_")
    parser.add_argument(f"--{prefix}file" if prefix else "--file", required=required,
                        dest=f"{dest}file", metavar="PATH")
    parser.add_argument(f"--{prefix}column" if prefix else "--column", type=int, default=1,
                        dest=f"{dest}column", metavar="K",
                        help="1-based income column (default 1)")
    parser.add_argument(f"--{prefix}divisor-column" if prefix else "--divisor-column",
                        type=int, default=None, dest=f"{dest}divisor_column", metavar="K",
                        help="optional 1-based column dividing income (e.g. household size)")


def _income_spec(args, prefix=""):
    dest = prefix.replace("-", "_")
    return IncomeFile(
        path=getattr(args, f"{dest}file"),
        column=getattr(args, f"{dest}column"),
        divisor_column=getattr(args, f"{dest}divisor_column"),
        delimiter=args.delimiter,
    )


def _print_outcome(out):
    print(out.method)
    print(f"  statistic      = {_fmt(out.statistic)}")
    print(f"  df             = {out.df if out.df is not None else 'normal approx.'}")
    print(f"  alpha          = {_fmt(out.alpha)}")
    print(f"  critical value = {_fmt(out.critical_value)}")
    print(f"  p-value        = {_fmt(out.p_value)}")
    print(f"  reject H0      = {'yes' if out.reject else 'no'}")
    if out.ci is not None:
        print(f"  CI             = [{_fmt(out.ci[0])}, {_fmt(out.ci[1])}]")
    if out.validity is not None:
        print(f"  validity       = {out.validity}")
    if out.degenerate:
        print("  note           = degenerate zero-variance groups")


def cmd_measure(args):
    sample = load_income_file(_income_spec(args))
    est = estimate(sample, Measure.parse(args.measure))
    print(f"measure = {est.measure.label}")
    print(f"value   = {_fmt(est.value)}")
    print(f"se      = {_fmt(est.se)}")
    print(f"n       = {est.n}")
    return 0


def cmd_test_one(args):
    sample = load_income_file(_income_spec(args))
    out = one_sample_group_test(
        sample, Measure.parse(args.measure), args.q, args.null, alpha=args.alpha
    )
    _print_outcome(out)
    return 0


def _comparison_q_pairs(args):
    if args.table_a1:
        return list(TABLE_A1_COMBOS)
    if args.q1 or args.q2:
        if not (args.q1 and args.q2):
            raise UsageError("--q1 and --q2 must be given together")
        q1s = [int(s) for s in args.q1.split(",")]
        q2s = [int(s) for s in args.q2.split(",")]
        if len(q1s) != len(q2s):
            raise UsageError("--q1 and --q2 must list the same number of group counts")
        return list(zip(q1s, q2s))
    qs = [int(s) for s in args.q.split(",")]
    return [(q, q) for q in qs]


def cmd_compare(args):
    measure = Measure.parse(args.measure)
    sample_i = load_income_file(_income_spec(args, "i-"))
    sample_y = load_income_file(_income_spec(args, "y-"))
    est_i = estimate(sample_i, measure)
    est_y = estimate(sample_y, measure)
    tail_i = rank_size_estimate(sample_i, args.tail_fraction)
    tail_y = rank_size_estimate(sample_y, args.tail_fraction)
    families = [t.strip() for t in args.tests.split(",") if t.strip()]
    unknown = set(families) - {"asymptotic", "t2", "paired", "permutation", "bootstrap"}
    if unknown:
        raise UsageError(f"unknown test families: {', '.join(sorted(unknown))}")
    rows = []
    if "asymptotic" in families:
        out = asymptotic_test(est_i, est_y, d0=args.d0, alpha=args.alpha)
        rows.append(("asymptotic", out.p_value, out.statistic, None))
    for q1, q2 in _comparison_q_pairs(args):
        if "t2" in families:
            out = two_sample_group_test(
                sample_i, sample_y, measure, q1, q2, d0=args.d0, alpha=args.alpha,
                warn_small=False,
            )
            rows.append((f"q1={q1},q2={q2}", out.p_value, out.statistic, out.validity))
        if "paired" in families and q1 == q2:
            out = two_sample_group_test(
                sample_i, sample_y, measure, q1, q2, d0=args.d0, alpha=args.alpha,
                paired=True, warn_small=False,
            )
            rows.append((f"paired q={q1}", out.p_value, out.statistic, out.validity))
    if "permutation" in families:
        if args.d0:
            raise UsageError("the permutation test supports equality (--d0 0) only")
        out = permutation_test(
            sample_i, sample_y, measure, alpha=args.alpha,
            spec=ResamplingSpec("permutation", args.perm_b,
                                stream=np.random.SeedSequence((args.seed, 0))),
        )
        rows.append(("permutation", out.p_value, out.statistic, None))
    if "bootstrap" in families:
        out = bootstrap_test(
            sample_i, sample_y, measure, alpha=args.alpha, d0=args.d0,
            spec=ResamplingSpec("bootstrap", args.boot_b,
                                stream=np.random.SeedSequence((args.seed, 1))),
        )
        rows.append(("bootstrap", out.p_value, out.statistic, None))
    report = RegionComparisonReport(
        measure=measure,
        label_i=sample_i.label,
        label_y=sample_y.label,
        estimate_i=est_i,
        estimate_y=est_y,
        tail_i=tail_i,
        tail_y=tail_y,
        n1=len(sample_i),
        n2=len(sample_y),
        rows=tuple(rows),
    )
    _print_report(report, args)
    if args.out:
        _write_report_csv(report, args)
    return 0


def _print_report(report, args):
    pfmt = (lambda p: f"{p:.2f}") if args.table_a1 else _fmt
    print(f"comparison of {report.measure.label}: {report.label_i} vs {report.label_y}")
    for tag, est, tail, n in (
        ("I", report.estimate_i, report.tail_i, report.n1),
        ("Y", report.estimate_y, report.tail_y, report.n2),
    ):
        print(
            f"  sample {tag}: {report.measure.label}={_fmt(est.value)} (se {_fmt(est.se)}), "
            f"N={n}, tail zeta={_fmt(tail.zeta)} "
            f"[{_fmt(tail.ci95[0])}, {_fmt(tail.ci95[1])}]"
        )
    print(f"  size ratio N1/N2 = {_fmt(report.size_ratio)}")
    print(f"  {'test':18} {'p-value':>8}  {'':2} {'validity':16}")
    for label, p, stat, validity in report.rows:
        marker = "*" if p <= 0.05 else ""
        print(f"  {label:18} {pfmt(p):>8}  {marker:2} {validity or '':16}")


def _write_report_csv(report, args):
    import csv

    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["test", "p_value", "statistic", "significant_5pct", "validity"])
        for label, p, stat, validity in report.rows:
            w.writerow([label, repr(float(p)), repr(float(stat)), int(p <= 0.05), validity or ""])
    print(f"wrote {args.out}")


def _parse_spec_file(path, args):
    """Flat key=value experiment description; every key has a flag override."""
    keys = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DataError(f"{path}: row {lineno} is not key=value: {raw!r}")
        key, _, value = line.partition("=")
        keys[key.strip().lower()] = value.strip()
    try:
        measure = Measure.parse(args.measure or keys.get("measure", "gini"))
        gen_i = SMParams(
            float(keys.get("a_i", 2.8)), float(keys.get("b_i", B0)), float(keys.get("c_i", 1.7))
        )
        gen_y = None
        if "a_y" in keys or "c_y" in keys:
            gen_y = SMParams(
                float(keys.get("a_y", 2.8)), float(keys.get("b_y", B0)), float(keys.get("c_y", 1.7))
            )
        tests = tuple(
            TestSpec.parse(t) for t in keys.get("tests", "asymptotic").split(",") if t.strip()
        )
        spec = SimSpec(
            measure=measure,
            generator_i=gen_i,
            n1=int(keys.get("n1", 200)),
            generator_y=gen_y,
            n2=int(keys["n2"]) if gen_y is not None else None,
            tests=tests,
            alpha=float(args.alpha if args.alpha is not None else keys.get("alpha", 0.05)),
            replications=int(args.reps or keys.get("replications", 10000)),
            seed=int(args.seed if args.seed is not None else keys.get("seed", 0)),
            label=keys.get("label", Path(path).stem),
            null_value=float(keys["null_value"]) if "null_value" in keys else None,
            d0=float(keys["d0"]) if "d0" in keys else None,
        )
    except (KeyError, ValueError) as exc:
        raise DataError(f"{path}: invalid experiment spec: {exc}") from exc
    return spec


def cmd_simulate(args):
    workers = resolve_workers(args.threads)
    if args.spec_file:
        spec = _parse_spec_file(args.spec_file, args)
        cells = run_size_experiment(spec, workers=workers)
        rows = [(spec.label, c) for c in cells]
        out = args.out or f"{spec.label}.csv"
        write_cells_csv(out, rows)
        print(format_cells_text(rows))
        print(f"wrote {out}")
        return 0
    catalog = preset_catalog(
        replications=args.reps or 10_000,
        perm_b=args.perm_b,
        boot_b=args.boot_b,
        seed=args.seed if args.seed is not None else 1,
    )
    if args.preset not in catalog:
        listing = "\n  ".join(f"{p.name:24} {p.description}" for p in catalog.values())
        raise UsageError(f"unknown preset {args.preset!r}; available presets:\n  {listing}")
    preset = catalog[args.preset]
    if preset.kind == "density":
        outdir = Path(args.out or ".")
        outdir.mkdir(parents=True, exist_ok=True)
        reps = args.reps or 10_000
        for req in preset.items:
            diag = z_s_density_diagnostic(
                req.generator_i,
                req.measure,
                req.n1,
                reps,
                seed=(args.seed if args.seed is not None else 1),
                gen_y=req.generator_y,
                n2=req.n2,
            )
            for stat_name, density in (("z", diag.z_density), ("s", diag.s_density)):
                path = outdir / f"{preset.name}-{req.label}-{stat_name}.csv"
                write_density_csv(path, diag.grid, density)
                print(f"wrote {path}")
        return 0
    rows = []
    if preset.kind == "size":
        for label, spec in preset.items:
            if args.alpha is not None:
                spec = _with_alpha(spec, args.alpha)
            cells = run_size_experiment(spec, workers=workers)
            rows.extend((label, c) for c in cells)
    else:
        for label, alt, null in preset.items:
            if args.alpha is not None:
                alt, null = _with_alpha(alt, args.alpha), _with_alpha(null, args.alpha)
            cells = run_power_experiment(alt, null, workers=workers)
            rows.extend((label, c) for c in cells)
    out = args.out or f"{preset.name}.csv"
    write_cells_csv(out, rows)
    print(format_cells_text(rows))
    print(f"wrote {out}")
    return 0


def _with_alpha(spec, alpha):
    from dataclasses import replace

    return replace(spec, alpha=alpha)


def cmd_tailindex(args):
    sample = load_income_file(_income_spec(args))
    est = rank_size_estimate(sample, args.tail_fraction, args.trim_fraction)
    print(f"zeta  = {_fmt(est.zeta)}")
    print(f"se    = {_fmt(est.se)}")
    print(f"k     = {est.k}")
    print(f"ci95  = [{_fmt(est.ci95[0])}, {_fmt(est.ci95[1])}]")
    return 0


def build_parser():
    parser = _Parser(prog="ineqtest", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common_io(p):
        p.add_argument("--delimiter", default=",", help="field delimiter (default comma)")

    p = sub.add_parser("measure", help="estimate an inequality index from a data file")
    _file_args(p)
    common_io(p)
    p.add_argument("--measure", default="gini", help="gini | theil | ge:<alpha>")

    p = sub.add_parser("test-one", help="one-sample group t-test against a null value")
    _file_args(p)
    common_io(p)
    p.add_argument("--measure", default="gini")
    p.add_argument("--q", type=int, required=True, help="number of groups")
    p.add_argument("--null", type=float, required=True, help="hypothesized index value")
    p.add_argument("--alpha", type=float, default=0.05)

    p = sub.add_parser("compare", help="compare an index across two data files")
    _file_args(p, "i-")
    _file_args(p, "y-")
    common_io(p)
    p.add_argument("--measure", default="gini")
    p.add_argument("--q", default="4,8,12,16", help="comma list of equal group counts")
    p.add_argument("--q1", default=None, help="comma list of first-sample group counts")
    p.add_argument("--q2", default=None, help="comma list of second-sample group counts")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--d0", type=float, default=0.0, help="hypothesized difference")
    p.add_argument("--tests", default="asymptotic,t2,permutation,bootstrap")
    p.add_argument("--table-a1", action="store_true",
                   help="use the regional-table group-count combinations")
    p.add_argument("--perm-B", dest="perm_b", type=int, default=999)
    p.add_argument("--boot-B", dest="boot_b", type=int, default=999)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tail-fraction", type=float, default=0.05)
    p.add_argument("--out", default=None, help="also write rows as CSV")

    p = sub.add_parser("simulate", help="run a named preset or a spec-file experiment")
    p.add_argument("preset", nargs="?", default=None, help="preset name (see --list)")
    p.add_argument("--spec-file", default=None, help="flat key=value experiment file")
    p.add_argument("--reps", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--perm-B", dest="perm_b", type=int, default=999)
    p.add_argument("--boot-B", dest="boot_b", type=int, default=999)
    p.add_argument("--measure", default=None, help="override for spec-file runs")
    p.add_argument("--out", default=None, help="output CSV path (or directory for densities)")

    p = sub.add_parser("tailindex", help="rank-size tail-index estimate from a data file")
    _file_args(p)
    common_io(p)
    p.add_argument("--tail-fraction", type=float, default=0.05)
    p.add_argument("--trim-fraction", type=float, default=0.0,
                   help="discard this extreme share before taking the tail")

    return parser


_COMMANDS = {
    "measure": cmd_measure,
    "test-one": cmd_test_one,
    "compare": cmd_compare,
    "simulate": cmd_simulate,
    "tailindex": cmd_tailindex,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "simulate" and not args.preset and not args.spec_file:
            raise UsageError("simulate needs a preset name or --spec-file")
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, InsufficientDataError, DegenerateSampleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
