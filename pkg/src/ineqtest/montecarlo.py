"""Monte Carlo harness: empirical size, size-adjusted power, and the
finite-sample density diagnostics for the full-sample statistics.

Replication r of an experiment draws every random number from a stream that
is a pure function of (seed, r), so results are bit-identical for any worker
count; aggregation is a sum of rejection counts.  Size-adjusted power
calibrates an empirical critical value for each t-based test on a common set
of null replications so that its null rejection count matches the
permutation test's, then applies that critical value under the alternative.
"""

import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.stats import gaussian_kde, norm
from scipy.stats import t as student_t

from .distributions import SMParams, sm_sample, theoretical_index
from .errors import DomainError, InsufficientDataError
from .measures import Measure, estimate, gini, group_values, two_sample_s
from .grouptests import group_bounds
from .resampling import _bootstrap_stats, _permutation_stats

WORKERS_ENV = "INEQTEST_THREADS"


@dataclass(frozen=True)
class TestSpec:
    """One roster entry: which test to run in every replication."""

    kind: str  # asymptotic | one_sample | two_sample | paired | permutation | bootstrap
    q1: int | None = None
    q2: int | None = None
    b: int | None = None

    def __post_init__(self):
        if self.kind not in ("asymptotic", "one_sample", "two_sample", "paired", "permutation", "bootstrap"):
            raise DomainError(f"unknown test kind {self.kind!r}")

    @property
    def label(self):
        if self.kind == "asymptotic":
            return "asymptotic"
        if self.kind == "one_sample":
            return f"t(q={self.q1})"
        if self.kind == "two_sample":
            if self.q1 == self.q2:
                return f"t2(q={self.q1})"
            return f"t2(q1={self.q1},q2={self.q2})"
        if self.kind == "paired":
            return f"paired(q={self.q1})"
        return self.kind

    @property
    def adjustable(self):
        """Whether size adjustment applies (resampling tests stay as-is)."""
        return self.kind in ("asymptotic", "one_sample", "two_sample", "paired")

    @staticmethod
    def parse(text):
        """Parse 'asymptotic', 't:4', 't2:4' / 't2:8,6', 'paired:4',
        'permutation:399', 'bootstrap:399' (resample counts optional)."""
        t = text.strip().lower()
        if t == "asymptotic":
            return TestSpec("asymptotic")
        head, _, arg = t.partition(":")
        if head in ("t", "one-sample", "one_sample"):
            return TestSpec("one_sample", q1=int(arg))
        if head in ("t2", "two-sample", "two_sample"):
            parts = [int(p) for p in arg.split(",")]
            q1 = parts[0]
            q2 = parts[1] if len(parts) > 1 else q1
            return TestSpec("two_sample", q1=q1, q2=q2)
        if head == "paired":
            return TestSpec("paired", q1=int(arg), q2=int(arg))
        if head == "permutation":
            return TestSpec("permutation", b=int(arg) if arg else 999)
        if head == "bootstrap":
            return TestSpec("bootstrap", b=int(arg) if arg else 999)
        raise DomainError(f"cannot parse test spec {text!r}")


@dataclass(frozen=True)
class SimSpec:
    """Full description of one Monte Carlo experiment."""

    measure: Measure
    generator_i: SMParams
    n1: int
    generator_y: SMParams | None = None
    n2: int | None = None
    tests: tuple = ()
    alpha: float = 0.05
    replications: int = 10_000
    seed: int = 0
    label: str = ""
    null_value: float | None = None  # one-sample hypothesis; defaults to theory
    d0: float | None = None  # two-sample hypothesized difference; defaults to theory

    @property
    def two_sample(self):
        return self.generator_y is not None

    def validate(self):
        if self.replications < 1:
            raise DomainError("replications must be at least 1")
        if not self.tests:
            return
        for t in self.tests:
            if t.kind == "one_sample":
                if self.two_sample:
                    raise DomainError("one-sample test in a two-sample experiment")
                if self.n1 < 2 * t.q1:
                    raise InsufficientDataError(f"{t.label} needs n1 >= {2 * t.q1}")
            elif t.kind in ("two_sample", "paired"):
                if not self.two_sample:
                    raise DomainError(f"{t.label} requires a second generator")
                if self.n1 < 2 * t.q1 or self.n2 < 2 * t.q2:
                    raise InsufficientDataError(f"{t.label} needs n >= 2q in both samples")
            elif t.kind in ("permutation", "bootstrap"):
                if not self.two_sample:
                    raise DomainError(f"{t.label} requires a second generator")

    def hypothesis(self):
        """Null value under which rejections are counted."""
        if self.two_sample:
            if self.d0 is not None:
                return self.d0
            return theoretical_index(self.generator_i, self.measure) - theoretical_index(
                self.generator_y, self.measure
            )
        if self.null_value is not None:
            return self.null_value
        return theoretical_index(self.generator_i, self.measure)


@dataclass(frozen=True)
class SizePowerCell:
    """One table cell: a test's Monte Carlo rejection rate in percent."""

    test: str
    rejections: int
    replications: int

    @property
    def rate(self):
        return 100.0 * self.rejections / self.replications

    @property
    def mc_se(self):
        r = self.rejections / self.replications
        return 100.0 * float(np.sqrt(r * (1.0 - r) / self.replications))


def _rng_for(seed, rep):
    return np.random.default_rng(np.random.SeedSequence(entropy=(int(seed), int(rep))))


def _replicate(spec, rep, hypothesis, bounds_i, bounds_y, cvs):
    """Run every roster test on one replication.

    Returns (reject flags, |statistic| or nan per test).  Statistics are
    collected only for adjustable tests (used by power calibration).
    """
    rng = _rng_for(spec.seed, rep)
    xi = sm_sample(spec.generator_i, spec.n1, rng)
    xy = sm_sample(spec.generator_y, spec.n2, rng) if spec.two_sample else None
    measure = spec.measure
    est_i = est_y = None
    needs_full = any(t.kind in ("asymptotic", "permutation", "bootstrap") for t in spec.tests)
    if needs_full:
        est_i = estimate(xi, measure)
        if spec.two_sample:
            est_y = estimate(xy, measure)
    rejects = np.zeros(len(spec.tests), dtype=bool)
    stats = np.full(len(spec.tests), np.nan)
    for k, t in enumerate(spec.tests):
        if t.kind == "asymptotic":
            if spec.two_sample:
                s = two_sample_s(est_i, est_y, hypothesis)
            else:
                s = (est_i.value - hypothesis) / est_i.se
            rejects[k] = abs(s) > cvs["normal"]
            stats[k] = abs(s)
        elif t.kind == "one_sample":
            vals = group_values(xi, bounds_i[t.q1], measure)
            s = vals.std(ddof=1)
            if s == 0.0:
                tstat = 0.0 if vals.mean() == hypothesis else np.inf
            else:
                tstat = np.sqrt(t.q1) * (vals.mean() - hypothesis) / s
            rejects[k] = abs(tstat) > cvs[t.q1 - 1]
            stats[k] = abs(tstat)
        elif t.kind == "two_sample":
            vi = group_values(xi, bounds_i[t.q1], measure)
            vy = group_values(xy, bounds_y[t.q2], measure)
            pooled = np.sqrt(vi.var(ddof=1) / t.q1 + vy.var(ddof=1) / t.q2)
            diff = vi.mean() - vy.mean() - hypothesis
            tstat = (0.0 if diff == 0.0 else np.inf * np.sign(diff)) if pooled == 0.0 else diff / pooled
            rejects[k] = abs(tstat) > cvs[min(t.q1, t.q2) - 1]
            stats[k] = abs(tstat)
        elif t.kind == "paired":
            vi = group_values(xi, bounds_i[t.q1], measure)
            vy = group_values(xy, bounds_y[t.q2], measure)
            d = vi - vy
            s = d.std(ddof=1)
            diff = d.mean() - hypothesis
            tstat = (0.0 if diff == 0.0 else np.inf * np.sign(diff)) if s == 0.0 else np.sqrt(t.q1) * diff / s
            rejects[k] = abs(tstat) > cvs[t.q1 - 1]
            stats[k] = abs(tstat)
        elif t.kind == "permutation":
            s0 = two_sample_s(est_i, est_y, 0.0)
            perm = _permutation_stats(xi, xy, measure, t.b, rng)
            p = (1.0 + np.sum(perm >= abs(s0))) / (t.b + 1.0)
            rejects[k] = p <= spec.alpha
        else:  # bootstrap
            s0 = two_sample_s(est_i, est_y, 0.0)
            boot = _bootstrap_stats(xi, xy, measure, t.b, rng, est_i.value - est_y.value)
            p = (1.0 + np.sum(boot >= abs(s0))) / (t.b + 1.0)
            rejects[k] = p <= spec.alpha
    return rejects, stats


def _prepare(spec):
    spec.validate()
    hypothesis = spec.hypothesis() if spec.tests else 0.0
    bounds_i = {}
    bounds_y = {}
    qs = set()
    for t in spec.tests:
        if t.kind in ("one_sample", "two_sample", "paired"):
            bounds_i.setdefault(t.q1, group_bounds(spec.n1, t.q1))
            if t.kind != "one_sample":
                bounds_y.setdefault(t.q2, group_bounds(spec.n2, t.q2))
            qs.update([t.q1 - 1] + ([min(t.q1, t.q2) - 1, t.q2 - 1] if t.q2 else []))
    cvs = {df: float(student_t.ppf(1.0 - spec.alpha / 2.0, df)) for df in qs}
    cvs["normal"] = float(norm.ppf(1.0 - spec.alpha / 2.0))
    return hypothesis, bounds_i, bounds_y, cvs


def _run_chunk(spec, lo, hi, collect_stats):
    hypothesis, bounds_i, bounds_y, cvs = _prepare(spec)
    counts = np.zeros(len(spec.tests), dtype=np.int64)
    stats = np.empty((hi - lo, len(spec.tests))) if collect_stats else None
    for rep in range(lo, hi):
        rejects, rep_stats = _replicate(spec, rep, hypothesis, bounds_i, bounds_y, cvs)
        counts += rejects
        if collect_stats:
            stats[rep - lo] = rep_stats
    return counts, stats


def resolve_workers(workers=None):
    """Worker count: explicit argument, else the env cap, else the CPU count."""
    if workers is not None:
        return max(1, int(workers))
    cap = os.environ.get(WORKERS_ENV)
    cpus = os.cpu_count() or 1
    if cap:
        return max(1, min(cpus, int(cap)))
    return cpus


def _drive(spec, workers=None, collect_stats=False):
    """Run all replications; returns (counts, stats matrix or None)."""
    workers = resolve_workers(workers)
    r = spec.replications
    if workers == 1 or r < 64:
        return _run_chunk(spec, 0, r, collect_stats)
    n_chunks = min(4 * workers, r)
    edges = [(i * r) // n_chunks for i in range(n_chunks + 1)]
    counts = np.zeros(len(spec.tests), dtype=np.int64)
    pieces = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_run_chunk, spec, edges[i], edges[i + 1], collect_stats)
            for i in range(n_chunks)
        ]
        for fut in futures:  # submission order keeps aggregation deterministic
            c, s = fut.result()
            counts += c
            if collect_stats:
                pieces.append(s)
    stats = np.vstack(pieces) if collect_stats else None
    return counts, stats


def run_size_experiment(spec, workers=None):
    """Empirical size: rejection rate of every roster test under the null."""
    if not spec.tests:
        return []
    counts, _ = _drive(spec, workers, collect_stats=False)
    return [
        SizePowerCell(t.label, int(c), spec.replications) for t, c in zip(spec.tests, counts)
    ]


def _calibrated_cv(null_stats, target_count):
    """Empirical critical value whose strict-exceedance count under the null
    equals target_count (ties permitting)."""
    r = null_stats.size
    if target_count >= r:
        return -np.inf
    clean = np.where(np.isnan(null_stats), -np.inf, null_stats)
    return float(np.sort(clean)[::-1][target_count])


def run_power_experiment(spec, null_spec, workers=None):
    """Size-adjusted power of the roster under ``spec``.

    ``null_spec`` must be the same experiment with generators satisfying the
    null.  t-based tests (and the asymptotic test) get empirical critical
    values calibrated on the null replications so their null rejection count
    matches the permutation test's; permutation and bootstrap are reported
    unadjusted.
    """
    if [t.label for t in spec.tests] != [t.label for t in null_spec.tests]:
        raise DomainError("spec and null_spec must carry identical test rosters")
    if spec.measure != null_spec.measure or spec.alpha != null_spec.alpha:
        raise DomainError("spec and null_spec must agree on measure and level")
    if (spec.n1, spec.n2) != (null_spec.n1, null_spec.n2):
        raise DomainError("spec and null_spec must agree on sample sizes")
    null_counts, null_stats = _drive(null_spec, workers, collect_stats=True)
    alt_counts, alt_stats = _drive(spec, workers, collect_stats=True)
    r = spec.replications
    perm_idx = next((k for k, t in enumerate(spec.tests) if t.kind == "permutation"), None)
    target = int(null_counts[perm_idx]) if perm_idx is not None else int(round(spec.alpha * r))
    cells = []
    for k, t in enumerate(spec.tests):
        if t.adjustable:
            cv = _calibrated_cv(null_stats[:, k], target)
            rejections = int(np.sum(alt_stats[:, k] > cv))
        else:
            rejections = int(alt_counts[k])
        cells.append(SizePowerCell(t.label, rejections, r))
    return cells


@dataclass(frozen=True)
class DensityDiagnostic:
    """Kernel density curves of the two full-sample statistics.

    ``z`` normalizes the centred estimator by its true (simulated) standard
    deviation; ``s`` studentizes by the consistent standard error.
    """

    grid: np.ndarray
    z_density: np.ndarray
    s_density: np.ndarray
    true_sd: float
    z_values: np.ndarray
    s_values: np.ndarray


_TRUE_SD_CACHE = {}


def _diag_estimate(x, measure):
    # the diagnostics centre on the population value, so the Gini uses its
    # unbiased finite-sample variant (other measures have no such correction)
    if measure.kind == "gini":
        return gini(x, corrected=True)
    return estimate(x, measure)


def _simulated_sd(gen, gen_y, measure, n, n2, replications, seed):
    # direct simulation of the estimator's sampling standard deviation
    key = (gen, gen_y, measure, n, n2, replications, seed)
    if key not in _TRUE_SD_CACHE:
        vals = np.empty(replications)
        for rep in range(replications):
            rng = _rng_for(seed, rep)
            v = _diag_estimate(sm_sample(gen, n, rng), measure).value
            if gen_y is not None:
                v -= _diag_estimate(sm_sample(gen_y, n2, rng), measure).value
            vals[rep] = v
        _TRUE_SD_CACHE[key] = float(vals.std(ddof=1))
    return _TRUE_SD_CACHE[key]


def z_s_density_diagnostic(
    gen,
    measure,
    n,
    replications,
    grid=None,
    bandwidth="silverman",
    calibration_replications=None,
    seed=0,
    gen_y=None,
    n2=None,
):
    """Gaussian-kernel densities of the z- and s-statistics.

    A prior calibration pass of direct simulations supplies the true
    standard deviation for the z-statistic; pass ``gen_y`` (and ``n2``) for
    the two-sample difference versions.  ``bandwidth`` is any
    ``gaussian_kde`` bw_method, Silverman's rule by default.
    """
    measure = Measure.parse(measure)
    if replications < 1000:
        raise DomainError("density diagnostics need at least 1000 replications")
    n2 = n if (gen_y is not None and n2 is None) else n2
    cal = calibration_replications or replications
    true_sd = _simulated_sd(gen, gen_y, measure, n, n2, cal, seed * 2 + 1)
    center = theoretical_index(gen, measure)
    if gen_y is not None:
        center -= theoretical_index(gen_y, measure)
    z = np.empty(replications)
    s = np.empty(replications)
    for rep in range(replications):
        rng = _rng_for(seed * 2, rep)
        ei = _diag_estimate(sm_sample(gen, n, rng), measure)
        if gen_y is None:
            diff, se = ei.value, ei.se
        else:
            ey = _diag_estimate(sm_sample(gen_y, n2, rng), measure)
            diff, se = ei.value - ey.value, float(np.hypot(ei.se, ey.se))
        z[rep] = (diff - center) / true_sd
        s[rep] = (diff - center) / se
    if grid is None:
        lo = min(z.min(), s.min()) - 0.5
        hi = max(z.max(), s.max()) + 0.5
        grid = np.linspace(lo, hi, 512)
    z_density = gaussian_kde(z, bw_method=bandwidth)(grid)
    s_density = gaussian_kde(s, bw_method=bandwidth)(grid)
    return DensityDiagnostic(grid, z_density, s_density, true_sd, z, s)


# ---------------------------------------------------------------------------
# result emission


def write_cells_csv(path, rows):
    """Write (experiment_label, cell) pairs as a flat CSV.

    Floats are written with shortest round-trip precision so re-parsing
    reproduces the values bit-exactly.
    """
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["experiment", "test", "rejections", "replications", "rate_pct", "mc_se_pct"])
        for label, cell in rows:
            w.writerow(
                [label, cell.test, cell.rejections, cell.replications, repr(cell.rate), repr(cell.mc_se)]
            )


def read_cells_csv(path):
    """Inverse of write_cells_csv: list of (label, cell, rate, mc_se)."""
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            cell = SizePowerCell(row["test"], int(row["rejections"]), int(row["replications"]))
            out.append((row["experiment"], cell, float(row["rate_pct"]), float(row["mc_se_pct"])))
    return out


def format_cells_text(rows):
    """Aligned text table, experiments as columns and tests as rows."""
    labels = []
    tests = []
    values = {}
    for label, cell in rows:
        if label not in labels:
            labels.append(label)
        if cell.test not in tests:
            tests.append(cell.test)
        values[(label, cell.test)] = cell
    widths = [max(len(l), 8) for l in labels]
    head = " " * 22 + "  ".join(l.rjust(w) for l, w in zip(labels, widths))
    lines = [head]
    for t in tests:
        cols = []
        for label, w in zip(labels, widths):
            cell = values.get((label, t))
            if cell is None:
                cols.append("-".rjust(w))
            elif cell.replications < 2:
                cols.append(f"{cell.rate:.1f} (se n/a)".rjust(w))
            else:
                cols.append(f"{cell.rate:.4g}".rjust(w))
        lines.append(t.ljust(22) + "  ".join(cols))
    return "\n".join(lines)


def write_density_csv(path, grid, density):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["grid", "density"])
        for g, d in zip(grid, density):
            w.writerow([repr(float(g)), repr(float(d))])
