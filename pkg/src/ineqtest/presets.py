"""Named experiment presets covering every simulation design in the study:
one-sample and two-sample empirical size tables, size-adjusted power tables,
and the z/s density figures.  Replication counts are parameterized; defaults
target desk-scale runs.
"""

from dataclasses import dataclass

from .distributions import B0, SMParams
from .measures import Measure
from .montecarlo import SimSpec, TestSpec

_GINI = Measure.gini()
_THEIL = Measure.theil()

# grid subsets used by the size tables, keyed by derived tail index
_T1_THEIL = ((2.5, 2.502199), (3.2, 1.2320215), (5.8, 0.4996163))
_T1_GINI = ((2.5, 2.640350), (3.2, 1.1866026), (5.8, 0.4473111))
_HEAVY = ((2.0, 1.1), (2.0, 0.7))

_N2_GRID = (50, 200, 500, 1000, 5000)

_ONE_SAMPLE_ROSTER = ("asymptotic", "t:4", "t:8", "t:12", "t:16")
_TWO_SAMPLE_ROSTER = (
    "asymptotic",
    "t2:4", "t2:8", "t2:12", "t2:16",
    "paired:4", "paired:8", "paired:12", "paired:16",
    "permutation", "bootstrap",
)
_RATIO_ROSTER_SMALL_FIRST = (
    "asymptotic",
    "t2:4", "t2:8", "t2:12", "t2:16",
    "t2:3,4", "t2:6,8", "t2:9,12", "t2:12,16",
    "t2:2,4", "t2:4,8", "t2:6,12", "t2:8,16",
    "permutation", "bootstrap",
)
_RATIO_ROSTER_LARGE_FIRST = (
    "asymptotic",
    "t2:4", "t2:8", "t2:12", "t2:16",
    "t2:4,3", "t2:8,6", "t2:12,9", "t2:16,12",
    "t2:4,2", "t2:8,4", "t2:12,6", "t2:16,8",
    "permutation", "bootstrap",
)


@dataclass(frozen=True)
class DensityRequest:
    """One figure curve set: z/s densities for a generator and sample size."""

    label: str
    measure: Measure
    generator_i: SMParams
    n1: int
    generator_y: SMParams | None = None
    n2: int | None = None


@dataclass(frozen=True)
class Preset:
    """A named experiment group.

    ``items`` holds (label, SimSpec) for size presets, (label, alternative
    SimSpec, null SimSpec) for power presets, and DensityRequest entries for
    density presets.
    """

    name: str
    kind: str  # size | power | density
    description: str
    items: tuple


def _roster(names, perm_b, boot_b):
    out = []
    for name in names:
        t = TestSpec.parse(name)
        if t.kind in ("permutation", "bootstrap"):
            t = TestSpec(t.kind, b=perm_b if t.kind == "permutation" else boot_b)
        out.append(t)
    return tuple(out)


def _sm(ac):
    return SMParams(ac[0], B0, ac[1])


def preset_catalog(replications=10_000, perm_b=999, boot_b=999, seed=1):
    """All named presets, keyed by name.

    The seed spaces of distinct specs are separated deterministically so a
    single catalog seed reproduces every table.
    """
    presets = {}
    counter = [0]

    def next_seed(offset=0):
        counter[0] += 1
        return seed * 1_000_000 + counter[0] * 1_000 + offset

    def add(preset):
        presets[preset.name] = preset

    # one-sample size tables
    for measure, grid in ((_THEIL, _T1_THEIL), (_GINI, _T1_GINI)):
        for n in (200, 500, 1000):
            items = []
            for ac in grid:
                gen = _sm(ac)
                spec = SimSpec(
                    measure=measure,
                    generator_i=gen,
                    n1=n,
                    tests=_roster(_ONE_SAMPLE_ROSTER, perm_b, boot_b),
                    replications=replications,
                    seed=next_seed(),
                    label=f"{measure.label} zeta={gen.tail_index:.3g}",
                )
                items.append((spec.label, spec))
            add(
                Preset(
                    f"table1-{measure.label}-N{n}",
                    "size",
                    f"one-sample empirical size, {measure.label}, N={n}",
                    tuple(items),
                )
            )

    def size_preset(name, description, columns, roster):
        # columns: (measure, gen_i, n1, gen_y, n2)
        items = []
        for measure, gi, n1, gy, n2 in columns:
            if gi == gy:
                tag = f"{measure.label} zeta={gi.tail_index:.3g}"
            else:
                tag = f"{measure.label} zetaI={gi.tail_index:.3g} zetaY={gy.tail_index:.3g}"
            if n1 != n2:
                tag += f" N2={n2}"
            spec = SimSpec(
                measure=measure,
                generator_i=gi,
                n1=n1,
                generator_y=gy,
                n2=n2,
                tests=_roster(roster, perm_b, boot_b),
                replications=replications,
                seed=next_seed(),
                label=tag,
                d0=0.0,
            )
            items.append((tag, spec))
        add(Preset(name, "size", description, tuple(items)))

    # identical parents, N1 = N2 = 200
    cols = []
    for measure, grid in ((_THEIL, _T1_THEIL + _HEAVY), (_GINI, _T1_GINI + _HEAVY)):
        for ac in grid:
            gen = _sm(ac)
            cols.append((measure, gen, 200, gen, 200))
    size_preset("table2", "two-sample size, identical parents, N1=N2=200", cols, _TWO_SAMPLE_ROSTER)

    # different parents with equal index, N1 = N2 = 200
    cols = []
    for measure, grid, base in ((_THEIL, _T1_THEIL, (2.8, 1.7)), (_GINI, _T1_GINI, (2.8, 1.7))):
        for ac in grid:
            cols.append((measure, _sm(base), 200, _sm(ac), 200))
    size_preset("table3", "two-sample size, different iso-index parents, N1=N2=200", cols, _TWO_SAMPLE_ROSTER)

    # identical parents, unequal sample sizes
    cols = []
    for measure, ac in ((_THEIL, (5.8, 0.4996163)), (_GINI, (5.8, 0.4473111))):
        for n2 in _N2_GRID:
            cols.append((measure, _sm(ac), 200, _sm(ac), n2))
    size_preset("table4", "two-sample size, identical heavy parents, N1=200, varying N2", cols, _TWO_SAMPLE_ROSTER)

    cols = []
    for measure in (_THEIL, _GINI):
        for n2 in _N2_GRID:
            cols.append((measure, _sm((2.0, 0.7)), 200, _sm((2.0, 0.7)), n2))
    size_preset(
        "table5-different-sizes",
        "two-sample size, identical very heavy parents (tail 1.4), N1=200, varying N2",
        cols,
        _TWO_SAMPLE_ROSTER,
    )

    cols = []
    for measure, ac in ((_THEIL, (5.8, 0.4996163)), (_GINI, (5.8, 0.4473111))):
        for n2 in _N2_GRID:
            cols.append((measure, _sm((2.8, 1.7)), 200, _sm(ac), n2))
    size_preset("table6", "two-sample size, different parents and sizes", cols, _TWO_SAMPLE_ROSTER)

    cols = []
    for measure in (_THEIL, _GINI):
        for n2 in (400, 600, 800):
            cols.append((measure, _sm((2.0, 1.1)), 200, _sm((2.0, 1.1)), n2))
    size_preset(
        "table7",
        "two-sample size with unequal group counts, identical parents (tail 2.2)",
        cols,
        _RATIO_ROSTER_SMALL_FIRST,
    )

    def power_preset(name, description, columns, roster):
        # columns: (measure, gen_i, n1, gen_y_alt, gen_y_null, n2)
        items = []
        for measure, gi, n1, gy_alt, gy_null, n2 in columns:
            tag = f"{measure.label} zetaY={gy_alt.tail_index:.4g}"
            common = dict(
                measure=measure,
                generator_i=gi,
                n1=n1,
                n2=n2,
                tests=_roster(roster, perm_b, boot_b),
                replications=replications,
                alpha=0.05,
                d0=0.0,
            )
            alt = SimSpec(generator_y=gy_alt, seed=next_seed(), label=tag, **common)
            null = SimSpec(generator_y=gy_null, seed=next_seed(500_000), label=tag + " (null)", **common)
            items.append((tag, alt, null))
        add(Preset(name, "power", description, tuple(items)))

    def power_columns(base_ac, alt_cs_theil, alt_cs_gini, n1, n2):
        cols = []
        a = base_ac[0]
        for measure, alt_cs in ((_THEIL, alt_cs_theil), (_GINI, alt_cs_gini)):
            for c in alt_cs:
                cols.append((measure, _sm(base_ac), n1, _sm((a, c)), _sm(base_ac), n2))
        return cols

    power_preset(
        "table8",
        "size-adjusted power, benchmark parent (tail 4.76), N1=N2=200",
        power_columns((2.8, 1.7), (0.7, 1.1, 1.7, 2.7, 31.7), (0.7, 1.1, 1.7, 2.7, 31.7), 200, 200),
        _TWO_SAMPLE_ROSTER,
    )
    power_preset(
        "table9",
        "size-adjusted power, heavy parent (tail 2.2), N1=N2=200",
        power_columns((2.0, 1.1), (0.7, 0.9, 1.1, 1.5, 3.7), (0.7, 0.9, 1.1, 1.5, 3.7), 200, 200),
        _TWO_SAMPLE_ROSTER,
    )
    power_preset(
        "table10",
        "size-adjusted power, heavy parent, N1=200, N2=400",
        power_columns((2.0, 1.1), (0.7, 0.9, 1.1, 1.5, 3.7), (0.7, 0.9, 1.1, 1.5, 2.2), 200, 400),
        _TWO_SAMPLE_ROSTER,
    )
    power_preset(
        "table11",
        "size-adjusted power, heavy parent, N1=400, N2=200",
        power_columns((2.0, 1.1), (0.7, 0.9, 1.1, 1.5, 3.7), (0.7, 0.9, 1.1, 1.5, 2.2), 400, 200),
        _TWO_SAMPLE_ROSTER,
    )
    power_preset(
        "table12",
        "size-adjusted power with unequal group counts, N1=200, N2=800",
        power_columns((2.0, 1.1), (0.7, 0.9, 1.1, 1.5, 3.7), (0.7, 0.9, 1.1, 1.5, 2.2), 200, 800),
        _RATIO_ROSTER_LARGE_FIRST,
    )
    power_preset(
        "table13",
        "size-adjusted power with unequal group counts, N1=800, N2=200",
        power_columns((2.0, 1.1), (0.7, 0.9, 1.1, 1.5, 3.7), (0.7, 0.9, 1.1, 1.5, 2.2), 800, 200),
        _RATIO_ROSTER_LARGE_FIRST,
    )

    # density diagnostics
    fig_specs = (
        ("fig1", _THEIL, (2.8, 1.7), False),
        ("fig2", _GINI, (2.8, 1.7), False),
        ("fig3", _GINI, (5.8, 0.4473111), False),
        ("fig4", _THEIL, (2.8, 1.7), True),
        ("fig5", _GINI, (2.8, 1.7), True),
        ("fig6", _GINI, (5.8, 0.4473111), True),
    )
    for name, measure, ac, two_sample in fig_specs:
        gen = _sm(ac)
        items = tuple(
            DensityRequest(
                label=f"N{n}",
                measure=measure,
                generator_i=gen,
                n1=n,
                generator_y=gen if two_sample else None,
                n2=n if two_sample else None,
            )
            for n in (50, 100, 1000)
        )
        side = "two-sample difference" if two_sample else "one-sample"
        add(
            Preset(
                name,
                "density",
                f"z/s density curves, {measure.label}, {side}, tail {gen.tail_index:.3g}",
                items,
            )
        )

    return presets
