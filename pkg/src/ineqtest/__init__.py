"""Robust inference on income inequality measures under heavy tails.

Core pieces: Singh-Maddala sampling and population index values
(``distributions``), plug-in inequality estimators with consistent standard
errors (``measures``), group t-statistic tests with validity-domain flags
(``grouptests``), permutation/bootstrap/asymptotic competitors
(``resampling``), rank-size tail-index estimation (``tailindex``), and a
deterministic Monte Carlo harness with named presets (``montecarlo``,
``presets``).  The ``ineqtest`` command line fronts the same operations.
"""

from ._kernels import BACKEND
from .distributions import B0, ParamGrid, SMParams, gini_grid, sm_cdf, sm_quantile, sm_sample, theil_grid, theoretical_index
from .errors import DegenerateSampleError, DomainError, InsufficientDataError, MomentExistenceError
from .grouptests import (
    GroupEstimates,
    GroupSpec,
    SmallGroupWarning,
    TestOutcome,
    group_estimates,
    one_sample_group_test,
    one_sample_test,
    paired_difference_test,
    partition,
    student_t_quantile,
    two_sample_group_test,
    two_sample_test,
)
from .measures import Measure, MeasureEstimate, Sample, estimate, ge_index, gini, s_statistic, theil, two_sample_s, z_statistic
from .montecarlo import SimSpec, SizePowerCell, TestSpec, run_power_experiment, run_size_experiment, z_s_density_diagnostic
from .presets import Preset, preset_catalog
from .resampling import ResamplingSpec, asymptotic_one_sample_test, asymptotic_test, bootstrap_test, permutation_test
from .tailindex import TailEstimate, rank_size_estimate

__version__ = "0.1.0"
