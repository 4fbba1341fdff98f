"""Lenient-regret bandit simulation library and benchmark CLI."""

from .bounds import (
    BoundReport,
    bound_ratio,
    lower_bound_coefficient,
    standard_ts_coefficient,
    upper_bound_coefficient,
)
from .environments import BanditInstance, RngStream
from .gap_functions import GapFunction, indicator_regret_integral
from .kl_math import (
    bernoulli_kl,
    beta_cdf,
    binomial_cdf,
    kinf_bernoulli,
    kl_equation_solve,
    scaled_kl,
)
from .policies import ArmStats, PolicyState, posterior_params, select, update
from .simulator import (
    AggregateStats,
    ExperimentConfig,
    ExperimentResult,
    aggregate,
    default_checkpoints,
    run_experiment,
    run_single,
)

__version__ = "0.1.0"
