"""Parallel Monte-Carlo experiment runner.

Each seed is an independent work unit: every configured policy plays the
same bandit instance for ``horizon`` rounds, the simulator accumulates
cumulative lenient regret for every configured gap function (using the true
gaps, which the policies never see), and records it at the checkpoint
times.  Across seeds, finals are summarized into mean / population std /
nearest-rank 99th percentile / max, and checkpoint curves into per-time
means and stds.

Randomness layout: within one seed, the environment rewards come from one
stream shared by all policies (so policy choice cannot perturb the noise
they face), and each policy owns its own posterior-sampling stream.  All
streams are keyed by (base_seed, seed_index, role), which makes the output
bitwise identical across runs and across worker counts.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .environments import BanditInstance, RngStream
from .gap_functions import GapFunction
from .policies import PolicyState, select

__all__ = [
    "ExperimentConfig",
    "AggregateStats",
    "ExperimentResult",
    "default_checkpoints",
    "run_single",
    "run_experiment",
    "aggregate",
    "write_curves_csv",
    "write_finals_csv",
    "write_per_seed_csv",
]

Key = tuple[str, str]  # (policy spelling, gap-function spelling)


def default_checkpoints(horizon: int, n_points: int = 50) -> tuple[int, ...]:
    """Logarithmically spaced checkpoint times ending exactly at the horizon."""
    if horizon < 1:
        raise ValueError(f"horizon must be positive, got {horizon}")
    raw = np.unique(
        np.round(np.logspace(0, math.log10(horizon), n_points)).astype(int)
    )
    points = sorted(set(raw.tolist()) | {horizon})
    return tuple(p for p in points if 1 <= p <= horizon)


@dataclass(frozen=True)
class ExperimentConfig:
    instance: BanditInstance
    policies: tuple[str, ...]  # spellings: "ts" | "eps-ts:<eps>"
    gap_functions: tuple[GapFunction, ...]
    horizon: int
    n_seeds: int
    base_seed: int = 0
    checkpoints: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.horizon < 1:
            raise ValueError(f"horizon must be positive, got {self.horizon}")
        if self.n_seeds < 1:
            raise ValueError(f"n_seeds must be positive, got {self.n_seeds}")
        if not self.policies:
            raise ValueError("need at least one policy")
        if not self.gap_functions:
            raise ValueError("need at least one gap function")
        for spec in self.policies:
            PolicyState.parse(spec, self.instance.n_arms)  # validate spelling
        cps = self.checkpoints or default_checkpoints(self.horizon)
        if list(cps) != sorted(set(cps)) or cps[-1] != self.horizon:
            raise ValueError("checkpoints must be strictly increasing and end at the horizon")
        object.__setattr__(self, "checkpoints", tuple(cps))
        object.__setattr__(self, "policies", tuple(self.policies))
        object.__setattr__(self, "gap_functions", tuple(self.gap_functions))

    def keys(self) -> list[Key]:
        return [(p, f.spell()) for p in self.policies for f in self.gap_functions]


@dataclass(frozen=True)
class AggregateStats:
    mean: float
    std: float  # population std (divisor n)
    p99: float  # nearest-rank: sorted value at rank ceil(0.99 n)
    max: float
    n_seeds: int


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    curve_mean: dict[Key, np.ndarray]  # per checkpoint
    curve_std: dict[Key, np.ndarray]
    finals: dict[Key, np.ndarray]  # per seed, in seed order
    stats: dict[Key, AggregateStats]


def aggregate(finals) -> AggregateStats:
    """Summary statistics of final regrets across seeds."""
    x = np.asarray(finals, dtype=float)
    if x.size == 0:
        raise ValueError("cannot aggregate an empty vector")
    rank = math.ceil(0.99 * x.size)  # 1-based nearest rank
    p99 = float(np.sort(x)[rank - 1])
    return AggregateStats(
        mean=float(x.mean()),
        std=float(x.std()),  # population divisor
        p99=p99,
        max=float(x.max()),
        n_seeds=x.size,
    )


def run_single(config: ExperimentConfig, seed_index: int) -> dict[Key, np.ndarray]:
    """One seed's trajectories: checkpointed cumulative regret per (policy, gap)."""
    if not 0 <= seed_index < config.n_seeds:
        raise ValueError(f"seed_index {seed_index} out of range")
    instance = config.instance
    horizon = config.horizon
    checkpoints = config.checkpoints
    gaps = instance.gaps()
    # f(gap_a) lookup per gap function; regret accumulation is then a table add.
    fvals = [[f.evaluate(g) for g in gaps] for f in config.gap_functions]

    env_rng = RngStream(config.base_seed, (seed_index, 0))
    rewards = instance.reward_table(horizon, env_rng).tolist()

    out: dict[Key, np.ndarray] = {}
    for p_idx, policy_spec in enumerate(config.policies):
        state = PolicyState.parse(policy_spec, instance.n_arms)
        rng = RngStream(config.base_seed, (seed_index, 1 + p_idx))
        cum = [0.0] * len(config.gap_functions)
        curves = [np.empty(len(checkpoints)) for _ in config.gap_functions]
        cp_iter = iter(enumerate(checkpoints))
        cp_pos, next_cp = next(cp_iter)
        per_arm = state.per_arm
        for t in range(1, horizon + 1):
            arm = select(state, rng)
            stats = per_arm[arm]
            stats.s += rewards[arm][stats.n]
            stats.n += 1
            for f_idx, row in enumerate(fvals):
                cum[f_idx] += row[arm]
            if t == next_cp:
                for f_idx in range(len(config.gap_functions)):
                    curves[f_idx][cp_pos] = cum[f_idx]
                nxt = next(cp_iter, None)
                if nxt is None:
                    break
                cp_pos, next_cp = nxt
        for f_idx, f in enumerate(config.gap_functions):
            out[(policy_spec, f.spell())] = curves[f_idx]
    return out


def _run_chunk(config: ExperimentConfig, seed_lo: int, seed_hi: int):
    """Worker entry: stacked checkpoint curves for seeds in [seed_lo, seed_hi)."""
    keys = config.keys()
    n = seed_hi - seed_lo
    stacked = {k: np.empty((n, len(config.checkpoints))) for k in keys}
    for i, seed_index in enumerate(range(seed_lo, seed_hi)):
        result = run_single(config, seed_index)
        for k in keys:
            stacked[k][i] = result[k]
    return seed_lo, stacked


def run_experiment(config: ExperimentConfig, threads: int | None = None) -> ExperimentResult:
    """Run all seeds (in parallel when threads > 1) and aggregate.

    The merge is by seed index, so the output does not depend on worker
    count or completion order.
    """
    if threads is None:
        threads = os.cpu_count() or 1
    threads = max(1, min(threads, config.n_seeds))
    keys = config.keys()
    all_curves = {k: np.empty((config.n_seeds, len(config.checkpoints))) for k in keys}

    if threads == 1:
        chunks = [_run_chunk(config, 0, config.n_seeds)]
    else:
        bounds = np.linspace(0, config.n_seeds, threads * 4 + 1).astype(int)
        spans = [(int(lo), int(hi)) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_run_chunk, *zip(*[(config, lo, hi) for lo, hi in spans])))

    for seed_lo, stacked in chunks:
        for k in keys:
            all_curves[k][seed_lo : seed_lo + stacked[k].shape[0]] = stacked[k]

    curve_mean = {k: all_curves[k].mean(axis=0) for k in keys}
    curve_std = {k: all_curves[k].std(axis=0) for k in keys}
    finals = {k: all_curves[k][:, -1].copy() for k in keys}
    stats = {k: aggregate(finals[k]) for k in keys}
    return ExperimentResult(config, curve_mean, curve_std, finals, stats)


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf"
    return repr(float(x))


def write_curves_csv(result: ExperimentResult, path) -> None:
    """Schema: policy,gap_function,checkpoint,mean_regret,std_regret"""
    with open(path, "w", newline="\n") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["policy", "gap_function", "checkpoint", "mean_regret", "std_regret"])
        for (policy, gap), mean in result.curve_mean.items():
            std = result.curve_std[(policy, gap)]
            for cp, m, s in zip(result.config.checkpoints, mean, std):
                w.writerow([policy, gap, cp, _fmt(m), _fmt(s)])


def write_finals_csv(result: ExperimentResult, path) -> None:
    """Schema: policy,gap_function,mean,std,p99,max,n_seeds"""
    with open(path, "w", newline="\n") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["policy", "gap_function", "mean", "std", "p99", "max", "n_seeds"])
        for (policy, gap), st in result.stats.items():
            w.writerow(
                [policy, gap, _fmt(st.mean), _fmt(st.std), _fmt(st.p99), _fmt(st.max), st.n_seeds]
            )


def write_per_seed_csv(result: ExperimentResult, path) -> None:
    """Schema: seed,policy,gap_function,final_regret"""
    with open(path, "w", newline="\n") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["seed", "policy", "gap_function", "final_regret"])
        for (policy, gap), finals in result.finals.items():
            for seed, value in enumerate(finals):
                w.writerow([seed, policy, gap, _fmt(value)])
