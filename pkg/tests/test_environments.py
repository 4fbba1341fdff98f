import math

import numpy as np
import pytest

from lenient_bandits.environments import BanditInstance, RngStream


def test_degenerate_arms():
    inst = BanditInstance((1.0, 0.0))
    rng = RngStream(7)
    assert all(inst.pull(0, rng) == 1 for _ in range(100))
    assert all(inst.pull(1, rng) == 0 for _ in range(100))


def test_empirical_mean_three_sigma():
    # 3-sigma binomial interval for 10^6 draws at mean 0.6: 3*sqrt(0.24/1e6).
    inst = BanditInstance((0.6,))
    rng = RngStream(11)
    table = inst.reward_table(10**6, rng)
    assert abs(table.mean() - 0.6) < 3 * math.sqrt(0.24 / 1e6)


def test_gap_of():
    assert BanditInstance((0.9, 0.6)).gap_of(0) == 0.0
    assert BanditInstance((0.9, 0.6)).gap_of(1) == pytest.approx(0.3)
    assert BanditInstance((0.5, 0.45, 0.2)).gap_of(1) == pytest.approx(0.05)


def test_arm_out_of_range():
    inst = BanditInstance((0.5,))
    with pytest.raises(IndexError):
        inst.gap_of(1)
    with pytest.raises(IndexError):
        inst.pull(2, RngStream(0))


def test_invalid_instances():
    with pytest.raises(ValueError):
        BanditInstance(())
    with pytest.raises(ValueError):
        BanditInstance((1.2,))
    with pytest.raises(ValueError):
        BanditInstance((0.5,), kind="gaussian")


def test_parse_kind():
    inst = BanditInstance.parse_kind([0.9, 0.6], "bernoulli")
    assert inst.kind == "bernoulli"
    inst = BanditInstance.parse_kind([0.5], "bounded:beta(2,3)")
    assert inst.kind == "bounded-beta" and inst.beta_a == 2 and inst.beta_b == 3
    assert BanditInstance.parse_kind([0.5], "bounded:point").kind == "bounded-point"
    with pytest.raises(ValueError):
        BanditInstance.parse_kind([0.5], "bounded:gamma(2)")


def test_stream_reproducibility():
    a = [RngStream(42, (3, 1)).uniform() for _ in range(5)]
    b = [RngStream(42, (3, 1)).uniform() for _ in range(5)]
    assert a == b
    c = [RngStream(42, (3, 2)).uniform() for _ in range(5)]
    assert a != c


def test_pull_reproducibility():
    inst = BanditInstance((0.3, 0.7))
    seq1 = [inst.pull(t % 2, RngStream(5, t)) for t in range(50)]
    seq2 = [inst.pull(t % 2, RngStream(5, t)) for t in range(50)]
    assert seq1 == seq2


def test_randomized_rounding_preserves_mean():
    # 4-sigma interval over 10^6 draws for the bounded-beta arm.
    inst = BanditInstance((0.35,), kind="bounded-beta", beta_a=2.0, beta_b=3.0)
    rng = RngStream(23)
    table = inst.reward_table(10**6, rng)
    assert abs(table.mean() - 0.35) < 4 * math.sqrt(0.35 * 0.65 / 1e6)


def test_bounded_point_rounding():
    inst = BanditInstance((0.5,), kind="bounded-point")
    rng = RngStream(29)
    table = inst.reward_table(10**5, rng)
    assert abs(table.mean() - 0.5) < 4 * math.sqrt(0.25 / 1e5)


def test_reward_table_values_are_bits():
    inst = BanditInstance((0.4, 0.8))
    table = inst.reward_table(1000, RngStream(31))
    assert table.shape == (2, 1000)
    assert set(np.unique(table)) <= {0, 1}
