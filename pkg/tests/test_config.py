import pytest

from lenient_bandits.config import (
    ConfigError,
    apply_overrides,
    build_experiment_config,
    build_ratio_params,
    parse_config_text,
)

GOOD = """
# benchmark-style experiment
means = [0.9, 0.6]
kind = bernoulli
policies = [ts, eps-ts:0.2]
gap_functions = [standard, hinge:0.2]
horizon = 5000
n_seeds = 100
base_seed = 1
"""


def test_parse_basic():
    values = parse_config_text(GOOD)
    assert values["means"] == [0.9, 0.6]
    assert values["policies"] == ["ts", "eps-ts:0.2"]
    assert values["horizon"] == 5000


def test_parse_errors_name_the_line():
    with pytest.raises(ConfigError, match="line 2"):
        parse_config_text("a = 1\nnot a key value pair\n")
    with pytest.raises(ConfigError, match="unterminated"):
        parse_config_text("xs = [1, 2\n")


def test_build_experiment_config():
    config = build_experiment_config(parse_config_text(GOOD))
    assert config.instance.means == (0.9, 0.6)
    assert config.policies == ("ts", "eps-ts:0.2")
    assert [f.spell() for f in config.gap_functions] == ["standard", "hinge:0.2"]
    assert config.checkpoints[-1] == 5000


def test_missing_key_names_it():
    values = parse_config_text(GOOD)
    del values["means"]
    with pytest.raises(ConfigError, match="means"):
        build_experiment_config(values)


def test_overrides_take_precedence():
    values = parse_config_text(GOOD)
    values = apply_overrides(values, ["n_seeds=7", "means=[0.5, 0.2]"])
    config = build_experiment_config(values)
    assert config.n_seeds == 7
    assert config.instance.means == (0.5, 0.2)


def test_bad_override():
    with pytest.raises(ConfigError, match="key=value"):
        apply_overrides({}, ["oops"])


def test_ratio_params():
    values = parse_config_text(
        "mu2 = 0.3\neps = 0.2\ngap_function = indicator:0.2\nmu1_grid = [0.55, 0.95, 0.1]\n"
    )
    mu2, eps, gap, grid = build_ratio_params(values)
    assert (mu2, eps) == (0.3, 0.2)
    assert gap.spell() == "indicator:0.2"
    assert grid == pytest.approx([0.55, 0.65, 0.75, 0.85, 0.95])


def test_ratio_params_validation():
    base = "mu2 = 0.3\neps = 0.2\ngap_function = indicator:0.2\n"
    with pytest.raises(ConfigError, match="mu1_grid"):
        build_ratio_params(parse_config_text(base + "mu1_grid = [0.5, 0.9]\n"))
    with pytest.raises(ConfigError, match="mu1_grid"):
        build_ratio_params(parse_config_text(base))
