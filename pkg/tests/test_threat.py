import math
import random

import mpmath
import pytest

from iiot_trustnet.threat import (
    ChannelParams,
    ErrorModel,
    HypothesisModel,
    attack_strength,
    compromised_throughput,
    db_to_linear,
    hypothesis_probabilities,
    probability_of_error,
)


def oracle_r_nid(mu1, mu3, snr_lid, snr_md):
    """High-precision reference evaluation, independent of the implementation."""
    mpmath.mp.dps = 50
    t1 = mpmath.mpf(mu1) * mpmath.log(1 + mpmath.mpf(snr_lid), 2)
    t2 = mpmath.mpf(mu3) * mpmath.log(
        1 + mpmath.mpf(snr_lid) / (1 + mpmath.mpf(snr_md)), 2
    )
    return float(t1 + t2)


# ------------------------------------------------- hypothesis mixture

def test_hypothesis_probabilities_table_values():
    mu = hypothesis_probabilities(0.5, 0.5, 0.2, 0.8)
    for got, want in zip(mu, (0.1, 0.4, 0.4, 0.1)):
        assert abs(got - want) < 1e-15


def test_hypothesis_probabilities_degenerate_cases():
    assert hypothesis_probabilities(0.5, 0.5, 0.0, 0.0) == (0.5, 0.5, 0.0, 0.0)
    assert hypothesis_probabilities(1.0, 0.0, 0.2, 1.0) == (0.0, 0.0, 1.0, 0.0)


def test_hypothesis_probabilities_bad_priors():
    with pytest.raises(ValueError):
        hypothesis_probabilities(0.6, 0.6, 0.2, 0.8)
    with pytest.raises(ValueError):
        hypothesis_probabilities(0.5, 0.5, 1.2, 0.8)


def test_hypothesis_probabilities_sum_to_one():
    rng = random.Random(5)
    for _ in range(2000):
        h0 = rng.random()
        mu = hypothesis_probabilities(h0, 1.0 - h0, rng.random(), rng.random())
        assert abs(sum(mu) - 1.0) < 1e-12
        assert all(0.0 <= m <= 1.0 for m in mu)


# ------------------------------------------------------ error probability

def test_probability_of_error_examples():
    assert probability_of_error(0.0, 0.0, 0.8, 0.2) == 0.0
    assert probability_of_error(0.5, 0.5, 0.8, 0.2) == pytest.approx(0.5, abs=1e-15)
    assert probability_of_error(1.0, 1.0, 0.3, 0.7) == pytest.approx(1.0, abs=1e-15)


def test_probability_of_error_domain():
    with pytest.raises(ValueError):
        probability_of_error(1.5, 0.0, 0.8, 0.2)
    with pytest.raises(ValueError):
        probability_of_error(0.5, 0.5, 0.9, 0.2)


def test_probability_of_error_affine_in_w_fa():
    # finite differences over a uniform grid are constant = pr_m_off
    pr_off = 0.2
    grid = [i / 40 for i in range(41)]
    for w_m in (0.0, 0.3, 1.0):
        values = [probability_of_error(w, w_m, 0.8, pr_off) for w in grid]
        slopes = [
            (values[i + 1] - values[i]) / (grid[i + 1] - grid[i])
            for i in range(len(grid) - 1)
        ]
        assert all(abs(s - pr_off) < 1e-12 for s in slopes)


# --------------------------------------------------------- attack strength

def test_attack_strength_examples():
    assert attack_strength(ChannelParams(10, 5)) == pytest.approx(5 / 11, abs=1e-15)
    assert attack_strength(ChannelParams(3, 0)) == 0.0
    assert attack_strength(ChannelParams(0, 1)) == 1.0


def test_attack_strength_homogeneous_in_snr_md():
    rng = random.Random(17)
    for _ in range(200):
        lid = rng.uniform(0, 30)
        md = rng.uniform(0, 30)
        rho1 = attack_strength(ChannelParams(lid, md))
        rho2 = attack_strength(ChannelParams(lid, 2 * md))
        assert rho2 == pytest.approx(2 * rho1, rel=1e-12)


def test_channel_params_domain():
    with pytest.raises(ValueError):
        ChannelParams(-1, 5)
    with pytest.raises(ValueError):
        ChannelParams(1, float("inf"))


# ------------------------------------------------- compromised throughput

def test_compromised_throughput_against_oracle():
    got = compromised_throughput(0.4, 0.1, ChannelParams(10, 5))
    assert abs(got - oracle_r_nid(0.4, 0.1, 10, 5)) < 1e-9
    assert got == pytest.approx(1.5252763973828033, abs=1e-9)


def test_compromised_throughput_trivial_points():
    assert compromised_throughput(0.4, 0.1, ChannelParams(0, 7)) == 0.0
    assert compromised_throughput(1.0, 0.0, ChannelParams(1, 123)) == pytest.approx(1.0)


def test_compromised_throughput_monotone_in_snr_lid():
    grid = [0.5 * k for k in range(1, 40)]
    values = [
        compromised_throughput(0.4, 0.1, ChannelParams(s, 5.0)) for s in grid
    ]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_compromised_throughput_non_increasing_in_snr_md():
    grid = [0.5 * k for k in range(41)]
    values = [
        compromised_throughput(0.4, 0.1, ChannelParams(10.0, s)) for s in grid
    ]
    assert all(b <= a for a, b in zip(values, values[1:]))


# ----------------------------------------------------------- model types

def test_hypothesis_model_carries_mixture():
    model = HypothesisModel()
    assert abs(sum(model.mu) - 1.0) < 1e-12
    assert model.mu == hypothesis_probabilities(0.5, 0.5, 0.2, 0.8)


def test_error_model_constructs_w_e():
    model = ErrorModel(w_fa=0.25, w_m=0.5)
    assert model.w_e == probability_of_error(0.25, 0.5, 0.8, 0.2)
    with pytest.raises(ValueError):
        ErrorModel(w_fa=0.1, w_m=0.1, pr_m_on=0.5, pr_m_off=0.2)


def test_db_conversion():
    assert db_to_linear(0.0) == 1.0
    assert db_to_linear(10.0) == pytest.approx(10.0)
    assert db_to_linear(-10.0) == pytest.approx(0.1)
