"""Closed-form attacker analytics.

Four-hypothesis activity model for the coordinator's channel (legitimate
device and/or attacker active), the resulting decision-error probability,
attack strength, and the throughput seen at a compromised receiver. All
functions are pure; SNR values are linear scale, not dB.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

PRIOR_TOLERANCE = 1e-9


def _check_probability(name: str, value: float) -> None:
    if not (math.isfinite(value) and 0.0 <= value <= 1.0):
        raise ValueError(f"{name} must be a probability in [0,1], got {value}")


def hypothesis_probabilities(
    pr_h0: float, pr_h1: float, alpha: float, beta: float
) -> tuple[float, float, float, float]:
    """Joint probabilities of the four channel states.

    mu0: idle channel, attacker silent      (1-beta)  * Pr(H0)
    mu1: legitimate only                     (1-alpha) * Pr(H1)
    mu2: attacker imitating on idle channel  beta      * Pr(H0)
    mu3: legitimate and attacker together    alpha     * Pr(H1)
    """
    for name, value in (("pr_h0", pr_h0), ("pr_h1", pr_h1),
                        ("alpha", alpha), ("beta", beta)):
        _check_probability(name, value)
    if abs(pr_h0 + pr_h1 - 1.0) > PRIOR_TOLERANCE:
        raise ValueError(f"priors must sum to 1, got {pr_h0} + {pr_h1}")
    return (
        (1.0 - beta) * pr_h0,
        (1.0 - alpha) * pr_h1,
        beta * pr_h0,
        alpha * pr_h1,
    )


def probability_of_error(
    w_fa: float, w_m: float, pr_m_on: float, pr_m_off: float
) -> float:
    """Overall decision error: miss weight while the attacker is on plus
    false-authentication weight while it is off."""
    for name, value in (("w_fa", w_fa), ("w_m", w_m),
                        ("pr_m_on", pr_m_on), ("pr_m_off", pr_m_off)):
        _check_probability(name, value)
    if abs(pr_m_on + pr_m_off - 1.0) > PRIOR_TOLERANCE:
        raise ValueError(f"attacker on/off priors must sum to 1, got {pr_m_on} + {pr_m_off}")
    return w_m * pr_m_on + w_fa * pr_m_off


@dataclass(frozen=True)
class ChannelParams:
    """Linear-scale SNR at the legitimate and malicious transmitters."""

    snr_lid: float
    snr_md: float

    def __post_init__(self):
        for name in ("snr_lid", "snr_md"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0.0):
                raise ValueError(f"{name} must be finite and non-negative, got {value}")


def attack_strength(channel: ChannelParams) -> float:
    """Relative attacker signal power: snr_md / (1 + snr_lid)."""
    return channel.snr_md / (1.0 + channel.snr_lid)


def compromised_throughput(mu1: float, mu3: float, channel: ChannelParams) -> float:
    """Shannon throughput mixture at a compromised receiver.

    The legitimate-only state contributes clean capacity; the contested state
    contributes capacity with the attacker's signal as interference.
    """
    _check_probability("mu1", mu1)
    _check_probability("mu3", mu3)
    clean = mu1 * math.log2(1.0 + channel.snr_lid)
    contested = mu3 * math.log2(1.0 + channel.snr_lid / (1.0 + channel.snr_md))
    return clean + contested


@dataclass(frozen=True)
class HypothesisModel:
    """Priors and attack parameters together with the derived state mix."""

    pr_h0: float = 0.5
    pr_h1: float = 0.5
    alpha: float = 0.2
    beta: float = 0.8
    mu: tuple[float, float, float, float] = field(init=False)

    def __post_init__(self):
        object.__setattr__(
            self, "mu",
            hypothesis_probabilities(self.pr_h0, self.pr_h1, self.alpha, self.beta),
        )


@dataclass(frozen=True)
class ErrorModel:
    """False-authentication / non-detection rates and the combined error."""

    w_fa: float
    w_m: float
    pr_m_on: float = 0.8
    pr_m_off: float = 0.2
    w_e: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(
            self, "w_e",
            probability_of_error(self.w_fa, self.w_m, self.pr_m_on, self.pr_m_off),
        )


def db_to_linear(db: float) -> float:
    """Convert a decibel power ratio to linear scale."""
    return 10.0 ** (db / 10.0)
