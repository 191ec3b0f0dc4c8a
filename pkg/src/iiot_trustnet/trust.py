"""Device-level trust primitives for an IIoT network.

Pure functions and value types covering signal-energy presence detection,
monitoring capability, misbehavior counting, the binary trust factor, and
device classification. All operations return new values; nothing here holds
shared mutable state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

# Continuous trust moves by this much per judged interaction.
SCORE_STEP = 0.05

# New devices start with a score drawn uniformly from this range.
INITIAL_TRUST_LOW = 0.70
INITIAL_TRUST_HIGH = 0.95

DeviceId = int


class GracePeriodError(RuntimeError):
    """Raised when a trust judgment is requested before the grace period ends."""


class Presence(Enum):
    PRESENT = "present"
    ABSENT = "absent"


class HealthColor(Enum):
    BLACK = "black"   # flagged malicious
    GREEN = "green"   # legitimate
    GREY = "grey"     # alert: new entry or bursty transmission


class Role(Enum):
    LID = "lid"   # legitimate device
    MD = "md"     # malicious device
    NID = "nid"   # new device, not yet judged


class McVerdict(Enum):
    LEGITIMATE = "legitimate"
    MALICIOUS = "malicious"


class DeviceClass(Enum):
    LEGITIMATE_ID = "legitimate_id"
    MALICIOUS_DEVICE = "malicious_device"


@dataclass(frozen=True)
class DeviceStats:
    """Observable per-device counters the coordinator keeps.

    `wrong_info_count` can never exceed `interactions`; both only grow.
    """

    pdr: float = 1.0
    energy: float = 0.0
    activeness: float = 0.0
    message_rate: float = 0.0
    wrong_info_count: int = 0
    interactions: int = 0
    survival_time: int = 0

    def __post_init__(self):
        if not 0.0 <= self.pdr <= 1.0:
            raise ValueError(f"pdr must be in [0,1], got {self.pdr}")
        for name in ("energy", "activeness", "message_rate"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        for name in ("wrong_info_count", "interactions", "survival_time"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.wrong_info_count > self.interactions:
            raise ValueError("wrong_info_count cannot exceed interactions")


@dataclass(frozen=True)
class TrustState:
    """Continuous trust score plus the binary trust factor and role."""

    score: float
    tf: int = 1
    role: Role = Role.NID

    def __post_init__(self):
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"trust score must be in [0,1], got {self.score}")
        if self.tf not in (0, 1):
            raise ValueError(f"tf must be 0 or 1, got {self.tf}")


@dataclass(frozen=True)
class Thresholds:
    """Tunable decision thresholds for the trust pipeline."""

    gamma: float = 1.0                      # energy presence cut
    trust_threshold: float = 0.3            # score below this -> untrusted
    count_threshold_fraction: float = 0.5   # wrong-info ratio above this -> malicious
    mc_threshold: float = 1.5               # reserved monitoring-capability gate
    grace_transmissions: int = 5            # judgments start after this many messages

    def __post_init__(self):
        if self.gamma <= 0 or self.mc_threshold <= 0:
            raise ValueError("thresholds must be strictly positive")
        if not 0.0 < self.trust_threshold < INITIAL_TRUST_LOW:
            raise ValueError(
                "trust_threshold must be positive and below the minimum "
                f"initial trust {INITIAL_TRUST_LOW}"
            )
        if not 0.0 < self.count_threshold_fraction <= 1.0:
            raise ValueError("count_threshold_fraction must be in (0,1]")
        if self.grace_transmissions < 1:
            raise ValueError("grace_transmissions must be positive")


def compute_energy(samples: Sequence[float]) -> float:
    """Sum of squared sample magnitudes; 0 for an empty sequence."""
    squares = []
    for x in samples:
        if not math.isfinite(x):
            raise ValueError(f"non-finite sample {x!r}")
        squares.append(x * x)
    # fsum is exactly rounded, so the result is order-independent
    return math.fsum(squares)


def classify_presence(energy: float, gamma: float) -> Presence:
    """Energy at or above the threshold counts as present."""
    if not (math.isfinite(energy) and math.isfinite(gamma)):
        raise ValueError("energy and gamma must be finite")
    if energy < 0 or gamma < 0:
        raise ValueError("energy and gamma must be non-negative")
    return Presence.PRESENT if energy >= gamma else Presence.ABSENT


def minmax_normalize(value: float, lo: float, hi: float) -> float:
    """Map value into [0,1] over [lo, hi]; a degenerate range maps to 1."""
    if hi == lo:
        return 1.0
    return (value - lo) / (hi - lo)


def compute_monitoring_capability(
    stats: DeviceStats, population: Iterable[DeviceStats]
) -> float:
    """Composite of delivery ratio, energy, and activeness, each min-max
    normalized over the current population. Result lies in [0, 3]."""
    pop = list(population)
    if not pop:
        raise ValueError("population must not be empty")
    pdrs = [d.pdr for d in pop]
    energies = [d.energy for d in pop]
    actives = [d.activeness for d in pop]
    return (
        minmax_normalize(stats.pdr, min(pdrs), max(pdrs))
        + minmax_normalize(stats.energy, min(energies), max(energies))
        + minmax_normalize(stats.activeness, min(actives), max(actives))
    )


def classify_health(
    stats: DeviceStats, trust: TrustState, is_new_or_bursty: bool
) -> HealthColor:
    """Black for untrusted devices, grey for alerts, green otherwise."""
    if trust.tf == 0 or trust.role is Role.MD:
        return HealthColor.BLACK
    if is_new_or_bursty:
        return HealthColor.GREY
    return HealthColor.GREEN


def update_misbehavior(stats: DeviceStats, traced_wrong_info: bool) -> DeviceStats:
    """Record one interaction, bumping the wrong-info counter when traced."""
    return replace(
        stats,
        interactions=stats.interactions + 1,
        wrong_info_count=stats.wrong_info_count + (1 if traced_wrong_info else 0),
    )


def evaluate_mc(stats: DeviceStats, thresholds: Thresholds) -> McVerdict:
    """Malicious when the wrong-info ratio strictly exceeds the count threshold."""
    if stats.interactions == 0:
        raise GracePeriodError("no interactions recorded yet; verdict indeterminate")
    ratio = stats.wrong_info_count / stats.interactions
    if ratio > thresholds.count_threshold_fraction:
        return McVerdict.MALICIOUS
    return McVerdict.LEGITIMATE


def compute_trust_factor(
    trust: TrustState,
    stats: DeviceStats,
    mc_result: McVerdict,
    thresholds: Thresholds,
) -> TrustState:
    """Re-derive the binary trust factor from history and the MC verdict.

    The continuous score moves by SCORE_STEP per judged interaction (up on a
    legitimate verdict, down on a malicious one) and the factor is granted
    only when the updated score clears the trust threshold and the verdict is
    legitimate. A device marked MD never regains tf=1.
    """
    if stats.interactions < thresholds.grace_transmissions:
        raise GracePeriodError(
            f"trust factor undefined before {thresholds.grace_transmissions} "
            f"transmissions (seen {stats.interactions})"
        )
    good = mc_result is McVerdict.LEGITIMATE
    score = trust.score + (SCORE_STEP if good else -SCORE_STEP)
    score = min(1.0, max(0.0, score))
    if good and score >= thresholds.trust_threshold and trust.role is not Role.MD:
        return TrustState(score=score, tf=1, role=trust.role)
    return TrustState(score=score, tf=0, role=Role.MD)


def classify_existing_device(
    st_device: int, st_md_reference: int, transmitted: bool
) -> Role:
    """Known devices stay legitimate only while outliving the malicious
    reference survival time and still transmitting."""
    if st_device < 0 or st_md_reference < 0:
        raise ValueError("survival times must be non-negative")
    if st_device > st_md_reference and transmitted:
        return Role.LID
    return Role.MD


def classify_new_device(
    trust: TrustState,
    interactions: int,
    thresholds: Thresholds = Thresholds(),
) -> DeviceClass:
    """Judge a new device once its grace period is over: tf decides."""
    if interactions < thresholds.grace_transmissions:
        raise GracePeriodError(
            f"new device judged only after {thresholds.grace_transmissions} "
            f"transmissions (seen {interactions})"
        )
    return DeviceClass.LEGITIMATE_ID if trust.tf == 1 else DeviceClass.MALICIOUS_DEVICE


def init_trust(rng: np.random.Generator) -> TrustState:
    """Fresh device trust: score uniform in [0.70, 0.95], trusted, role NID."""
    score = INITIAL_TRUST_LOW + (INITIAL_TRUST_HIGH - INITIAL_TRUST_LOW) * rng.random()
    return TrustState(score=score, tf=1, role=Role.NID)
