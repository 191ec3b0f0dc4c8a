"""Deterministic discrete-time IIoT network simulation.

One tick is one second. Devices are placed once, never move, and broadcast
to every neighbor within transmission range. Hidden attackers lace their
messages with false information at the configured attack rate; the
coordinator's trust pipeline judges every accepted message, and accepted
records are appended to per-phase hash chains when the ledger is enabled.

Every random decision is drawn from a named substream of the run seed, and
each device owns its message-content stream, so two runs that share a seed
see identical attempt schedules even when trust gating, the ledger switch,
or the attack rate differ. That alignment is what makes the paired
experiments (trust on/off, attack-strength sweeps) comparable run by run.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field, fields, replace
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from . import ledger as ledger_mod
from .coordinator import AdmissionStatus, CoordinatorRegistry, TxResult, elect_cid
from .ledger import Ledger, Phase, Record, TamperKind, validate_chain
from .trust import (
    DeviceStats,
    HealthColor,
    Role,
    Thresholds,
    classify_existing_device,
    classify_health,
    compute_energy,
    init_trust,
)

# substream tags under the run seed
_STREAM_INIT = 0
_STREAM_ATTACK = 1
_STREAM_ALTER = 2
_STREAM_INJECT = 3

_SAMPLES_PER_DEVICE = 8
_PHASE_ORDER = tuple(Phase)


class ConfigError(ValueError):
    """Raised for out-of-domain simulation parameters."""


class AlterationResult(Enum):
    SUCCEEDED = "succeeded"
    DETECTED = "detected"


@dataclass(frozen=True)
class SimConfig:
    """Run parameters; defaults follow the experiment setup."""

    duration_ticks: int = 80
    area: float = 400.0
    device_count: int = 25
    attacker_count: int = 0
    tx_range_m: float = 120.0
    pr_m_on: float = 0.8
    pr_m_off: float = 0.2
    alpha: float = 0.2
    beta: float = 0.8
    seed: int = 0
    ledger_enabled: bool = True
    trust_enabled: bool = True
    message_rate: int = 1
    attacker_burst_rate: int = 3
    compromise_budget: int = 5
    alteration_period: int = 10
    grace_transmissions: int = 5
    trust_threshold: float = 0.3
    count_threshold_fraction: float = 0.5

    def validate(self) -> None:
        if self.duration_ticks < 1:
            raise ConfigError("duration_ticks must be positive")
        if self.device_count < 1:
            raise ConfigError("device_count must be positive")
        if not 0 <= self.attacker_count < self.device_count:
            raise ConfigError("attacker_count must be smaller than device_count")
        if self.area <= 0 or self.tx_range_m <= 0:
            raise ConfigError("area and tx_range_m must be positive")
        for name in ("pr_m_on", "pr_m_off", "alpha", "beta"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name} must be in [0,1], got {value}")
        if abs(self.pr_m_on + self.pr_m_off - 1.0) > 1e-9:
            raise ConfigError("pr_m_on and pr_m_off must sum to 1")
        if self.seed < 0 or self.seed >= 2 ** 64:
            raise ConfigError("seed must fit in 64 unsigned bits")
        if self.message_rate < 1 or self.attacker_burst_rate < 1:
            raise ConfigError("message rates must be positive")
        if self.compromise_budget < 0:
            raise ConfigError("compromise_budget must be non-negative")
        if self.alteration_period < 1:
            raise ConfigError("alteration_period must be positive")
        if self.grace_transmissions < 1:
            raise ConfigError("grace_transmissions must be positive")
        if not 0.0 < self.trust_threshold < 0.7:
            raise ConfigError("trust_threshold must lie in (0, 0.7)")
        if not 0.0 < self.count_threshold_fraction <= 1.0:
            raise ConfigError("count_threshold_fraction must lie in (0,1]")

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, str]) -> "SimConfig":
        """Build a config from string key/value pairs (config-file contents)."""
        kwargs = {}
        known = {f.name: f.type for f in fields(cls)}
        for key, raw in mapping.items():
            if key not in known:
                raise ConfigError(f"unknown config key {key!r}")
            kwargs[key] = _coerce(key, known[key], raw)
        config = cls(**kwargs)
        config.validate()
        return config


def _coerce(key: str, type_name: str, raw: str):
    raw = raw.strip()
    if type_name == "bool":
        lowered = raw.lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"{key} expects a boolean, got {raw!r}")
    if type_name == "int":
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"{key} expects an integer, got {raw!r}") from None
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{key} expects a number, got {raw!r}") from None


@dataclass
class DeviceState:
    """World-side view of one device: placement, ground truth, exposure."""

    device_id: int
    x: float
    y: float
    hidden_attacker: bool
    rate: int
    health: HealthColor
    energy_samples: tuple[float, ...]
    false_received: int = 0
    compromised: bool = False


@dataclass(frozen=True)
class TickMetrics:
    """Cumulative counters captured at the end of each tick."""

    tick: int
    sent: int
    accepted: int
    rejected: int
    alterations_attempted: int
    alterations_succeeded: int
    alterations_detected: int
    compromised_devices: int
    blocked_devices: int


@dataclass(frozen=True)
class AuditEvent:
    tick: int
    sender: int
    tf_at_send: int
    accepted: bool


@dataclass
class RunMetrics:
    """Per-tick counters plus end-of-run aggregates."""

    ticks: list[TickMetrics] = field(default_factory=list)
    sent: int = 0
    accepted: int = 0
    rejected: int = 0
    alterations_attempted: int = 0
    alterations_succeeded: int = 0
    alterations_detected: int = 0
    accepted_from_tf0: int = 0
    compromised_count: int = 0
    compromise_fraction: float = 0.0
    blocked_count: int = 0
    empirical_w_fa: float = 0.0
    empirical_w_m: float = 0.0
    detection_success_rate: float = 0.0
    audit: list[AuditEvent] | None = None


class World:
    """Complete simulation state for one run."""

    def __init__(
        self,
        config: SimConfig,
        thresholds: Thresholds,
        devices: dict[int, DeviceState],
        registry: CoordinatorRegistry,
        ledgers: dict[Phase, Ledger],
        plain_store: dict[Phase, list[Record]],
        attack_rngs: dict[int, np.random.Generator],
        alteration_rng: np.random.Generator,
        inject_rng: np.random.Generator,
        audit: bool,
    ):
        self.config = config
        self.thresholds = thresholds
        self.devices = devices
        self.registry = registry
        self.ledgers = ledgers
        self.plain_store = plain_store
        self.attack_rngs = attack_rngs
        self.alteration_rng = alteration_rng
        self.inject_rng = inject_rng
        self.neighbors: dict[int, list[int]] = {}
        self.tick = 0
        self.metrics = RunMetrics(audit=[] if audit else None)
        self._rebuild_neighbors()

    def _rebuild_neighbors(self) -> None:
        ids = sorted(self.devices)
        limit = self.config.tx_range_m
        self.neighbors = {i: [] for i in ids}
        for pos, a in enumerate(ids):
            da = self.devices[a]
            for b in ids[pos + 1:]:
                db = self.devices[b]
                if math.hypot(da.x - db.x, da.y - db.y) <= limit:
                    self.neighbors[a].append(b)
                    self.neighbors[b].append(a)

    def attach_neighbors(self, device_id: int) -> None:
        """Link one new device into the existing neighbor lists."""
        dev = self.devices[device_id]
        limit = self.config.tx_range_m
        self.neighbors[device_id] = []
        for other_id in sorted(self.devices):
            if other_id == device_id:
                continue
            other = self.devices[other_id]
            if math.hypot(dev.x - other.x, dev.y - other.y) <= limit:
                self.neighbors[device_id].append(other_id)
                self.neighbors[other_id].append(device_id)


def _substream(seed: int, *tags: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, *tags])))


def build_network(config: SimConfig, audit: bool = False) -> World:
    """Place devices, elect the coordinator, and open the phase chains."""
    config.validate()
    rng = _substream(config.seed, _STREAM_INIT)

    positions = [(rng.random() * config.area, rng.random() * config.area)
                 for _ in range(config.device_count)]
    if config.attacker_count:
        attacker_ids = set(
            int(i) for i in rng.choice(
                config.device_count, size=config.attacker_count, replace=False
            )
        )
    else:
        attacker_ids = set()

    devices: dict[int, DeviceState] = {}
    trust_by_id = {}
    stats_by_id = {}
    for device_id in range(config.device_count):
        samples = tuple(float(s) for s in rng.normal(0.0, 1.0, _SAMPLES_PER_DEVICE))
        pdr = 0.7 + 0.3 * rng.random()
        trust = init_trust(rng)
        is_attacker = device_id in attacker_ids
        rate = config.attacker_burst_rate if is_attacker else config.message_rate
        x, y = positions[device_id]
        devices[device_id] = DeviceState(
            device_id=device_id,
            x=x,
            y=y,
            hidden_attacker=is_attacker,
            rate=rate,
            health=HealthColor.GREEN,
            energy_samples=samples,
        )
        trust_by_id[device_id] = trust
        stats_by_id[device_id] = DeviceStats(
            pdr=pdr,
            energy=compute_energy(samples),
            activeness=0.0,
            message_rate=float(rate),
        )

    mean_energy = statistics.fmean(s.energy for s in stats_by_id.values())
    thresholds = Thresholds(
        gamma=0.5 * mean_energy,
        trust_threshold=config.trust_threshold,
        count_threshold_fraction=config.count_threshold_fraction,
        grace_transmissions=config.grace_transmissions,
    )

    present = {
        device_id: stats
        for device_id, stats in stats_by_id.items()
        if stats.energy >= thresholds.gamma
    }
    cid = elect_cid(present)
    registry = CoordinatorRegistry(elected_cid=cid)
    for device_id in range(config.device_count):
        registry.register_device(
            device_id,
            trust_by_id[device_id],
            stats_by_id[device_id],
            admission=AdmissionStatus.ADMITTED,
        )

    ledgers = {phase: Ledger.genesis(phase) for phase in _PHASE_ORDER}
    plain_store = {phase: [] for phase in _PHASE_ORDER}
    attack_rngs = {
        device_id: _substream(config.seed, _STREAM_ATTACK, device_id)
        for device_id in sorted(attacker_ids)
    }

    world = World(
        config=config,
        thresholds=thresholds,
        devices=devices,
        registry=registry,
        ledgers=ledgers,
        plain_store=plain_store,
        attack_rngs=attack_rngs,
        alteration_rng=_substream(config.seed, _STREAM_ALTER),
        inject_rng=_substream(config.seed, _STREAM_INJECT),
        audit=audit,
    )
    _refresh_health(world)
    return world


def inject_new_device(world: World, hidden_role: Role = Role.LID) -> int:
    """Drop a new device into the area; it starts grey and unjudged."""
    rng = world.inject_rng
    device_id = max(world.devices) + 1
    x = rng.random() * world.config.area
    y = rng.random() * world.config.area
    samples = tuple(float(s) for s in rng.normal(0.0, 1.0, _SAMPLES_PER_DEVICE))
    pdr = 0.7 + 0.3 * rng.random()
    trust = init_trust(rng)
    is_attacker = hidden_role is Role.MD
    rate = world.config.attacker_burst_rate if is_attacker else world.config.message_rate
    world.registry.register_device(
        device_id,
        trust,
        DeviceStats(pdr=pdr, energy=compute_energy(samples), message_rate=float(rate)),
        admission=AdmissionStatus.PENDING,
    )
    world.devices[device_id] = DeviceState(
        device_id=device_id,
        x=x,
        y=y,
        hidden_attacker=is_attacker,
        rate=rate,
        health=HealthColor.GREY,
        energy_samples=samples,
    )
    if is_attacker:
        world.attack_rngs[device_id] = _substream(world.config.seed, _STREAM_ATTACK, device_id)
    world.attach_neighbors(device_id)
    return device_id


def _ensure_coordinator(world: World) -> None:
    stats_map = {
        device_id: rec.stats for device_id, rec in world.registry.records.items()
    }
    world.registry.reelect_on_failure(stats_map, world.thresholds)


def _phase_for(device_id: int) -> Phase:
    # route records over the four process phases; the spare chain stays idle
    return Phase(device_id % 4)


def _store_record(world: World, device_id: int, tick: int, slot: int, false_info: bool) -> None:
    phase = _phase_for(device_id)
    payload = f"{device_id}:{tick}:{slot}:{int(false_info)}".encode()
    record = Record(device_id=device_id, phase=phase, payload=payload, tick=tick)
    if world.config.ledger_enabled:
        miner_tf = world.registry.record(world.registry.elected_cid).trust.tf
        world.ledgers[phase].append_record(record, miner_tf)
    else:
        world.plain_store[phase].append(record)


def _refresh_health(world: World) -> None:
    median_rate = statistics.median(dev.rate for dev in world.devices.values())
    for device_id, dev in world.devices.items():
        rec = world.registry.record(device_id)
        is_new = rec.admission is AdmissionStatus.PENDING
        bursty = dev.rate > 3 * median_rate
        dev.health = classify_health(rec.stats, rec.trust, is_new or bursty)


def _blocked_devices(world: World) -> int:
    return sum(
        1
        for device_id in world.devices
        if not world.registry.is_unblocked(device_id)
    )


def attempt_alteration(
    world: World,
    phase: Phase,
    block_index: int,
    mutation: TamperKind = TamperKind.PAYLOAD_FLIP,
) -> AlterationResult:
    """One attacker edit of stored data.

    With the ledger on, the tampered chain is validated and, once the break
    is found, rolled back to the pre-attack snapshot. Without the ledger the
    edit lands silently.
    """
    m = world.metrics
    m.alterations_attempted += 1
    if world.config.ledger_enabled:
        chain = world.ledgers[phase]
        tampered = ledger_mod.tamper(chain, block_index, mutation)
        world.ledgers[phase] = tampered
        if validate_chain(tampered) is not None:
            world.ledgers[phase] = chain
            m.alterations_detected += 1
            return AlterationResult.DETECTED
        m.alterations_succeeded += 1
        return AlterationResult.SUCCEEDED
    store = world.plain_store[phase]
    record = store[block_index]
    flipped = bytes([record.payload[0] ^ 0xFF]) + record.payload[1:]
    store[block_index] = replace(record, payload=flipped)
    m.alterations_succeeded += 1
    return AlterationResult.SUCCEEDED


def _scheduled_alteration(world: World) -> None:
    rng = world.alteration_rng
    if world.config.ledger_enabled:
        candidates = [
            phase for phase in _PHASE_ORDER if len(world.ledgers[phase]) >= 2
        ]
        if not candidates:
            return
        phase = candidates[int(rng.integers(len(candidates)))]
        chain_len = len(world.ledgers[phase])
        kinds = [TamperKind.PAYLOAD_FLIP]
        if chain_len >= 3:
            # fixup and deletion need a successor block to contradict
            kinds += [TamperKind.HASH_FIXUP, TamperKind.DELETE_BLOCK]
        kind = kinds[int(rng.integers(len(kinds)))]
        upper = chain_len if kind is TamperKind.PAYLOAD_FLIP else chain_len - 1
        index = int(rng.integers(1, upper))
        attempt_alteration(world, phase, index, kind)
    else:
        candidates = [phase for phase in _PHASE_ORDER if world.plain_store[phase]]
        if not candidates:
            return
        phase = candidates[int(rng.integers(len(candidates)))]
        index = int(rng.integers(len(world.plain_store[phase])))
        attempt_alteration(world, phase, index, TamperKind.PAYLOAD_FLIP)


def step(world: World) -> World:
    """Advance the world by one tick of the full detection loop."""
    cfg = world.config
    if world.tick >= cfg.duration_ticks:
        raise RuntimeError(
            f"simulation finished at tick {cfg.duration_ticks}; cannot step further"
        )
    t = world.tick
    m = world.metrics
    _ensure_coordinator(world)

    # the legitimate side of the channel is active if any trusted
    # non-attacker could transmit this tick
    h1_active = any(
        not dev.hidden_attacker and world.registry.is_unblocked(device_id)
        for device_id, dev in world.devices.items()
    )

    for device_id in sorted(world.devices):
        dev = world.devices[device_id]
        if not world.neighbors.get(device_id):
            continue
        for slot in range(dev.rate):
            false_info = False
            if dev.hidden_attacker:
                p = cfg.alpha if h1_active else cfg.beta
                false_info = bool(world.attack_rngs[device_id].random() < p)
            rec = world.registry.record(device_id)
            tf_at_send = rec.trust.tf
            m.sent += 1
            if cfg.trust_enabled:
                result = world.registry.process_transmission(
                    device_id, false_info, world.thresholds
                )
            else:
                result = world.registry.record_transmission_unjudged(device_id, false_info)
            accepted = result is TxResult.ACCEPTED
            if m.audit is not None:
                m.audit.append(AuditEvent(t, device_id, tf_at_send, accepted))
            if not accepted:
                m.rejected += 1
                continue
            m.accepted += 1
            if tf_at_send == 0:
                m.accepted_from_tf0 += 1
            if false_info:
                for neighbor_id in world.neighbors[device_id]:
                    neighbor = world.devices[neighbor_id]
                    if neighbor.hidden_attacker:
                        continue
                    neighbor.false_received += 1
                    if (
                        not neighbor.compromised
                        and neighbor.false_received > cfg.compromise_budget
                    ):
                        neighbor.compromised = True
            _store_record(world, device_id, t, slot, false_info)

    world.registry.tick_survival()
    _refresh_health(world)

    if (t + 1) % cfg.alteration_period == 0:
        attackers = sorted(
            device_id for device_id, dev in world.devices.items() if dev.hidden_attacker
        )
        for _ in attackers:
            _scheduled_alteration(world)

    m.ticks.append(
        TickMetrics(
            tick=t,
            sent=m.sent,
            accepted=m.accepted,
            rejected=m.rejected,
            alterations_attempted=m.alterations_attempted,
            alterations_succeeded=m.alterations_succeeded,
            alterations_detected=m.alterations_detected,
            compromised_devices=sum(
                1 for dev in world.devices.values() if dev.compromised
            ),
            blocked_devices=_blocked_devices(world),
        )
    )
    world.tick += 1
    return world


def classify_existing(world: World, device_id: int) -> Role:
    """Survival-time diagnostic for an established device, measured against
    the median survival time of currently flagged devices."""
    rec = world.registry.record(device_id)
    reference = world.registry.md_survival_reference()
    transmitted = bool(world.neighbors.get(device_id)) and world.registry.is_unblocked(
        device_id
    )
    return classify_existing_device(rec.stats.survival_time, reference, transmitted)


def _finalize(world: World) -> RunMetrics:
    m = world.metrics
    legit = [dev for dev in world.devices.values() if not dev.hidden_attacker]
    attackers = [dev for dev in world.devices.values() if dev.hidden_attacker]
    m.compromised_count = sum(1 for dev in legit if dev.compromised)
    m.compromise_fraction = m.compromised_count / len(legit) if legit else 0.0
    m.blocked_count = _blocked_devices(world)
    legit_blocked = sum(
        1 for dev in legit if not world.registry.is_unblocked(dev.device_id)
    )
    m.empirical_w_fa = legit_blocked / len(legit) if legit else 0.0
    attackers_unblocked = sum(
        1 for dev in attackers if world.registry.is_unblocked(dev.device_id)
    )
    m.empirical_w_m = attackers_unblocked / len(attackers) if attackers else 0.0
    m.detection_success_rate = (
        m.alterations_detected / m.alterations_attempted
        if m.alterations_attempted
        else 0.0
    )
    return m


def run(config: SimConfig, audit: bool = False) -> RunMetrics:
    """Build the network, run the full duration, return final metrics."""
    return run_world(config, audit=audit)[1]


def run_world(config: SimConfig, audit: bool = False) -> tuple[World, RunMetrics]:
    """Like run(), but also hands back the finished world (for dumps)."""
    world = build_network(config, audit=audit)
    for _ in range(config.duration_ticks):
        step(world)
    return world, _finalize(world)


def sweep_attack_strength(
    config: SimConfig, alpha_values: Sequence[float], runs: int = 30
) -> list[tuple[float, float, float]]:
    """Mean and spread of the compromised fraction per attack rate.

    Each attack rate reuses the same seed set (config.seed + run index), so
    rows are comparable pair by pair.
    """
    if runs < 1:
        raise ConfigError("runs must be positive")
    rows = []
    for alpha in alpha_values:
        if not 0.0 <= alpha <= 1.0:
            raise ConfigError(f"alpha must be in [0,1], got {alpha}")
        fractions = []
        for r in range(runs):
            cfg = replace(config, alpha=float(alpha), seed=config.seed + r)
            fractions.append(run(cfg).compromise_fraction)
        rows.append(
            (float(alpha), float(np.mean(fractions)), float(np.std(fractions)))
        )
    return rows
