"""Coordinator election and the coordinator's device table.

The elected coordinator (CID) keeps one table row per registered device and
runs the admission and per-message trust pipeline: messages from blocked or
untrusted senders are rejected, everything else feeds the misbehavior
counters and the trust-factor re-evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Mapping

from .trust import (
    DeviceClass,
    DeviceId,
    DeviceStats,
    Presence,
    Thresholds,
    TrustState,
    classify_new_device,
    classify_presence,
    compute_monitoring_capability,
    compute_trust_factor,
    evaluate_mc,
    minmax_normalize,
    update_misbehavior,
)


class ElectionError(RuntimeError):
    """Raised when no device is eligible to act as coordinator."""


class RegistrationError(ValueError):
    """Raised on duplicate device registration."""


class AdmissionStatus(Enum):
    PENDING = "pending"
    ADMITTED = "admitted"
    BLOCKED = "blocked"    # terminal


class TxResult(Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"


@dataclass(frozen=True)
class RegistryEntry:
    """One row of the coordinator's table."""

    cid_id: DeviceId
    device_id: DeviceId
    cid_address: str
    device_address: str
    routing_info: str
    tf: int
    survival_time: int


@dataclass
class DeviceRecord:
    """Registry-internal mutable state behind a table row."""

    entry: RegistryEntry
    trust: TrustState
    stats: DeviceStats
    admission: AdmissionStatus


def elect_cid(devices: Mapping[DeviceId, DeviceStats]) -> DeviceId:
    """Pick the coordinator: highest normalized energy plus monitoring
    capability, ties broken by longest survival time, then smallest id."""
    if not devices:
        raise ElectionError("no devices available for election")
    ids = sorted(devices)
    population = [devices[i] for i in ids]
    energies = [d.energy for d in population]
    e_lo, e_hi = min(energies), max(energies)
    mc = {i: compute_monitoring_capability(devices[i], population) for i in ids}
    mc_lo, mc_hi = min(mc.values()), max(mc.values())

    def fitness(device_id: DeviceId):
        d = devices[device_id]
        composite = (
            minmax_normalize(d.energy, e_lo, e_hi)
            + minmax_normalize(mc[device_id], mc_lo, mc_hi)
        )
        return (composite, d.survival_time, -device_id)

    return max(ids, key=fitness)


class CoordinatorRegistry:
    """The CID's table plus per-device trust, stats, and admission state."""

    def __init__(self, elected_cid: DeviceId):
        self.elected_cid = elected_cid
        self.records: dict[DeviceId, DeviceRecord] = {}

    def __contains__(self, device_id: DeviceId) -> bool:
        return device_id in self.records

    def __len__(self) -> int:
        return len(self.records)

    def record(self, device_id: DeviceId) -> DeviceRecord:
        return self.records[device_id]

    def register_device(
        self,
        device_id: DeviceId,
        trust: TrustState,
        stats: DeviceStats,
        admission: AdmissionStatus = AdmissionStatus.PENDING,
    ) -> RegistryEntry:
        """Add a table row for a device; ids are registered exactly once."""
        if device_id in self.records:
            raise RegistrationError(f"device {device_id} already registered")
        entry = RegistryEntry(
            cid_id=self.elected_cid,
            device_id=device_id,
            cid_address=f"dev://{self.elected_cid}",
            device_address=f"dev://{device_id}",
            routing_info=f"route://{self.elected_cid}/{device_id}",
            tf=trust.tf,
            survival_time=stats.survival_time,
        )
        self.records[device_id] = DeviceRecord(
            entry=entry, trust=trust, stats=stats, admission=admission
        )
        return entry

    def admit_new_device(
        self,
        device_id: DeviceId,
        transmissions_observed: int,
        trust: TrustState,
        thresholds: Thresholds = Thresholds(),
    ) -> AdmissionStatus:
        """Admission gate: pending through the grace period, then the trust
        factor decides once. Blocked is terminal."""
        rec = self.records[device_id]
        if rec.admission is AdmissionStatus.BLOCKED:
            return AdmissionStatus.BLOCKED
        if rec.admission is AdmissionStatus.ADMITTED:
            return AdmissionStatus.ADMITTED
        if transmissions_observed < thresholds.grace_transmissions:
            return AdmissionStatus.PENDING
        verdict = classify_new_device(trust, transmissions_observed, thresholds)
        rec.admission = (
            AdmissionStatus.ADMITTED
            if verdict is DeviceClass.LEGITIMATE_ID
            else AdmissionStatus.BLOCKED
        )
        return rec.admission

    def process_transmission(
        self,
        sender: DeviceId,
        traced_wrong_info: bool,
        thresholds: Thresholds = Thresholds(),
    ) -> TxResult:
        """One message through the trust pipeline.

        Blocked or untrusted senders are rejected outright. Accepted messages
        update the misbehavior counters; past the grace period the verdict and
        trust factor are re-derived and a pending device is admitted or
        blocked.
        """
        rec = self.records[sender]
        if rec.admission is AdmissionStatus.BLOCKED or rec.trust.tf == 0:
            return TxResult.REJECTED
        rec.stats = update_misbehavior(rec.stats, traced_wrong_info)
        if rec.stats.interactions >= thresholds.grace_transmissions:
            verdict = evaluate_mc(rec.stats, thresholds)
            rec.trust = compute_trust_factor(rec.trust, rec.stats, verdict, thresholds)
            rec.entry = replace(
                rec.entry, tf=rec.trust.tf, survival_time=rec.stats.survival_time
            )
            if rec.admission is AdmissionStatus.PENDING:
                self.admit_new_device(sender, rec.stats.interactions, rec.trust, thresholds)
        return TxResult.ACCEPTED

    def record_transmission_unjudged(self, sender: DeviceId, traced_wrong_info: bool) -> TxResult:
        """Conventional (trust-disabled) path: count the message, judge nothing."""
        rec = self.records[sender]
        rec.stats = update_misbehavior(rec.stats, traced_wrong_info)
        return TxResult.ACCEPTED

    def is_unblocked(self, device_id: DeviceId) -> bool:
        rec = self.records[device_id]
        return rec.admission is not AdmissionStatus.BLOCKED and rec.trust.tf == 1

    def tick_survival(self) -> None:
        """Advance survival time and activeness for every non-blocked device."""
        for rec in self.records.values():
            if rec.admission is AdmissionStatus.BLOCKED:
                continue
            rec.stats = replace(
                rec.stats,
                survival_time=rec.stats.survival_time + 1,
                activeness=rec.stats.activeness + 1.0,
            )
            rec.entry = replace(rec.entry, survival_time=rec.stats.survival_time)

    def md_survival_reference(self) -> int:
        """Median survival time of currently flagged devices, 0 when none."""
        flagged = sorted(
            rec.stats.survival_time
            for rec in self.records.values()
            if rec.trust.tf == 0
        )
        if not flagged:
            return 0
        return flagged[len(flagged) // 2]

    def set_coordinator(self, device_id: DeviceId) -> None:
        """Re-point every table row at a newly elected coordinator."""
        if device_id not in self.records:
            raise ElectionError(f"device {device_id} is not registered")
        self.elected_cid = device_id
        cid_address = f"dev://{device_id}"
        for rec in self.records.values():
            rec.entry = replace(
                rec.entry,
                cid_id=device_id,
                cid_address=cid_address,
                routing_info=f"route://{device_id}/{rec.entry.device_id}",
            )

    def reelect_on_failure(
        self,
        devices: Mapping[DeviceId, DeviceStats],
        thresholds: Thresholds = Thresholds(),
    ) -> DeviceId:
        """Replace the coordinator when it is no longer present.

        A healthy, unblocked coordinator leaves the registry untouched.
        Otherwise the next best present, unblocked device is elected and all
        table rows updated.
        """
        current = self.elected_cid
        if (
            current in devices
            and current in self.records
            and self.is_unblocked(current)
            and classify_presence(devices[current].energy, thresholds.gamma)
            is Presence.PRESENT
        ):
            return current
        candidates = {
            device_id: stats
            for device_id, stats in devices.items()
            if device_id in self.records
            and self.is_unblocked(device_id)
            and classify_presence(stats.energy, thresholds.gamma) is Presence.PRESENT
        }
        if not candidates:
            raise ElectionError("no present device available for re-election")
        new_cid = elect_cid(candidates)
        self.set_coordinator(new_cid)
        return new_cid
