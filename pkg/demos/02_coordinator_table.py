"""Coordinator election, the device table, and new-device admission."""

from iiot_trustnet.coordinator import AdmissionStatus, CoordinatorRegistry, elect_cid
from iiot_trustnet.trust import DeviceStats, Thresholds, TrustState

thresholds = Thresholds()

print("=" * 60)
print("1. Electing the coordinator")
print("=" * 60)
fleet = {
    1: DeviceStats(pdr=0.9, energy=6.0, activeness=30.0, survival_time=120),
    2: DeviceStats(pdr=0.9, energy=9.0, activeness=35.0, survival_time=80),
    3: DeviceStats(pdr=0.8, energy=9.0, activeness=35.0, survival_time=200),
}
cid = elect_cid(fleet)
print(f"  fleet of {len(fleet)}; elected coordinator: device {cid}")

registry = CoordinatorRegistry(elected_cid=cid)
for device_id, stats in fleet.items():
    entry = registry.register_device(
        device_id, TrustState(score=0.85), stats, admission=AdmissionStatus.ADMITTED
    )
    print(f"  table row: device={entry.device_id} cid={entry.cid_id} "
          f"tf={entry.tf} st={entry.survival_time} addr={entry.device_address}")

print()
print("=" * 60)
print("2. A new device asks to join")
print("=" * 60)
newcomer = 10
registry.register_device(newcomer, TrustState(score=0.75), DeviceStats())
for sent in range(1, 7):
    registry.process_transmission(newcomer, traced_wrong_info=False, thresholds=thresholds)
    rec = registry.record(newcomer)
    status = registry.admit_new_device(newcomer, rec.stats.interactions, rec.trust, thresholds)
    print(f"  after message {sent}: admission={status.value}")

print()
print("=" * 60)
print("3. A malicious newcomer is blocked at the gate")
print("=" * 60)
liar = 11
registry.register_device(liar, TrustState(score=0.9), DeviceStats())
for sent in range(1, 8):
    result = registry.process_transmission(liar, traced_wrong_info=True, thresholds=thresholds)
    rec = registry.record(liar)
    print(f"  message {sent}: {result.value:8s} admission={rec.admission.value:8s} tf={rec.trust.tf}")
print("  blocked is terminal: no later message will ever be accepted")
