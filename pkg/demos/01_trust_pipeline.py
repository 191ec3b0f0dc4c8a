"""Walk through the device-level trust pipeline on a handful of devices.

Covers signal-energy presence detection, monitoring capability, misbehavior
counting, and the binary trust factor.
"""

import numpy as np

from iiot_trustnet.trust import (
    DeviceStats,
    McVerdict,
    Thresholds,
    classify_presence,
    compute_energy,
    compute_monitoring_capability,
    compute_trust_factor,
    evaluate_mc,
    init_trust,
    update_misbehavior,
)

thresholds = Thresholds(gamma=4.0)
rng = np.random.default_rng(7)

print("=" * 60)
print("1. Presence from signal energy")
print("=" * 60)
for label, samples in [("strong", rng.normal(0, 1.5, 8)), ("weak", rng.normal(0, 0.3, 8))]:
    energy = compute_energy(samples)
    presence = classify_presence(energy, thresholds.gamma)
    print(f"  {label:6s} device: energy={energy:7.3f}  -> {presence.value}")

print()
print("=" * 60)
print("2. Monitoring capability over a population")
print("=" * 60)
population = [
    DeviceStats(pdr=0.95, energy=9.0, activeness=40.0),
    DeviceStats(pdr=0.80, energy=5.0, activeness=25.0),
    DeviceStats(pdr=0.70, energy=2.0, activeness=10.0),
]
for i, stats in enumerate(population):
    mc = compute_monitoring_capability(stats, population)
    print(f"  device {i}: pdr={stats.pdr:.2f} energy={stats.energy:.1f} "
          f"activeness={stats.activeness:4.1f}  -> MC={mc:.3f}")

print()
print("=" * 60)
print("3. A liar walks into the network")
print("=" * 60)
trust = init_trust(rng)
stats = DeviceStats()
print(f"  initial trust score: {trust.score:.3f} (tf={trust.tf})")

# first five messages are the grace period: observed, not judged
for message in range(1, 11):
    lies = message % 2 == 0 or message > 6   # increasingly dishonest
    stats = update_misbehavior(stats, lies)
    if stats.interactions < thresholds.grace_transmissions:
        print(f"  msg {message:2d}: wrong={lies!s:5s}  (grace period, no judgment)")
        continue
    verdict = evaluate_mc(stats, thresholds)
    trust = compute_trust_factor(trust, stats, verdict, thresholds)
    ratio = stats.wrong_info_count / stats.interactions
    print(f"  msg {message:2d}: wrong={lies!s:5s}  ratio={ratio:.2f} "
          f"verdict={verdict.value:10s} score={trust.score:.2f} tf={trust.tf}")
    if verdict is McVerdict.MALICIOUS:
        print("  -> flagged malicious; every further message will be rejected")
        break
