"""Closed-form attacker analytics: state mixture, decision error, throughput."""

import numpy as np

from iiot_trustnet.threat import (
    ChannelParams,
    attack_strength,
    compromised_throughput,
    hypothesis_probabilities,
    probability_of_error,
)

print("=" * 60)
print("1. Channel-state mixture (priors 0.5/0.5, alpha=0.2, beta=0.8)")
print("=" * 60)
mu = hypothesis_probabilities(0.5, 0.5, alpha=0.2, beta=0.8)
for k, (label, value) in enumerate(zip(
    ["idle", "legitimate only", "attacker imitating", "both active"], mu
)):
    print(f"  mu{k} ({label:18s}) = {value:.3f}")
print(f"  sum = {sum(mu):.15f}")

print()
print("=" * 60)
print("2. Decision error grows linearly with false authentication")
print("=" * 60)
for w_m in (0.0, 0.25, 0.5):
    row = [probability_of_error(w_fa, w_m, 0.8, 0.2) for w_fa in (0.0, 0.5, 1.0)]
    print(f"  w_m={w_m:4.2f}: w_e at w_fa=0/0.5/1 -> {row[0]:.3f} {row[1]:.3f} {row[2]:.3f}")

print()
print("=" * 60)
print("3. Attack strength and compromised-receiver throughput")
print("=" * 60)
for snr_md in np.arange(0.0, 20.5, 2.5):
    channel = ChannelParams(snr_lid=10.0, snr_md=float(snr_md))
    rho = attack_strength(channel)
    r_nid = compromised_throughput(0.4, 0.1, channel)
    bar = "#" * int(r_nid * 20)
    print(f"  snr_md={snr_md:5.1f}  rho={rho:.3f}  r_nid={r_nid:.4f}  {bar}")
print("  throughput falls as the attacker's signal drowns the legitimate one")
