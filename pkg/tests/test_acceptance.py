"""Acceptance gate: one test per release criterion, one PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the criterion lines.
"""

import random
import time
from contextlib import contextmanager
from dataclasses import replace

import mpmath
import numpy as np

from iiot_trustnet.cli import main
from iiot_trustnet.ledger import (
    Ledger,
    Phase,
    Record,
    TamperKind,
    tamper,
    validate_chain,
)
from iiot_trustnet.sim import SimConfig, run, sweep_attack_strength
from iiot_trustnet.threat import (
    ChannelParams,
    compromised_throughput,
    hypothesis_probabilities,
    probability_of_error,
)


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name}")
        raise
    print(f"[PASS] {name}")


def test_hypothesis_normalization_10k():
    with criterion("hypothesis normalization: 10,000 tuples sum to 1 within 1e-12, < 1 s"):
        rng = random.Random(20240901)
        start = time.monotonic()
        for _ in range(10_000):
            pr_h0 = rng.random()
            mu = hypothesis_probabilities(pr_h0, 1.0 - pr_h0, rng.random(), rng.random())
            assert abs(sum(mu) - 1.0) < 1e-12
        elapsed = time.monotonic() - start
        assert elapsed < 1.0, f"took {elapsed:.3f}s"


def test_default_parameter_point_check():
    with criterion("default parameters: mu(0.5, 0.5, 0.2, 0.8) = (0.1, 0.4, 0.4, 0.1) within 1e-15"):
        mu = hypothesis_probabilities(0.5, 0.5, 0.2, 0.8)
        for got, want in zip(mu, (0.1, 0.4, 0.4, 0.1)):
            assert abs(got - want) <= 1e-15


def test_error_curve_linear_in_w_fa():
    with criterion("error curve: slope over any 50-point w_fa grid equals 0.2 within 1e-12"):
        pr_on, pr_off = 0.8, 0.2
        grid = [float(x) for x in np.linspace(0.0, 1.0, 50)]
        for w_m in (0.0, 0.25, 0.5):
            values = [probability_of_error(w_fa, w_m, pr_on, pr_off) for w_fa in grid]
            for i in range(len(grid) - 1):
                slope = (values[i + 1] - values[i]) / (grid[i + 1] - grid[i])
                assert abs(slope - pr_off) < 1e-12


def test_throughput_formula_and_monotonicity():
    with criterion("throughput: point value matches 50-digit oracle to 1e-9; monotone in both SNRs"):
        mpmath.mp.dps = 50
        expected = float(
            mpmath.mpf("0.4") * mpmath.log(1 + mpmath.mpf(10), 2)
            + mpmath.mpf("0.1") * mpmath.log(1 + mpmath.mpf(10) / (1 + mpmath.mpf(5)), 2)
        )
        got = compromised_throughput(0.4, 0.1, ChannelParams(10, 5))
        assert abs(got - expected) < 1e-9
        assert abs(got - 1.525277) < 1e-6

        lid_grid = [0.25 * k for k in range(1, 80)]
        values = [compromised_throughput(0.4, 0.1, ChannelParams(s, 5.0)) for s in lid_grid]
        assert all(b > a for a, b in zip(values, values[1:]))
        md_grid = [0.25 * k for k in range(80)]
        values = [compromised_throughput(0.4, 0.1, ChannelParams(10.0, s)) for s in md_grid]
        assert all(b <= a for a, b in zip(values, values[1:]))


def test_attack_strength_trend():
    with criterion("attack strength: mean compromised fraction non-decreasing over alpha grid, 0 at alpha=0, < 1 min"):
        config = SimConfig(
            device_count=25,
            attacker_count=5,
            trust_enabled=True,
            ledger_enabled=False,
            compromise_budget=2,
            seed=0,
        )
        start = time.monotonic()
        rows = sweep_attack_strength(config, [0.0, 0.2, 0.4, 0.6, 0.8, 1.0], runs=30)
        elapsed = time.monotonic() - start
        means = [mean for _, mean, _ in rows]
        assert means[0] == 0.0
        assert all(a <= b for a, b in zip(means, means[1:]))
        assert elapsed < 60.0, f"took {elapsed:.1f}s"


def test_tamper_detection_1000_mutations():
    with criterion("tamper detection: 1,000 random mutations all detected at index <= k+1, < 10 s"):
        rng = random.Random(77)
        kinds = list(TamperKind)
        start = time.monotonic()
        detected = 0
        for trial in range(1_000):
            length = rng.randrange(2, 50)
            chain = Ledger.genesis(Phase.GENERIC)
            for i in range(length):
                payload = bytes(rng.randrange(1, 256) for _ in range(rng.randrange(1, 16)))
                chain.append_record(
                    Record(device_id=i, phase=Phase.GENERIC, payload=payload, tick=i),
                    miner_tf=1,
                )
            kind = kinds[rng.randrange(len(kinds))]
            if kind is not TamperKind.PAYLOAD_FLIP and len(chain) < 3:
                kind = TamperKind.PAYLOAD_FLIP
            upper = len(chain) if kind is TamperKind.PAYLOAD_FLIP else len(chain) - 1
            index = rng.randrange(1, upper)
            bad = validate_chain(tamper(chain, index, kind))
            assert bad is not None, f"undetected {kind} at {index}"
            assert bad <= index + 1
            detected += 1
        elapsed = time.monotonic() - start
        assert detected == 1_000
        assert elapsed < 10.0, f"took {elapsed:.1f}s"


def test_detection_success_rate_floor():
    with criterion("ledger detection success rate >= 90% over 30 seeded runs, small and large networks"):
        for size in (25, 100):
            attempts = detected = 0
            for r in range(30):
                cfg = SimConfig(
                    device_count=size,
                    attacker_count=5,
                    ledger_enabled=True,
                    seed=1000 + r,
                )
                metrics = run(cfg)
                attempts += metrics.alterations_attempted
                detected += metrics.alterations_detected
            assert attempts > 0
            rate = detected / attempts
            assert rate >= 0.90, f"size {size}: rate {rate:.3f}"


def test_trust_ordering_every_pair():
    with criterion("compromised count with trust <= without, all 30 paired seeds, 25 and 100 devices"):
        for size in (25, 100):
            for r in range(30):
                base = SimConfig(
                    device_count=size,
                    attacker_count=5,
                    alpha=1.0,
                    ledger_enabled=False,
                    seed=2000 + r,
                )
                on = run(replace(base, trust_enabled=True)).compromised_count
                off = run(replace(base, trust_enabled=False)).compromised_count
                assert on <= off, f"size {size} seed {2000 + r}: {on} > {off}"


def test_trust_gating_event_audit():
    with criterion("trust gating: zero messages from tf=0 senders accepted (event audit)"):
        for alpha, seed in ((0.2, 5), (0.6, 6), (1.0, 7)):
            metrics = run(
                SimConfig(device_count=25, attacker_count=5, alpha=alpha, seed=seed),
                audit=True,
            )
            assert metrics.accepted_from_tf0 == 0
            assert all(
                not (event.accepted and event.tf_at_send == 0)
                for event in metrics.audit
            )


def test_simulate_byte_determinism(tmp_path):
    with criterion("simulate: fixed seed gives byte-identical CSV and ledger dumps"):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("device_count=25\nattacker_count=5\n")
        dirs = [tmp_path / "a", tmp_path / "b"]
        for out_dir in dirs:
            code = main([
                "simulate", "--config", str(cfg), "--seed", "31337",
                "--out", str(out_dir),
            ])
            assert code == 0
        names = sorted(p.name for p in dirs[0].iterdir())
        assert "metrics.csv" in names
        assert any(name.startswith("ledger_") for name in names)
        for name in names:
            assert (dirs[0] / name).read_bytes() == (dirs[1] / name).read_bytes()
