"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as they
are produced.  Tolerances are fixed here and must not be loosened.
"""

import time

import numpy as np

from diqkd_bounds.bounds import (
    gap_condition,
    k_ad_dw,
    k_ad_dw_unsimplified,
    rho_d_bounds,
    threshold_search,
    verify_transposed_decomposition,
)
from diqkd_bounds.channels import channel_device_statistics, transpose_channel_attack
from diqkd_bounds.devices import (
    StateDevice,
    device_statistics,
    distribution_distance,
    transpose_attack,
)
from diqkd_bounds.linalg import binary_entropy, shannon_entropy, trace_norm
from diqkd_bounds.sampling import (
    random_measure_prepare_channel,
    random_measurement_set,
    random_ppt_device,
    random_product_mixture,
)
from diqkd_bounds.states import (
    BellParams,
    advantage_distill_block,
    bell_power_params,
    make_rho_d,
    privacy_squeeze,
    shield_operators,
)


def report(num: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {num:02d} {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def test_criterion_01_threshold_reproduction():
    t0 = time.perf_counter()
    least = threshold_search(rho_d_bounds, 2, 100)
    scan = [d for d in range(2, 101) if rho_d_bounds(d).gap_established]
    elapsed = time.perf_counter() - t0
    ok = least == 24 and scan[0] == 24 and elapsed < 1.0
    report(1, ok, f"least d with gap over [2,100] = {least} (want 24), {elapsed * 1e3:.1f} ms")


def test_criterion_02_large_d_example():
    t0 = time.perf_counter()
    r = rho_d_bounds(2**20)
    elapsed = time.perf_counter() - t0
    ok = (
        r.lower >= 0.98
        and abs(r.lower - 0.9878600982901184) <= 1e-9
        and r.upper == 1 / 1025
        and r.upper <= 1 / (2**10 + 1)
        and elapsed < 0.01
    )
    report(
        2,
        ok,
        f"d=2^20: lower={r.lower:.10f} (>=0.98), upper={r.upper:.6e} (=1/1025), "
        f"{elapsed * 1e6:.0f} us",
    )


def test_criterion_03_region_boundary_at_a_one():
    t0 = time.perf_counter()
    lo, hi = 0.0, 0.5
    assert not gap_condition(lo, 1.0).in_gap and gap_condition(hi, 1.0).in_gap
    while hi - lo > 1e-6:
        mid = (lo + hi) / 2
        if gap_condition(mid, 1.0).in_gap:
            hi = mid
        else:
            lo = mid
    elapsed = time.perf_counter() - t0
    ok = 0.410 < hi < 0.416 and elapsed < 1.0
    report(3, ok, f"minimal in-gap alpha at a=1: {hi:.6f} in (0.410, 0.416), {elapsed * 1e3:.1f} ms")


def test_criterion_04_bound_forms_agree():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(1000):
        alpha = rng.uniform(0.05, 0.45)
        beta = 0.5 - alpha
        params = BellParams(alpha, beta, rng.random() * alpha, rng.random() * beta)
        for m in (1, 2, 3):
            dev = abs(k_ad_dw(params, m) - k_ad_dw_unsimplified(params, m))
            worst = max(worst, dev)
    ok = worst < 1e-10
    report(4, ok, f"simplified vs unsimplified on 1000 seeded params x m in {{1,2,3}}: max dev {worst:.2e}")


def test_criterion_05_squeeze_distill_commutation():
    s = make_rho_d(2, unitary="hadamard")
    base = privacy_squeeze(s)
    worst = 0.0
    for m in (1, 2, 3):
        left = np.array(privacy_squeeze(advantage_distill_block(s, m)).as_tuple())
        right = np.array(bell_power_params(base, m).as_tuple())
        worst = max(worst, float(np.abs(left - right).max()))
    ok = worst < 1e-10
    report(5, ok, f"squeeze(distill(rho_2, m)) vs power(squeeze(rho_2), m), m<=3: max dev {worst:.2e}")


def test_criterion_06_ppt_of_the_construction():
    t0 = time.perf_counter()
    cases = [(d, "fourier") for d in (2, 3, 4, 8)] + [
        (d, "hadamard") for d in (2, 4, 8)
    ]
    worst = 0.0
    for d, kind in cases:
        ppt, witness = make_rho_d(d, unitary=kind).is_ppt()
        assert ppt, f"d={d} {kind} not PPT (witness {witness:.3e})"
        worst = min(worst, witness)
    elapsed = time.perf_counter() - t0
    ok = worst >= -1e-9 and elapsed < 30.0
    report(6, ok, f"rho_d PPT for {len(cases)} (d, unitary) cases, min witness {worst:.2e}, {elapsed:.2f} s")


def test_criterion_07_decomposition_structure():
    worst = 0.0
    for d, kind in ((2, "hadamard"), (4, "fourier")):
        rep = verify_transposed_decomposition(make_rho_d(d, unitary=kind))
        worst = max(worst, rep.max_residual)
    ok = worst <= 1e-9
    report(7, ok, f"transposed-state decomposition residuals for rho_2, rho_4: max {worst:.2e}")


def test_criterion_08_transpose_attack_invariance():
    rng = np.random.default_rng(777)
    worst_state = 0.0
    for k in range(100):
        if k % 25 == 0:
            d = 2 if k % 50 == 0 else 3
            dev = StateDevice(
                random_measurement_set(2 * d, 2 * d, rng),
                make_rho_d(d).to_bipartite(),
            )
        else:
            dims = (int(rng.integers(2, 5)), int(rng.integers(2, 5)))
            dev = random_ppt_device(dims[0], dims[1], rng)
        dist = distribution_distance(
            device_statistics(dev), device_statistics(transpose_attack(dev))
        )
        worst_state = max(worst_state, dist)

    worst_channel = 0.0
    for _ in range(50):
        d_in, d_out = int(rng.integers(2, 4)), int(rng.integers(2, 4))
        c = random_measure_prepare_channel(d_in, d_out, 3, rng)
        rho = random_product_mixture(2, d_in, 3, rng)
        ms = random_measurement_set(2, d_out, rng)
        fm, fr, fc = transpose_channel_attack(ms, rho, c)
        dist = distribution_distance(
            channel_device_statistics(ms, rho, c),
            channel_device_statistics(fm, fr, fc),
        )
        worst_channel = max(worst_channel, dist)

    ok = worst_state <= 1e-12 and worst_channel <= 1e-12
    report(
        8,
        ok,
        f"attack invariance: 100 state devices max dist {worst_state:.2e}, "
        f"50 channel devices max dist {worst_channel:.2e}",
    )


def test_criterion_09_trace_norm_oracle():
    worst = 0.0
    cases = [("fourier", d) for d in (2, 3, 4, 5, 6, 7, 8, 12, 16, 24, 32)] + [
        ("hadamard", d) for d in (2, 4, 8, 16, 32)
    ]
    for kind, d in cases:
        x, y = shield_operators(d, kind)
        worst = max(worst, abs(trace_norm(x) - 1.0), abs(trace_norm(y) - 1.0))
    ok = worst <= 1e-10
    report(9, ok, f"||X||_1 = ||Y||_1 = 1 vs SVD over {len(cases)} cases: max dev {worst:.2e}")


def test_criterion_10_entropy_grouping_identity():
    rng = np.random.default_rng(99)
    worst = 0.0
    for _ in range(1000):
        p, q, r = rng.random(3)
        lhs = binary_entropy(p) + p * binary_entropy(q) + (1 - p) * binary_entropy(r)
        rhs = shannon_entropy([p * q, p * (1 - q), (1 - p) * r, (1 - p) * (1 - r)])
        worst = max(worst, abs(lhs - rhs))
    ok = worst <= 1e-12
    report(10, ok, f"entropy grouping identity on 1000 seeded triples: max dev {worst:.2e}")
