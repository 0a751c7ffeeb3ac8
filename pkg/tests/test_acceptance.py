"""Acceptance gate: one test per contract criterion, printing a pass line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Tolerances are fixed here, not configurable.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from ldq import bounds
from ldq.bounds import DegreeTriple
from ldq.codebook import (
    estimate_expected_good,
    second_moment_identity,
    shepp_lower_bound,
)
from ldq.ensembles import EnsembleSpec, sample_compound
from ldq.harness import (
    ExperimentConfig,
    run_quantization_sweep,
    verify_lemma1,
    verify_success_floor,
    write_sweep_csv,
)
from ldq.seeds import derive_seed


def _report(num, desc, ok):
    print(f"ACCEPTANCE {num:2d} [{'PASS' if ok else 'FAIL'}] {desc}")
    assert ok, f"criterion {num}: {desc}"


def test_criterion_01_rate_distortion_anchor():
    start = time.perf_counter()
    d_half = bounds.rd_distortion(0.5)
    h_011 = bounds.binary_entropy(0.11)
    ok = abs(d_half - 0.1100) <= 5e-4 and abs(h_011 - 0.5000) <= 5e-4
    ok = ok and time.perf_counter() - start < 1.0
    _report(1, f"rd(0.5)={d_half:.5f}, h(0.11)={h_011:.5f}", ok)


def test_criterion_02_headline_gap_claim():
    start = time.perf_counter()
    exponent = bounds.excess_rate_exponent(0.11, 4, 4, 8)
    feasible, _ = bounds.degree_check(0.5, 0.11, DegreeTriple(4, 4, 8))
    ok = exponent <= 1e-3 and feasible
    ok = ok and time.perf_counter() - start < 10.0
    _report(2, f"excess exponent={exponent:.3e}, feasible={feasible}", ok)


def test_criterion_03_lemma1_statistics():
    start = time.perf_counter()
    report = verify_lemma1(m=1000, d=4, omega=0.25, samples=100_000, seed=20260826)
    ok = (
        report["predicted"] == pytest.approx(0.46875)
        and abs(report["z_score"]) < 4
        and time.perf_counter() - start < 5.0
    )
    _report(3, f"empirical={report['empirical_freq']:.5f}, z={report['z_score']:.2f}", ok)


SPEC10 = EnsembleSpec(n=10, m=10, k=5, d=4, lam=4, gamma=8)


def _twenty_codes():
    return [sample_compound(SPEC10, derive_seed(123, i)) for i in range(20)]


def test_criterion_04_lemma3_exactness():
    start = time.perf_counter()
    ok = True
    for code in _twenty_codes():
        for D in (0.1, 0.2, 0.3):
            lhs, rhs = second_moment_identity(code, D)
            ok = ok and lhs == rhs
    ok = ok and time.perf_counter() - start < 60.0
    _report(4, "second-moment identity exact on 20 codes x 3 distortions", ok)


def test_criterion_05_shepp_inequality():
    start = time.perf_counter()
    ok = True
    for code in _twenty_codes():
        prob, lower = shepp_lower_bound(code, 0.2)
        ok = ok and prob >= lower
    ok = ok and time.perf_counter() - start < 60.0
    _report(5, "Pr[N>0] >= (EN)^2/(EN^2) exactly on 20 codes", ok)


def test_criterion_06_lemma2_bound():
    start = time.perf_counter()
    spec = EnsembleSpec(n=16, m=16, k=8, d=4, lam=4, gamma=8)
    D = 0.2
    mean, (lo, _) = estimate_expected_good(spec, D, trials=10_000, rng_seed=314159)
    floor = 2.0 ** (16 * (0.5 - 1 + bounds.binary_entropy(D))) / 17**2
    ok = lo >= floor and time.perf_counter() - start < 120.0
    _report(6, f"E[N] 99% lower bound {lo:.3f} >= floor {floor:.4f}", ok)


def test_criterion_07_lemma4_dominance():
    start = time.perf_counter()
    n, d, grid = 20, 4, 50
    worst = math.inf
    ok = True
    for D in (0.11, 0.2):
        for i in range(grid + 1):
            omega = i / grid
            bound = bounds.conditional_prob_bound(omega, D, d, n)
            exact = bounds.exact_conditional_prob(
                bounds.induced_flip_prob(omega, d), D, n
            )
            worst = min(worst, bound - exact)
            ok = ok and exact <= bound + 1e-12
    ok = ok and time.perf_counter() - start < 120.0
    _report(7, f"exact <= bound on 51-point grid x 2 distortions (min slack {worst:.2e})", ok)


def test_criterion_08_weight_enumerator_consistency():
    start = time.perf_counter()
    ok = bounds.weight_enum_exact(8, 2, 2, 4) == Fraction(44, 13)
    ok = ok and abs(bounds.weight_enum_exponent(0.5, 4, 8) - 0.5) <= 1e-9
    for omega in (0.1, 0.3, 0.5):
        w = round(omega * 128)
        exact = bounds.weight_enum_exact(128, w, 4, 8)
        fin = (math.log2(exact.numerator) - math.log2(exact.denominator)) / 128
        ok = ok and abs(fin - bounds.weight_enum_exponent(w / 128, 4, 8)) <= 0.05
    ok = ok and time.perf_counter() - start < 30.0
    _report(8, "exact 44/13, a(1/2)=1/2, finite-m within 0.05 of asymptotic", ok)


def test_criterion_09_feasibility_ordering():
    start = time.perf_counter()
    wstar = bounds.critical_weight(0.11, 4)
    w0 = bounds.min_distance_ratio(4, 8)
    ok = abs(wstar - 0.0301) <= 5e-4 and w0 > wstar
    ok = ok and time.perf_counter() - start < 5.0
    _report(9, f"min-distance ratio {w0:.4f} > critical weight {wstar:.4f}", ok)


def test_criterion_10_lemma5_floor():
    start = time.perf_counter()
    spec = EnsembleSpec(n=20, m=20, k=10, d=4, lam=4, gamma=8)
    report = verify_success_floor(spec, D=0.25, trials=10_000, seed=271828)
    ok = report["passed"] and time.perf_counter() - start < 300.0
    _report(
        10,
        f"Pr[N>0] lower bound {report['wilson99'][0]:.4f} >= floor {report['floor']:.5f}",
        ok,
    )


def test_criterion_11_distortion_trend():
    start = time.perf_counter()
    means = []
    for n in (12, 18, 24):
        spec = EnsembleSpec(n=n, m=n, k=n // 2, d=4, lam=4, gamma=8)
        cfg = ExperimentConfig(
            spec=spec, target_distortion=0.11, trials=500, master_seed=2026
        )
        _, summary = run_quantization_sweep(cfg)
        means.append(summary["mean_distortion"])
    ok = means[0] > means[1] > means[2]
    ok = ok and all(0.11 <= m <= 0.30 for m in means)
    ok = ok and time.perf_counter() - start < 600.0
    _report(11, f"mean distortion {[round(m, 4) for m in means]} decreasing in n", ok)


def test_criterion_12_sweep_determinism(tmp_path):
    start = time.perf_counter()
    spec = EnsembleSpec(n=12, m=12, k=6, d=4, lam=4, gamma=8)
    cfg = ExperimentConfig(
        spec=spec, target_distortion=0.2, trials=50, master_seed=99
    )
    records1, _ = run_quantization_sweep(cfg)
    write_sweep_csv(records1, tmp_path / "a.csv")
    records2, _ = run_quantization_sweep(cfg, jobs=2)
    write_sweep_csv(records2, tmp_path / "b.csv")
    ok = (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    ok = ok and time.perf_counter() - start < 60.0
    _report(12, "repeated sweep emits byte-identical CSV (serial vs parallel)", ok)
