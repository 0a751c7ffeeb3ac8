"""Seeded experiment orchestration, verification suites, report emission.

Per-trial seeds derive from the master seed by the splitmix64 scheme in
seeds.py (code stream at index 2i, source stream at 2i+1), so parallel and
serial runs produce identical records.  CSV output is byte-deterministic:
fixed column order, 12-significant-digit floats, and no wall-clock fields
(timing lives only in TrialRecord objects and the JSON summary).
"""

from __future__ import annotations

import concurrent.futures
import csv
import json
import math
import time
from dataclasses import dataclass

import numpy as np

from . import bounds
from .codebook import (
    count_good_codewords,
    enumerate_codewords,
    estimate_expected_good,
    nullity_cap,
)
from .encoder import encode_local_search, encode_optimal
from .ensembles import EnsembleSpec, sample_compound
from .errors import EnumerationInfeasibleError, SpecError
from .gf2 import BitVector
from .seeds import derive_seed

Z99 = 2.5758293035489004  # two-sided 99% normal quantile


@dataclass(frozen=True)
class ExperimentConfig:
    spec: EnsembleSpec
    target_distortion: float
    trials: int
    master_seed: int
    encoder: str = "optimal"  # optimal | local_search
    restarts: int = 32
    max_iters: int = 10_000
    output_path: str | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise SpecError("trials must be >= 1")
        if self.encoder not in ("optimal", "local_search"):
            raise SpecError(f"unknown encoder {self.encoder!r}")
        if not 0 <= self.target_distortion <= 1:
            raise SpecError("target distortion outside [0, 1]")


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int
    code_seed: int
    source_seed: int
    achieved_distortion: float
    good_codeword_count: int | None
    wall_time: float


def _run_trial(config: ExperimentConfig, index: int) -> TrialRecord:
    start = time.perf_counter()
    code_seed = derive_seed(config.master_seed, 2 * index)
    source_seed = derive_seed(config.master_seed, 2 * index + 1)
    code = sample_compound(config.spec, code_seed)
    source = BitVector.random(config.spec.n, np.random.default_rng(source_seed))
    if config.encoder == "optimal":
        result = encode_optimal(code, source)
    else:
        result = encode_local_search(
            code, source, config.restarts, config.max_iters, source_seed
        )
    good = None
    if code.nullity <= nullity_cap():
        good = count_good_codewords(code, source, config.target_distortion).count
    return TrialRecord(
        trial_index=index,
        code_seed=code_seed,
        source_seed=source_seed,
        achieved_distortion=result.distortion,
        good_codeword_count=good,
        wall_time=time.perf_counter() - start,
    )


def wilson_interval(successes: int, trials: int, z: float = Z99) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials == 0:
        return 0.0, 1.0
    p = successes / trials
    denom = 1 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def run_quantization_sweep(config: ExperimentConfig, jobs: int = 1):
    """Run all trials, deterministically ordered by trial index.

    Returns (records, summary) where summary holds the mean achieved
    distortion with a 99% normal CI and the success fraction (achieved
    <= target) with its Wilson interval.
    """
    if config.encoder == "optimal":
        # fail fast before burning trials on an unenumerable spec
        nullity_lb = config.spec.m - config.spec.k
        if nullity_lb > nullity_cap():
            raise EnumerationInfeasibleError(
                f"optimal encoder needs nullity <= {nullity_cap()}, "
                f"but m - k = {nullity_lb}"
            )
    indices = range(config.trials)
    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_trial, [config] * config.trials, indices))
    else:
        records = [_run_trial(config, i) for i in indices]
    records.sort(key=lambda r: r.trial_index)

    dists = np.array([r.achieved_distortion for r in records])
    mean = float(dists.mean())
    half = (
        Z99 * float(dists.std(ddof=1)) / math.sqrt(len(dists))
        if len(dists) > 1
        else 0.0
    )
    successes = int((dists <= config.target_distortion + 1e-12).sum())
    lo, hi = wilson_interval(successes, len(records))
    summary = {
        "trials": len(records),
        "mean_distortion": mean,
        "ci99": [mean - half, mean + half],
        "success_fraction": successes / len(records),
        "success_wilson99": [lo, hi],
        "target_distortion": config.target_distortion,
        "encoder": config.encoder,
        "master_seed": config.master_seed,
        "total_wall_time": sum(r.wall_time for r in records),
    }
    return records, summary


SWEEP_CSV_COLUMNS = (
    "trial_index",
    "code_seed",
    "source_seed",
    "achieved_distortion",
    "good_codeword_count",
)


def write_sweep_csv(records, path) -> None:
    """Byte-deterministic CSV: fixed columns, 12-significant-digit floats."""
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(SWEEP_CSV_COLUMNS)
        for r in records:
            writer.writerow(
                [
                    r.trial_index,
                    r.code_seed,
                    r.source_seed,
                    f"{r.achieved_distortion:.12g}",
                    "" if r.good_codeword_count is None else r.good_codeword_count,
                ]
            )


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------

def verify_lemma1(m: int, d: int, omega: float, samples: int, seed: int) -> dict:
    """Empirical check of the induced flip probability: sample generator
    columns against a fixed weight-omega*m middle word and compare the
    one-frequency with delta(omega; d).  Passes iff |z| < 4."""
    ones = round(omega * m)
    if abs(ones - omega * m) > 1e-9:
        raise SpecError("omega * m must be an integer")
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, m, size=(samples, d))
    # parity of draws landing in the ones-region; with-replacement duplicates
    # cancel in pairs exactly as mod-2 column reduction does
    bits = (draws < ones).sum(axis=1) % 2
    empirical = float(bits.mean())
    predicted = bounds.induced_flip_prob(omega, d)
    if predicted in (0.0, 1.0):
        z = 0.0 if empirical == predicted else math.inf
    else:
        z = (empirical - predicted) / math.sqrt(
            predicted * (1 - predicted) / samples
        )
    return {
        "empirical_freq": empirical,
        "predicted": predicted,
        "z_score": z,
        "samples": samples,
        "passed": abs(z) < 4,
    }


def verify_success_floor(
    spec: EnsembleSpec, D: float, trials: int, seed: int
) -> dict:
    """Monte Carlo floor check: Pr[N(D) > 0] must clear 1/(2(n+1)^2).

    Precondition: the degree family must satisfy the excess-rate hypothesis
    at (R, D), i.e. the exponent must not exceed the rate slack
    R - (1 - h(D)) beyond numerical precision.
    """
    R = spec.rate
    if D < bounds.rd_distortion(R) - bounds.NUMERICAL_PRECISION:
        raise SpecError(
            f"target distortion {D} lies below the rate-distortion point "
            f"for rate {R}; no code family can meet the floor there"
        )
    slack = max(0.0, R - (1 - bounds.binary_entropy(D)))
    exponent = bounds.excess_rate_exponent(D, spec.d, spec.lam, spec.gamma)
    if exponent > slack + bounds.NUMERICAL_PRECISION:
        raise SpecError(
            f"excess-rate hypothesis fails: exponent {exponent:.4f} > "
            f"slack {slack:.4f}"
        )
    radius = math.floor(D * spec.n)
    hits = 0
    for i in range(trials):
        code = sample_compound(spec, derive_seed(seed, 2 * i))
        src = BitVector.random(
            spec.n, np.random.default_rng(derive_seed(seed, 2 * i + 1))
        )
        # early exit: existence only
        found = False
        for _, shat in enumerate_codewords(code):
            if (shat.word ^ src.word).bit_count() <= radius:
                found = True
                break
        hits += found
    lo, hi = wilson_interval(hits, trials)
    floor = 1.0 / (2 * (spec.n + 1) ** 2)
    return {
        "trials": trials,
        "success_probability": hits / trials,
        "wilson99": [lo, hi],
        "floor": floor,
        "passed": lo >= floor,
    }


def emit_gap_figure(
    D: float, d: int, lam: int, gamma: int, grid: int, output_path
) -> None:
    """CSV of the bound-vs-enumerator curves: columns omega, kl_bound,
    weight_exponent, excess_integrand (12-significant-digit floats)."""
    kl_curve, enum_curve = bounds.figure2_curves(D, d, lam, gamma, grid)
    with open(output_path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["omega", "kl_bound", "weight_exponent", "excess_integrand"])
        for omega, kl_v, a_v in zip(
            kl_curve.omega_grid, kl_curve.values, enum_curve.values
        ):
            writer.writerow(
                [
                    f"{omega:.12g}",
                    f"{kl_v:.12g}",
                    f"{a_v:.12g}",
                    f"{a_v + kl_v:.12g}",
                ]
            )


def write_summary_json(summary: dict, path) -> None:
    with open(path, "w") as f:
        json.dump(summary, f, indent=2, sort_keys=True)
        f.write("\n")
