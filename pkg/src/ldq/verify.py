"""Named verification suites behind `ldq verify --suite ...`.

Each suite returns a report dict with a boolean "passed".  Suite
parameters are fixed here so a pass/fail is meaningful without extra
configuration; only the trial counts scale with --trials.
"""

from __future__ import annotations

import math

from . import bounds, harness
from .codebook import second_moment_identity, shepp_lower_bound, estimate_expected_good
from .ensembles import EnsembleSpec, sample_compound
from .seeds import derive_seed

SMALL_SPEC = EnsembleSpec(n=10, m=10, k=5, d=4, lam=4, gamma=8)
LEMMA2_SPEC = EnsembleSpec(n=16, m=16, k=8, d=4, lam=4, gamma=8)
FLOOR_SPEC = EnsembleSpec(n=20, m=20, k=10, d=4, lam=4, gamma=8)


def suite_lemma1(seed: int, trials: int | None = None) -> dict:
    samples = trials or 100_000
    return harness.verify_lemma1(m=1000, d=4, omega=0.25, samples=samples, seed=seed)


def suite_lemma2(seed: int, trials: int | None = None) -> dict:
    trials = trials or 10_000
    spec = LEMMA2_SPEC
    D = 0.2
    mean, (lo, hi) = estimate_expected_good(spec, D, trials, seed)
    floor = 2.0 ** (
        spec.n * (spec.rate - 1 + bounds.binary_entropy(D))
    ) / (spec.n + 1) ** 2
    return {
        "mean": mean,
        "ci99": [lo, hi],
        "floor": floor,
        "trials": trials,
        "passed": lo >= floor,
    }


def suite_lemma3(seed: int, trials: int | None = None) -> dict:
    codes = trials or 20
    failures = []
    for i in range(codes):
        code = sample_compound(SMALL_SPEC, derive_seed(seed, i))
        for D in (0.1, 0.2, 0.3):
            lhs, rhs = second_moment_identity(code, D)
            if lhs != rhs:
                failures.append({"code_index": i, "D": D})
    return {"codes": codes, "failures": failures, "passed": not failures}


def suite_lemma4(seed: int, trials: int | None = None) -> dict:
    n = 20
    d = 4
    grid = trials or 50
    worst = math.inf
    violations = []
    for D in (0.11, 0.2):
        for i in range(grid + 1):
            omega = i / grid
            bound = bounds.conditional_prob_bound(omega, D, d, n)
            delta = bounds.induced_flip_prob(omega, d)
            exact = bounds.exact_conditional_prob(delta, D, n)
            worst = min(worst, bound - exact)
            if exact > bound + 1e-12:
                violations.append({"omega": omega, "D": D})
    return {
        "grid_points": grid + 1,
        "min_slack": worst,
        "violations": violations,
        "passed": not violations,
    }


def suite_lemma5(seed: int, trials: int | None = None) -> dict:
    trials = trials or 10_000
    return harness.verify_success_floor(FLOOR_SPEC, D=0.25, trials=trials, seed=seed)


def suite_shepp(seed: int, trials: int | None = None) -> dict:
    codes = trials or 20
    D = 0.2
    violations = []
    for i in range(codes):
        code = sample_compound(SMALL_SPEC, derive_seed(seed, i))
        prob, lower = shepp_lower_bound(code, D)
        if prob < lower:
            violations.append({"code_index": i})
    return {"codes": codes, "D": D, "violations": violations, "passed": not violations}


SUITES = {
    "lemma1": suite_lemma1,
    "lemma2": suite_lemma2,
    "lemma3": suite_lemma3,
    "lemma4": suite_lemma4,
    "lemma5": suite_lemma5,
    "shepp": suite_shepp,
}


def run_suite(name: str, seed: int, trials: int | None = None) -> dict:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](seed, trials)
