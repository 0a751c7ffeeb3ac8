"""Exhaustive codebook enumeration and counting/second-moment quantities.

Codewords are indexed by middle-layer words z in the null space of H and
visited in Gray-code order over the null-basis coefficients, so successive
reconstructions differ by one cached basis image.  Codewords are counted
with multiplicity in z (distinct z may map to the same reconstruction),
matching the indexed-codeword counting the second-moment analysis uses.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .ensembles import CompoundCode, EnsembleSpec, sample_compound
from .errors import EnumerationInfeasibleError
from .gf2 import BitVector, gf2_matvec
from .seeds import derive_seed

DEFAULT_NULLITY_CAP = 26


def nullity_cap() -> int:
    """Enumeration cap, overridable via the LDQ_NULLITY_CAP env var."""
    return int(os.environ.get("LDQ_NULLITY_CAP", DEFAULT_NULLITY_CAP))


@dataclass(frozen=True)
class GoodWordCount:
    count: int
    threshold: int  # radius floor(D * n)
    total_codewords: int


def _check_enumerable(code: CompoundCode, cap: int | None) -> int:
    cap = nullity_cap() if cap is None else cap
    if code.nullity > cap:
        raise EnumerationInfeasibleError(
            f"exhaustive enumeration infeasible: nullity {code.nullity} "
            f"exceeds cap {cap}"
        )
    return code.nullity


def enumerate_codewords(code: CompoundCode, cap: int | None = None):
    """Yield all 2^nullity pairs (z, reconstruction), starting at (0, 0),
    in Gray-code order over the null-basis coefficients."""
    t = _check_enumerable(code, cap)
    m, n = code.m, code.n
    z_words = [b.word for b in code.null_basis]
    image_words = [gf2_matvec(b, code.G).word for b in code.null_basis]
    z = 0
    shat = 0
    yield BitVector(m, 0), BitVector(n, 0)
    for i in range(1, 1 << t):
        flip = (i & -i).bit_length() - 1  # trailing-zero count of i
        z ^= z_words[flip]
        shat ^= image_words[flip]
        yield BitVector(m, z), BitVector(n, shat)


def count_good_codewords(
    code: CompoundCode, s: BitVector, D: float, cap: int | None = None
) -> GoodWordCount:
    """Number of codewords within Hamming distance floor(D n) of s."""
    if s.n != code.n:
        raise ValueError(f"source length {s.n} != blocklength {code.n}")
    if not 0 <= D <= 1:
        raise ValueError("distortion target outside [0, 1]")
    t = _check_enumerable(code, cap)
    radius = math.floor(D * code.n)
    sw = s.word
    count = 0
    image_words = [gf2_matvec(b, code.G).word for b in code.null_basis]
    shat = 0
    if sw.bit_count() <= radius:
        count += 1
    for i in range(1, 1 << t):
        flip = (i & -i).bit_length() - 1
        shat ^= image_words[flip]
        if (shat ^ sw).bit_count() <= radius:
            count += 1
    return GoodWordCount(count=count, threshold=radius, total_codewords=1 << t)


def second_moment_identity(
    code: CompoundCode, D: float, cap: int | None = None
) -> tuple[Fraction, Fraction]:
    """Both sides of the second-moment decomposition over the uniform
    source, as exact rationals:

        lhs = E_s[N^2]
        rhs = E_s[N] + E_s[N] * sum_{j != 0} Pr_s[I_j = 1 | I_0 = 1]

    For a fixed linear code and uniform source the two agree exactly.
    """
    n = code.n
    if n > 22:
        raise ValueError("second_moment_identity enumerates all 2^n sources; n > 22")
    _check_enumerable(code, cap)
    radius = math.floor(D * n)
    codewords = [shat.word for _, shat in enumerate_codewords(code, cap)]

    sum_n = 0
    sum_n2 = 0
    for s in range(1 << n):
        cnt = sum(1 for c in codewords if (c ^ s).bit_count() <= radius)
        sum_n += cnt
        sum_n2 += cnt * cnt
    total = 1 << n
    mean_n = Fraction(sum_n, total)
    lhs = Fraction(sum_n2, total)

    # Pr[I_j = 1 | I_0 = 1]: condition on the zero codeword being good,
    # i.e. the source lying in the radius ball around 0.
    ball = [s for s in range(1 << n) if s.bit_count() <= radius]
    joint = 0
    for c in codewords[1:]:
        joint += sum(1 for s in ball if (c ^ s).bit_count() <= radius)
    cond_sum = Fraction(joint, len(ball))
    rhs = mean_n + mean_n * cond_sum
    return lhs, rhs


def shepp_lower_bound(
    code: CompoundCode, D: float, cap: int | None = None
) -> tuple[Fraction, Fraction]:
    """Exact (Pr_s[N > 0], (E_s N)^2 / E_s N^2) over the uniform source;
    the second-moment method guarantees the first dominates the second."""
    n = code.n
    if n > 22:
        raise ValueError("shepp_lower_bound enumerates all 2^n sources; n > 22")
    radius = math.floor(D * n)
    codewords = [shat.word for _, shat in enumerate_codewords(code, cap)]
    sum_n = 0
    sum_n2 = 0
    hits = 0
    for s in range(1 << n):
        cnt = sum(1 for c in codewords if (c ^ s).bit_count() <= radius)
        sum_n += cnt
        sum_n2 += cnt * cnt
        if cnt:
            hits += 1
    total = 1 << n
    prob_positive = Fraction(hits, total)
    if sum_n2 == 0:
        return prob_positive, Fraction(0)
    return prob_positive, Fraction(sum_n * sum_n, sum_n2 * total)


def estimate_expected_good(
    spec: EnsembleSpec,
    D: float,
    trials: int,
    rng_seed: int,
    cap: int | None = None,
):
    """Monte Carlo mean of N over fresh (code, source) pairs, with a
    normal-approximation 99% confidence interval."""
    if trials < 1:
        raise ValueError("need at least one trial")
    counts = np.empty(trials, dtype=float)
    for i in range(trials):
        code = sample_compound(spec, derive_seed(rng_seed, 2 * i))
        src_rng = np.random.default_rng(derive_seed(rng_seed, 2 * i + 1))
        s = BitVector.random(spec.n, src_rng)
        counts[i] = count_good_codewords(code, s, D, cap).count
    mean = float(counts.mean())
    half = 2.5758293035489004 * float(counts.std(ddof=1)) / math.sqrt(trials) if trials > 1 else 0.0
    return mean, (mean - half, mean + half)
