"""Quantizers: exhaustive nearest-codeword search and a restart-based
local search over null-basis coefficients (stays feasible by construction)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codebook import nullity_cap
from .ensembles import CompoundCode
from .errors import DimensionError, EnumerationInfeasibleError
from .gf2 import BitVector, gf2_matvec, hamming_distance
from .seeds import derive_seed


@dataclass(frozen=True)
class EncodeResult:
    z: BitVector
    reconstruction: BitVector
    distortion: float
    optimal: bool


def distortion(s: BitVector, shat: BitVector) -> float:
    """Normalized Hamming distortion."""
    if s.n != shat.n:
        raise DimensionError("distortion of different lengths")
    return hamming_distance(s, shat) / s.n


def _basis_words(code: CompoundCode):
    z_words = [b.word for b in code.null_basis]
    image_words = [gf2_matvec(b, code.G).word for b in code.null_basis]
    return z_words, image_words


def _reverse_bits(x: int, width: int) -> int:
    out = 0
    for i in range(width):
        if (x >> i) & 1:
            out |= 1 << (width - 1 - i)
    return out


def encode_optimal(code: CompoundCode, s: BitVector, cap: int | None = None) -> EncodeResult:
    """Globally nearest codeword; ties broken by smallest coefficient
    vector in lexicographic order over the null-basis coefficients."""
    if s.n != code.n:
        raise DimensionError(f"source length {s.n} != blocklength {code.n}")
    cap = nullity_cap() if cap is None else cap
    t = code.nullity
    if t > cap:
        raise EnumerationInfeasibleError(
            f"exhaustive encoding infeasible: nullity {t} exceeds cap {cap}"
        )
    z_words, image_words = _basis_words(code)
    sw = s.word
    best_dist = sw.bit_count()
    best_key = 0
    best_coeffs = 0
    shat = 0
    coeffs = 0
    for i in range(1, 1 << t):
        flip = (i & -i).bit_length() - 1
        shat ^= image_words[flip]
        coeffs ^= 1 << flip
        dist = (shat ^ sw).bit_count()
        if dist < best_dist:
            best_dist, best_coeffs, best_key = dist, coeffs, _reverse_bits(coeffs, t)
        elif dist == best_dist:
            key = _reverse_bits(coeffs, t)
            if key < best_key:
                best_coeffs, best_key = coeffs, key
    z = 0
    rec = 0
    for b in range(t):
        if (best_coeffs >> b) & 1:
            z ^= z_words[b]
            rec ^= image_words[b]
    return EncodeResult(
        z=BitVector(code.m, z),
        reconstruction=BitVector(code.n, rec),
        distortion=best_dist / code.n,
        optimal=True,
    )


def _descend(s_word: int, image_words, coeffs: int, shat: int, max_iters: int):
    """Steepest-descent over single-coefficient flips until a local minimum
    (or max_iters flips); every flip strictly reduces the distance."""
    dist = (shat ^ s_word).bit_count()
    t = len(image_words)
    for _ in range(max_iters):
        best_gain = 0
        best_flip = -1
        for b in range(t):
            nd = (shat ^ image_words[b] ^ s_word).bit_count()
            gain = dist - nd
            if gain > best_gain:
                best_gain, best_flip = gain, b
        if best_flip < 0:
            break
        coeffs ^= 1 << best_flip
        shat ^= image_words[best_flip]
        dist -= best_gain
    return coeffs, shat, dist


def encode_local_search(
    code: CompoundCode,
    s: BitVector,
    restarts: int,
    max_iters: int,
    seed: int,
) -> EncodeResult:
    """Best of `restarts` steepest-descent runs from random coefficient
    vectors; works beyond the enumeration cap.  Restart results merge
    deterministically by (distance, restart index)."""
    if s.n != code.n:
        raise DimensionError(f"source length {s.n} != blocklength {code.n}")
    t = code.nullity
    z_words, image_words = _basis_words(code)
    sw = s.word
    best = None  # (distance, restart index, coeffs, shat)
    for r in range(max(1, restarts)):
        rng = np.random.default_rng(derive_seed(seed, r))
        coeffs = 0
        shat = 0
        if t:
            start = int.from_bytes(rng.bytes((t + 7) // 8), "little") & ((1 << t) - 1)
            for b in range(t):
                if (start >> b) & 1:
                    coeffs ^= 1 << b
                    shat ^= image_words[b]
        coeffs, shat, dist = _descend(sw, image_words, coeffs, shat, max_iters)
        cand = (dist, r, coeffs, shat)
        if best is None or cand[:2] < best[:2]:
            best = cand
    dist, _, coeffs, shat = best
    z = 0
    for b in range(t):
        if (coeffs >> b) & 1:
            z ^= z_words[b]
    return EncodeResult(
        z=BitVector(code.m, z),
        reconstruction=BitVector(code.n, shat),
        distortion=dist / code.n,
        optimal=False,
    )
