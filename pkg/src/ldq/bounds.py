"""Closed-form and numerical bounds for compound low-density quantizers.

Everything here is pure arithmetic: entropy/KL, the induced flip
probability delta(omega; d) of a degree-d random generator column, the
critical weight omega*(D; d) where the conditional-probability bound stops
being vacuous, exact and asymptotic weight enumerators of the regular LDPC
ensemble, the excess-rate functional, and degree-feasibility checks.

Weight enumerators use big-integer rationals; all other quantities are
double precision.  Feasibility comparisons use NUMERICAL_PRECISION = 1e-3,
the precision at which the rate gap of the (d, lam, gamma) = (4, 4, 8)
family at rate 1/2 closes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import NoLinearDistanceError

NUMERICAL_PRECISION = 1e-3


@dataclass(frozen=True)
class DegreeTriple:
    d: int
    lam: int
    gamma: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("LDGM degree d must be >= 1")
        if self.gamma % 2 != 0:
            raise ValueError("check degree gamma must be even")
        if not 0 < 1 - self.lam / self.gamma < 1:
            raise ValueError("implied bottom rate must lie in (0, 1)")


@dataclass(frozen=True)
class BoundCurve:
    """Sampled function omega -> value, for figure emission."""

    kind: str  # weight_exponent | kl_bound | excess_integrand
    omega_grid: tuple
    values: tuple

    def __post_init__(self):
        for a, b in zip(self.omega_grid, self.omega_grid[1:]):
            if a >= b:
                raise ValueError("omega grid must be strictly increasing")


def binary_entropy(t: float) -> float:
    """h(t) = -t log2 t - (1-t) log2 (1-t), with 0 log 0 = 0."""
    if not 0 <= t <= 1:
        raise ValueError(f"entropy argument {t} outside [0, 1]")
    if t in (0, 1):
        return 0.0
    return -t * math.log2(t) - (1 - t) * math.log2(1 - t)


def kl_bernoulli(a: float, b: float) -> float:
    """KL divergence (bits) between Bernoulli(a) and Bernoulli(b).

    Extended-valued: +inf when b is degenerate and a disagrees.
    """
    if not (0 <= a <= 1 and 0 <= b <= 1):
        raise ValueError("KL arguments must lie in [0, 1]")
    if b in (0, 1):
        return 0.0 if a == b else math.inf
    out = 0.0
    if a > 0:
        out += a * math.log2(a / b)
    if a < 1:
        out += (1 - a) * math.log2((1 - a) / (1 - b))
    return out


def rd_distortion(R: float) -> float:
    """Distortion-rate point of the Bernoulli(1/2) source: the unique
    D in [0, 1/2] with 1 - h(D) = R, by bisection to 1e-10."""
    if not 0 < R <= 1:
        raise ValueError("rate must lie in (0, 1]")
    target = 1 - R
    lo, hi = 0.0, 0.5
    while hi - lo > 1e-10:
        mid = (lo + hi) / 2
        if binary_entropy(mid) < target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def induced_flip_prob(omega: float, d: int) -> float:
    """delta(omega; d) = (1/2)[1 - (1 - 2 omega)^d]: Bernoulli parameter of
    a codeword bit fed by a weight-omega middle word through a degree-d
    random generator column."""
    if not 0 <= omega <= 1:
        raise ValueError("omega outside [0, 1]")
    return 0.5 * (1 - (1 - 2 * omega) ** d)


def critical_weight(D: float, d: int) -> float:
    """omega*(D; d) = (1/2)[1 - (1 - 2D)^(1/d)]; inverse of the flip
    probability at level D."""
    if not 0 <= D <= 0.5:
        raise ValueError("D outside [0, 1/2]")
    return 0.5 * (1 - (1 - 2 * D) ** (1 / d))


def conditional_prob_bound(omega: float, D: float, d: int, n: int) -> float:
    """Upper bound on Pr[codeword of middle-weight omega is good | zero
    codeword is good]: trivial (= 1) while delta(omega; d) < D, else
    2^(-n KL(D, delta))."""
    delta = induced_flip_prob(omega, d)
    if delta < D:
        # for even d this covers both omega <= omega* and omega >= 1 - omega*
        return 1.0
    return 2.0 ** (-n * kl_bernoulli(D, delta))


def exact_conditional_prob(delta: float, D: float, n: int) -> float:
    """Exact Pr[Bernoulli(delta)^n word lands within radius floor(Dn) of a
    source drawn uniformly from the radius-floor(Dn) ball around 0].

    Independent enumeration oracle for the conditional-probability bound:
    distance splits as Bin(t, 1-delta) + Bin(n-t, delta) when the source
    has weight t.
    """
    r = math.floor(D * n)
    ball = sum(comb(n, t) for t in range(r + 1))
    total = 0.0
    for t in range(r + 1):
        q = 0.0
        for j in range(t + 1):  # source-one positions where the word is 0
            pj = comb(t, j) * (1 - delta) ** j * delta ** (t - j)
            for l in range(min(r - j, n - t) + 1):
                q += pj * comb(n - t, l) * delta**l * (1 - delta) ** (n - t - l)
        total += comb(n, t) * q
    return total / ball


# ---------------------------------------------------------------------------
# Weight enumerators of the (lam, gamma)-regular LDPC ensemble
# ---------------------------------------------------------------------------

def _check_poly_coeffs(gamma: int, max_degree: int) -> list[int]:
    """Coefficients of g(x) = ((1+x)^gamma + (1-x)^gamma)/2 up to max_degree."""
    return [comb(gamma, j) if j % 2 == 0 else 0 for j in range(min(gamma, max_degree) + 1)]


def _poly_power_coeff(coeffs: list[int], k: int, target: int) -> int:
    """Coefficient of x^target in (sum coeffs[j] x^j)^k, big-int exact."""
    acc = [0] * (target + 1)
    acc[0] = 1
    for _ in range(k):
        new = [0] * (target + 1)
        for i, a in enumerate(acc):
            if a == 0:
                continue
            for j, c in enumerate(coeffs):
                if c == 0 or i + j > target:
                    continue
                new[i + j] += a * c
        acc = new
    return acc[target]


def weight_enum_exact(m: int, w: int, lam: int, gamma: int) -> Fraction:
    """Ensemble-average number of weight-w codewords of the (lam, gamma)
    regular LDPC ensemble on m variables, as an exact rational:

        C(m, w) * [x^(w lam)] g(x)^k / C(m lam, w lam),  k = m lam / gamma.
    """
    if m * lam % gamma != 0:
        raise ValueError("socket balance requires gamma | m*lambda")
    if not 0 <= w <= m:
        raise ValueError("weight outside [0, m]")
    k = m * lam // gamma
    target = w * lam
    coeff = _poly_power_coeff(_check_poly_coeffs(gamma, target), k, target)
    return Fraction(comb(m, w) * coeff, comb(m * lam, w * lam))


def _g_and_edge_fraction(s: float, gamma: int):
    """g(s) and phi(s) = s g'(s)/g(s) for the even-subset polynomial."""
    gp = ((1 + s) ** gamma + (1 - s) ** gamma) / 2
    gd = gamma * ((1 + s) ** (gamma - 1) - (1 - s) ** (gamma - 1)) / 2
    return gp, s * gd / gp


def _saddle_point(omega: float, gamma: int) -> float:
    """Unique s > 0 with s g'(s)/g(s) = gamma * omega (phi is increasing)."""
    target = gamma * omega
    lo = 1e-12
    hi = 1.0
    while _g_and_edge_fraction(hi, gamma)[1] < target:
        hi *= 2
        if hi > 1e9:
            raise ArithmeticError("saddle-point bracket failed to close")
    for _ in range(200):
        mid = (lo + hi) / 2
        if _g_and_edge_fraction(mid, gamma)[1] < target:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-12:
            break
    return (lo + hi) / 2


def weight_enum_exponent(omega: float, lam: int, gamma: int) -> float:
    """Asymptotic growth rate a(omega) of the average weight enumerator:

        a(omega) = (1 - lam) h(omega) + (lam/gamma) log2 g(s*)
                   - lam omega log2 s*,

    with s* the saddle point solving s g'(s)/g(s) = gamma * omega.
    """
    if not 0 < omega < 1:
        raise ValueError("omega must lie strictly inside (0, 1)")
    s = _saddle_point(omega, gamma)
    g, _ = _g_and_edge_fraction(s, gamma)
    return (
        (1 - lam) * binary_entropy(omega)
        + (lam / gamma) * math.log2(g)
        - lam * omega * math.log2(s)
    )


def min_distance_ratio(lam: int, gamma: int) -> float:
    """Smallest omega0 in (0, 1/2) with a(omega0) = 0: the relative minimum
    distance of the ensemble, to 1e-8.  Raises NoLinearDistanceError when
    the exponent never dips below zero (variable degree 2)."""
    if lam < 2:
        raise ValueError("variable degree must be >= 2")
    probe = 1e-4
    if weight_enum_exponent(probe, lam, gamma) >= 0:
        raise NoLinearDistanceError(
            f"({lam}, {gamma}) ensemble lacks linear minimum distance"
        )
    lo = probe
    hi = None
    steps = 4096
    for i in range(1, steps + 1):
        omega = probe + (0.5 - probe) * i / steps
        if weight_enum_exponent(omega, lam, gamma) >= 0:
            hi = omega
            break
        lo = omega
    if hi is None:
        raise NoLinearDistanceError(
            f"({lam}, {gamma}) exponent never reaches zero on (0, 1/2)"
        )
    while hi - lo > 1e-8:
        mid = (lo + hi) / 2
        if weight_enum_exponent(mid, lam, gamma) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


# ---------------------------------------------------------------------------
# Excess rate (second-moment failure functional)
# ---------------------------------------------------------------------------

def _log2_fraction(x: Fraction) -> float:
    if x == 0:
        return -math.inf
    return math.log2(x.numerator) - math.log2(x.denominator)


def excess_rate_finite(n: int, D: float, d: int, lam: int, gamma: int) -> float:
    """Finite-blocklength excess rate at m = n:

        (1/n) log2 [ sum_{t: delta < D} E[A_t]
                    + sum_{t: delta >= D} E[A_t] 2^(-n KL(D, delta)) ],

    delta = delta(t/n; d), summed over t = 1..n.  The case split follows
    the delta-vs-D condition, which also covers the symmetric high-weight
    band under even d.  Returns -inf when every term vanishes.
    """
    exponents = []
    for t in range(1, n + 1):
        a_t = weight_enum_exact(n, t, lam, gamma)
        if a_t == 0:
            continue
        log_a = _log2_fraction(a_t)
        delta = induced_flip_prob(t / n, d)
        if delta >= D:
            log_a -= n * kl_bernoulli(D, delta)
        exponents.append(log_a)
    if not exponents:
        return -math.inf
    peak = max(exponents)
    total = peak + math.log2(sum(2.0 ** (e - peak) for e in exponents))
    return total / n


def excess_rate_exponent(
    D: float, d: int, lam: int, gamma: int, grid_size: int = 2048
) -> float:
    """Asymptotic excess-rate exponent: max over omega in (0, 1) of
    a(omega) - KL(D, delta(omega; d)) [KL term only where delta >= D],
    restricted to weights with a(omega) >= 0.  The grid is refined near
    the maximum to 1e-4 in omega.  <= 0 means the excess rate is
    negligible at the target distortion."""

    def value(omega: float):
        a = weight_enum_exponent(omega, lam, gamma)
        if a < 0:
            return None
        delta = induced_flip_prob(omega, d)
        if delta >= D:
            a -= kl_bernoulli(D, delta)
        return a

    best = -math.inf
    best_omega = None
    for i in range(1, grid_size):
        omega = i / grid_size
        v = value(omega)
        if v is not None and v > best:
            best, best_omega = v, omega
    if best_omega is None:
        return -math.inf
    step = 1.0 / grid_size
    while step > 1e-4 / 4:
        step /= 8
        lo = max(step, best_omega - 8 * step)
        hi = min(1 - step, best_omega + 8 * step)
        omega = lo
        while omega <= hi:
            v = value(omega)
            if v is not None and v > best:
                best, best_omega = v, omega
            omega += step
    return best


def degree_check(R: float, D: float, triple: DegreeTriple):
    """Feasibility of a degree triple at (R, D): the excess-rate exponent
    must close the rate gap R - (1 - h(D)) within NUMERICAL_PRECISION and
    the ensemble minimum distance must exceed the critical weight.

    Returns (feasible, margin) with margin = -excess_rate_exponent.
    """
    if abs(R - (1 - triple.lam / triple.gamma)) > 1e-9:
        raise ValueError("degree_check assumes the R_t = 1 regime: R = 1 - lam/gamma")
    if D < rd_distortion(R) - NUMERICAL_PRECISION:
        raise ValueError(
            f"target distortion {D} below the rate-distortion point of rate {R}"
        )
    slack = max(0.0, R - (1 - binary_entropy(D)))
    exponent = excess_rate_exponent(D, triple.d, triple.lam, triple.gamma)
    try:
        distance_ok = min_distance_ratio(triple.lam, triple.gamma) > critical_weight(
            D, triple.d
        )
    except NoLinearDistanceError:
        distance_ok = False
    feasible = distance_ok and exponent <= slack + NUMERICAL_PRECISION
    return feasible, -exponent


def degree_search(
    R: float, D: float, d_max: int, gamma_max: int
) -> DegreeTriple | None:
    """Smallest feasible triple at (R, D) under the (d, then gamma)
    ordering, or None when the search space is exhausted."""
    candidates = []
    for gamma in range(2, gamma_max + 1, 2):
        lam_exact = gamma * (1 - R)
        lam = round(lam_exact)
        if abs(lam - lam_exact) > 1e-9 or not 0 < lam < gamma:
            continue
        candidates.append((lam, gamma))
    for d in range(1, d_max + 1):
        for lam, gamma in candidates:
            triple = DegreeTriple(d=d, lam=lam, gamma=gamma)
            try:
                feasible, _ = degree_check(R, D, triple)
            except ValueError:
                continue
            if feasible:
                return triple
    return None


def figure2_curves(
    D: float, d: int, lam: int, gamma: int, grid: int
) -> tuple[BoundCurve, BoundCurve]:
    """KL-bound and weight-enumerator exponent curves on a shared omega
    grid over [0, 1/2]: curve 1 is -KL(D, delta(omega; d)) clipped at 0 in
    the trivial-bound regime, curve 2 is a(omega)."""
    omegas = tuple(0.5 * i / grid for i in range(grid + 1))
    kl_vals = []
    enum_vals = []
    for omega in omegas:
        delta = induced_flip_prob(omega, d)
        kl_vals.append(0.0 if delta < D else -kl_bernoulli(D, delta))
        enum_vals.append(
            0.0 if omega == 0 else weight_enum_exponent(omega, lam, gamma)
        )
    return (
        BoundCurve(kind="kl_bound", omega_grid=omegas, values=tuple(kl_vals)),
        BoundCurve(kind="weight_exponent", omega_grid=omegas, values=tuple(enum_vals)),
    )
