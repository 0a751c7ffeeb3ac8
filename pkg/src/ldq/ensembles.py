"""Random LDGM / regular-LDPC ensembles, compound codes, alist I/O.

The LDGM ensemble places the column degree as d independent uniform row
draws WITH replacement, then cancels repeated hits mod 2; the proof of the
induced-Bernoulli formula treats the draws as independent, and a
distinct-subset variant would perturb it at O(d^2/m).  The LDPC ensemble is
the Gallager configuration model: a uniform matching of variable sockets to
check sockets, multi-edges cancelled mod 2 and kept.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AlistParseError, DimensionError, SpecError
from .gf2 import BitVector, SparseGF2Matrix, gf2_rank, null_space_basis


@dataclass(frozen=True)
class EnsembleSpec:
    """Parameters (n, m, k, d, lam, gamma) of the compound ensemble."""

    n: int
    m: int
    k: int
    d: int
    lam: int
    gamma: int

    def __post_init__(self):
        if min(self.n, self.m, self.k, self.lam) < 1 or self.d < 1:
            raise SpecError("all ensemble parameters must be positive")
        if self.m * self.lam != self.k * self.gamma:
            raise SpecError(
                f"socket imbalance: m*lambda = {self.m * self.lam} != "
                f"k*gamma = {self.k * self.gamma}"
            )
        if self.gamma % 2 != 0:
            raise SpecError("check degree gamma must be even")
        if not (0 < self.rate_top <= 1 and 0 < self.rate_bottom <= 1):
            raise SpecError("nominal rates must lie in (0, 1]")

    @property
    def rate_top(self) -> float:
        return self.m / self.n

    @property
    def rate_bottom(self) -> float:
        return 1 - self.k / self.m

    @property
    def rate(self) -> float:
        return self.rate_top * self.rate_bottom


@dataclass(frozen=True)
class CompoundCode:
    """Assembled (G, H) pair with cached null-space basis of H."""

    G: SparseGF2Matrix
    H: SparseGF2Matrix
    null_basis: tuple
    rank_H: int
    spec: EnsembleSpec | None = None
    seed: int | None = None

    @property
    def n(self) -> int:
        return self.G.cols

    @property
    def m(self) -> int:
        return self.G.rows

    @property
    def k(self) -> int:
        return self.H.rows

    @property
    def nullity(self) -> int:
        return len(self.null_basis)

    @property
    def log2_codebook_size(self) -> int:
        """Exponent of the true codebook size 2^(m - rank H)."""
        return self.m - self.rank_H

    @property
    def log2_nominal_size(self) -> int:
        return self.m - self.k

    @property
    def true_rate(self) -> float:
        return self.log2_codebook_size / self.n


def sample_ldgm(n: int, m: int, d: int, rng) -> SparseGF2Matrix:
    """Sample an m-by-n LDGM generator: each column is d uniform row draws
    with replacement, reduced mod 2."""
    if d < 1 or m < 1:
        raise SpecError("need d >= 1 and m >= 1")
    draws = rng.integers(0, m, size=(n, d))
    support = []
    for col in draws:
        counts = np.bincount(col, minlength=m)
        support.append(np.flatnonzero(counts & 1).tolist())
    return SparseGF2Matrix(m, n, support)


def sample_ldpc(m: int, k: int, lam: int, gamma: int, rng) -> SparseGF2Matrix:
    """Sample a k-by-m Gallager (lam, gamma)-regular parity-check matrix by
    uniform socket matching; duplicate incidences cancel mod 2."""
    if m * lam != k * gamma:
        raise SpecError(
            f"socket imbalance: m*lambda = {m * lam} != k*gamma = {k * gamma}"
        )
    if gamma % 2 != 0:
        raise SpecError("check degree gamma must be even")
    # variable socket i belongs to variable i // lam; a uniform permutation
    # assigns it to a check socket, socket j belonging to check j // gamma.
    perm = rng.permutation(m * lam)
    support = [[] for _ in range(m)]
    incidence = {}
    for var_socket, check_socket in enumerate(perm):
        edge = (var_socket // lam, int(check_socket) // gamma)
        incidence[edge] = incidence.get(edge, 0) ^ 1
    for (var, check), parity in incidence.items():
        if parity:
            support[var].append(check)
    for col in support:
        col.sort()
    return SparseGF2Matrix(k, m, support)


def assemble_compound(
    G: SparseGF2Matrix,
    H: SparseGF2Matrix,
    spec: EnsembleSpec | None = None,
    seed: int | None = None,
) -> CompoundCode:
    """Join a top generator and bottom parity-check into a compound code,
    caching rank(H) and a null-space basis."""
    if G.rows != H.cols:
        raise DimensionError(
            f"generator rows {G.rows} != parity-check cols {H.cols}"
        )
    basis = tuple(null_space_basis(H))
    rank = H.cols - len(basis)
    assert rank == gf2_rank(H)
    return CompoundCode(G=G, H=H, null_basis=basis, rank_H=rank, spec=spec, seed=seed)


def sample_compound(spec: EnsembleSpec, seed: int) -> CompoundCode:
    """Sample G then H from a single seeded stream and assemble."""
    rng = np.random.default_rng(seed)
    G = sample_ldgm(spec.n, spec.m, spec.d, rng)
    H = sample_ldpc(spec.m, spec.k, spec.lam, spec.gamma, rng)
    return assemble_compound(G, H, spec=spec, seed=seed)


# ---------------------------------------------------------------------------
# alist serialization
# ---------------------------------------------------------------------------

def write_alist(M: SparseGF2Matrix, path) -> None:
    """Write in alist format: no zero padding, 1-indexed neighbors."""
    cols = M.column_support
    rows = M.row_support()
    col_degrees = [len(c) for c in cols]
    row_degrees = [len(r) for r in rows]
    lines = [
        f"{M.cols} {M.rows}",
        f"{max(col_degrees, default=0)} {max(row_degrees, default=0)}",
        " ".join(map(str, col_degrees)),
        " ".join(map(str, row_degrees)),
    ]
    for c in cols:
        lines.append(" ".join(str(r + 1) for r in c))
    for r in rows:
        lines.append(" ".join(str(c + 1) for c in r))
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def read_alist(path) -> SparseGF2Matrix:
    """Read an alist file written by write_alist (no zero padding)."""
    with open(path) as f:
        lines = f.read().splitlines()

    def ints(idx, expect=None):
        if idx >= len(lines):
            raise AlistParseError("unexpected end of file", idx + 1)
        try:
            vals = [int(tok) for tok in lines[idx].split()]
        except ValueError:
            raise AlistParseError("non-integer token", idx + 1) from None
        if expect is not None and len(vals) != expect:
            raise AlistParseError(
                f"expected {expect} values, got {len(vals)}", idx + 1
            )
        return vals

    ncols, nrows = ints(0, expect=2)
    if ncols < 0 or nrows < 0:
        raise AlistParseError("negative dimension", 1)
    ints(1, expect=2)  # max degrees, informational
    col_degrees = ints(2, expect=ncols)
    row_degrees = ints(3, expect=nrows)
    support = []
    for c in range(ncols):
        vals = ints(4 + c, expect=col_degrees[c])
        for v in vals:
            if not 1 <= v <= nrows:
                raise AlistParseError(f"row index {v} out of range", 5 + c)
        support.append(sorted(v - 1 for v in vals))
    # row adjacency lines are read for validation only
    for r in range(nrows):
        vals = ints(4 + ncols + r, expect=row_degrees[r])
        for v in vals:
            if not 1 <= v <= ncols:
                raise AlistParseError(
                    f"column index {v} out of range", 5 + ncols + r
                )
    M = SparseGF2Matrix(nrows, ncols, support)
    if [len(r) for r in M.row_support()] != row_degrees:
        raise AlistParseError("row degrees inconsistent with columns", 4)
    return M


_META_KEYS = ("n", "m", "k", "d", "lambda", "gamma", "seed")


def write_meta(spec: EnsembleSpec, seed, path) -> None:
    values = {
        "n": spec.n,
        "m": spec.m,
        "k": spec.k,
        "d": spec.d,
        "lambda": spec.lam,
        "gamma": spec.gamma,
        "seed": seed,
    }
    with open(path, "w") as f:
        for key in _META_KEYS:
            f.write(f"{key}={values[key]}\n")


def read_meta(path):
    values = {}
    with open(path) as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            if "=" not in line:
                raise AlistParseError("expected key=value", lineno)
            key, _, val = line.partition("=")
            values[key.strip()] = int(val.strip())
    missing = [k for k in _META_KEYS if k not in values]
    if missing:
        raise AlistParseError(f"missing keys {missing}", 1)
    spec = EnsembleSpec(
        n=values["n"],
        m=values["m"],
        k=values["k"],
        d=values["d"],
        lam=values["lambda"],
        gamma=values["gamma"],
    )
    return spec, values["seed"]


def save_code(code: CompoundCode, prefix) -> None:
    """Write <prefix>.G.alist, <prefix>.H.alist and <prefix>.meta."""
    if code.spec is None:
        raise SpecError("cannot serialize a code without an EnsembleSpec")
    write_alist(code.G, f"{prefix}.G.alist")
    write_alist(code.H, f"{prefix}.H.alist")
    write_meta(code.spec, code.seed if code.seed is not None else -1, f"{prefix}.meta")


def load_code(prefix) -> CompoundCode:
    spec, seed = read_meta(f"{prefix}.meta")
    G = read_alist(f"{prefix}.G.alist")
    H = read_alist(f"{prefix}.H.alist")
    return assemble_compound(G, H, spec=spec, seed=None if seed == -1 else seed)


def roundtrip_alist(code: CompoundCode, prefix) -> CompoundCode:
    """Serialize then reload; the matrices must come back bit-identical."""
    save_code(code, prefix)
    reloaded = load_code(prefix)
    if reloaded.G != code.G or reloaded.H != code.H:
        raise AlistParseError("roundtrip mismatch", 0)
    return reloaded
