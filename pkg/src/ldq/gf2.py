"""Exact GF(2) linear algebra and Hamming geometry.

BitVector packs bits into a single Python integer (bit i = coordinate i),
so xor and Hamming weight are single big-int operations.  Matrices are
stored as sparse column adjacency, already reduced mod 2 (no repeated
(row, column) incidences).
"""

from __future__ import annotations

from .errors import DimensionError


class BitVector:
    """Immutable dense binary vector of fixed length."""

    __slots__ = ("n", "word")

    def __init__(self, n: int, word: int = 0):
        if n < 0:
            raise DimensionError("length must be nonnegative")
        if word < 0 or word >> n:
            raise DimensionError("word has bits outside [0, n)")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "word", word)

    def __setattr__(self, name, value):
        raise AttributeError("BitVector is immutable")

    @classmethod
    def from_bits(cls, bits) -> "BitVector":
        bits = list(bits)
        word = 0
        for i, b in enumerate(bits):
            if b:
                word |= 1 << i
        return cls(len(bits), word)

    @classmethod
    def from_indices(cls, n: int, indices) -> "BitVector":
        word = 0
        for i in indices:
            if not 0 <= i < n:
                raise DimensionError(f"index {i} out of range for length {n}")
            word |= 1 << i
        return cls(n, word)

    @classmethod
    def random(cls, n: int, rng) -> "BitVector":
        """Uniform Bernoulli(1/2) vector drawn from a numpy Generator."""
        nbytes = (n + 7) // 8
        word = int.from_bytes(rng.bytes(nbytes), "little") & ((1 << n) - 1)
        return cls(n, word)

    def weight(self) -> int:
        return self.word.bit_count()

    def bit(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise DimensionError(f"index {i} out of range")
        return (self.word >> i) & 1

    def bits(self) -> list[int]:
        return [(self.word >> i) & 1 for i in range(self.n)]

    def complement(self) -> "BitVector":
        return BitVector(self.n, self.word ^ ((1 << self.n) - 1))

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise DimensionError("xor of different lengths")
        return BitVector(self.n, self.word ^ other.word)

    def __eq__(self, other):
        return (
            isinstance(other, BitVector)
            and self.n == other.n
            and self.word == other.word
        )

    def __hash__(self):
        return hash((self.n, self.word))

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"BitVector({''.join(map(str, self.bits()))})"

    def to_hex(self) -> str:
        ndigits = max(1, (self.n + 3) // 4)
        return format(self.word, f"0{ndigits}x")

    @classmethod
    def from_hex(cls, text: str, n: int) -> "BitVector":
        word = int(text.strip(), 16)
        if word >> n:
            raise DimensionError("hex value has bits outside [0, n)")
        return cls(n, word)


class SparseGF2Matrix:
    """Sparse binary matrix stored as per-column sorted row-index lists.

    The stored support is mod-2 reduced: repeated (row, column) hits must
    be cancelled before construction.
    """

    __slots__ = ("rows", "cols", "column_support", "_column_masks")

    def __init__(self, rows: int, cols: int, column_support):
        column_support = tuple(tuple(col) for col in column_support)
        if len(column_support) != cols:
            raise DimensionError("column_support length != cols")
        for c, sup in enumerate(column_support):
            for a, b in zip(sup, sup[1:]):
                if a >= b:
                    raise DimensionError(f"column {c} support not strictly increasing")
            if sup and (sup[0] < 0 or sup[-1] >= rows):
                raise DimensionError(f"column {c} has out-of-range row index")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "column_support", column_support)
        object.__setattr__(self, "_column_masks", None)

    def __setattr__(self, name, value):
        raise AttributeError("SparseGF2Matrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "SparseGF2Matrix":
        return cls(n, n, [(i,) for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseGF2Matrix":
        return cls(rows, cols, [()] * cols)

    @classmethod
    def from_dense(cls, array) -> "SparseGF2Matrix":
        rows = len(array)
        cols = len(array[0]) if rows else 0
        sup = [[] for _ in range(cols)]
        for r in range(rows):
            for c in range(cols):
                if array[r][c] & 1:
                    sup[c].append(r)
        return cls(rows, cols, sup)

    def column_masks(self) -> list[int]:
        """Per-column integer mask over row indices (cached)."""
        if self._column_masks is None:
            masks = [sum(1 << r for r in sup) for sup in self.column_support]
            object.__setattr__(self, "_column_masks", masks)
        return self._column_masks

    def row_support(self) -> list[list[int]]:
        rows = [[] for _ in range(self.rows)]
        for c, sup in enumerate(self.column_support):
            for r in sup:
                rows[r].append(c)
        return rows

    def row_masks(self) -> list[int]:
        """Per-row integer mask over column indices."""
        masks = [0] * self.rows
        for c, sup in enumerate(self.column_support):
            for r in sup:
                masks[r] |= 1 << c
        return masks

    def transpose(self) -> "SparseGF2Matrix":
        return SparseGF2Matrix(self.cols, self.rows, self.row_support())

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for c, sup in enumerate(self.column_support):
            for r in sup:
                out[r][c] = 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, SparseGF2Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.column_support == other.column_support
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.column_support))

    def __repr__(self):
        return f"SparseGF2Matrix({self.rows}x{self.cols}, nnz={sum(len(s) for s in self.column_support)})"


def hamming_distance(a: BitVector, b: BitVector) -> int:
    """Number of positions where a and b differ."""
    if a.n != b.n:
        raise DimensionError("hamming_distance of different lengths")
    return (a.word ^ b.word).bit_count()


def gf2_matvec(z: BitVector, M: SparseGF2Matrix) -> BitVector:
    """Row-vector times matrix over GF(2): output bit j = <z, column j>."""
    if z.n != M.rows:
        raise DimensionError(f"vector length {z.n} != matrix rows {M.rows}")
    word = 0
    zw = z.word
    for j, mask in enumerate(M.column_masks()):
        if (zw & mask).bit_count() & 1:
            word |= 1 << j
    return BitVector(M.cols, word)


def _reduced_row_echelon(row_ints: list[int], ncols: int):
    """In-place RREF of rows-as-integers; returns (rows, pivot column list).

    Pivots are taken left to right with row swaps, so the output is
    deterministic for a given input ordering.
    """
    rows = list(row_ints)
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if (rows[i] >> c) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and (rows[i] >> c) & 1:
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def gf2_rank(M: SparseGF2Matrix) -> int:
    """Rank over GF(2)."""
    _, pivots = _reduced_row_echelon(M.row_masks(), M.cols)
    return len(pivots)


def null_space_basis(M: SparseGF2Matrix) -> list[BitVector]:
    """Deterministic basis of {x : M x' = 0}, one vector per free column.

    Basis vectors are emitted in increasing free-column order; each is
    checked against M before being returned.
    """
    rows, pivots = _reduced_row_echelon(M.row_masks(), M.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.cols):
        if free in pivot_set:
            continue
        word = 1 << free
        for i, p in enumerate(pivots):
            if (rows[i] >> free) & 1:
                word |= 1 << p
        vec = BitVector(M.cols, word)
        assert gf2_matvec(vec, M.transpose()).weight() == 0
        basis.append(vec)
    return basis
