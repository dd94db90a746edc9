"""Dense GF(2) linear algebra on bit-packed integer rows.

Vectors and matrix rows are stored as Python integers; bit ``i`` of a row
is the entry in column ``i``.  Adding two rows is a single big-integer
XOR, so Gaussian elimination touches whole machine words at a time.
All public operations leave their inputs untouched.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class BitVector:
    """Immutable vector over GF(2), packed into one integer."""

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: int = 0):
        if n < 0:
            raise ValueError(f"vector length must be >= 0, got {n}")
        if bits < 0 or bits >> n:
            raise ValueError(f"bit pattern does not fit in {n} bits")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("BitVector is immutable")

    @classmethod
    def from_bits(cls, values: Iterable[int]) -> "BitVector":
        bits = 0
        n = 0
        for v in values:
            if v not in (0, 1):
                raise ValueError(f"entries must be 0 or 1, got {v!r}")
            bits |= v << n
            n += 1
        return cls(n, bits)

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        """Parse a left-to-right string of '0'/'1' characters (index 0 first)."""
        if not set(text) <= {"0", "1"}:
            raise ValueError(f"not a bit string: {text!r}")
        return cls(len(text), int(text[::-1], 2) if text else 0)

    @classmethod
    def unit(cls, n: int, index: int) -> "BitVector":
        if not 0 <= index < n:
            raise ValueError(f"index {index} out of range for length {n}")
        return cls(n, 1 << index)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __iter__(self):
        bits = self.bits
        for _ in range(self.n):
            yield bits & 1
            bits >>= 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")
        return BitVector(self.n, self.bits ^ other.bits)

    # GF(2) addition is XOR.
    __add__ = __xor__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitVector)
            and self.n == other.n
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.n, self.bits))

    def weight(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def support(self) -> tuple[int, ...]:
        """Indices of the nonzero entries, ascending."""
        out = []
        bits = self.bits
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return tuple(out)

    def to01(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.n))

    def __repr__(self) -> str:
        return f"BitVector({self.to01()!r})"


class BitMatrix:
    """Immutable binary matrix stored as one integer per row."""

    __slots__ = ("rows", "cols", "row_bits")

    def __init__(self, rows: int, cols: int, row_bits: Sequence[int]):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be >= 0")
        if len(row_bits) != rows:
            raise ValueError(f"expected {rows} rows, got {len(row_bits)}")
        for i, r in enumerate(row_bits):
            if r < 0 or r >> cols:
                raise ValueError(f"row {i} does not fit in {cols} columns")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "row_bits", tuple(row_bits))

    def __setattr__(self, name, value):
        raise AttributeError("BitMatrix is immutable")

    @classmethod
    def from_rows(cls, entries: Sequence[Sequence[int]]) -> "BitMatrix":
        if len(entries) == 0:
            raise ValueError("cannot infer column count from zero rows")
        cols = len(entries[0])
        row_bits = []
        for i, row in enumerate(entries):
            if len(row) != cols:
                raise ValueError(f"row {i} has length {len(row)}, expected {cols}")
            bits = 0
            for j, v in enumerate(row):
                if v not in (0, 1):
                    raise ValueError(f"entry ({i},{j}) must be 0 or 1, got {v!r}")
                bits |= v << j
            row_bits.append(bits)
        return cls(len(entries), cols, row_bits)

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "BitMatrix":
        return cls.from_rows([[int(ch) for ch in line] for line in lines])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, [0] * rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, [1 << i for i in range(n)])

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        return (self.row_bits[i] >> j) & 1

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.row_bits[i])

    def row_support(self, i: int) -> tuple[int, ...]:
        return self.row(i).support()

    def transpose(self) -> "BitMatrix":
        out = [0] * self.cols
        for i, bits in enumerate(self.row_bits):
            while bits:
                low = bits & -bits
                out[low.bit_length() - 1] |= 1 << i
                bits ^= low
        return BitMatrix(self.cols, self.rows, out)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.row_bits]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.row_bits == other.row_bits
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.row_bits))

    def __repr__(self) -> str:
        body = ",".join(BitVector(self.cols, r).to01() for r in self.row_bits)
        return f"BitMatrix[{self.rows}x{self.cols}]({body})"


def mat_vec_mul(h: BitMatrix, x: BitVector) -> BitVector:
    """Product H*x over GF(2); entry i is the parity of x on row i's support."""
    if x.n != h.cols:
        raise ValueError(f"dimension mismatch: matrix is {h.rows}x{h.cols}, vector has length {x.n}")
    out = 0
    xb = x.bits
    for i, row in enumerate(h.row_bits):
        out |= ((row & xb).bit_count() & 1) << i
    return BitVector(h.rows, out)


def mat_mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Product A*B over GF(2)."""
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.rows}x{a.cols} times {b.rows}x{b.cols}")
    bt = b.transpose().row_bits
    out = []
    for arow in a.row_bits:
        bits = 0
        for j, bcol in enumerate(bt):
            bits |= ((arow & bcol).bit_count() & 1) << j
        out.append(bits)
    return BitMatrix(a.rows, b.cols, out)


def rank(h: BitMatrix) -> int:
    """GF(2) rank via Gaussian elimination on a working copy."""
    work = list(h.row_bits)
    nrows = len(work)
    r = 0
    for col in range(h.cols):
        mask = 1 << col
        pivot = None
        for i in range(r, nrows):
            if work[i] & mask:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        prow = work[r]
        for i in range(r + 1, nrows):
            if work[i] & mask:
                work[i] ^= prow
        r += 1
        if r == nrows:
            break
    return r


def solve(a: BitMatrix, b: BitVector) -> BitVector | None:
    """One solution of A*x = b, or None when the system is inconsistent.

    Pivots are chosen at the lowest column index with a one, taking the
    lowest eligible row; free variables are set to zero.  The result is
    therefore reproducible across runs and platforms.
    """
    if b.n != a.rows:
        raise ValueError(f"dimension mismatch: matrix has {a.rows} rows, vector has length {b.n}")
    rhs_bit = 1 << a.cols
    work = [row | (rhs_bit if (b.bits >> i) & 1 else 0) for i, row in enumerate(a.row_bits)]
    nrows = len(work)
    pivot_cols: list[int] = []
    r = 0
    for col in range(a.cols):
        mask = 1 << col
        pivot = None
        for i in range(r, nrows):
            if work[i] & mask:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        prow = work[r]
        for i in range(nrows):
            if i != r and (work[i] & mask):
                work[i] ^= prow
        pivot_cols.append(col)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if work[i]:  # coefficients are zero here, so any set bit is the rhs
            return None
    x = 0
    for i, col in enumerate(pivot_cols):
        if work[i] & rhs_bit:
            x |= 1 << col
    return BitVector(a.cols, x)


class RowSpace:
    """Row-echelon basis of a matrix's rowspace, for repeated membership tests."""

    __slots__ = ("cols", "_pivots")

    def __init__(self, h: BitMatrix):
        work = list(h.row_bits)
        nrows = len(work)
        pivots: list[tuple[int, int]] = []
        r = 0
        for col in range(h.cols):
            mask = 1 << col
            pivot = None
            for i in range(r, nrows):
                if work[i] & mask:
                    pivot = i
                    break
            if pivot is None:
                continue
            work[r], work[pivot] = work[pivot], work[r]
            prow = work[r]
            for i in range(r + 1, nrows):
                if work[i] & mask:
                    work[i] ^= prow
            pivots.append((col, prow))
            r += 1
            if r == nrows:
                break
        object.__setattr__(self, "cols", h.cols)
        object.__setattr__(self, "_pivots", tuple(pivots))

    def __setattr__(self, name, value):
        raise AttributeError("RowSpace is immutable")

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def contains(self, v: BitVector) -> bool:
        if v.n != self.cols:
            raise ValueError(f"dimension mismatch: space has {self.cols} columns, vector has length {v.n}")
        bits = v.bits
        for col, prow in self._pivots:
            if (bits >> col) & 1:
                bits ^= prow
        return bits == 0


def in_rowspace(h: BitMatrix, v: BitVector) -> bool:
    """True iff v is a GF(2) combination of the rows of h."""
    return RowSpace(h).contains(v)
