"""CSS codes as parity-check matrix pairs, with Tanner-graph views and PCM file I/O.

A CSS code is given by two binary parity-check matrices ``hx`` (m x n) and
``hz`` (l x n) whose rows pairwise overlap in an even number of positions,
i.e. hx * hz^T = 0 over GF(2).  Each matrix doubles as the adjacency matrix
of a bipartite Tanner graph: row i lists the bit vertices taking part in
check i.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .gf2 import BitMatrix, rank

CHECK = "check"
BIT = "bit"


@dataclass(frozen=True, order=True)
class VertexId:
    """A vertex of a Tanner graph: either check i or bit j."""

    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in (CHECK, BIT):
            raise ValueError(f"kind must be {CHECK!r} or {BIT!r}, got {self.kind!r}")
        if self.index < 0:
            raise ValueError(f"vertex index must be >= 0, got {self.index}")


def check_vertex(i: int) -> VertexId:
    return VertexId(CHECK, i)


def bit_vertex(j: int) -> VertexId:
    return VertexId(BIT, j)


class TannerGraph:
    """Bipartite adjacency between check vertices and bit vertices.

    ``check_neighbors[i]`` is the sorted tuple of bit indices in check i;
    ``bit_neighbors[j]`` is the transpose map.  Both views are kept
    consistent by construction and never mutated.
    """

    def __init__(self, check_neighbors: Sequence[Iterable[int]], bit_count: int):
        if bit_count < 0:
            raise ValueError("bit_count must be >= 0")
        checks = []
        bits: list[list[int]] = [[] for _ in range(bit_count)]
        for i, nbrs in enumerate(check_neighbors):
            row = tuple(sorted(set(nbrs)))
            for j in row:
                if not 0 <= j < bit_count:
                    raise ValueError(f"check {i} references bit {j}, outside 0..{bit_count - 1}")
                bits[j].append(i)
            checks.append(row)
        self.check_neighbors: tuple[tuple[int, ...], ...] = tuple(checks)
        self.bit_neighbors: tuple[tuple[int, ...], ...] = tuple(tuple(b) for b in bits)
        self.check_count = len(checks)
        self.bit_count = bit_count
        self._encoded_adjacency: tuple[tuple[int, ...], ...] | None = None

    @classmethod
    def from_matrix(cls, h: BitMatrix) -> "TannerGraph":
        return cls([h.row_support(i) for i in range(h.rows)], h.cols)

    @property
    def max_check_degree(self) -> int:
        return max((len(r) for r in self.check_neighbors), default=0)

    @property
    def max_bit_degree(self) -> int:
        return max((len(r) for r in self.bit_neighbors), default=0)

    def _validate(self, v: VertexId) -> None:
        bound = self.check_count if v.kind == CHECK else self.bit_count
        if v.index >= bound:
            raise ValueError(f"{v} out of range ({v.kind} count is {bound})")

    def neighbours(self, v: VertexId) -> frozenset[VertexId]:
        """N(v): the vertices sharing an edge with v."""
        self._validate(v)
        if v.kind == CHECK:
            return frozenset(VertexId(BIT, j) for j in self.check_neighbors[v.index])
        return frozenset(VertexId(CHECK, i) for i in self.bit_neighbors[v.index])

    def interior(self, w: Iterable[VertexId]) -> set[VertexId]:
        """Vertices of w all of whose neighbours also lie in w."""
        wset = set(w)
        for v in wset:
            self._validate(v)
        return {v for v in wset if self.neighbours(v) <= wset}

    @property
    def encoded_adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Flat adjacency with check i encoded as i and bit j as check_count + j.

        Built once and cached; decoders use it to keep cluster bookkeeping on
        plain integers.
        """
        if self._encoded_adjacency is None:
            m = self.check_count
            rows = [tuple(m + j for j in nbrs) for nbrs in self.check_neighbors]
            rows += [nbrs for nbrs in self.bit_neighbors]
            self._encoded_adjacency = tuple(rows)
        return self._encoded_adjacency

    def diameter(self) -> int:
        """Longest shortest path over all connected vertex pairs (BFS per vertex)."""
        total = self.check_count + self.bit_count
        adj = [
            tuple(self.check_count + j for j in self.check_neighbors[i])
            for i in range(self.check_count)
        ] + [tuple(self.bit_neighbors[j]) for j in range(self.bit_count)]
        best = 0
        for start in range(total):
            dist = {start: 0}
            frontier = [start]
            d = 0
            while frontier:
                d += 1
                nxt = []
                for v in frontier:
                    for u in adj[v]:
                        if u not in dist:
                            dist[u] = d
                            nxt.append(u)
                frontier = nxt
            best = max(best, max(dist.values()))
        return best


class CssCode:
    """A validated pair of parity-check matrices and its Tanner graphs."""

    def __init__(
        self,
        hx: BitMatrix,
        hz: BitMatrix,
        *,
        max_degree: int | None = None,
        validate: bool = True,
    ):
        if hx.cols != hz.cols:
            raise ValueError(f"column mismatch: hx has {hx.cols} columns, hz has {hz.cols}")
        if validate:
            _check_commutation(hx, hz)
        self.hx = hx
        self.hz = hz
        self.n = hx.cols
        self.tanner_x = TannerGraph.from_matrix(hx)
        self.tanner_z = TannerGraph.from_matrix(hz)
        if max_degree is not None:
            for name, g in (("hx", self.tanner_x), ("hz", self.tanner_z)):
                worst = max(g.max_check_degree, g.max_bit_degree)
                if worst > max_degree:
                    raise ValueError(f"{name} has a vertex of degree {worst}, above the bound {max_degree}")
        self._k: int | None = None

    @property
    def k(self) -> int:
        """Number of logical qubits, n - rank(hx) - rank(hz)."""
        if self._k is None:
            self._k = self.n - rank(self.hx) - rank(self.hz)
            assert self._k >= 0
        return self._k

    def check_matrix(self, side: str) -> BitMatrix:
        """The matrix whose rows are the checks that detect errors on `side`."""
        return self.hz if _norm_side(side) == "x" else self.hx

    def stabilizer_matrix(self, side: str) -> BitMatrix:
        """The matrix whose rowspace is trivial for errors on `side`."""
        return self.hx if _norm_side(side) == "x" else self.hz

    def tanner(self, side: str) -> TannerGraph:
        return self.tanner_z if _norm_side(side) == "x" else self.tanner_x

    def __repr__(self) -> str:
        return f"CssCode(n={self.n}, checks=({self.hx.rows},{self.hz.rows}))"


def _norm_side(side: str) -> str:
    s = side.lower()
    if s not in ("x", "z"):
        raise ValueError(f"side must be 'x' or 'z', got {side!r}")
    return s


def _check_commutation(hx: BitMatrix, hz: BitMatrix) -> None:
    for i, rx in enumerate(hx.row_bits):
        for j, rz in enumerate(hz.row_bits):
            if (rx & rz).bit_count() & 1:
                raise ValueError(
                    f"not a CSS pair: hx row {i} and hz row {j} overlap on an odd number of bits"
                )


def new_css(hx: BitMatrix, hz: BitMatrix, *, max_degree: int | None = None) -> CssCode:
    return CssCode(hx, hz, max_degree=max_degree)


# ---------------------------------------------------------------------------
# Built-in constructions


def hamming_matrix() -> BitMatrix:
    """The 3x7 parity-check matrix used by the built-in Steane code.

    Row supports: {0,3,5,6}, {1,3,4,6}, {2,4,5,6}.  Columns are distinct
    and nonzero, rows have weight four and pairwise even overlap, so the
    matrix has rank 3 and commutes with itself.
    """
    return BitMatrix.from_rows(
        [
            [1, 0, 0, 1, 0, 1, 1],
            [0, 1, 0, 1, 1, 0, 1],
            [0, 0, 1, 0, 1, 1, 1],
        ]
    )


def steane_code() -> CssCode:
    h = hamming_matrix()
    return CssCode(h, h)


def _kron(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    rows = []
    for arow in a.row_bits:
        cols_set = []
        bits = arow
        while bits:
            low = bits & -bits
            cols_set.append(low.bit_length() - 1)
            bits ^= low
        for brow in b.row_bits:
            out = 0
            for j in cols_set:
                out |= brow << (j * b.cols)
            rows.append(out)
    return BitMatrix(a.rows * b.rows, a.cols * b.cols, rows)


def _hstack(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.rows != b.rows:
        raise ValueError("row mismatch in hstack")
    return BitMatrix(a.rows, a.cols + b.cols, [ra | (rb << a.cols) for ra, rb in zip(a.row_bits, b.row_bits)])


def repetition_matrix(length: int) -> BitMatrix:
    """Cyclic difference matrix: row i checks bits i and i+1 (mod length)."""
    return BitMatrix(length, length, [(1 << i) | (1 << ((i + 1) % length)) for i in range(length)])


def toric_code(length: int) -> CssCode:
    """Toric code of linear size L via the hypergraph product of two
    length-L cyclic repetition codes: n = 2*L^2 qubits, 2 logical qubits.

    hx = [H (x) I | I (x) H^T], hz = [I (x) H | H^T (x) I]; the two blocks
    commute structurally, so the CSS condition holds by construction.
    """
    if length < 2:
        raise ValueError(f"toric code needs L >= 2, got {length}")
    h = repetition_matrix(length)
    ident = BitMatrix.identity(length)
    ht = h.transpose()
    hx = _hstack(_kron(h, ident), _kron(ident, ht))
    hz = _hstack(_kron(ident, h), _kron(ht, ident))
    return CssCode(hx, hz)


def builtin(name: str) -> CssCode | BitMatrix:
    """Named fixtures: 'steane', 'hamming7', or 'toric:L' (also 'toric(L)')."""
    key = name.strip().lower()
    if key == "steane":
        return steane_code()
    if key == "hamming7":
        return hamming_matrix()
    if key.startswith("toric"):
        rest = key[len("toric"):]
        if rest.startswith(":"):
            arg = rest[1:]
        elif rest.startswith("(") and rest.endswith(")"):
            arg = rest[1:-1]
        else:
            arg = ""
        if not arg.isdigit():
            raise ValueError(f"unknown code name {name!r} (expected toric:L)")
        return toric_code(int(arg))
    raise ValueError(f"unknown code name {name!r}")


# ---------------------------------------------------------------------------
# PCM file formats

PCM_FORMATS = ("dense", "alist")


class PcmFormatError(ValueError):
    """Raised when a parity-check matrix file cannot be parsed."""


def load_pcm(path: str | os.PathLike, fmt: str = "dense") -> BitMatrix:
    """Read a parity-check matrix from `path`.

    'dense' is one row per line, characters '0'/'1' with no separators.
    'alist' is the conventional LDPC layout: header "n m", max column and
    row degrees, per-column degrees, per-row degrees, then 1-based index
    lists per column and per row (zero padding tolerated).
    """
    if fmt not in PCM_FORMATS:
        raise ValueError(f"unknown PCM format {fmt!r}, expected one of {PCM_FORMATS}")
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    if fmt == "dense":
        return _parse_dense(text, str(path))
    return _parse_alist(text, str(path))


def write_pcm(m: BitMatrix, path: str | os.PathLike, fmt: str = "dense") -> None:
    if fmt not in PCM_FORMATS:
        raise ValueError(f"unknown PCM format {fmt!r}, expected one of {PCM_FORMATS}")
    if fmt == "dense":
        lines = [m.row(i).to01() for i in range(m.rows)]
    else:
        cols = [m.transpose().row_support(j) for j in range(m.cols)]
        rows = [m.row_support(i) for i in range(m.rows)]
        lines = [
            f"{m.cols} {m.rows}",
            f"{max((len(c) for c in cols), default=0)} {max((len(r) for r in rows), default=0)}",
            " ".join(str(len(c)) for c in cols),
            " ".join(str(len(r)) for r in rows),
        ]
        # "0" stands in for an empty index list, as in padded alist files
        lines += [" ".join(str(i + 1) for i in c) if c else "0" for c in cols]
        lines += [" ".join(str(j + 1) for j in r) if r else "0" for r in rows]
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse_dense(text: str, path: str) -> BitMatrix:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise PcmFormatError(f"{path}: empty file")
    row_bits = []
    cols = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or set(line) - {"0", "1"}:
            raise PcmFormatError(f"{path}:{lineno}: expected a line of 0/1 characters")
        if cols is None:
            cols = len(line)
        elif len(line) != cols:
            raise PcmFormatError(f"{path}:{lineno}: row has {len(line)} columns, expected {cols}")
        row_bits.append(int(line[::-1], 2))
    return BitMatrix(len(row_bits), cols, row_bits)


def _parse_alist(text: str, path: str) -> BitMatrix:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise PcmFormatError(f"{path}: empty file")

    def ints(lineno: int, expect: int | None = None) -> list[int]:
        if lineno > len(lines):
            raise PcmFormatError(f"{path}:{lineno}: unexpected end of file")
        try:
            vals = [int(tok) for tok in lines[lineno - 1].split()]
        except ValueError:
            raise PcmFormatError(f"{path}:{lineno}: non-integer token") from None
        if expect is not None and len(vals) != expect:
            raise PcmFormatError(f"{path}:{lineno}: expected {expect} integers, got {len(vals)}")
        return vals

    n, m = ints(1, 2)
    if n <= 0 or m <= 0:
        raise PcmFormatError(f"{path}:1: non-positive dimensions {n} x {m}")
    dv_max, dc_max = ints(2, 2)
    col_deg = ints(3, n)
    row_deg = ints(4, m)
    if max(col_deg, default=0) > dv_max or max(row_deg, default=0) > dc_max:
        raise PcmFormatError(f"{path}:2: declared maximum degrees below actual degree lists")

    row_bits = [0] * m
    col_supports: list[list[int]] = []
    for j in range(n):
        lineno = 5 + j
        vals = [v for v in ints(lineno) if v != 0]
        if len(vals) != col_deg[j]:
            raise PcmFormatError(
                f"{path}:{lineno}: column {j} lists {len(vals)} entries, declared degree is {col_deg[j]}"
            )
        for v in vals:
            if not 1 <= v <= m:
                raise PcmFormatError(f"{path}:{lineno}: row index {v} outside 1..{m}")
            row_bits[v - 1] |= 1 << j
        col_supports.append(sorted(v - 1 for v in vals))

    for i in range(m):
        lineno = 5 + n + i
        vals = sorted(v for v in ints(lineno) if v != 0)
        if len(vals) != row_deg[i]:
            raise PcmFormatError(
                f"{path}:{lineno}: row {i} lists {len(vals)} entries, declared degree is {row_deg[i]}"
            )
        from_cols = sorted(j + 1 for j in range(n) if (row_bits[i] >> j) & 1)
        if vals != from_cols:
            raise PcmFormatError(f"{path}:{lineno}: row list disagrees with the column lists")

    return BitMatrix(m, n, row_bits)
