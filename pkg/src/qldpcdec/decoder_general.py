"""General QLDPC decoding by cluster growth and local linear solves.

Clusters are seeded at the failed checks of a syndrome and repeatedly
enlarged by one neighbourhood layer.  A cluster is valid once the checks
it contains can be explained by flipping bits in its interior, which is a
GF(2) linear system; local solutions of all clusters XOR together into the
returned estimate.  Validity checking and correction extraction both go
through Gaussian elimination, which is this decoder's accepted bottleneck.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .code import BIT, CHECK, CssCode, TannerGraph, VertexId
from .gf2 import BitMatrix, BitVector, solve


@dataclass(frozen=True)
class Cluster:
    """A set of Tanner-graph vertices grown around syndrome checks."""

    vertices: frozenset[VertexId]

    @classmethod
    def from_indices(cls, checks=(), bits=()) -> "Cluster":
        vs = {VertexId(CHECK, i) for i in checks} | {VertexId(BIT, j) for j in bits}
        return cls(frozenset(vs))

    def check_indices(self) -> set[int]:
        return {v.index for v in self.vertices if v.kind == CHECK}

    def bit_indices(self) -> set[int]:
        return {v.index for v in self.vertices if v.kind == BIT}


@dataclass(frozen=True)
class DecodeOutcome:
    """Result of one decode call."""

    estimate: BitVector
    growth_steps: int
    converged: bool
    elapsed_ns: int
    diagnostic: str | None = None


_UNSOLVED = object()


class _Clu:
    __slots__ = ("checks", "bits", "solution")

    def __init__(self, checks: set[int], bits: set[int]):
        self.checks = checks
        self.bits = bits
        self.solution = _UNSOLVED  # BitVector when valid, None when checked invalid


def _interior_bit_mask(g: TannerGraph, checks: set[int], bits: set[int]) -> int:
    mask = 0
    for j in bits:
        for c in g.bit_neighbors[j]:
            if c not in checks:
                break
        else:
            mask |= 1 << j
    return mask


def _solve_local(h: BitMatrix, g: TannerGraph, checks: set[int], bits: set[int], syndrome_bits: int) -> BitVector | None:
    """Solve for a correction supported on the cluster's interior bits.

    Rows are the cluster's checks masked to interior columns; the right-hand
    side is the syndrome restricted to those checks.  Row width stays at the
    full block length, mirroring the elimination cost this decoder accepts.
    """
    interior = _interior_bit_mask(g, checks, bits)
    ordered = sorted(checks)
    rows = [h.row_bits[c] & interior for c in ordered]
    rhs = 0
    for r, c in enumerate(ordered):
        rhs |= ((syndrome_bits >> c) & 1) << r
    return solve(BitMatrix(len(rows), h.cols, rows), BitVector(len(rows), rhs))


def _grow_one(g: TannerGraph, clu: _Clu) -> bool:
    new_bits = set()
    for c in clu.checks:
        new_bits.update(g.check_neighbors[c])
    new_checks = set()
    for j in clu.bits:
        new_checks.update(g.bit_neighbors[j])
    changed = not (new_bits <= clu.bits and new_checks <= clu.checks)
    if changed:
        clu.bits |= new_bits
        clu.checks |= new_checks
        clu.solution = _UNSOLVED
    return changed


def _merge_overlapping(clusters: list[_Clu]) -> tuple[list[_Clu], bool]:
    """Merge clusters sharing any vertex; first owner in list order wins."""
    owner_check: dict[int, int] = {}
    owner_bit: dict[int, int] = {}
    keep: list[_Clu] = []
    merged_any = False
    for clu in clusters:
        hits = {owner_check[c] for c in clu.checks if c in owner_check}
        hits |= {owner_bit[j] for j in clu.bits if j in owner_bit}
        if not hits:
            idx = len(keep)
            keep.append(clu)
            for c in clu.checks:
                owner_check[c] = idx
            for j in clu.bits:
                owner_bit[j] = idx
            continue
        merged_any = True
        target = min(hits)
        tgt = keep[target]
        tgt.checks |= clu.checks
        tgt.bits |= clu.bits
        tgt.solution = _UNSOLVED
        for other in sorted(hits - {target}, reverse=True):
            src = keep[other]
            tgt.checks |= src.checks
            tgt.bits |= src.bits
            keep[other] = None  # type: ignore[assignment]
        for c in tgt.checks:
            owner_check[c] = target
        for j in tgt.bits:
            owner_bit[j] = target
    out = [c for c in keep if c is not None]
    return out, merged_any


def decode_general(
    code: CssCode,
    side: str,
    syndrome: BitVector,
    *,
    grow_all: bool = False,
) -> DecodeOutcome:
    """Decode a syndrome on the given error side ('x' errors use hz checks).

    Growth stops once every cluster is valid; by default valid clusters are
    frozen while invalid ones keep growing, `grow_all=True` grows every
    cluster until none is invalid.  An inconsistent syndrome (one no bit
    pattern can produce) ends with converged=False and a diagnostic.
    """
    h = code.check_matrix(side)
    g = code.tanner(side)
    if syndrome.n != h.rows:
        raise ValueError(f"syndrome length {syndrome.n} does not match check count {h.rows}")
    t0 = time.perf_counter_ns()
    seeds = syndrome.support()
    if not seeds:
        return DecodeOutcome(BitVector(code.n), 0, True, time.perf_counter_ns() - t0)

    syn_bits = syndrome.bits
    clusters = [_Clu({c}, set()) for c in seeds]
    steps = 0
    while True:
        for clu in clusters:
            if clu.solution is _UNSOLVED:
                clu.solution = _solve_local(h, g, clu.checks, clu.bits, syn_bits)
        invalid = [clu for clu in clusters if clu.solution is None]
        if not invalid:
            break
        steps += 1
        grew = False
        for clu in clusters if grow_all else invalid:
            grew |= _grow_one(g, clu)
        clusters, merged = _merge_overlapping(clusters)
        if not (grew or merged):
            estimate = _combine(code.n, clusters)
            return DecodeOutcome(
                estimate,
                steps,
                False,
                time.perf_counter_ns() - t0,
                diagnostic="cluster closed under neighbourhood but its local system is unsolvable",
            )
    estimate = _combine(code.n, clusters)
    return DecodeOutcome(estimate, steps, True, time.perf_counter_ns() - t0)


def _combine(n: int, clusters: list[_Clu]) -> BitVector:
    bits = 0
    for clu in clusters:
        if isinstance(clu.solution, BitVector):
            bits ^= clu.solution.bits
    return BitVector(n, bits)


# ---------------------------------------------------------------------------
# Cluster-level operations on the public VertexId vocabulary


def grow_cluster(g: TannerGraph, c: Cluster) -> Cluster:
    """One growth layer: c plus the neighbours of every vertex of c."""
    if not c.vertices:
        raise ValueError("cannot grow an empty cluster")
    checks = c.check_indices()
    bits = c.bit_indices()
    clu = _Clu(set(checks), set(bits))
    _grow_one(g, clu)
    return Cluster.from_indices(clu.checks, clu.bits)


def is_valid_cluster(code: CssCode, side: str, c: Cluster, syndrome: BitVector) -> bool:
    """True iff the syndrome inside c can be produced from c's interior bits."""
    h = code.check_matrix(side)
    if syndrome.n != h.rows:
        raise ValueError(f"syndrome length {syndrome.n} does not match check count {h.rows}")
    return _solve_local(h, code.tanner(side), c.check_indices(), c.bit_indices(), syndrome.bits) is not None


def local_correction(code: CssCode, side: str, c: Cluster, syndrome: BitVector) -> BitVector:
    """A correction supported on c's interior matching the syndrome inside c."""
    h = code.check_matrix(side)
    if syndrome.n != h.rows:
        raise ValueError(f"syndrome length {syndrome.n} does not match check count {h.rows}")
    sol = _solve_local(h, code.tanner(side), c.check_indices(), c.bit_indices(), syndrome.bits)
    if sol is None:
        raise ValueError("cluster is not valid, no local correction exists")
    return sol
