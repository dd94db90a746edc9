"""Union-find decoding heuristic with boundary lists and erasure peeling.

Clusters live in a disjoint-set forest over Tanner-graph vertices.  Each
growth step expands a cluster by the neighbourhood of its boundary list,
merges clusters that grew together, and refreshes boundaries incrementally
(only former boundary vertices and newly added ones are re-examined).
A cluster is finished once every failed check in it can be cancelled by
peeling interior bits; the peeled estimates of all finished clusters form
the decoder output.  No Gaussian elimination runs unless the caller opts
into the fallback for clusters the peeler cannot finish.

Decoder-internal bookkeeping encodes vertices as integers (check i is i,
bit j is check_count + j); the public helpers accept the VertexId
vocabulary and translate at the boundary.
"""

from __future__ import annotations

import heapq
import time
from typing import Callable, Iterable

from .code import BIT, CHECK, CssCode, VertexId
from .decoder_general import DecodeOutcome, _solve_local
from .gf2 import BitVector
from .rng import derive_seed

GROWTH_STRATEGIES = ("ag", "ssg", "srg")

PEEL_FALLBACKS = ("grow", "solve")


class UnionFindForest:
    """Disjoint sets as parent-pointer trees with union by size and path
    compression.  Each root also carries its member set and a boundary list
    (vertices with at least one neighbour outside the set); union merges the
    payloads of the smaller tree into the larger one and concatenates the
    boundary lists, leaving them for the caller's next bookkeeping pass.
    """

    def __init__(self):
        self.parent: dict = {}
        self._size: dict = {}
        self._members: dict = {}
        self.boundary: dict = {}

    def add(self, v) -> None:
        """Register v as a singleton tree (no-op when already present)."""
        if v in self.parent:
            return
        self.parent[v] = v
        self._size[v] = 1
        self._members[v] = {v}
        self.boundary[v] = [v]

    def __contains__(self, v) -> bool:
        return v in self.parent

    def find(self, v):
        """Root of v's tree; compresses the traversed path."""
        parent = self.parent
        if v not in parent:
            raise ValueError(f"vertex not registered: {v!r}")
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def union(self, a, b):
        """Merge the trees of a and b; returns the surviving root.

        The smaller tree is appended under the larger root, ties go to the
        first argument's root.  Union of a tree with itself is a no-op.
        """
        ra = self.find(a)
        rb = self.find(b)
        if ra == rb:
            return ra
        if self._size[rb] > self._size[ra]:
            big, small = rb, ra
        else:
            big, small = ra, rb
        self.parent[small] = big
        self._size[big] += self._size.pop(small)
        self._members[big] |= self._members.pop(small)
        self.boundary[big] = self.boundary[big] + self.boundary.pop(small)
        return big

    def size(self, v) -> int:
        return self._size[self.find(v)]

    def members(self, v) -> set:
        """The member set of v's tree (treat as read-only)."""
        return self._members[self.find(v)]

    def roots(self) -> tuple:
        return tuple(self._size)

    def is_root(self, v) -> bool:
        return self.parent.get(v) == v


def _peel(adj, interior_bits: set[int], local_syndrome: set[int]) -> set[int] | None:
    """Cancel the residual syndrome by peeling interior bits one at a time.

    A bit is selected for the estimate at an unsatisfied check with exactly
    one remaining interior-bit neighbour when possible (classic peeling
    order), otherwise at the lowest-index unsatisfied check that still has
    one; XORing the bit's check column into the residual syndrome then
    removes it from the structure.  Two forced inferences keep the structure
    shrinking without guesses: a satisfied check down to a single remaining
    bit pins that bit to zero (no completion may use it, so it is dropped),
    and an unsatisfied check with no remaining bits can never be cancelled,
    which fails the run immediately.  All choices break ties toward the
    lowest index.  Fails, returning None, instead of looping.

    Remaining-neighbour counts per check are kept incrementally and
    candidate checks sit in lazily validated heaps, so one step costs
    amortized O(degree) rather than a rescan of the whole cluster.
    """
    unsat = set(local_syndrome)
    if not unsat:
        return set()
    remaining = set(interior_bits)
    deg: dict[int, int] = {}
    for b in remaining:
        for c in adj[b]:
            deg[c] = deg.get(c, 0) + 1
    for c in unsat:
        if deg.get(c, 0) == 0:
            return None
    take1: list[int] = []  # unsatisfied checks with exactly one bit left
    drop1: list[int] = []  # satisfied checks with exactly one bit left
    any1: list[int] = []  # unsatisfied checks with at least one bit left
    for c, k in deg.items():
        if k == 1:
            (take1 if c in unsat else drop1).append(c)
        if k >= 1 and c in unsat:
            any1.append(c)
    heapq.heapify(take1)
    heapq.heapify(drop1)
    heapq.heapify(any1)
    chosen: set[int] = set()

    def remove_bit(b: int, take: bool) -> bool:
        remaining.discard(b)
        if take:
            chosen.add(b)
        alive = True
        for c in adj[b]:
            k = deg[c] - 1
            deg[c] = k
            if take:
                if c in unsat:
                    unsat.discard(c)
                else:
                    unsat.add(c)
                    if k >= 1:
                        heapq.heappush(any1, c)
            if k == 1:
                heapq.heappush(take1 if c in unsat else drop1, c)
            elif k == 0 and c in unsat:
                alive = False
        return alive

    while unsat:
        check = None
        take = True
        while take1:
            c = take1[0]
            if c in unsat and deg[c] == 1:
                check = c
                break
            heapq.heappop(take1)
        if check is None:
            while drop1:
                c = drop1[0]
                if c not in unsat and deg[c] == 1:
                    check = c
                    take = False
                    break
                heapq.heappop(drop1)
        if check is None:
            while any1:
                c = any1[0]
                if c in unsat and deg[c] >= 1:
                    check = c
                    break
                heapq.heappop(any1)
        if check is None:
            return None
        bit = None
        for b in adj[check]:
            if b in remaining:
                bit = b
                break
        if not remove_bit(bit, take):
            return None
    return chosen


def _encode(v: VertexId, m: int) -> int:
    return v.index if v.kind == CHECK else m + v.index


def check_validity_heuristic(code: CssCode, side: str, f: UnionFindForest, root: VertexId, syndrome: BitVector) -> bool:
    """True iff the cluster rooted at `root` can already be decoded locally.

    Requires every failed check in the cluster to have an interior-bit
    neighbour (one not on the boundary list) and a successful trial run of
    the peeling procedure.  The forest holds VertexId elements and its
    boundary lists are assumed current.
    """
    g = code.tanner(side)
    m = g.check_count
    root = f.find(root)
    members = {_encode(v, m) for v in f.members(root)}
    syn = {e for e in members if e < m and syndrome[e]}
    if not syn:
        return True
    bound = {_encode(v, m) for v in f.boundary[root]}
    interior_bits = {e for e in members if e >= m and e not in bound}
    adj = g.encoded_adjacency
    for c in syn:
        if not any(b in interior_bits for b in adj[c]):
            return False
    return _peel(adj, interior_bits, syn) is not None


def peel_erasure(code: CssCode, side: str, cluster_vertices: Iterable[VertexId], syndrome: BitVector) -> BitVector | None:
    """Peel a finished cluster into an estimate, or None when peeling fails.

    The estimate is supported on the cluster's interior bits and reproduces
    the syndrome restricted to the cluster's checks.
    """
    g = code.tanner(side)
    m = g.check_count
    adj = g.encoded_adjacency
    members = set()
    for v in cluster_vertices:
        g._validate(v)
        members.add(_encode(v, m))
    interior_bits = {e for e in members if e >= m and all(c in members for c in adj[e])}
    local_syn = {e for e in members if e < m and syndrome[e]}
    est = _peel(adj, interior_bits, local_syn)
    if est is None:
        return None
    bits = 0
    for e in est:
        bits |= 1 << (e - m)
    return BitVector(code.n, bits)


class _UfDecode:
    """State of one union-find decode (single-threaded, private per call)."""

    def __init__(self, code: CssCode, side: str, syndrome: BitVector, strategy: str, seed: int, on_peel_failure: str):
        self.g = code.tanner(side)
        self.m = self.g.check_count
        self.adj = self.g.encoded_adjacency
        self.h = code.check_matrix(side)
        self.syndrome = syndrome
        self.strategy = strategy
        self.seed = seed
        self.on_peel_failure = on_peel_failure
        self.forest = UnionFindForest()
        self.syn: dict[int, set[int]] = {}
        self.active: set[int] = set()
        self.done: dict[int, set[int]] = {}
        self.stuck: set[int] = set()
        self._round_changed: set[int] = set()
        self._added: dict[int, list[int]] = {}
        self._srg_grown: set[int] = set()
        for c in syndrome.support():
            self.forest.add(c)
            self.syn[c] = {c}
            # a lone failed check has no interior bits, so it starts invalid
            self.active.add(c)

    def _select_targets(self, step_no: int) -> list[int]:
        if self.strategy == "ag":
            return sorted(self.active)
        if self.strategy == "ssg":
            return [min(self.active, key=lambda r: (self.forest.size(r), r))]
        # random single growth: draw without replacement until every active
        # cluster has had a turn, so no cluster starves while another balloons
        candidates = sorted(r for r in self.active if r not in self._srg_grown)
        if not candidates:
            self._srg_grown.clear()
            candidates = sorted(self.active)
        pick = candidates[derive_seed(self.seed, step_no) % len(candidates)]
        self._srg_grown.add(pick)
        return [pick]

    def _union(self, ra: int, rb: int) -> int:
        big = self.forest.union(ra, rb)
        small = rb if big == ra else ra
        small_syn = self.syn.pop(small, None)
        if small_syn:
            self.syn[big] = self.syn.get(big, set()) | small_syn
        small_added = self._added.pop(small, None)
        if small_added:
            self._added.setdefault(big, []).extend(small_added)
        self.active.discard(small)
        self.done.pop(small, None)
        if self.done.pop(big, None) is not None:
            self.active.add(big)  # merged clusters must be re-validated
        self._round_changed.add(big)
        return big

    def _grow_round(self, targets: list[int]) -> None:
        forest = self.forest
        parent = forest.parent
        adj = self.adj
        self._round_changed = set()
        self._added = {}
        plans = [(r, list(forest.boundary[r])) for r in targets]
        for r, frontier in plans:
            root = forest.find(r)
            for v in frontier:
                for u in adj[v]:
                    if u not in parent:
                        forest.add(u)
                        root = self._union(root, u)
                        self._added.setdefault(root, []).append(u)
                    else:
                        ru = forest.find(u)
                        if ru != root:
                            root = self._union(root, ru)
        finals = {forest.find(r) for r, _ in plans}
        for root in finals:
            if root not in self._round_changed:
                # closed under neighbourhood and still invalid: growth is exhausted
                self.active.discard(root)
                self.stuck.add(root)
                continue
            self._refresh_boundary(root)
            est = self._validity(root)
            if est is None:
                self.active.add(root)
            else:
                self.active.discard(root)
                self.done[root] = est

    def _refresh_boundary(self, root: int) -> None:
        forest = self.forest
        members = forest.members(root)
        adj = self.adj
        candidates = forest.boundary[root] + self._added.get(root, [])
        fresh = []
        for v in dict.fromkeys(candidates):
            for u in adj[v]:
                if u not in members:
                    fresh.append(v)
                    break
        forest.boundary[root] = fresh

    def _validity(self, root: int) -> set[int] | None:
        syn = self.syn.get(root, set())
        if not syn:
            return set()
        forest = self.forest
        m = self.m
        members = forest.members(root)
        bound = set(forest.boundary[root])
        interior_bits = {v for v in members if v >= m and v not in bound}
        adj = self.adj
        for c in syn:
            if not any(b in interior_bits for b in adj[c]):
                return None
        est = _peel(adj, interior_bits, syn)
        if est is None and self.on_peel_failure == "solve":
            checks = {v for v in members if v < m}
            bits = {v - m for v in members if v >= m}
            sol = _solve_local(self.h, self.g, checks, bits, self.syndrome.bits)
            if sol is not None:
                est = {m + j for j in sol.support()}
        return est

    def estimate_bits(self) -> int:
        m = self.m
        bits = 0
        for est in self.done.values():
            for v in est:
                bits ^= 1 << (v - m)
        return bits


def decode_uf(
    code: CssCode,
    side: str,
    syndrome: BitVector,
    strategy: str = "ag",
    seed: int = 0,
    *,
    on_peel_failure: str = "grow",
    on_step: Callable[[int, UnionFindForest, frozenset, frozenset], None] | None = None,
) -> DecodeOutcome:
    """Decode a syndrome with union-find clusters and erasure peeling.

    `strategy` picks what grows in each step: every active cluster ("ag"),
    the single smallest one ("ssg", ties to the lowest root index), or one
    drawn without replacement from a stream keyed by (seed, step) ("srg",
    every active cluster gets a turn before any grows twice).  `on_peel_failure`
    decides what happens when a cluster looks finishable but peeling fails:
    keep growing it (default) or hand it to a local linear solve.  `on_step`
    is an instrumentation hook called after each step's bookkeeping with
    (step, forest, active roots, finished roots); forest elements use the
    integer encoding described in the module docstring.
    """
    if strategy not in GROWTH_STRATEGIES:
        raise ValueError(f"unknown growth strategy {strategy!r}, expected one of {GROWTH_STRATEGIES}")
    if on_peel_failure not in PEEL_FALLBACKS:
        raise ValueError(f"unknown peel fallback {on_peel_failure!r}, expected one of {PEEL_FALLBACKS}")
    h = code.check_matrix(side)
    if syndrome.n != h.rows:
        raise ValueError(f"syndrome length {syndrome.n} does not match check count {h.rows}")
    t0 = time.perf_counter_ns()
    state = _UfDecode(code, side, syndrome, strategy, seed, on_peel_failure)
    steps = 0
    while state.active:
        steps += 1
        state._grow_round(state._select_targets(steps))
        if on_step is not None:
            on_step(steps, state.forest, frozenset(state.active), frozenset(state.done))
    estimate = BitVector(code.n, state.estimate_bits())
    if state.stuck:
        return DecodeOutcome(
            estimate,
            steps,
            False,
            time.perf_counter_ns() - t0,
            diagnostic=f"{len(state.stuck)} cluster(s) exhausted growth without a local estimate",
        )
    return DecodeOutcome(estimate, steps, True, time.perf_counter_ns() - t0)
