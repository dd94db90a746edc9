"""Monte Carlo harness: error sampling, decode trials, sweeps, benchmarks.

One trial samples an i.i.d. bit-flip error, computes its syndrome, decodes,
and asks whether error + estimate acts trivially (lies in the stabilizer
rowspace); the fraction of failing trials per error rate is the block error
rate, normalized to a word error rate via the code dimension.  Every trial
draws from a stream keyed by (master seed, point index, trial index), so
results do not depend on execution order or worker count.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .code import CssCode
from .decoder_general import DecodeOutcome, decode_general
from .decoder_uf import GROWTH_STRATEGIES, decode_uf
from .gf2 import BitMatrix, BitVector, RowSpace, mat_vec_mul
from .rng import derive_seed

DECODERS = ("general", "ufh")


@dataclass(frozen=True)
class NoiseModel:
    """Independent bit-flip noise: each data bit flips with probability per."""

    per: float

    def __post_init__(self):
        if not 0.0 <= self.per <= 1.0:
            raise ValueError(f"physical error rate must be in [0, 1], got {self.per}")


@dataclass(frozen=True)
class TrialRecord:
    success: bool
    converged: bool
    decode_ns: int


@dataclass(frozen=True)
class SweepConfig:
    code: CssCode
    decoder: str
    per_values: tuple[float, ...]
    samples_per_point: int
    master_seed: int
    strategy: str = "ag"
    side: str = "x"

    def __post_init__(self):
        object.__setattr__(self, "per_values", tuple(self.per_values))
        if self.decoder not in DECODERS:
            raise ValueError(f"unknown decoder {self.decoder!r}, expected one of {DECODERS}")
        if self.strategy not in GROWTH_STRATEGIES:
            raise ValueError(f"unknown growth strategy {self.strategy!r}")
        if self.samples_per_point < 1:
            raise ValueError("samples_per_point must be >= 1")
        if not self.per_values:
            raise ValueError("per_values must not be empty")
        for p in self.per_values:
            NoiseModel(p)


@dataclass(frozen=True)
class SweepPoint:
    per: float
    samples: int
    failures: int
    block_error_rate: float
    word_error_rate: float
    mean_decode_ns: int
    decoder: str
    growth: str
    seed: int


@dataclass(frozen=True)
class SweepResult:
    points: tuple[SweepPoint, ...]


@dataclass(frozen=True)
class BenchPoint:
    n: int
    decoder: str
    samples: int
    mean_decode_ns: int
    p: float


def sample_error(n: int, p: float, rng_stream: random.Random) -> BitVector:
    """n independent bits, each one with probability p, from the given stream."""
    NoiseModel(p)
    if p == 0.0:
        return BitVector(n)
    if p == 1.0:
        return BitVector(n, (1 << n) - 1)
    bits = 0
    rnd = rng_stream.random
    for i in range(n):
        if rnd() < p:
            bits |= 1 << i
    return BitVector(n, bits)


def wer(p_l: float, k: int) -> float:
    """Word error rate 1 - (1 - P_L)^(1/k)."""
    if k < 1:
        raise ValueError(f"code dimension must be >= 1, got {k}")
    if not 0.0 <= p_l <= 1.0:
        raise ValueError(f"block error rate must be in [0, 1], got {p_l}")
    return 1.0 - (1.0 - p_l) ** (1.0 / k)


def _decode(code: CssCode, decoder: str, side: str, syndrome: BitVector, strategy: str, seed: int) -> DecodeOutcome:
    if decoder == "general":
        return decode_general(code, side, syndrome)
    return decode_uf(code, side, syndrome, strategy, seed)


def run_trial(
    code: CssCode,
    decoder: str,
    p: float,
    trial_rng: random.Random,
    *,
    side: str = "x",
    strategy: str = "ag",
    stabilizer_space: RowSpace | None = None,
) -> TrialRecord:
    """One sample-decode-check trial; a decode that does not converge fails."""
    if decoder not in DECODERS:
        raise ValueError(f"unknown decoder {decoder!r}, expected one of {DECODERS}")
    error = sample_error(code.n, p, trial_rng)
    decoder_seed = trial_rng.getrandbits(63)
    syndrome = mat_vec_mul(code.check_matrix(side), error)
    out = _decode(code, decoder, side, syndrome, strategy, decoder_seed)
    residual = error ^ out.estimate
    space = stabilizer_space if stabilizer_space is not None else RowSpace(code.stabilizer_matrix(side))
    success = out.converged and space.contains(residual)
    return TrialRecord(success=success, converged=out.converged, decode_ns=out.elapsed_ns)


def _run_range(
    code: CssCode,
    space: RowSpace,
    cfg_fields: tuple,
    point_idx: int,
    p: float,
    start: int,
    stop: int,
) -> tuple[int, int]:
    decoder, strategy, side, master_seed = cfg_fields
    failures = 0
    decode_ns = 0
    for t in range(start, stop):
        rng = random.Random(derive_seed(master_seed, point_idx, t))
        rec = run_trial(code, decoder, p, rng, side=side, strategy=strategy, stabilizer_space=space)
        if not rec.success:
            failures += 1
        decode_ns += rec.decode_ns
    return failures, decode_ns


def _chunk_worker(payload) -> tuple[int, int]:
    hx_rows, hz_rows, n, cfg_fields, point_idx, p, start, stop = payload
    code = CssCode(
        BitMatrix(len(hx_rows), n, hx_rows),
        BitMatrix(len(hz_rows), n, hz_rows),
        validate=False,  # re-validating a code the parent already validated
    )
    space = RowSpace(code.stabilizer_matrix(cfg_fields[2]))
    return _run_range(code, space, cfg_fields, point_idx, p, start, stop)


def run_sweep(cfg: SweepConfig, threads: int = 1) -> SweepResult:
    """Run samples_per_point trials at every error rate in the config.

    The statistical fields of the result are a pure function of the config;
    `threads` only distributes trials over worker processes.
    """
    if threads < 1:
        raise ValueError("threads must be >= 1")
    k = cfg.code.k
    if k < 1:
        raise ValueError("sweep needs a code with at least one logical qubit")
    cfg_fields = (cfg.decoder, cfg.strategy, cfg.side, cfg.master_seed)
    samples = cfg.samples_per_point
    totals: list[tuple[int, int]] = []
    if threads == 1:
        space = RowSpace(cfg.code.stabilizer_matrix(cfg.side))
        for point_idx, p in enumerate(cfg.per_values):
            totals.append(_run_range(cfg.code, space, cfg_fields, point_idx, p, 0, samples))
    else:
        chunk = -(-samples // threads)
        jobs = []
        for point_idx, p in enumerate(cfg.per_values):
            for start in range(0, samples, chunk):
                jobs.append(
                    (
                        cfg.code.hx.row_bits,
                        cfg.code.hz.row_bits,
                        cfg.code.n,
                        cfg_fields,
                        point_idx,
                        p,
                        start,
                        min(start + chunk, samples),
                    )
                )
        per_point = {i: [0, 0] for i in range(len(cfg.per_values))}
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for job, (failures, decode_ns) in zip(jobs, pool.map(_chunk_worker, jobs)):
                per_point[job[4]][0] += failures
                per_point[job[4]][1] += decode_ns
        totals = [tuple(per_point[i]) for i in range(len(cfg.per_values))]

    growth = cfg.strategy if cfg.decoder == "ufh" else "-"
    points = []
    for (p, (failures, decode_ns)) in zip(cfg.per_values, totals):
        p_l = failures / samples
        points.append(
            SweepPoint(
                per=p,
                samples=samples,
                failures=failures,
                block_error_rate=p_l,
                word_error_rate=wer(p_l, k),
                mean_decode_ns=decode_ns // samples,
                decoder=cfg.decoder,
                growth=growth,
                seed=cfg.master_seed,
            )
        )
    return SweepResult(points=tuple(points))


def bench_runtime(
    codes,
    decoders,
    p: float,
    samples: int,
    seed: int,
    *,
    side: str = "x",
    strategy: str = "ag",
) -> tuple[BenchPoint, ...]:
    """Mean decode time per (code, decoder) pair at one error rate.

    Only the decode call is timed; sampling and syndrome computation stay
    outside the clock.  Error streams are keyed by (seed, code index,
    trial), so every decoder sees identical errors.
    """
    NoiseModel(p)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    points = []
    for si, code in enumerate(codes):
        h = code.check_matrix(side)
        for decoder in decoders:
            if decoder not in DECODERS:
                raise ValueError(f"unknown decoder {decoder!r}, expected one of {DECODERS}")
            total_ns = 0
            for t in range(samples):
                rng = random.Random(derive_seed(seed, si, t))
                error = sample_error(code.n, p, rng)
                decoder_seed = rng.getrandbits(63)
                syndrome = mat_vec_mul(h, error)
                out = _decode(code, decoder, side, syndrome, strategy, decoder_seed)
                total_ns += out.elapsed_ns
            points.append(BenchPoint(code.n, decoder, samples, total_ns // samples, p))
    return tuple(points)
