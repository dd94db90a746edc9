"""Command-line interface: single decodes, error-rate sweeps, runtime benchmarks.

All decoding logic lives in the library; this module only parses flags,
loads codes and syndromes, and serializes results (JSON for single decodes,
CSV for sweeps and benchmarks).  CSV files are written to a temporary name
and renamed into place, so an interrupted run never leaves a truncated file.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import tempfile

from .code import CssCode, builtin, load_pcm, toric_code
from .decoder_general import decode_general
from .decoder_uf import GROWTH_STRATEGIES, decode_uf
from .gf2 import BitVector
from .simulator import DECODERS, SweepConfig, bench_runtime, run_sweep

SIM_COLUMNS = ("per", "samples", "failures", "block_error_rate", "word_error_rate", "mean_decode_ns", "decoder", "growth", "seed")
BENCH_COLUMNS = ("n", "decoder", "samples", "mean_decode_ns", "p")


def _add_code_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--code", help="built-in code name: steane or toric:L")
    parser.add_argument("--hx", help="path to the X parity-check matrix")
    parser.add_argument("--hz", help="path to the Z parity-check matrix")
    parser.add_argument("--pcm-format", choices=("dense", "alist"), default="dense", help="file format for --hx/--hz")


def _load_code(args) -> CssCode:
    if args.code and (args.hx or args.hz):
        raise ValueError("pass either --code or --hx/--hz, not both")
    if args.code:
        code = builtin(args.code)
        if not isinstance(code, CssCode):
            raise ValueError(f"{args.code!r} is not a CSS code; pass --hx/--hz instead")
        return code
    if not (args.hx and args.hz):
        raise ValueError("a code is required: --code NAME or both --hx and --hz")
    return CssCode(load_pcm(args.hx, args.pcm_format), load_pcm(args.hz, args.pcm_format))


def _read_syndrome(value: str, expected_len: int) -> BitVector:
    text = value
    if not (text and set(text) <= {"0", "1"}):
        with open(value, "r", encoding="ascii") as fh:
            text = "".join(fh.read().split())
        if not (text and set(text) <= {"0", "1"}):
            raise ValueError(f"syndrome file {value!r} must contain only 0/1 characters")
    if len(text) != expected_len:
        raise ValueError(f"syndrome has {len(text)} bits, the chosen side has {expected_len} checks")
    return BitVector.from_string(text)


def _write_csv(path: str, header, rows) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qldpcdec-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _threads(args) -> int:
    if args.threads is not None:
        if args.threads < 1:
            raise ValueError("--threads must be >= 1")
        return args.threads
    env = os.environ.get("QECC_THREADS")
    if env:
        value = int(env)
        if value < 1:
            raise ValueError("QECC_THREADS must be >= 1")
        return value
    return os.cpu_count() or 1


def _fmt(x: float) -> str:
    return format(x, ".12g")


def cmd_decode(args) -> int:
    code = _load_code(args)
    syndrome = _read_syndrome(args.syndrome, code.check_matrix(args.side).rows)
    if args.decoder == "general":
        out = decode_general(code, args.side, syndrome)
    else:
        out = decode_uf(code, args.side, syndrome, args.growth, args.seed)
    print(
        json.dumps(
            {
                "estimate": out.estimate.to01(),
                "converged": out.converged,
                "growth_steps": out.growth_steps,
                "decode_ns": out.elapsed_ns,
            }
        )
    )
    return 0


def cmd_simulate(args) -> int:
    code = _load_code(args)
    if args.per_points < 1:
        raise ValueError("--per-points must be >= 1")
    if not 0.0 <= args.per_start <= args.per_end <= 1.0:
        raise ValueError("need 0 <= --per-start <= --per-end <= 1")
    if args.per_points == 1 and args.per_start != args.per_end:
        raise ValueError("--per-points 1 needs --per-start == --per-end")
    if args.samples < 1:
        raise ValueError("--samples must be >= 1")
    if args.per_points == 1:
        per_values = (args.per_start,)
    else:
        step = (args.per_end - args.per_start) / (args.per_points - 1)
        per_values = tuple(args.per_start + i * step for i in range(args.per_points))
    cfg = SweepConfig(
        code=code,
        decoder=args.decoder,
        per_values=per_values,
        samples_per_point=args.samples,
        master_seed=args.seed,
        strategy=args.growth,
        side=args.side,
    )
    result = run_sweep(cfg, threads=_threads(args))
    rows = [
        (
            _fmt(pt.per),
            pt.samples,
            pt.failures,
            _fmt(pt.block_error_rate),
            _fmt(pt.word_error_rate),
            pt.mean_decode_ns,
            pt.decoder,
            pt.growth,
            pt.seed,
        )
        for pt in result.points
    ]
    _write_csv(args.out, SIM_COLUMNS, rows)
    return 0


def cmd_bench(args) -> int:
    if args.code != "toric":
        raise ValueError("bench supports --code toric only")
    sizes = [int(tok) for tok in args.sizes.split(",") if tok]
    if not sizes:
        raise ValueError("--sizes must list at least one lattice size")
    decoders = tuple(tok for tok in args.decoders.split(",") if tok)
    for d in decoders:
        if d not in DECODERS:
            raise ValueError(f"unknown decoder {d!r} in --decoders")
    if not decoders:
        raise ValueError("--decoders must list at least one decoder")
    codes = [toric_code(L) for L in sizes]
    points = bench_runtime(codes, decoders, args.per, args.samples, args.seed, side=args.side)
    rows = [(pt.n, pt.decoder, pt.samples, pt.mean_decode_ns, _fmt(pt.p)) for pt in points]
    _write_csv(args.out, BENCH_COLUMNS, rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qldpcdec", description="Decoders and Monte Carlo evaluation for quantum LDPC codes")
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decode", help="decode one syndrome, print JSON")
    _add_code_flags(d)
    d.add_argument("--syndrome", required=True, help="bit string like 010, or a path to a file of 0/1 characters")
    d.add_argument("--decoder", choices=DECODERS, default="general")
    d.add_argument("--growth", choices=GROWTH_STRATEGIES, default="ag")
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--side", choices=("x", "z"), default="x")
    d.set_defaults(func=cmd_decode)

    s = sub.add_parser("simulate", help="word-error-rate sweep, write CSV")
    _add_code_flags(s)
    s.add_argument("--per-start", type=float, required=True)
    s.add_argument("--per-end", type=float, required=True)
    s.add_argument("--per-points", type=int, required=True)
    s.add_argument("--samples", type=int, required=True)
    s.add_argument("--decoder", choices=DECODERS, default="general")
    s.add_argument("--growth", choices=GROWTH_STRATEGIES, default="ag")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--side", choices=("x", "z"), default="x")
    s.add_argument("--threads", type=int, default=None, help="worker count; default QECC_THREADS or all cores")
    s.set_defaults(func=cmd_simulate)

    b = sub.add_parser("bench", help="runtime benchmark over code sizes, write CSV")
    b.add_argument("--code", default="toric")
    b.add_argument("--sizes", required=True, help="comma-separated lattice sizes, e.g. 8,16,24")
    b.add_argument("--per", type=float, required=True)
    b.add_argument("--samples", type=int, required=True)
    b.add_argument("--decoders", default="general,ufh")
    b.add_argument("--seed", type=int, required=True)
    b.add_argument("--out", required=True)
    b.add_argument("--side", choices=("x", "z"), default="x")
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
