"""Decoders and a Monte Carlo evaluation harness for quantum LDPC codes."""

from .code import (
    BIT,
    CHECK,
    CssCode,
    PcmFormatError,
    TannerGraph,
    VertexId,
    bit_vertex,
    builtin,
    check_vertex,
    hamming_matrix,
    load_pcm,
    new_css,
    steane_code,
    toric_code,
    write_pcm,
)
from .decoder_general import (
    Cluster,
    DecodeOutcome,
    decode_general,
    grow_cluster,
    is_valid_cluster,
    local_correction,
)
from .decoder_uf import (
    GROWTH_STRATEGIES,
    UnionFindForest,
    check_validity_heuristic,
    decode_uf,
    peel_erasure,
)
from .gf2 import (
    BitMatrix,
    BitVector,
    RowSpace,
    in_rowspace,
    mat_mat_mul,
    mat_vec_mul,
    rank,
    solve,
)
from .simulator import (
    DECODERS,
    BenchPoint,
    NoiseModel,
    SweepConfig,
    SweepPoint,
    SweepResult,
    TrialRecord,
    bench_runtime,
    run_sweep,
    run_trial,
    sample_error,
    wer,
)

__version__ = "0.1.0"

__all__ = [
    "BIT",
    "CHECK",
    "BenchPoint",
    "BitMatrix",
    "BitVector",
    "Cluster",
    "CssCode",
    "DECODERS",
    "DecodeOutcome",
    "GROWTH_STRATEGIES",
    "NoiseModel",
    "PcmFormatError",
    "RowSpace",
    "SweepConfig",
    "SweepPoint",
    "SweepResult",
    "TannerGraph",
    "TrialRecord",
    "UnionFindForest",
    "VertexId",
    "bench_runtime",
    "bit_vertex",
    "builtin",
    "check_validity_heuristic",
    "check_vertex",
    "decode_general",
    "decode_uf",
    "grow_cluster",
    "hamming_matrix",
    "in_rowspace",
    "is_valid_cluster",
    "load_pcm",
    "local_correction",
    "mat_mat_mul",
    "mat_vec_mul",
    "new_css",
    "peel_erasure",
    "rank",
    "run_sweep",
    "run_trial",
    "sample_error",
    "solve",
    "steane_code",
    "toric_code",
    "wer",
    "write_pcm",
    "__version__",
]
