"""Transfer entropy rate estimation from Lempel-Ziv complexity.

Symbolic sequences are parsed into production words; the word count yields
an entropy rate estimate, and differences of joint rates over delay
embeddings yield directed and net information transfer between series.
Includes coupled benchmark systems and a seeded sweep runner.
"""

from .lz import (
    ParseResult,
    SymbolSequence,
    entropy_rate_lz,
    lz76_parse,
    lz76_word_count,
)
from .embedding import (
    SOURCE_PAST,
    TARGET_PAST,
    TARGET_PRESENT,
    EmbeddingMatrix,
    build_joint_matrix,
    encode_extended_alphabet,
    target_submatrix,
)
from .ter import (
    TEREstimate,
    global_ter,
    joint_entropy_rate,
    redraw_source_rows,
    surrogate_ter,
    ter_directed,
)
from .preprocess import (
    AMICurve,
    ConstantSeriesWarning,
    DegenerateBinsWarning,
    LagSuggestion,
    RealSeries,
    auto_mutual_information,
    binarize_median,
    quantize_quantiles,
    suggest_embedding_dim,
    suggest_lag,
)
from .dynsys import (
    HENON_HENON,
    LORENZ_LORENZ,
    ROSSLER_LORENZ,
    SYSTEM_KINDS,
    SystemSpec,
    Trajectory,
    generate_flow_series,
    generate_trajectory,
    henon_coupled,
    integrate_dp45,
    lorenz_lorenz_rhs,
    rossler_lorenz_rhs,
)
from .sweep import (
    SummaryRow,
    SweepConfig,
    SweepRecord,
    read_records,
    run_sweep,
    split_seed,
    summarize,
    summary_path,
    write_summary,
)

__version__ = "0.1.0"

__all__ = [
    "ParseResult",
    "SymbolSequence",
    "entropy_rate_lz",
    "lz76_parse",
    "lz76_word_count",
    "SOURCE_PAST",
    "TARGET_PAST",
    "TARGET_PRESENT",
    "EmbeddingMatrix",
    "build_joint_matrix",
    "encode_extended_alphabet",
    "target_submatrix",
    "TEREstimate",
    "global_ter",
    "joint_entropy_rate",
    "redraw_source_rows",
    "surrogate_ter",
    "ter_directed",
    "AMICurve",
    "ConstantSeriesWarning",
    "DegenerateBinsWarning",
    "LagSuggestion",
    "RealSeries",
    "auto_mutual_information",
    "binarize_median",
    "quantize_quantiles",
    "suggest_embedding_dim",
    "suggest_lag",
    "HENON_HENON",
    "LORENZ_LORENZ",
    "ROSSLER_LORENZ",
    "SYSTEM_KINDS",
    "SystemSpec",
    "Trajectory",
    "generate_flow_series",
    "generate_trajectory",
    "henon_coupled",
    "integrate_dp45",
    "lorenz_lorenz_rhs",
    "rossler_lorenz_rhs",
    "SummaryRow",
    "SweepConfig",
    "SweepRecord",
    "read_records",
    "run_sweep",
    "split_seed",
    "summarize",
    "summary_path",
    "write_summary",
    "__version__",
]
