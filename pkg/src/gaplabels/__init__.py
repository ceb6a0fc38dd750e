"""Lossless per-token labeling of constituency trees with crossing branches.

The codec turns any tree over tokens 0..n-1, crossing branches
included, into one label per token and back, exactly.  Labels have
four parts: bracket level, lowest shared ancestor, unary chain, and a
permutation component available in six encodings.  Supporting modules
cover treebank and label-file IO, bracket scoring, corpus statistics,
corruption studies, baselines, random treebank generation, and
benchmarking; the `gaplabels` command exposes all of it.
"""

from ._backend import available_backends, get_backend, set_backend
from .codec import TokenLabel, decode_tree, encode_tree
from .contcodec import (
    FALLBACK_LABEL,
    ContinuousLabel,
    collapse_unary,
    decode_continuous,
    encode_continuous,
    expand_unary,
    join_chain,
    split_chain,
)
from .errors import (
    DiscbracketError,
    EvalAlignmentError,
    GapLabelsError,
    LabelFileError,
    TreeStructureError,
)
from .generate import GenParams, generate
from .harness import (
    BaselineModel,
    LabelStats,
    UnseenReport,
    baseline_fit,
    baseline_predict,
    corrupt,
    label_stats,
    unseen_report,
)
from .permcodec import (
    INV,
    NEXT,
    PermVariant,
    decode_perm,
    default_label,
    encode_perm,
    pos_simplifier,
    simplify_pos,
)
from .scoring import EvalParams, ScoreReport, score
from .tree import (
    ConstTree,
    Internal,
    Leaf,
    Permutation,
    Token,
    apply_permutation,
    block_degree,
    continuous_arrangement,
    is_continuous,
    yield_of,
)
from .treebank import (
    LabelRow,
    parse_discbracket,
    read_labels,
    read_treebank,
    rows_for_tree,
    write_discbracket,
    write_labels,
    write_treebank,
)

__version__ = "0.1.0"

__all__ = [
    "available_backends", "get_backend", "set_backend",
    "TokenLabel", "decode_tree", "encode_tree",
    "FALLBACK_LABEL", "ContinuousLabel", "collapse_unary",
    "decode_continuous", "encode_continuous", "expand_unary",
    "join_chain", "split_chain",
    "DiscbracketError", "EvalAlignmentError", "GapLabelsError",
    "LabelFileError", "TreeStructureError",
    "GenParams", "generate",
    "BaselineModel", "LabelStats", "UnseenReport",
    "baseline_fit", "baseline_predict", "corrupt",
    "label_stats", "unseen_report",
    "INV", "NEXT", "PermVariant", "decode_perm", "default_label",
    "encode_perm", "pos_simplifier", "simplify_pos",
    "EvalParams", "ScoreReport", "score",
    "ConstTree", "Internal", "Leaf", "Permutation", "Token",
    "apply_permutation", "block_degree", "continuous_arrangement",
    "is_continuous", "yield_of",
    "LabelRow", "parse_discbracket", "read_labels", "read_treebank",
    "rows_for_tree", "write_discbracket", "write_labels", "write_treebank",
    "__version__",
]
