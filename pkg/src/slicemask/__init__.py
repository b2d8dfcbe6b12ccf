"""slicemask: statement-level code views, backward slices and attention masks.

Pipeline, end to end: parse a (possibly broken) Java snippet into a
statement table, build AST / CFG / reaching-definitions DFG views over it,
compose any subset, take the backward closure from each statement to get
its context mask, translate those masks into a token-level boolean
attention mask, and either serialize it or feed it to the bundled numeric
reference encoder.
"""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    DimensionMismatch,
    EmptyInput,
    EmptySource,
    IoError,
    LengthMismatch,
    MapMismatch,
    MaskMismatch,
    MismatchedSnippet,
    MissingManifest,
    NotAStatement,
    SliceMaskError,
    UnknownLabel,
    UnknownNode,
    UnsupportedLanguage,
)
from .frontend import (
    CodeSnippet,
    HolderSet,
    LeafToken,
    Statement,
    default_holders,
    parse,
    token_table,
)
from .graphs import (
    EDGE_AST,
    EDGE_CFG,
    EDGE_DFG,
    EDGE_LAST_DEF,
    EDGE_LAST_USE,
    CodeViewGraph,
    compose,
    get_parents,
)
from .astview import build_ast_view
from .cfg import build_cfg
from .dataflow import DefUseFacts, build_dfg, compute_rda, statement_events
from .backslice import StatementMask, all_masks, backslice, render_line_mask
from .maskgen import (
    AttentionMask,
    MaskConfig,
    SubwordMap,
    apply_mask_limit,
    attention_gen,
    deserialize_mask,
    expand_subwords,
    serialize_mask,
)
from .attention import (
    AttentionTrace,
    ToyEncoderConfig,
    backward_inputs,
    forward,
    grad_check,
    strategy_schedule,
)
from .metrics import ClassificationReport, QueryRanking, classification_metrics, mrr
from .pipeline import (
    CorpusRecord,
    RunManifest,
    build_views,
    process_source,
    run_batch,
    stats,
)

__all__ = [
    "__version__",
    # errors
    "SliceMaskError",
    "UnsupportedLanguage",
    "EmptySource",
    "UnknownNode",
    "NotAStatement",
    "MismatchedSnippet",
    "MaskMismatch",
    "MapMismatch",
    "DimensionMismatch",
    "EmptyInput",
    "LengthMismatch",
    "UnknownLabel",
    "ConfigError",
    "IoError",
    "MissingManifest",
    # frontend
    "CodeSnippet",
    "Statement",
    "LeafToken",
    "HolderSet",
    "parse",
    "default_holders",
    "token_table",
    # graphs and views
    "CodeViewGraph",
    "compose",
    "get_parents",
    "build_ast_view",
    "build_cfg",
    "compute_rda",
    "build_dfg",
    "DefUseFacts",
    "statement_events",
    "EDGE_AST",
    "EDGE_CFG",
    "EDGE_DFG",
    "EDGE_LAST_DEF",
    "EDGE_LAST_USE",
    # slicing
    "StatementMask",
    "backslice",
    "all_masks",
    "render_line_mask",
    # masks
    "AttentionMask",
    "MaskConfig",
    "SubwordMap",
    "attention_gen",
    "apply_mask_limit",
    "expand_subwords",
    "serialize_mask",
    "deserialize_mask",
    # reference encoder
    "ToyEncoderConfig",
    "AttentionTrace",
    "forward",
    "backward_inputs",
    "grad_check",
    "strategy_schedule",
    # metrics
    "QueryRanking",
    "ClassificationReport",
    "mrr",
    "classification_metrics",
    # pipeline
    "CorpusRecord",
    "RunManifest",
    "build_views",
    "process_source",
    "run_batch",
    "stats",
]
