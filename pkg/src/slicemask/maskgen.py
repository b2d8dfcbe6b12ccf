"""Token-level attention masks derived from statement masks.

A row belongs to a token, a column to the tokens it may attend to.  Token
``i`` owned by statement ``m`` may attend to token ``j`` exactly when
``j``'s owning statement sits in ``m``'s statement mask.  Tokens outside
any statement (method signatures, class braces, specials) get full rows
and full columns, and the diagonal is always forced on, so no row can end
up empty.

The masked fraction is measured over leaf-token positions (before subword
expansion) so the statistic does not depend on the downstream tokenizer.
"""

import hashlib
import json
import struct
from dataclasses import dataclass, field

from .errors import ConfigError, MapMismatch, MaskMismatch
from .frontend import CodeSnippet
from .backslice import StatementMask

VALID_VIEWS = ("ast", "cfg", "dfg")
STRATEGY_ALL = "all"
STRATEGY_ALTERNATE = "alternate"

_MAGIC = b"CVAM"
_FORMAT_VERSION = 1


@dataclass(frozen=True)
class MaskConfig:
    views: tuple[str, ...] = ("ast", "dfg")
    last_def: bool = False
    last_use: bool = False
    mask_limit: float = 0.8
    layer_strategy: str = STRATEGY_ALL
    special_token_policy: str = "full"

    def validate(self) -> "MaskConfig":
        if not self.views:
            raise ConfigError("view set must not be empty")
        bad = [v for v in self.views if v not in VALID_VIEWS]
        if bad:
            raise ConfigError(f"unknown views: {bad}")
        if len(set(self.views)) != len(self.views):
            raise ConfigError("duplicate views")
        if not (0.0 < self.mask_limit <= 1.0):
            raise ConfigError(f"mask_limit must be in (0, 1], got {self.mask_limit}")
        if self.layer_strategy not in (STRATEGY_ALL, STRATEGY_ALTERNATE):
            raise ConfigError(f"unknown layer strategy: {self.layer_strategy!r}")
        if self.special_token_policy != "full":
            raise ConfigError(f"unknown special token policy: {self.special_token_policy!r}")
        return self

    def canonical(self) -> dict:
        return {
            "views": sorted(self.views),
            "last_def": self.last_def,
            "last_use": self.last_use,
            "mask_limit": self.mask_limit,
            "layer_strategy": self.layer_strategy,
            "special_token_policy": self.special_token_policy,
        }

    def digest(self) -> str:
        blob = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class SubwordMap:
    counts: tuple[int, ...]
    prefix: int = 0
    suffix: int = 0

    def validate(self) -> "SubwordMap":
        if any(c < 1 for c in self.counts):
            raise MapMismatch("every leaf token must expand to at least one piece")
        if self.prefix < 0 or self.suffix < 0:
            raise MapMismatch("special token counts must be non-negative")
        return self


class AttentionMask:
    """Sparse boolean N x N mask as row-indexed allowed-column sets."""

    def __init__(
        self,
        n: int,
        rows: list[frozenset[int]],
        config: MaskConfig | None = None,
        fallback: bool = False,
    ):
        if len(rows) != n:
            raise MaskMismatch(f"expected {n} rows, got {len(rows)}")
        self.n = n
        self.rows = rows
        self.config = config
        self.fallback = fallback

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AttentionMask)
            and self.n == other.n
            and self.rows == other.rows
            and self.fallback == other.fallback
        )

    def allowed(self, i: int, j: int) -> bool:
        return j in self.rows[i]

    @property
    def ones(self) -> int:
        return sum(len(r) for r in self.rows)

    @property
    def density(self) -> float:
        return self.ones / float(self.n * self.n)

    @property
    def masked_fraction(self) -> float:
        return 1.0 - self.density

    def to_dense(self):
        import numpy as np

        out = np.zeros((self.n, self.n), dtype=np.float64)
        for i, row in enumerate(self.rows):
            for j in row:
                out[i, j] = 1.0
        return out

    @classmethod
    def full(cls, n: int, config: MaskConfig | None = None, fallback: bool = False):
        everything = frozenset(range(n))
        return cls(n, [everything] * n, config=config, fallback=fallback)


def attention_gen(
    snippet: CodeSnippet,
    masks: list[StatementMask],
    config: MaskConfig | None = None,
) -> AttentionMask:
    """Token-level mask from per-statement masks (leaf-token granularity)."""
    n = len(snippet.tokens)
    stmt_ids = {s.id for s in snippet.statements}
    members_of: dict[int, frozenset[int]] = {}
    for m in masks:
        if m.seed not in stmt_ids:
            raise MaskMismatch(f"mask seed {m.seed} is not a statement of this snippet")
        extra = m.members - stmt_ids
        if extra:
            raise MaskMismatch(f"mask members outside the statement table: {sorted(extra)}")
        members_of[m.seed] = m.members
    missing = stmt_ids - set(members_of)
    if missing:
        raise MaskMismatch(f"masks missing for statements: {sorted(missing)}")

    direct_tokens = {s.id: s.direct_token_ids for s in snippet.statements}
    unowned = frozenset(
        t.index for t in snippet.tokens if t.owner_statement is None
    )

    row_for_stmt: dict[int, frozenset[int]] = {}
    for sid, members in members_of.items():
        cols: set[int] = set(unowned)
        for member in members:
            cols.update(direct_tokens[member])
        row_for_stmt[sid] = frozenset(cols)

    full_row = frozenset(range(n))
    rows: list[frozenset[int]] = []
    for tok in snippet.tokens:
        if tok.owner_statement is None:
            rows.append(full_row)
        else:
            base = row_for_stmt[tok.owner_statement]
            rows.append(base if tok.index in base else base | {tok.index})
    return AttentionMask(n, rows, config=config)


def apply_mask_limit(mask: AttentionMask, limit: float) -> AttentionMask:
    """Replace the mask by full attention when it masks out too much."""
    if not (0.0 < limit <= 1.0):
        raise ConfigError(f"mask limit must be in (0, 1], got {limit}")
    if mask.masked_fraction > limit:
        return AttentionMask.full(mask.n, config=mask.config, fallback=True)
    return mask


def expand_subwords(mask: AttentionMask, submap: SubwordMap) -> AttentionMask:
    """Expand leaf-token positions into subword blocks plus special slots."""
    submap.validate()
    if len(submap.counts) != mask.n:
        raise MapMismatch(
            f"map covers {len(submap.counts)} tokens, mask has {mask.n}"
        )
    starts: list[int] = []
    pos = submap.prefix
    for c in submap.counts:
        starts.append(pos)
        pos += c
    total = pos + submap.suffix
    full_row = frozenset(range(total))

    specials = list(range(submap.prefix)) + list(range(pos, total))
    col_blocks: list[frozenset[int]] = [
        frozenset(range(starts[j], starts[j] + submap.counts[j])) for j in range(mask.n)
    ]

    rows: list[frozenset[int]] = [full_row] * submap.prefix
    for i in range(mask.n):
        cols: set[int] = set(specials)
        for j in mask.rows[i]:
            cols.update(col_blocks[j])
        row = frozenset(cols)
        rows.extend([row] * submap.counts[i])
    rows.extend([full_row] * submap.suffix)
    return AttentionMask(total, rows, config=mask.config, fallback=mask.fallback)


def serialize_mask(mask: AttentionMask) -> bytes:
    """Compressed-sparse-row byte layout, bit-exact across platforms.

    header: magic, version u32, flags u32 (bit0 = fallback), n u64, nnz u64,
    density f64, config digest (32 raw bytes, zeros when absent);
    then (n+1) u64 row offsets and nnz u32 column indices, little-endian.
    """
    offsets = [0]
    cols: list[int] = []
    for row in mask.rows:
        cols.extend(sorted(row))
        offsets.append(len(cols))
    digest = bytes.fromhex(mask.config.digest()) if mask.config else b"\x00" * 32
    header = _MAGIC + struct.pack(
        "<IIQQd", _FORMAT_VERSION, 1 if mask.fallback else 0, mask.n, len(cols), mask.density
    ) + digest
    body = struct.pack(f"<{len(offsets)}Q", *offsets)
    body += struct.pack(f"<{len(cols)}I", *cols)
    return header + body


def deserialize_mask(blob: bytes) -> AttentionMask:
    if blob[:4] != _MAGIC:
        raise MaskMismatch("not a serialized attention mask")
    version, flags, n, nnz, _density = struct.unpack_from("<IIQQd", blob, 4)
    if version != _FORMAT_VERSION:
        raise MaskMismatch(f"unsupported mask format version {version}")
    off = 4 + struct.calcsize("<IIQQd") + 32
    offsets = struct.unpack_from(f"<{n + 1}Q", blob, off)
    off += (n + 1) * 8
    cols = struct.unpack_from(f"<{nnz}I", blob, off)
    rows = [
        frozenset(cols[offsets[i]:offsets[i + 1]]) for i in range(n)
    ]
    return AttentionMask(n, rows, fallback=bool(flags & 1))


def mask_sidecar(mask: AttentionMask, extra: dict | None = None) -> dict:
    """Audit record stored next to the binary mask."""
    doc = {
        "n": mask.n,
        "ones": mask.ones,
        "masked_fraction": mask.masked_fraction,
        "fallback": mask.fallback,
    }
    if mask.config is not None:
        doc["config"] = mask.config.canonical()
        doc["config_digest"] = mask.config.digest()
    if extra:
        doc.update(extra)
    return doc
