"""Minimal masked self-attention stack validating mask-application semantics.

Single head, float64, deterministic weights from a seed.  The mask is
applied before row normalization: logits at disallowed positions get a
-1e9 offset, which realizes "zero weight at masked positions" while every
attention row stays a probability distribution.  The literal
multiply-after-softmax reading (which breaks row stochasticity) is kept
behind ``hadamard_post`` for comparison; it is never the default.

Under the alternate schedule, masking starts at layer 0 (even layers
masked, odd layers free).
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DimensionMismatch
from .maskgen import STRATEGY_ALL, STRATEGY_ALTERNATE, AttentionMask

_NEG_BIG = 1e9


@dataclass(frozen=True)
class ToyEncoderConfig:
    layers: int = 2
    model_dim: int = 8
    layer_strategy: str = STRATEGY_ALL
    seed: int = 0
    heads: int = 1
    hadamard_post: bool = False

    def validate(self) -> "ToyEncoderConfig":
        if self.layers < 1:
            raise ConfigError("need at least one layer")
        if self.model_dim < 2:
            raise ConfigError("model_dim must be >= 2")
        if self.heads != 1:
            raise ConfigError("only single-head attention is implemented")
        if self.layer_strategy not in (STRATEGY_ALL, STRATEGY_ALTERNATE):
            raise ConfigError(f"unknown layer strategy: {self.layer_strategy!r}")
        return self


@dataclass
class AttentionTrace:
    layers: list[np.ndarray] = field(default_factory=list)
    mask_applied: list[bool] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "mask_applied": list(self.mask_applied),
            "attention": [m.tolist() for m in self.layers],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def strategy_schedule(layers: int, strategy: str) -> list[bool]:
    """Which layers receive the mask."""
    if layers < 1:
        raise ConfigError("need at least one layer")
    if strategy == STRATEGY_ALL:
        return [True] * layers
    if strategy == STRATEGY_ALTERNATE:
        return [i % 2 == 0 for i in range(layers)]
    raise ConfigError(f"unknown layer strategy: {strategy!r}")


def _weights(cfg: ToyEncoderConfig) -> list[tuple[np.ndarray, np.ndarray, np.ndarray]]:
    rng = np.random.default_rng(cfg.seed)
    d = cfg.model_dim
    scale = 1.0 / np.sqrt(d)
    return [
        tuple(rng.normal(0.0, scale, size=(d, d)) for _ in range(3))
        for _ in range(cfg.layers)
    ]


def _softmax_rows(s: np.ndarray) -> np.ndarray:
    shifted = s - s.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def forward(
    inputs: np.ndarray, mask: AttentionMask, cfg: ToyEncoderConfig
) -> tuple[np.ndarray, AttentionTrace]:
    cfg.validate()
    x = np.asarray(inputs, dtype=np.float64)
    if x.ndim != 2:
        raise DimensionMismatch("inputs must be an N x d matrix")
    n, d = x.shape
    if mask.n != n:
        raise DimensionMismatch(f"mask covers {mask.n} tokens, inputs have {n}")
    if d != cfg.model_dim:
        raise DimensionMismatch(f"inputs have dim {d}, config says {cfg.model_dim}")
    a = mask.to_dense()
    # the diagonal is forced upstream, so no row can be fully masked
    assert a.sum(axis=1).min() >= 1.0, "fully masked attention row"

    schedule = strategy_schedule(cfg.layers, cfg.layer_strategy)
    trace = AttentionTrace()
    for (wq, wk, wv), masked in zip(_weights(cfg), schedule):
        q = x @ wq
        k = x @ wk
        v = x @ wv
        s = (q @ k.T) / np.sqrt(d)
        if masked and not cfg.hadamard_post:
            s = s - (1.0 - a) * _NEG_BIG
        p = _softmax_rows(s)
        if masked and cfg.hadamard_post:
            p = p * a
        x = p @ v
        trace.layers.append(p)
        trace.mask_applied.append(masked)
    return x, trace


def _forward_with_cache(x0, a, cfg):
    schedule = strategy_schedule(cfg.layers, cfg.layer_strategy)
    cache = []
    x = x0
    for (wq, wk, wv), masked in zip(_weights(cfg), schedule):
        q = x @ wq
        k = x @ wk
        v = x @ wv
        s = (q @ k.T) / np.sqrt(x.shape[1])
        if masked and not cfg.hadamard_post:
            s = s - (1.0 - a) * _NEG_BIG
        p_soft = _softmax_rows(s)
        p = p_soft * a if (masked and cfg.hadamard_post) else p_soft
        cache.append((x, q, k, v, p_soft, p, masked, (wq, wk, wv)))
        x = p @ v
    return x, cache


def backward_inputs(
    inputs: np.ndarray, mask: AttentionMask, cfg: ToyEncoderConfig
) -> np.ndarray:
    """Analytic d(sum of outputs)/d(inputs) through the whole stack."""
    cfg.validate()
    x0 = np.asarray(inputs, dtype=np.float64)
    a = mask.to_dense()
    y, cache = _forward_with_cache(x0, a, cfg)
    g = np.ones_like(y)  # d(sum)/dY
    sqrt_d = np.sqrt(x0.shape[1])
    for x, q, k, v, p_soft, p, masked, (wq, wk, wv) in reversed(cache):
        dv = p.T @ g
        dp = g @ v.T
        if masked and cfg.hadamard_post:
            dp = dp * a
        # softmax backward, rowwise
        ds = p_soft * (dp - (dp * p_soft).sum(axis=1, keepdims=True))
        dq = ds @ k / sqrt_d
        dk = ds.T @ q / sqrt_d
        g = dq @ wq.T + dk @ wk.T + dv @ wv.T
    return g


def grad_check(
    inputs: np.ndarray,
    mask: AttentionMask,
    cfg: ToyEncoderConfig,
    step: float = 1e-4,
) -> float:
    """Max elementwise relative error between the analytic gradient of
    loss = sum(outputs) and central finite differences."""
    x = np.asarray(inputs, dtype=np.float64)
    analytic = backward_inputs(x, mask, cfg)
    numeric = np.zeros_like(x)
    for idx in np.ndindex(*x.shape):
        bump = np.zeros_like(x)
        bump[idx] = step
        hi, _ = forward(x + bump, mask, cfg)
        lo, _ = forward(x - bump, mask, cfg)
        numeric[idx] = (hi.sum() - lo.sum()) / (2.0 * step)
    scale = np.maximum(np.maximum(np.abs(analytic), np.abs(numeric)), 1e-6)
    return float((np.abs(analytic - numeric) / scale).max())
