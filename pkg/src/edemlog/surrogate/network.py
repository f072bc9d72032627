"""A small 1D residual convolutional network implemented directly in numpy.

The input is treated as a length-22 sequence with one channel.  Each residual
block applies conv(k=3, same) -> ReLU, then conv(k=3, same) -> ReLU plus an
identity skip from the first activation.  The head applies a position-wise
dense layer with ReLU, flattens, and maps to the 13 outputs through a final
dense layer with ReLU.  Forward and backward passes are written out by hand
(no autodiff); everything runs in float64.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError, NumericError

SEQ_LENGTH = 22
OUTPUT_DIM = 13
KERNEL_SIZE = 3


@dataclass(frozen=True)
class NetworkArchitecture:
    """Filter widths per residual block plus the head width."""

    block_filters: tuple = (40, 80, 120, 160, 200)
    head_width: int = 20

    def __post_init__(self):
        object.__setattr__(self, "block_filters", tuple(int(f) for f in self.block_filters))
        if len(self.block_filters) == 0 or any(f < 1 for f in self.block_filters):
            raise ConfigError("block_filters must be a non-empty tuple of positive ints")
        if self.head_width < 1:
            raise ConfigError("head_width must be positive")

    def tensor_specs(self):
        """Ordered (name, shape) pairs defining the flat parameter layout."""
        specs = []
        c_in = 1
        for i, f in enumerate(self.block_filters):
            specs.append((f"block{i}.conv1.w", (KERNEL_SIZE, c_in, f)))
            specs.append((f"block{i}.conv1.b", (f,)))
            specs.append((f"block{i}.conv2.w", (KERNEL_SIZE, f, f)))
            specs.append((f"block{i}.conv2.b", (f,)))
            c_in = f
        t = self.head_width
        specs.append(("head.dense1.w", (c_in, t)))
        specs.append(("head.dense1.b", (t,)))
        specs.append(("head.dense2.w", (SEQ_LENGTH * t, OUTPUT_DIM)))
        specs.append(("head.dense2.b", (OUTPUT_DIM,)))
        return specs

    def param_count(self) -> int:
        return sum(int(np.prod(shape)) for _, shape in self.tensor_specs())

    def to_dict(self) -> dict:
        return {"block_filters": list(self.block_filters), "head_width": self.head_width}

    @classmethod
    def from_dict(cls, doc: dict) -> "NetworkArchitecture":
        return cls(
            block_filters=tuple(doc["block_filters"]), head_width=int(doc["head_width"])
        )


def desk_architecture() -> NetworkArchitecture:
    """Reduced-width variant for quick training runs and tests."""
    return NetworkArchitecture(block_filters=(8, 16, 24, 32, 40), head_width=8)


@dataclass
class NetworkParams:
    """All weights in one flat float64 vector plus named views into it."""

    architecture: NetworkArchitecture
    values: np.ndarray

    def __post_init__(self):
        self.values = np.ascontiguousarray(self.values, dtype=np.float64)
        expected = self.architecture.param_count()
        if self.values.shape != (expected,):
            raise ConfigError(
                f"parameter vector has {self.values.size} entries, expected {expected}"
            )
        views = {}
        offset = 0
        for name, shape in self.architecture.tensor_specs():
            size = int(np.prod(shape))
            views[name] = self.values[offset : offset + size].reshape(shape)
            offset += size
        self._views = views

    def tensor(self, name: str) -> np.ndarray:
        return self._views[name]


def init_params(architecture: NetworkArchitecture, seed: int = 0) -> NetworkParams:
    """He-style initialization: normal weights scaled by fan-in, zero biases.

    The output layer is the exception: zero weights and bias 1.0, the
    midpoint of the rescaled target range.  The head ends in a ReLU over
    nonnegative features, so with random full-scale weights an output unit
    whose weights come out net-negative has a negative pre-activation for
    every input — stuck at 0 with zero gradient, permanently dead, and its
    channel can never train.  Zero weights put every output exactly at the
    target midpoint with the ReLU active everywhere, so all channels start
    alive regardless of seed; the weight gradients are nonzero from the
    first step, so the layer trains normally.
    """
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy=seed)))
    values = np.empty(architecture.param_count())
    offset = 0
    for name, shape in architecture.tensor_specs():
        size = int(np.prod(shape))
        if name == "head.dense2.b":
            values[offset : offset + size] = 1.0
        elif name == "head.dense2.w" or name.endswith(".b"):
            values[offset : offset + size] = 0.0
        else:
            fan_in = int(np.prod(shape[:-1]))
            std = np.sqrt(2.0 / fan_in)
            values[offset : offset + size] = std * rng.standard_normal(size)
        offset += size
    return NetworkParams(architecture=architecture, values=values)


def _check_finite(x: np.ndarray, layer: str):
    # a single reduction is enough: any NaN/Inf makes the sum non-finite
    if not np.isfinite(np.sum(x)):
        raise NumericError(f"non-finite activations in layer {layer!r}")


_conv_pool = np.empty(0)


def _conv_same(x: np.ndarray, w: np.ndarray) -> np.ndarray:
    """x (n, L, c_in), w (3, c_in, c_out) -> (n, L, c_out), zero padding.

    The three taps are gathered into one (n*L, 3*c_in) workspace so the whole
    convolution is a single large GEMM; the workspace grows monotonically and
    is reused across calls (inference is single-threaded by design).
    """
    global _conv_pool
    n, L, cin = x.shape
    cout = w.shape[2]
    need = n * L * 3 * cin
    if _conv_pool.size < need:
        _conv_pool = np.empty(need)
    buf = _conv_pool[:need].reshape(n, L, 3, cin)
    buf[:, 0, 0, :] = 0.0
    buf[:, 1:, 0, :] = x[:, :-1, :]
    buf[:, :, 1, :] = x
    buf[:, :-1, 2, :] = x[:, 1:, :]
    buf[:, -1, 2, :] = 0.0
    wf = w.reshape(3 * cin, cout)
    return (buf.reshape(n * L, 3 * cin) @ wf).reshape(n, L, cout)


def _conv_same_backward(x: np.ndarray, w: np.ndarray, g: np.ndarray):
    """Gradients of _conv_same w.r.t. x and w given upstream g (n, L, c_out)."""
    gx = g @ w[1].T
    gx[:, :-1, :] += g[:, 1:, :] @ w[0].T
    gx[:, 1:, :] += g[:, :-1, :] @ w[2].T
    gw = np.empty_like(w)
    gw[1] = np.tensordot(x, g, axes=([0, 1], [0, 1]))
    gw[0] = np.tensordot(x[:, :-1, :], g[:, 1:, :], axes=([0, 1], [0, 1]))
    gw[2] = np.tensordot(x[:, 1:, :], g[:, :-1, :], axes=([0, 1], [0, 1]))
    return gx, gw


def _first_conv(h: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Single-input-channel conv done by broadcasting (GEMM with K=1 is waste)."""
    out = h * w[1, 0]
    out[:, 1:, :] += h[:, :-1, :] * w[0, 0]
    out[:, :-1, :] += h[:, 1:, :] * w[2, 0]
    return out


def _forward(params: NetworkParams, x: np.ndarray, keep_cache: bool):
    n = x.shape[0]
    h = x.reshape(n, SEQ_LENGTH, 1)
    cache = {"block_in": [], "act1": [], "pre1": [], "pre2": []} if keep_cache else None
    arch = params.architecture
    for i in range(len(arch.block_filters)):
        w1 = params.tensor(f"block{i}.conv1.w")
        b1 = params.tensor(f"block{i}.conv1.b")
        w2 = params.tensor(f"block{i}.conv2.w")
        b2 = params.tensor(f"block{i}.conv2.b")
        conv1 = _first_conv if w1.shape[1] == 1 else _conv_same
        pre1 = conv1(h, w1)
        pre1 += b1
        if keep_cache:
            a1 = np.maximum(pre1, 0.0)
        else:
            a1 = np.maximum(pre1, 0.0, out=pre1)
        pre2 = _conv_same(a1, w2)
        pre2 += b2
        _check_finite(pre2, f"block{i}.conv2")
        if keep_cache:
            cache["block_in"].append(h)
            cache["pre1"].append(pre1)
            cache["act1"].append(a1)
            cache["pre2"].append(pre2)
            h = np.maximum(pre2, 0.0) + a1
        else:
            h = np.maximum(pre2, 0.0, out=pre2)
            h += a1
    wd1 = params.tensor("head.dense1.w")
    bd1 = params.tensor("head.dense1.b")
    wd2 = params.tensor("head.dense2.w")
    bd2 = params.tensor("head.dense2.b")
    pre_h = h @ wd1 + bd1
    ah = np.maximum(pre_h, 0.0)
    flat = ah.reshape(n, -1)
    pre_out = flat @ wd2 + bd2
    out = np.maximum(pre_out, 0.0)
    _check_finite(out, "head.dense2")
    if keep_cache:
        cache.update(head_in=h, pre_h=pre_h, flat=flat, pre_out=pre_out)
    return out, cache


def network_forward(params: NetworkParams, x: np.ndarray) -> np.ndarray:
    """Predict (n, 13) rescaled outputs from (n, 22) rescaled inputs."""
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    if x.shape[1] != SEQ_LENGTH:
        raise ConfigError(f"network input must have {SEQ_LENGTH} columns")
    out, _ = _forward(params, x, keep_cache=False)
    return out


def l1_loss(pred: np.ndarray, target: np.ndarray):
    """Mean over the batch of the per-sample sum of absolute errors."""
    err = pred - target
    loss = float(np.mean(np.sum(np.abs(err), axis=1)))
    grad = np.sign(err) / err.shape[0]
    return loss, grad


def network_backward(params: NetworkParams, x: np.ndarray, target: np.ndarray):
    """L1 loss and its gradient w.r.t. the flat parameter vector."""
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    target = np.atleast_2d(np.asarray(target, dtype=np.float64))
    out, cache = _forward(params, x, keep_cache=True)
    loss, g_out = l1_loss(out, target)

    grads = NetworkParams(params.architecture, np.zeros_like(params.values))
    arch = params.architecture
    n = x.shape[0]

    g_pre_out = g_out * (cache["pre_out"] > 0.0)
    grads.tensor("head.dense2.b")[:] = g_pre_out.sum(axis=0)
    grads.tensor("head.dense2.w")[:] = cache["flat"].T @ g_pre_out
    g_flat = g_pre_out @ params.tensor("head.dense2.w").T
    g_ah = g_flat.reshape(n, SEQ_LENGTH, arch.head_width)
    g_pre_h = g_ah * (cache["pre_h"] > 0.0)
    grads.tensor("head.dense1.b")[:] = g_pre_h.sum(axis=(0, 1))
    grads.tensor("head.dense1.w")[:] = np.tensordot(
        cache["head_in"], g_pre_h, axes=([0, 1], [0, 1])
    )
    g_h = g_pre_h @ params.tensor("head.dense1.w").T

    for i in range(len(arch.block_filters) - 1, -1, -1):
        g_pre2 = g_h * (cache["pre2"][i] > 0.0)
        grads.tensor(f"block{i}.conv2.b")[:] = g_pre2.sum(axis=(0, 1))
        g_a1_conv, gw2 = _conv_same_backward(
            cache["act1"][i], params.tensor(f"block{i}.conv2.w"), g_pre2
        )
        grads.tensor(f"block{i}.conv2.w")[:] = gw2
        g_a1 = g_a1_conv + g_h  # identity skip
        g_pre1 = g_a1 * (cache["pre1"][i] > 0.0)
        grads.tensor(f"block{i}.conv1.b")[:] = g_pre1.sum(axis=(0, 1))
        g_h, gw1 = _conv_same_backward(
            cache["block_in"][i], params.tensor(f"block{i}.conv1.w"), g_pre1
        )
        grads.tensor(f"block{i}.conv1.w")[:] = gw1

    return loss, grads.values
