"""Minibatch training loop with Adam and validation-based early stopping."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError, DataError
from .network import NetworkArchitecture, NetworkParams, init_params, l1_loss, network_backward, network_forward
from .rescale import Rescaler, rescale_inputs, rescale_outputs


@dataclass(frozen=True)
class TrainConfig:
    batch_size: int = 512
    learning_rate: float = 0.001
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    max_epochs: int = 1000
    patience: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.batch_size < 1 or self.max_epochs < 1 or self.patience < 1:
            raise ConfigError("batch_size, max_epochs, and patience must be positive")
        if not (0.0 < self.learning_rate and 0.0 <= self.beta1 < 1.0 and 0.0 <= self.beta2 < 1.0):
            raise ConfigError("invalid Adam hyper-parameters")

    def to_dict(self) -> dict:
        return {
            "batch_size": self.batch_size,
            "learning_rate": self.learning_rate,
            "beta1": self.beta1,
            "beta2": self.beta2,
            "epsilon": self.epsilon,
            "max_epochs": self.max_epochs,
            "patience": self.patience,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "TrainConfig":
        return cls(**doc)


@dataclass
class AdamState:
    """First/second moment accumulators and the shared step counter."""

    m: np.ndarray
    v: np.ndarray
    step: int = 0

    @classmethod
    def zeros(cls, n: int) -> "AdamState":
        return cls(m=np.zeros(n), v=np.zeros(n), step=0)


def adam_update(values: np.ndarray, grads: np.ndarray, state: AdamState, config: TrainConfig):
    """One in-place Adam step with standard bias correction."""
    state.step += 1
    state.m *= config.beta1
    state.m += (1.0 - config.beta1) * grads
    state.v *= config.beta2
    state.v += (1.0 - config.beta2) * grads * grads
    m_hat = state.m / (1.0 - config.beta1**state.step)
    v_hat = state.v / (1.0 - config.beta2**state.step)
    values -= config.learning_rate * m_hat / (np.sqrt(v_hat) + config.epsilon)


@dataclass
class EpochRecord:
    epoch: int
    train_loss: float
    val_loss: float
    wall_seconds: float


@dataclass
class TrainResult:
    params: NetworkParams
    rescaler: Rescaler
    config: TrainConfig
    history: list = field(default_factory=list)
    best_epoch: int = -1
    best_val_loss: float = np.inf


def _as_arrays(samples):
    """Accept a list of Sample objects or a pre-built (X, Y) tuple."""
    if isinstance(samples, tuple) and len(samples) == 2:
        x, y = samples
        return np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    x = np.array([s.input.to_array() for s in samples])
    y = np.array([s.output.m for s in samples])
    return x, y


def mean_l1(params: NetworkParams, x: np.ndarray, y: np.ndarray, batch_size: int = 4096) -> float:
    """Validation-style mean L1 loss evaluated in chunks."""
    total = 0.0
    for lo in range(0, x.shape[0], batch_size):
        xb = x[lo : lo + batch_size]
        yb = y[lo : lo + batch_size]
        loss, _ = l1_loss(network_forward(params, xb), yb)
        total += loss * xb.shape[0]
    return total / x.shape[0]


def train(
    train_samples,
    val_samples,
    rescaler: Rescaler,
    architecture: NetworkArchitecture,
    config: TrainConfig,
    init: NetworkParams | None = None,
    progress=None,
) -> TrainResult:
    """Train on rescaled data; restore the best-validation weights at the end.

    ``train_samples``/``val_samples`` may be lists of dataset samples or raw
    (inputs, outputs) array pairs in physical units.  Training stops after
    ``patience`` epochs without a new validation minimum, or at ``max_epochs``.
    """
    x_tr, y_tr = _as_arrays(train_samples)
    x_va, y_va = _as_arrays(val_samples)
    if x_tr.shape[0] == 0 or x_va.shape[0] == 0:
        raise DataError("training and validation splits must be non-empty")
    x_tr = rescale_inputs(x_tr, rescaler)
    y_tr = rescale_outputs(y_tr, rescaler)
    x_va = rescale_inputs(x_va, rescaler)
    y_va = rescale_outputs(y_va, rescaler)

    params = init if init is not None else init_params(architecture, seed=config.seed)
    if params.architecture != architecture:
        raise ConfigError("initial parameters do not match the requested architecture")
    state = AdamState.zeros(params.values.size)
    result = TrainResult(params=params, rescaler=rescaler, config=config)
    best_values = params.values.copy()
    n = x_tr.shape[0]

    for epoch in range(config.max_epochs):
        t0 = time.perf_counter()
        rng = np.random.Generator(
            np.random.Philox(np.random.SeedSequence(entropy=config.seed, spawn_key=(epoch,)))
        )
        order = rng.permutation(n)
        epoch_loss = 0.0
        for lo in range(0, n, config.batch_size):
            idx = order[lo : lo + config.batch_size]
            loss, grads = network_backward(params, x_tr[idx], y_tr[idx])
            adam_update(params.values, grads, state, config)
            epoch_loss += loss * idx.size
        train_loss = epoch_loss / n
        val_loss = mean_l1(params, x_va, y_va)
        rec = EpochRecord(epoch, train_loss, val_loss, time.perf_counter() - t0)
        result.history.append(rec)
        if progress is not None:
            progress(rec)
        if val_loss < result.best_val_loss:
            result.best_val_loss = val_loss
            result.best_epoch = epoch
            best_values[:] = params.values
        elif epoch - result.best_epoch >= config.patience:
            break

    params.values[:] = best_values
    return result


def predict(
    params: NetworkParams,
    rescaler: Rescaler,
    inputs: np.ndarray,
    extrapolation_margin: float = 0.25,
):
    """Physical-unit predictions for (n, 22) physical-unit inputs.

    Returns ``(outputs, extrapolated)`` where ``extrapolated[i]`` is True when
    any rescaled input component of row i falls outside [0.5, 1.5] by more
    than ``extrapolation_margin``.
    """
    x = np.atleast_2d(np.asarray(inputs, dtype=float))
    xr = rescale_inputs(x, rescaler)
    flags = np.any((xr < 0.5 - extrapolation_margin) | (xr > 1.5 + extrapolation_margin), axis=1)
    yr = network_forward(params, xr)
    return rescale_outputs(yr, rescaler, direction="inverse"), flags
