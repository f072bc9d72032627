"""Residual-network surrogate for the tool response: rescaling, the network
itself with hand-written gradients, the training loop, and checkpoint I/O."""

from .rescale import Rescaler, fit_rescaler, rescale_inputs, rescale_outputs
from .network import (
    NetworkArchitecture,
    NetworkParams,
    desk_architecture,
    init_params,
    l1_loss,
    network_backward,
    network_forward,
)
from .training import AdamState, TrainConfig, TrainResult, adam_update, mean_l1, predict, train
from .checkpoint import load_checkpoint, save_checkpoint

__all__ = [
    "Rescaler",
    "fit_rescaler",
    "rescale_inputs",
    "rescale_outputs",
    "NetworkArchitecture",
    "NetworkParams",
    "desk_architecture",
    "init_params",
    "l1_loss",
    "network_backward",
    "network_forward",
    "AdamState",
    "TrainConfig",
    "TrainResult",
    "adam_update",
    "mean_l1",
    "predict",
    "train",
    "load_checkpoint",
    "save_checkpoint",
]
