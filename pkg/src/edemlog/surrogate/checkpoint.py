"""Checkpoint serialization: a JSON manifest plus a raw float64 weight blob.

The manifest records the format version, architecture, rescaler, training
history, and a SHA-256 checksum of the blob.  Weights are stored as
little-endian float64 in tensor-spec order.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from ..errors import DataError
from .network import NetworkArchitecture, NetworkParams
from .rescale import Rescaler
from .training import EpochRecord, TrainConfig, TrainResult

FORMAT_NAME = "edemlog-checkpoint"
FORMAT_VERSION = 1

MANIFEST_NAME = "manifest.json"
WEIGHTS_NAME = "weights.bin"


def save_checkpoint(result: TrainResult, directory) -> Path:
    """Write manifest.json and weights.bin into ``directory``; returns it."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    blob = result.params.values.astype("<f8").tobytes()
    manifest = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "architecture": result.params.architecture.to_dict(),
        "rescaler": result.rescaler.to_dict(),
        "train_config": result.config.to_dict(),
        "best_epoch": result.best_epoch,
        "best_val_loss": result.best_val_loss,
        "history": [
            [r.epoch, r.train_loss, r.val_loss, r.wall_seconds] for r in result.history
        ],
        "n_parameters": int(result.params.values.size),
        "weights_sha256": hashlib.sha256(blob).hexdigest(),
        "weights_file": WEIGHTS_NAME,
    }
    (directory / WEIGHTS_NAME).write_bytes(blob)
    (directory / MANIFEST_NAME).write_text(json.dumps(manifest, indent=1) + "\n")
    return directory


def load_checkpoint(directory) -> TrainResult:
    """Load and validate a checkpoint directory written by save_checkpoint."""
    directory = Path(directory)
    manifest_path = directory / MANIFEST_NAME
    if not manifest_path.exists():
        raise DataError(f"checkpoint manifest not found: {manifest_path}")
    try:
        manifest = json.loads(manifest_path.read_text())
    except json.JSONDecodeError as exc:
        raise DataError(f"checkpoint manifest is not valid JSON: {exc}") from exc
    if manifest.get("format") != FORMAT_NAME:
        raise DataError(f"not a checkpoint manifest (format {manifest.get('format')!r})")
    if manifest.get("version") != FORMAT_VERSION:
        raise DataError(
            f"unsupported checkpoint version {manifest.get('version')!r} "
            f"(expected {FORMAT_VERSION})"
        )
    architecture = NetworkArchitecture.from_dict(manifest["architecture"])
    blob_path = directory / manifest.get("weights_file", WEIGHTS_NAME)
    if not blob_path.exists():
        raise DataError(f"checkpoint weight blob not found: {blob_path}")
    blob = blob_path.read_bytes()
    expected = architecture.param_count() * 8
    if len(blob) != expected:
        raise DataError(
            f"checkpoint weight blob is truncated or padded: "
            f"{len(blob)} bytes, expected {expected}"
        )
    digest = hashlib.sha256(blob).hexdigest()
    if digest != manifest.get("weights_sha256"):
        raise DataError("checkpoint weight blob fails its checksum")
    values = np.frombuffer(blob, dtype="<f8").astype(np.float64)
    params = NetworkParams(architecture=architecture, values=values)
    result = TrainResult(
        params=params,
        rescaler=Rescaler.from_dict(manifest["rescaler"]),
        config=TrainConfig.from_dict(manifest["train_config"]),
        history=[EpochRecord(*row) for row in manifest.get("history", [])],
        best_epoch=manifest.get("best_epoch", -1),
        best_val_loss=manifest.get("best_val_loss", float("inf")),
    )
    return result
