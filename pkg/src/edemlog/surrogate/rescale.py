"""Min-max rescaling of model inputs and outputs onto [0.5, 1.5].

Resistivity-like variables (the 14 input resistivities and the 4 apparent-
resistivity outputs) are mapped through log10 before the affine rescaling;
all other variables are rescaled linearly.  The map is fitted on the
training split only and extends affinely outside the fitted range (no
clamping), so evaluation may extrapolate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError, DataError
from ..dataset import CSV_INPUT_COLUMNS
from ..toolsim import CHANNEL_ORDER

#: input variables that are log10-transformed (the 14 resistivities)
INPUT_LOG_FLAGS = np.array([False] * 6 + [True] * 14 + [False] * 2)
#: output variables that are log10-transformed (the 4 apparent resistivities)
OUTPUT_LOG_FLAGS = np.array([ch.startswith("RT_CRES") for ch in CHANNEL_ORDER])

INPUT_NAMES = tuple(CSV_INPUT_COLUMNS)
OUTPUT_NAMES = CHANNEL_ORDER


@dataclass(frozen=True)
class Rescaler:
    """Per-variable affine (optionally log10) maps for inputs and outputs."""

    in_min: np.ndarray
    in_max: np.ndarray
    out_min: np.ndarray
    out_max: np.ndarray
    fitted_on: str = "train"

    def __post_init__(self):
        for name in ("in_min", "in_max", "out_min", "out_max"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if self.in_min.shape != (22,) or self.in_max.shape != (22,):
            raise ConfigError("input min/max must have 22 entries")
        if self.out_min.shape != (13,) or self.out_max.shape != (13,):
            raise ConfigError("output min/max must have 13 entries")
        for lo, hi, names in (
            (self.in_min, self.in_max, INPUT_NAMES),
            (self.out_min, self.out_max, OUTPUT_NAMES),
        ):
            bad = np.where(hi <= lo)[0]
            if bad.size:
                raise ConfigError(f"degenerate range (max <= min) for variable {names[bad[0]]!r}")

    def to_dict(self) -> dict:
        return {
            "in_min": self.in_min.tolist(),
            "in_max": self.in_max.tolist(),
            "out_min": self.out_min.tolist(),
            "out_max": self.out_max.tolist(),
            "in_log_flags": INPUT_LOG_FLAGS.tolist(),
            "out_log_flags": OUTPUT_LOG_FLAGS.tolist(),
            "fitted_on": self.fitted_on,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Rescaler":
        try:
            return cls(
                in_min=doc["in_min"],
                in_max=doc["in_max"],
                out_min=doc["out_min"],
                out_max=doc["out_max"],
                fitted_on=doc.get("fitted_on", "train"),
            )
        except KeyError as exc:
            raise DataError(f"rescaler document missing key: {exc}") from exc


def _transform(x: np.ndarray, log_flags: np.ndarray, names) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = x.copy()
    flagged = x[..., log_flags]
    if np.any(flagged <= 0.0):
        idx = np.argwhere(flagged <= 0.0)[0]
        var = np.where(log_flags)[0][idx[-1]]
        row = int(idx[0]) if x.ndim == 2 else 0
        raise DataError(
            f"non-positive value for log-scaled variable {names[var]!r} at row {row}"
        )
    out[..., log_flags] = np.log10(flagged)
    return out


def fit_rescaler(inputs: np.ndarray, outputs: np.ndarray, fitted_on: str = "train") -> Rescaler:
    """Fit per-variable min/max on (n, 22) inputs and (n, 13) outputs."""
    inputs = np.atleast_2d(np.asarray(inputs, dtype=float))
    outputs = np.atleast_2d(np.asarray(outputs, dtype=float))
    if inputs.shape[1:] != (22,) or outputs.shape[1:] != (13,):
        raise DataError("expected (n, 22) inputs and (n, 13) outputs")
    if inputs.shape[0] == 0:
        raise DataError("cannot fit a rescaler on an empty split")
    ti = _transform(inputs, INPUT_LOG_FLAGS, INPUT_NAMES)
    to = _transform(outputs, OUTPUT_LOG_FLAGS, OUTPUT_NAMES)
    return Rescaler(
        in_min=ti.min(axis=0),
        in_max=ti.max(axis=0),
        out_min=to.min(axis=0),
        out_max=to.max(axis=0),
        fitted_on=fitted_on,
    )


def _apply(x, lo, hi, log_flags, names, direction):
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != lo.shape[0]:
        raise DataError(f"dimension mismatch: got {x.shape[-1]}, expected {lo.shape[0]}")
    if direction == "forward":
        t = _transform(x, log_flags, names)
        return 0.5 + (t - lo) / (hi - lo)
    if direction == "inverse":
        t = lo + (x - 0.5) * (hi - lo)
        out = t.copy()
        out[..., log_flags] = 10.0 ** t[..., log_flags]
        return out
    raise DataError(f"unknown direction {direction!r}")


def rescale_inputs(x, rescaler: Rescaler, direction: str = "forward") -> np.ndarray:
    """Map 22-vectors (or batches) between physical and network space."""
    return _apply(x, rescaler.in_min, rescaler.in_max, INPUT_LOG_FLAGS, INPUT_NAMES, direction)


def rescale_outputs(y, rescaler: Rescaler, direction: str = "forward") -> np.ndarray:
    """Map 13-vectors (or batches) between physical and network space."""
    return _apply(y, rescaler.out_min, rescaler.out_max, OUTPUT_LOG_FLAGS, OUTPUT_NAMES, direction)
