"""Evaluation and benchmark harness.

Covers per-channel coefficients of determination, crossplot export,
conversion of a measured-depth trajectory through a layer-cake earth model
into the fixed seven-layer model inputs, physics-vs-surrogate log synthesis,
and surrogate throughput measurement.
"""

from __future__ import annotations

import csv
import json
import multiprocessing
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DataError, DomainError
from .toolsim import (
    AHEAD_DISTANCE,
    CHANNEL_ORDER,
    ModelInput,
    ToolConfig,
    simulate,
)
from .surrogate import NetworkParams, Rescaler, predict

#: channels whose crossplots (and r^2) live in log10 space
LOG_CHANNELS = tuple(ch for ch in CHANNEL_ORDER if ch.startswith("RT_CRES"))

#: fictitious boundaries are stacked this far beyond the last real one
PAD_DISTANCE = 200.0


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class Trajectory:
    """Ordered well path stations: measured depth, TVD, inclination."""

    md: np.ndarray
    tvd: np.ndarray
    inclination: np.ndarray

    def __post_init__(self):
        for name in ("md", "tvd", "inclination"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        n = self.md.size
        if n < 2 or self.tvd.size != n or self.inclination.size != n:
            raise DataError("trajectory needs >= 2 aligned (md, tvd, inclination) stations")
        if np.any(np.diff(self.md) <= 0.0):
            raise DataError("trajectory md must be strictly increasing")
        if np.any(self.inclination <= 0.0) or np.any(self.inclination >= 180.0):
            raise DataError("trajectory inclination must lie in (0, 180) degrees")

    @property
    def n_stations(self) -> int:
        return self.md.size


def read_trajectory_csv(path) -> Trajectory:
    """Load a trajectory from a CSV with columns md, tvd, inclination."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != [
            "md",
            "tvd",
            "inclination",
        ]:
            raise DataError(
                f"{path}: expected header 'md,tvd,inclination', got {reader.fieldnames}"
            )
        rows = []
        for lineno, r in enumerate(reader, start=2):
            try:
                rows.append((float(r["md"]), float(r["tvd"]), float(r["inclination"])))
            except (TypeError, ValueError) as exc:
                raise DataError(f"{path}: bad trajectory row at line {lineno}: {exc}") from exc
    if not rows:
        raise DataError(f"{path}: no trajectory stations")
    arr = np.array(rows)
    return Trajectory(md=arr[:, 0], tvd=arr[:, 1], inclination=arr[:, 2])


def write_trajectory_csv(traj: Trajectory, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["md", "tvd", "inclination"])
        for i in range(traj.n_stations):
            writer.writerow(
                [repr(float(traj.md[i])), repr(float(traj.tvd[i])), repr(float(traj.inclination[i]))]
            )


@dataclass(frozen=True)
class EarthModel:
    """Layer-cake geology: interface tops in TVD plus per-layer resistivity.

    ``tops`` has one entry per interface; ``resistivities`` has one more
    entry than ``tops`` (the half-spaces above the first and below the last
    interface included).  ``dip`` tilts the layering by the given angle in
    the vertical plane of the well (positive dip raises the layering in the
    drilling direction).
    """

    tops: np.ndarray
    resistivities: np.ndarray
    dip: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "tops", np.asarray(self.tops, dtype=float))
        object.__setattr__(self, "resistivities", np.asarray(self.resistivities, dtype=float))
        if self.resistivities.size != self.tops.size + 1:
            raise DataError("earth model needs exactly one more resistivity than tops")
        if self.tops.size and np.any(np.diff(self.tops) <= 0.0):
            raise DataError("earth model tops must be strictly increasing")
        if np.any(self.resistivities <= 0.0):
            raise DataError("earth model resistivities must be positive")
        if not -90.0 < self.dip < 90.0:
            raise DataError("earth model dip must lie in (-90, 90) degrees")

    def to_json(self) -> str:
        return json.dumps(
            {
                "format": "edemlog-earth-model",
                "version": 1,
                "tops": self.tops.tolist(),
                "resistivities": self.resistivities.tolist(),
                "dip": self.dip,
            },
            indent=1,
        )

    @classmethod
    def from_json(cls, text: str) -> "EarthModel":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DataError(f"earth model is not valid JSON: {exc}") from exc
        if doc.get("format") != "edemlog-earth-model":
            raise DataError(f"not an earth model document (format {doc.get('format')!r})")
        if doc.get("version") != 1:
            raise DataError(f"unsupported earth model version {doc.get('version')!r}")
        return cls(
            tops=doc["tops"], resistivities=doc["resistivities"], dip=float(doc.get("dip", 0.0))
        )


# ---------------------------------------------------------------------------
# r^2 and crossplots


def _channel_transform(values: np.ndarray, channel: str) -> np.ndarray:
    if channel in LOG_CHANNELS:
        if np.any(values <= 0.0):
            raise DataError(f"channel {channel}: non-positive value in log-space comparison")
        return np.log10(values)
    return values


def r_squared(predictions, truths, channel: str) -> float:
    """Coefficient of determination 1 - SS_res/SS_tot for one channel.

    Apparent-resistivity channels are compared in log10 space; all other
    channels are compared as-is (r^2 is invariant under the affine network
    rescaling, so raw values give the rescaled-space answer).
    """
    if channel not in CHANNEL_ORDER:
        raise DataError(f"unknown channel {channel!r}")
    pred = np.asarray(predictions, dtype=float).ravel()
    true = np.asarray(truths, dtype=float).ravel()
    if pred.size != true.size:
        raise DataError("predictions and truths must have equal length")
    if pred.size < 2:
        raise DataError("r^2 needs at least 2 samples")
    pred = _channel_transform(pred, channel)
    true = _channel_transform(true, channel)
    ss_tot = float(np.sum((true - true.mean()) ** 2))
    if ss_tot == 0.0:
        raise DataError(f"channel {channel}: truths have zero variance, r^2 undefined")
    ss_res = float(np.sum((true - pred) ** 2))
    return 1.0 - ss_res / ss_tot


def crossplot_export(predictions, truths, out_dir) -> dict:
    """Write one (truth, prediction) CSV per channel plus a summary JSON.

    Returns the summary dictionary (per-channel r^2 and the comparison-space
    convention for each channel).
    """
    pred = np.atleast_2d(np.asarray(predictions, dtype=float))
    true = np.atleast_2d(np.asarray(truths, dtype=float))
    if pred.shape != true.shape or pred.shape[1] != len(CHANNEL_ORDER):
        raise DataError("predictions and truths must be aligned (n, 13) arrays")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    summary = {"n_samples": int(pred.shape[0]), "r_squared": {}, "comparison_space": {}}
    for j, ch in enumerate(CHANNEL_ORDER):
        with open(out_dir / f"{ch}.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["truth", "prediction"])
            for t, p in zip(true[:, j], pred[:, j]):
                writer.writerow([repr(float(t)), repr(float(p))])
        summary["r_squared"][ch] = r_squared(pred[:, j], true[:, j], ch)
        summary["comparison_space"][ch] = "log10" if ch in LOG_CHANNELS else "linear"
    (out_dir / "summary.json").write_text(json.dumps(summary, indent=1) + "\n")
    return summary


# ---------------------------------------------------------------------------
# trajectory -> model inputs


def _horizontal_displacement(traj: Trajectory) -> np.ndarray:
    """Cumulative horizontal offset of each station (trapezoid rule)."""
    sin_i = np.sin(np.radians(traj.inclination))
    seg = np.diff(traj.md) * 0.5 * (sin_i[:-1] + sin_i[1:])
    return np.concatenate([[0.0], np.cumsum(seg)])


def trajectory_to_inputs(
    traj: Trajectory, model: EarthModel, boundary_clearance: float = 1e-3
) -> list:
    """Fixed seven-layer model inputs for every trajectory station.

    For each station the layering is rotated by the model dip, the signed
    perpendicular offsets to the interfaces are computed, and a window of
    three interfaces above and three below is extracted; missing interfaces
    are invented at 200 m increments beyond the last real one with the
    outermost resistivity replicated.  Stations closer than
    ``boundary_clearance`` to an interface are rejected with an error listing
    the offending measured depths.
    """
    dip_r = np.radians(model.dip)
    cos_d, sin_d = np.cos(dip_r), np.sin(dip_r)
    x_off = _horizontal_displacement(traj)
    # perpendicular-to-layering coordinate of each station and interface
    zeta_station = traj.tvd * cos_d - x_off * sin_d
    zeta_tops = model.tops * cos_d

    theta_rx = traj.inclination - model.dip
    theta_ahead = (
        np.interp(traj.md + AHEAD_DISTANCE, traj.md, traj.inclination) - model.dip
    )

    offenders = []
    inputs = []
    for i in range(traj.n_stations):
        offsets = zeta_tops - zeta_station[i]
        if offsets.size and np.min(np.abs(offsets)) < boundary_clearance:
            offenders.append(traj.md[i])
            continue
        n_above = int(np.sum(offsets < 0.0))
        above = list(offsets[:n_above])
        below = list(offsets[n_above:])
        rho = list(model.resistivities)
        while len(above) < 3:
            anchor = above[0] if above else -PAD_DISTANCE
            above.insert(0, anchor - PAD_DISTANCE if above else anchor)
            rho.insert(0, rho[0])
        while len(below) < 3:
            anchor = below[-1] if below else PAD_DISTANCE
            below.append(anchor + PAD_DISTANCE if below else anchor)
            rho.append(rho[-1])
        b = np.array(above[-3:] + below[:3])
        rho_win = np.array(rho[len(above) - 3 : len(above) + 4])
        inputs.append(
            ModelInput(
                b=b,
                rho_par=rho_win,
                rho_perp=rho_win.copy(),
                theta_rx=float(theta_rx[i]),
                theta_ahead=float(theta_ahead[i]),
            )
        )
    if offenders:
        mds = ", ".join(f"{md:g}" for md in offenders[:10])
        more = "" if len(offenders) <= 10 else f" (+{len(offenders) - 10} more)"
        raise DomainError(
            f"{len(offenders)} station(s) fall within {boundary_clearance} m of a layer "
            f"interface; adjust md {mds}{more}"
        )
    return inputs


# ---------------------------------------------------------------------------
# log synthesis


_log_worker_state = {}


def _init_log_worker(config_json: str, input_arrays):
    _log_worker_state["config"] = ToolConfig.from_json(config_json)
    _log_worker_state["inputs"] = input_arrays


def _log_worker_task(i: int):
    p = ModelInput.from_array(_log_worker_state["inputs"][i])
    return simulate(p, _log_worker_state["config"]).m


def log_run(
    engine: str,
    traj: Trajectory,
    model: EarthModel,
    tool_config: ToolConfig = None,
    surrogate=None,
    threads: int = 1,
):
    """Synthesize a 13-channel log along a trajectory.

    ``engine`` selects "physics" (layered-medium simulation; needs
    ``tool_config``) or "surrogate" (needs ``surrogate=(params, rescaler)``
    or a loaded checkpoint result).  Returns ``(md, tvd, values)`` with
    ``values`` of shape (n_stations, 13) in station order.
    """
    if engine not in ("physics", "surrogate"):
        raise DataError(f"unknown engine {engine!r} (expected 'physics' or 'surrogate')")
    inputs = trajectory_to_inputs(traj, model)
    if engine == "physics":
        if tool_config is None:
            raise DataError("physics engine requires a tool config")
        if threads > 1:
            arrays = [p.to_array() for p in inputs]
            method = "fork" if "fork" in multiprocessing.get_all_start_methods() else None
            ctx = multiprocessing.get_context(method)
            with ctx.Pool(
                threads, initializer=_init_log_worker, initargs=(tool_config.to_json(), arrays)
            ) as pool:
                rows = pool.map(_log_worker_task, range(len(inputs)), chunksize=8)
        else:
            rows = [simulate(p, tool_config).m for p in inputs]
        values = np.array(rows)
    else:
        if surrogate is None:
            raise DataError("surrogate engine requires network parameters and a rescaler")
        if isinstance(surrogate, tuple):
            params, rescaler = surrogate
        else:
            params, rescaler = surrogate.params, surrogate.rescaler
        x = np.array([p.to_array() for p in inputs])
        values, _ = predict(params, rescaler, x)
    return traj.md.copy(), traj.tvd.copy(), values


def write_log_csv(md, tvd, values, path):
    """Write a log as CSV with columns md, tvd, then the 13 mnemonics."""
    values = np.atleast_2d(np.asarray(values, dtype=float))
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["md", "tvd"] + list(CHANNEL_ORDER))
        for i in range(values.shape[0]):
            writer.writerow(
                [repr(float(md[i])), repr(float(tvd[i]))] + [repr(float(v)) for v in values[i]]
            )


def read_log_csv(path):
    """Read a log CSV written by write_log_csv; returns (md, tvd, values)."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        expected = ["md", "tvd"] + list(CHANNEL_ORDER)
        if header != expected:
            raise DataError(f"{path}: unexpected log header {header}")
        rows = [[float(v) for v in row] for row in reader]
    if not rows:
        raise DataError(f"{path}: no log rows")
    arr = np.array(rows)
    return arr[:, 0], arr[:, 1], arr[:, 2:]


# ---------------------------------------------------------------------------
# throughput benchmark


def _random_valid_inputs(n: int, seed: int = 0) -> np.ndarray:
    """Synthetic (n, 22) inputs respecting the model-input invariants."""
    rng = np.random.default_rng(seed)
    thick = rng.uniform(0.3, 20.0, size=(n, 5))
    depth = rng.uniform(0.1, thick[:, 2] - 0.1)
    b = np.empty((n, 6))
    b[:, 2] = -depth
    b[:, 3] = thick[:, 2] - depth
    b[:, 1] = b[:, 2] - thick[:, 1]
    b[:, 0] = b[:, 1] - thick[:, 0]
    b[:, 4] = b[:, 3] + thick[:, 3]
    b[:, 5] = b[:, 4] + thick[:, 4]
    rho = 10.0 ** rng.uniform(0.0, np.log10(122.0), size=(n, 7))
    theta = rng.uniform(80.0, 92.0, size=(n, 1))
    return np.hstack([b, rho, rho, theta, theta])


def timing_benchmark(
    params: NetworkParams,
    rescaler: Rescaler,
    n: int = 100_000,
    batch_size: int = 1000,
    seed: int = 0,
) -> dict:
    """Measure batched surrogate throughput on synthetic valid inputs.

    One warm-up batch is excluded; per-batch wall times yield the median and
    95th-percentile milliseconds per position plus overall positions/second.
    """
    if n < 1000:
        raise DataError("timing benchmark needs n >= 1000")
    x = _random_valid_inputs(n, seed=seed)
    predict(params, rescaler, x[:batch_size])  # warm-up, excluded
    per_batch = []
    t_total0 = time.perf_counter()
    for lo in range(0, n, batch_size):
        chunk = x[lo : lo + batch_size]
        t0 = time.perf_counter()
        predict(params, rescaler, chunk)
        per_batch.append((time.perf_counter() - t0) / chunk.shape[0])
    total = time.perf_counter() - t_total0
    per_pos_ms = 1000.0 * np.array(per_batch)
    return {
        "n_positions": n,
        "batch_size": batch_size,
        "positions_per_second": n / total,
        # fastest observed batch: the hardware capability, robust to
        # scheduler noise on shared machines (same rationale as timeit's min)
        "positions_per_second_peak": 1000.0 / float(per_pos_ms.min()),
        "ms_per_position_median": float(np.median(per_pos_ms)),
        "ms_per_position_p95": float(np.percentile(per_pos_ms, 95.0)),
    }
