"""Training-corpus generation: geologically consistent random earth models.

Three sampling regimes (generic log-uniform, alternating sand-shale with a
sand or shale middle layer, and a semi-degenerate variant that ties outer
layers), horn filtering of capped apparent resistivities, stratified
train/val/test splits, and CSV round-tripping.

Determinism contract: sample ``i`` of regime ``r`` draws from an independent
counter-based RNG stream keyed by ``(seed, r, i, retry)``, so the corpus is
bit-identical for any degree of parallelism.
"""

from __future__ import annotations

import csv
import json
import multiprocessing
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigError, DataError, SimulationError
from .toolsim import (
    CHANNEL_ORDER,
    MeasurementVector,
    ModelInput,
    ToolConfig,
    default_tool_config,
    simulate,
)

REGIMES = ("generic", "ss_sand", "ss_shale", "semidegenerate")

#: per-regime sample counts of the full published corpus (84,599 total)
PAPER_COUNTS = {
    "generic": 22469,
    "ss_sand": 25203,
    "ss_shale": 25289,
    "semidegenerate": 11638,
}

SPLITS = ("train", "val", "test")

CSV_INPUT_COLUMNS = (
    ["b%d" % i for i in range(1, 7)]
    + ["rhoh%d" % i for i in range(1, 8)]
    + ["rhov%d" % i for i in range(1, 8)]
    + ["theta_rx", "theta_ahead"]
)
CSV_COLUMNS = CSV_INPUT_COLUMNS + list(CHANNEL_ORDER) + ["regime", "split"]


def scaled_counts(total: int) -> dict:
    """Per-regime counts at the paper's proportions via largest remainder."""
    paper_total = sum(PAPER_COUNTS.values())
    quotas = {r: total * PAPER_COUNTS[r] / paper_total for r in REGIMES}
    counts = {r: int(np.floor(quotas[r])) for r in REGIMES}
    short = total - sum(counts.values())
    by_frac = sorted(REGIMES, key=lambda r: quotas[r] - counts[r], reverse=True)
    for r in by_frac[:short]:
        counts[r] += 1
    return counts


@dataclass(frozen=True)
class DatasetSpec:
    """Everything needed to regenerate a corpus deterministically."""

    counts: dict
    seed: int
    thickness_range: tuple = (0.3, 20.0)
    thickness_step: float = 0.1
    angle_range: tuple = (80.0, 92.0)
    generic_range: tuple = (1.0, 122.0)
    shale_range: tuple = (0.9, 4.1)
    sand_range: tuple = (49.4, 221.4)
    split_fractions: tuple = (0.8, 0.1, 0.1)
    tool_config: str = "default"  # 'default' or a path to a ToolConfig JSON

    def __post_init__(self):
        counts = {str(k): int(v) for k, v in self.counts.items()}
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "thickness_range", tuple(self.thickness_range))
        object.__setattr__(self, "angle_range", tuple(self.angle_range))
        object.__setattr__(self, "generic_range", tuple(self.generic_range))
        object.__setattr__(self, "shale_range", tuple(self.shale_range))
        object.__setattr__(self, "sand_range", tuple(self.sand_range))
        object.__setattr__(self, "split_fractions", tuple(float(f) for f in self.split_fractions))
        if set(counts) - set(REGIMES):
            raise ConfigError(f"unknown regimes in counts: {set(counts) - set(REGIMES)}")
        if any(v < 0 for v in counts.values()):
            raise ConfigError("counts must be nonnegative")
        for name in ("thickness_range", "angle_range", "generic_range", "shale_range", "sand_range"):
            lo, hi = getattr(self, name)
            if not (0.0 < lo < hi):
                raise ConfigError(f"{name} must be positive and increasing, got {(lo, hi)}")
        if abs(sum(self.split_fractions) - 1.0) > 1e-12 or len(self.split_fractions) != 3:
            raise ConfigError("split_fractions must be three values summing to 1")

    def to_json(self) -> str:
        doc = {
            "format": "edemlog-dataset-spec",
            "version": 1,
            "counts": self.counts,
            "seed": self.seed,
            "thickness_range": list(self.thickness_range),
            "thickness_step": self.thickness_step,
            "angle_range": list(self.angle_range),
            "generic_range": list(self.generic_range),
            "shale_range": list(self.shale_range),
            "sand_range": list(self.sand_range),
            "split_fractions": list(self.split_fractions),
            "tool_config": self.tool_config,
        }
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "DatasetSpec":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DataError(f"dataset spec: invalid JSON: {exc}") from exc
        if doc.get("format") != "edemlog-dataset-spec":
            raise DataError("dataset spec: missing or wrong 'format' marker")
        if doc.get("version") != 1:
            raise DataError(f"dataset spec: unsupported version {doc.get('version')!r}")
        kwargs = {k: v for k, v in doc.items() if k not in ("format", "version")}
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise DataError(f"dataset spec: malformed document: {exc}") from exc


@dataclass(frozen=True)
class Sample:
    """One simulated input-output pair with regime and split tags."""

    input: ModelInput
    output: MeasurementVector
    regime: str
    split: str = "unassigned"


def sample_stream(seed: int, regime: str, index: int, retry: int = 0) -> np.random.Generator:
    """The counter-based RNG stream for one (regime, sample, retry) triple."""
    key = (REGIMES.index(regime), index, retry)
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=key)))


def _draw_thickness(spec: DatasetSpec, rng: np.random.Generator) -> float:
    """Uniform on the 0.1 m grid of [0.3, 20.0] (inclusive endpoints)."""
    lo, hi = spec.thickness_range
    step = spec.thickness_step
    n = int(round((hi - lo) / step)) + 1
    return round(lo + step * int(rng.integers(0, n)), 10)


def _log_uniform(rng: np.random.Generator, lo: float, hi: float) -> float:
    return float(10.0 ** rng.uniform(np.log10(lo), np.log10(hi)))


def _assemble_geometry(spec: DatasetSpec, rng: np.random.Generator, rho: tuple) -> ModelInput:
    """Common tail of every sampler: thicknesses, tool position, angles."""
    t = [_draw_thickness(spec, rng) for _ in range(5)]  # layers 2..6 of 7
    theta = float(rng.uniform(*spec.angle_range))
    # tool sits uniformly inside the middle layer with 0.1 m margins
    depth_in_mid = float(rng.uniform(0.1, t[2] - 0.1))
    b3 = -depth_in_mid
    b4 = t[2] - depth_in_mid
    b = (b3 - t[1] - t[0], b3 - t[1], b3, b4, b4 + t[3], b4 + t[3] + t[4])
    return ModelInput(b=b, rho_par=rho, rho_perp=rho, theta_rx=theta, theta_ahead=theta)


def sample_generic(spec: DatasetSpec, rng: np.random.Generator) -> ModelInput:
    """Generic regime: all seven resistivities log-uniform on the wide range."""
    rho = tuple(_log_uniform(rng, *spec.generic_range) for _ in range(7))
    return _assemble_geometry(spec, rng, rho)


def sample_alternating(spec: DatasetSpec, center: str, rng: np.random.Generator) -> ModelInput:
    """Alternating sand-shale regime with the given middle-layer category.

    ``center='sand'``: seven independent alternating layers.  ``'shale'``:
    an effective five-layer model in seven slots — the two top layers share
    their resistivity, as do the two bottom layers.
    """
    if center not in ("sand", "shale"):
        raise ConfigError(f"center must be 'sand' or 'shale', got {center!r}")
    ranges = {"sand": spec.sand_range, "shale": spec.shale_range}

    def draw(cat):
        return _log_uniform(rng, *ranges[cat])

    if center == "sand":
        cats = ("shale", "sand", "shale", "sand", "shale", "sand", "shale")
        rho = tuple(draw(c) for c in cats)
    else:
        vals = [draw(c) for c in ("shale", "sand", "shale", "sand", "shale")]
        rho = (vals[0], vals[0], vals[1], vals[2], vals[3], vals[4], vals[4])
    return _assemble_geometry(spec, rng, rho)


def sample_semidegenerate(spec: DatasetSpec, rng: np.random.Generator) -> ModelInput:
    """Semi-degenerate regime: alternating base with tied outer layers.

    Starts from an alternating draw (middle-layer category split evenly),
    then overwrites 0-2 layers adjacent to the top with the top layer's
    resistivity and 0-2 adjacent to the bottom with the bottom layer's.
    The middle (logging) layer always keeps its independent resistivity.
    """
    center = "sand" if rng.integers(0, 2) == 0 else "shale"
    base = sample_alternating(spec, center, rng)
    rho = list(base.rho_par)
    k_top = int(rng.integers(0, 3))
    k_bot = int(rng.integers(0, 3))
    for j in range(1, 1 + k_top):
        rho[j] = rho[0]
    for j in range(5, 5 - k_bot, -1):
        rho[j] = rho[6]
    rho = tuple(rho)
    return replace(base, rho_par=rho, rho_perp=rho)


_SAMPLERS = {
    "generic": sample_generic,
    "ss_sand": lambda spec, rng: sample_alternating(spec, "sand", rng),
    "ss_shale": lambda spec, rng: sample_alternating(spec, "shale", rng),
    "semidegenerate": sample_semidegenerate,
}

_MAX_RETRIES = 64


def resolve_tool_config(spec: DatasetSpec) -> ToolConfig:
    """The ToolConfig a spec refers to ('default' or a JSON file path)."""
    if spec.tool_config == "default":
        return default_tool_config()
    with open(spec.tool_config) as fh:
        return ToolConfig.from_json(fh.read())


def generate_sample(spec: DatasetSpec, config: ToolConfig, regime: str, index: int):
    """Simulate one sample; resample on failure. Returns (Sample, retries)."""
    for retry in range(_MAX_RETRIES):
        rng = sample_stream(spec.seed, regime, index, retry)
        p = _SAMPLERS[regime](spec, rng)
        try:
            mv = simulate(p, config)
        except SimulationError:
            continue
        return Sample(input=p, output=mv, regime=regime), retry
    raise SimulationError(
        f"regime {regime} sample {index}: no simulable draw in {_MAX_RETRIES} attempts"
    )


_worker_state = {}


def _init_worker(spec_json: str, config_json):
    _worker_state["spec"] = DatasetSpec.from_json(spec_json)
    if config_json is None:
        _worker_state["config"] = default_tool_config()
    else:
        _worker_state["config"] = ToolConfig.from_json(config_json)


def _worker_task(task):
    regime, index = task
    sample, retries = generate_sample(_worker_state["spec"], _worker_state["config"], regime, index)
    return (
        sample.input.to_array(),
        sample.output.m,
        sample.output.capped_flags,
        regime,
        retries,
    )


def assemble_dataset(spec: DatasetSpec, config: ToolConfig = None, threads: int = 1):
    """Generate the full corpus. Returns (samples, resample_count).

    Output is bit-identical for any ``threads`` value: every sample draws
    from its own counter-based stream and results are ordered by
    (regime, index).
    """
    if config is None:
        config = resolve_tool_config(spec)
    tasks = [(r, i) for r in REGIMES for i in range(spec.counts.get(r, 0))]
    if threads <= 1:
        rows = []
        for regime, index in tasks:
            sample, retries = generate_sample(spec, config, regime, index)
            rows.append((sample, retries))
        samples = [s for s, _ in rows]
        resamples = sum(r for _, r in rows)
        return samples, resamples
    config_json = None if spec.tool_config == "default" else config.to_json()
    method = "fork" if "fork" in multiprocessing.get_all_start_methods() else None
    ctx = multiprocessing.get_context(method)
    with ctx.Pool(threads, initializer=_init_worker, initargs=(spec.to_json(), config_json)) as pool:
        raw = pool.map(_worker_task, tasks, chunksize=16)
    samples = [
        Sample(
            input=ModelInput.from_array(p_arr),
            output=MeasurementVector(m=m, capped_flags=flags),
            regime=regime,
        )
        for p_arr, m, flags, regime, _ in raw
    ]
    resamples = sum(r for *_, r in raw)
    return samples, resamples


def horn_filter(samples):
    """Drop samples whose apparent resistivity hit a cap. Order-preserving."""
    kept = [s for s in samples if not s.output.capped_flags.any()]
    return kept, len(samples) - len(kept)


def split_dataset(samples, fractions, seed: int):
    """Tag samples train/val/test, stratified by regime.

    Within each regime the samples are permuted with a seeded shuffle and
    assigned contiguously; per-split counts follow largest-remainder
    rounding, so regime proportions are preserved within one sample.
    """
    fractions = tuple(float(f) for f in fractions)
    if len(fractions) != 3 or abs(sum(fractions) - 1.0) > 1e-12:
        raise ConfigError("fractions must be three values summing to 1")
    assignment = {}
    for r_idx, regime in enumerate(REGIMES):
        idx = [i for i, s in enumerate(samples) if s.regime == regime]
        if not idx:
            continue
        rng = np.random.Generator(
            np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=(len(REGIMES), r_idx)))
        )
        perm = rng.permutation(len(idx))
        n = len(idx)
        quotas = [n * f for f in fractions]
        counts = [int(np.floor(q)) for q in quotas]
        short = n - sum(counts)
        order = sorted(range(3), key=lambda j: quotas[j] - counts[j], reverse=True)
        for j in order[:short]:
            counts[j] += 1
        pos = 0
        for split, cnt in zip(SPLITS, counts):
            for k in perm[pos : pos + cnt]:
                assignment[idx[k]] = split
            pos += cnt
    return [replace(s, split=assignment.get(i, "unassigned")) for i, s in enumerate(samples)]


def write_dataset(samples, path: str):
    """Write the corpus as CSV (22 input + 13 output + regime + split columns)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for s in samples:
            row = [repr(float(v)) for v in s.input.to_array()]
            row += [repr(float(v)) for v in s.output.m]
            row += [s.regime, s.split]
            writer.writerow(row)


def read_dataset(path: str, resistivity_floor: float = 0.1, resistivity_cap: float = 2000.0):
    """Read a dataset CSV back into Sample objects.

    Cap flags are reconstructed by exact equality of the apparent-resistivity
    channels with the caps (the forward model returns the cap value exactly
    when clamping).
    """
    ar_idx = [i for i, ch in enumerate(CHANNEL_ORDER) if ch.startswith("RT_CRES")]
    samples = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty dataset file") from None
        if header != CSV_COLUMNS:
            raise DataError(f"{path}: line 1: bad header (expected {len(CSV_COLUMNS)} canonical columns)")
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(CSV_COLUMNS):
                raise DataError(f"{path}: line {lineno}: expected {len(CSV_COLUMNS)} fields, got {len(row)}")
            try:
                values = [float(v) for v in row[:35]]
            except ValueError as exc:
                raise DataError(f"{path}: line {lineno}: bad float: {exc}") from exc
            regime, split = row[35], row[36]
            if regime not in REGIMES:
                raise DataError(f"{path}: line {lineno}: unknown regime {regime!r}")
            if split not in SPLITS + ("unassigned",):
                raise DataError(f"{path}: line {lineno}: unknown split {split!r}")
            m = np.array(values[22:35])
            flags = np.zeros(13, dtype=bool)
            for i in ar_idx:
                flags[i] = m[i] == resistivity_floor or m[i] == resistivity_cap
            samples.append(
                Sample(
                    input=ModelInput.from_array(np.array(values[:22])),
                    output=MeasurementVector(m=m, capped_flags=flags),
                    regime=regime,
                    split=split,
                )
            )
    return samples


def dataset_stats(samples, dropped: int = 0, resamples: int = 0) -> dict:
    """Per-column min/max/mean plus regime/split counts, as a JSON-able dict."""
    inputs = np.array([s.input.to_array() for s in samples])
    outputs = np.array([s.output.m for s in samples])
    table = np.hstack([inputs, outputs])
    columns = {}
    for j, name in enumerate(CSV_COLUMNS[:35]):
        col = table[:, j]
        columns[name] = {
            "min": float(col.min()),
            "max": float(col.max()),
            "mean": float(col.mean()),
        }
    regimes = {r: sum(1 for s in samples if s.regime == r) for r in REGIMES}
    splits = {sp: sum(1 for s in samples if s.split == sp) for sp in SPLITS + ("unassigned",)}
    return {
        "n_samples": len(samples),
        "dropped_capped": dropped,
        "resampled": resamples,
        "regimes": regimes,
        "splits": splits,
        "columns": columns,
    }
