"""Command-line entry point tying the toolkit together.

Subcommands: tool init, dataset gen, dataset stats, train, evaluate,
log run, benchmark.  Every run writes a provenance record (content hashes of
all input files) next to its outputs.  Exit codes: 0 success, 1 usage error,
2 data/config error, 3 numeric failure.
"""

from __future__ import annotations

import csv
import dataclasses
import hashlib
import json
import sys
from pathlib import Path

import click
import numpy as np

from . import __version__
from .errors import ConvergenceError, DataError, EdemlogError, NumericError
from .toolsim import ToolConfig, default_tool_config
from . import dataset as ds
from .surrogate import (
    NetworkArchitecture,
    TrainConfig,
    desk_architecture,
    fit_rescaler,
    init_params,
    load_checkpoint,
    predict,
    save_checkpoint,
    train,
)
from . import evalx


def _sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _write_provenance(out_dir, command: str, argv: list, inputs: dict, seed=None):
    """Record what went into a run. Deterministic: no timestamps."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    doc = {
        "tool": "edemlog",
        "version": __version__,
        "command": command,
        "argv": argv,
        "inputs": {str(p): _sha256(p) for p in inputs.values() if p is not None},
        "seed": seed,
    }
    (out_dir / "provenance.json").write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")


@click.group()
@click.version_option(__version__)
def cli():
    """Extra-deep EM well-log surrogate toolkit."""


# ---------------------------------------------------------------------------
# tool


@cli.group()
def tool():
    """Tool configuration commands."""


@tool.command("init")
@click.option("--out", required=True, type=click.Path(), help="Output tool-config JSON path.")
@click.option("--eps-r", default=1.0, show_default=True, help="Relative permittivity.")
def tool_init(out, eps_r):
    """Write the default tool configuration to a JSON file."""
    config = default_tool_config(relative_permittivity=eps_r)
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(config.to_json() + "\n")
    click.echo(f"wrote tool config with {len(config.coils)} coils to {out}")


# ---------------------------------------------------------------------------
# dataset


@cli.group("dataset")
def dataset_group():
    """Training-corpus commands."""


@dataset_group.command("gen")
@click.option("--spec", "spec_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--seed", type=int, default=None, help="Override the seed in the spec.")
@click.option("--threads", type=int, default=1, show_default=True)
def dataset_gen(spec_path, out_dir, seed, threads):
    """Generate a dataset from a spec JSON; writes per-split CSVs."""
    spec = ds.DatasetSpec.from_json(Path(spec_path).read_text())
    if seed is not None:
        spec = dataclasses.replace(spec, seed=seed)
    samples, resamples = ds.assemble_dataset(spec, threads=threads)
    kept, dropped = ds.horn_filter(samples)
    kept = ds.split_dataset(kept, spec.split_fractions, spec.seed)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ds.write_dataset(kept, out / "dataset.csv")
    for split in ds.SPLITS:
        ds.write_dataset([s for s in kept if s.split == split], out / f"{split}.csv")
    stats = ds.dataset_stats(kept, dropped=dropped, resamples=resamples)
    (out / "stats.json").write_text(json.dumps(stats, indent=1, sort_keys=True) + "\n")
    _write_provenance(out, "dataset gen", sys.argv[1:], {"spec": spec_path}, seed=spec.seed)
    click.echo(f"generated {len(kept)} samples ({dropped} dropped, {resamples} resampled)")


@dataset_group.command("stats")
@click.option("--data", "data_path", required=True, type=click.Path(exists=True))
def dataset_stats_cmd(data_path):
    """Print summary statistics of a dataset CSV."""
    samples = ds.read_dataset(data_path)
    click.echo(json.dumps(ds.dataset_stats(samples), indent=1, sort_keys=True))


# ---------------------------------------------------------------------------
# train / evaluate


def _load_train_config(path):
    """Read {architecture, train} JSON; both sections optional."""
    if path is None:
        return desk_architecture(), TrainConfig()
    doc = json.loads(Path(path).read_text())
    if doc.get("format") != "edemlog-train-config":
        raise DataError(f"not a train config document (format {doc.get('format')!r})")
    arch_doc = doc.get("architecture")
    arch = NetworkArchitecture.from_dict(arch_doc) if arch_doc else desk_architecture()
    config = TrainConfig.from_dict(doc.get("train", {}))
    return arch, config


@cli.command("train")
@click.option("--data", "data_dir", required=True, type=click.Path(exists=True),
              help="Dataset directory containing train.csv and val.csv.")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="Train-config JSON (defaults: reduced architecture).")
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--seed", type=int, default=None, help="Override the training seed.")
def train_cmd(data_dir, config_path, out_dir, seed):
    """Fit the surrogate on a generated dataset and write a checkpoint."""
    data_dir = Path(data_dir)
    train_samples = ds.read_dataset(data_dir / "train.csv")
    val_samples = ds.read_dataset(data_dir / "val.csv")
    architecture, config = _load_train_config(config_path)
    if seed is not None:
        config = TrainConfig(**{**config.to_dict(), "seed": seed})
    x_tr = np.array([s.input.to_array() for s in train_samples])
    y_tr = np.array([s.output.m for s in train_samples])
    rescaler = fit_rescaler(x_tr, y_tr)
    result = train(
        train_samples,
        val_samples,
        rescaler,
        architecture,
        config,
        progress=lambda r: click.echo(
            f"epoch {r.epoch}: train {r.train_loss:.5f} val {r.val_loss:.5f} "
            f"({r.wall_seconds:.1f}s)"
        ),
    )
    out = Path(out_dir)
    save_checkpoint(result, out)
    with open(out / "history.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["epoch", "train_loss", "val_loss", "wall_seconds"])
        for r in result.history:
            writer.writerow([r.epoch, repr(r.train_loss), repr(r.val_loss), repr(r.wall_seconds)])
    _write_provenance(
        out,
        "train",
        sys.argv[1:],
        {"train": data_dir / "train.csv", "val": data_dir / "val.csv", "config": config_path},
        seed=config.seed,
    )
    click.echo(
        f"trained {architecture.param_count()} parameters; best epoch "
        f"{result.best_epoch} (val {result.best_val_loss:.5f})"
    )


@cli.command("evaluate")
@click.option("--ckpt", "ckpt_dir", required=True, type=click.Path(exists=True))
@click.option("--data", "data_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--threads", type=int, default=1, show_default=True)
def evaluate_cmd(ckpt_dir, data_path, out_dir, threads):
    """Crossplot a checkpoint against simulated truths from a dataset CSV."""
    del threads  # prediction is one batched pass; accepted for interface parity
    result = load_checkpoint(ckpt_dir)
    samples = ds.read_dataset(data_path)
    x = np.array([s.input.to_array() for s in samples])
    truths = np.array([s.output.m for s in samples])
    preds, extrapolated = predict(result.params, result.rescaler, x)
    summary = evalx.crossplot_export(preds, truths, out_dir)
    summary["n_extrapolated"] = int(extrapolated.sum())
    (Path(out_dir) / "summary.json").write_text(json.dumps(summary, indent=1) + "\n")
    _write_provenance(out_dir, "evaluate", sys.argv[1:], {"ckpt": Path(ckpt_dir) / "manifest.json", "data": data_path})
    worst = min(summary["r_squared"].values())
    click.echo(f"evaluated {len(samples)} samples; worst channel r^2 = {worst:.4f}")


# ---------------------------------------------------------------------------
# log / benchmark


@cli.group("log")
def log_group():
    """Well-log synthesis commands."""


@log_group.command("run")
@click.option("--engine", type=click.Choice(["physics", "surrogate"]), required=True)
@click.option("--traj", "traj_path", required=True, type=click.Path(exists=True))
@click.option("--model", "model_path", required=True, type=click.Path(exists=True))
@click.option("--tool", "tool_path", type=click.Path(exists=True), default=None,
              help="Tool config JSON (physics engine; default config if omitted).")
@click.option("--ckpt", "ckpt_dir", type=click.Path(exists=True), default=None,
              help="Checkpoint directory (surrogate engine).")
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--threads", type=int, default=1, show_default=True)
def log_run_cmd(engine, traj_path, model_path, tool_path, ckpt_dir, out_path, threads):
    """Synthesize a 13-channel log along a trajectory."""
    traj = evalx.read_trajectory_csv(traj_path)
    model = evalx.EarthModel.from_json(Path(model_path).read_text())
    tool_config = None
    surrogate = None
    if engine == "physics":
        tool_config = (
            ToolConfig.from_json(Path(tool_path).read_text())
            if tool_path
            else default_tool_config()
        )
    else:
        if ckpt_dir is None:
            raise click.UsageError("--ckpt is required with --engine surrogate")
        surrogate = load_checkpoint(ckpt_dir)
    md, tvd, values = evalx.log_run(
        engine, traj, model, tool_config=tool_config, surrogate=surrogate, threads=threads
    )
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    evalx.write_log_csv(md, tvd, values, out_path)
    _write_provenance(
        out_path.parent,
        "log run",
        sys.argv[1:],
        {
            "traj": traj_path,
            "model": model_path,
            "tool": tool_path,
            "ckpt": Path(ckpt_dir) / "manifest.json" if ckpt_dir else None,
        },
    )
    click.echo(f"wrote {traj.n_stations} stations to {out_path}")


@cli.command("benchmark")
@click.option("--ckpt", "ckpt_dir", type=click.Path(exists=True), default=None)
@click.option("--arch", type=click.Choice(["full", "desk"]), default=None,
              help="Benchmark a randomly initialized network instead of a checkpoint.")
@click.option("-n", "n", type=int, default=100_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_path", type=click.Path(), default=None)
def benchmark_cmd(ckpt_dir, arch, n, seed, out_path):
    """Measure batched surrogate inference throughput."""
    if (ckpt_dir is None) == (arch is None):
        raise click.UsageError("pass exactly one of --ckpt or --arch")
    if ckpt_dir is not None:
        result = load_checkpoint(ckpt_dir)
        params, rescaler = result.params, result.rescaler
    else:
        architecture = NetworkArchitecture() if arch == "full" else desk_architecture()
        params = init_params(architecture, seed=seed)
        x = evalx._random_valid_inputs(2000, seed=seed)
        rng = np.random.default_rng(seed)
        y = np.empty((2000, 13))
        y[:, :4] = 10.0 ** rng.uniform(-1.0, 3.0, size=(2000, 4))
        y[:, 4:] = rng.normal(0.0, 5.0, size=(2000, 9))
        rescaler = fit_rescaler(x, y)
    stats = evalx.timing_benchmark(params, rescaler, n=n, seed=seed)
    text = json.dumps(stats, indent=1)
    if out_path:
        Path(out_path).parent.mkdir(parents=True, exist_ok=True)
        Path(out_path).write_text(text + "\n")
    click.echo(text)


def main(argv=None) -> int:
    """Dispatch with the documented exit-code mapping."""
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.UsageError as exc:
        exc.show()
        return 1
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except (NumericError, ConvergenceError) as exc:
        click.echo(f"numeric failure: {exc}", err=True)
        return 3
    except EdemlogError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 2


if __name__ == "__main__":
    sys.exit(main())
