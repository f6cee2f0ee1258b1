"""One function per sub-command; each returns tables and documents for the writer."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import polars as pl

from hyperpurify.cli.run_config import RunConfig
from hyperpurify.cli.verify import EXHAUSTIVE_N, PROTOCOL_CASES, RANDOM_CASES, run_verification
from hyperpurify.errors import ConfigError
from hyperpurify.logger import get_logger
from hyperpurify.schedule import (
    ADAPTIVE_PRESETS,
    TrajectoryPoint,
    adaptive_run,
    find_threshold,
    recycle_compare,
    run_sequence,
    search_sequences,
    yield_estimate,
)
from hyperpurify.states import NoiseSpec, fidelity, noisy_target, white_noise_for_fidelity
from hyperpurify.tracing import get_tracer

log = get_logger(__name__)
tracer = get_tracer(__name__)

TRAJECTORY_SCHEMA = {
    "repetition": pl.Int64,
    "step": pl.Int64,
    "color": pl.Utf8,
    "fidelity": pl.Float64,
    "p_keep": pl.Float64,
    "p_minus": pl.Float64,
    "trace_distance": pl.Float64,
}


@dataclass
class CommandResult:
    tables: dict[str, pl.DataFrame] = field(default_factory=dict)
    documents: dict[str, Any] = field(default_factory=dict)
    summary: str = ""
    exit_code: int = 0


def _trajectory_frame(points: list[TrajectoryPoint]) -> pl.DataFrame:
    return pl.DataFrame([p.model_dump() for p in points], schema=TRAJECTORY_SCHEMA)


def cmd_run(config: RunConfig) -> CommandResult:
    state = config.initial_state()
    trajectory = run_sequence(state, config.parsed_sequence(), config.parsed_coloring(), config.repetitions, config.reference_state())
    frame = _trajectory_frame(trajectory.points)
    return CommandResult(
        tables={config.name or "trajectory": frame},
        summary=f"final fidelity {fidelity(trajectory.final):.10f} after {config.repetitions} repetitions of {config.parsed_sequence()}",
    )


def _threshold_cell(config: RunConfig) -> dict[str, Any]:
    result = find_threshold(config.noise.kind, config.schedule(), config.edge_set(), config.parsed_coloring(), config.convergence)
    return {
        "label": config.label or result.schedule,
        "noise": config.noise.kind,
        "schedule": result.schedule,
        "target": config.target,
        "p_min": result.p_min,
        "expected": config.expected,
    }


def cmd_threshold(config: RunConfig, workers: int = 1) -> CommandResult:
    cells = config.expand_cells()
    with tracer.start_as_current_span("cmd_threshold") as span:
        span.set_attribute("cells", len(cells))
        if workers > 1 and len(cells) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                rows = list(pool.map(_threshold_cell, cells))
        else:
            rows = [_threshold_cell(c) for c in cells]
    document: dict[str, Any] = {"p_min": rows[0]["p_min"]} if len(rows) == 1 and not config.cells else {"cells": rows}
    frame = pl.DataFrame(
        rows,
        schema={"label": pl.Utf8, "noise": pl.Utf8, "schedule": pl.Utf8, "target": pl.Utf8, "p_min": pl.Float64, "expected": pl.Float64},
    )
    name = config.name or "thresholds"
    summary = "\n".join(f"{r['label']:<40} {r['noise']:<13} p_min={r['p_min']:.4f}" for r in rows)
    return CommandResult(tables={name: frame}, documents={name: document}, summary=summary)


def cmd_search(config: RunConfig, workers: int = 1) -> CommandResult:
    rows: list[dict[str, Any]] = []
    best: list[str] = []
    for cell in config.expand_cells():
        entries = search_sequences(
            cell.noise.kind,
            cell.edge_set(),
            cell.parsed_coloring(),
            space=cell.space,
            length=cell.length,
            settings=cell.convergence,
            workers=workers,
        )
        label = cell.label or f"{cell.noise.kind} {cell.target}"
        rows.extend({"label": label, "noise": cell.noise.kind, **e.model_dump()} for e in entries)
        best.append(f"{label}: best {entries[0].sequence} p_min={entries[0].p_min:.4f} of {len(entries)} candidates")
    frame = pl.DataFrame(rows, schema={"label": pl.Utf8, "noise": pl.Utf8, "rank": pl.Int64, "sequence": pl.Utf8, "p_min": pl.Float64})
    return CommandResult(tables={config.name or "search": frame}, summary="\n".join(best))


def cmd_adaptive(config: RunConfig, seed: int | None = None) -> CommandResult:
    adaptive = config.adaptive.resolve() if config.adaptive is not None else ADAPTIVE_PRESETS[config.noise.kind]
    seed = seed if seed is not None else config.seed
    if config.mode == "monte-carlo" and seed is None:
        raise ConfigError("monte-carlo mode needs an explicit seed (--seed or \"seed\" in the config)")
    run = adaptive_run(config.initial_state(), adaptive, config.parsed_coloring(), config.steps, mode=config.mode, pool=config.pool, seed=seed)
    name = config.name or "adaptive"
    document = {
        "mode": run.mode,
        "seed": seed if run.mode == "monte-carlo" else None,
        "s1": str(adaptive.s1),
        "s2": str(adaptive.s2),
        "switch_step": run.switch_step,
        "final_fidelity": fidelity(run.final),
        "pool_remaining": run.pool_remaining,
        "steps": config.steps,
    }
    switched = f"switched to S2 after step {run.switch_step}" if run.switch_step is not None else "no switch"
    return CommandResult(
        tables={f"{name}_trajectory": _trajectory_frame(run.points)},
        documents={name: document},
        summary=f"{switched}; final fidelity {fidelity(run.final):.10f}",
    )


def cmd_yield(config: RunConfig) -> CommandResult:
    target = config.edge_set()
    if config.f0 is not None:
        state = noisy_target(target, NoiseSpec(kind="white", p=white_noise_for_fidelity(target.n_vertices, config.f0)))
    else:
        state = config.initial_state()
    ledger = yield_estimate(state, config.parsed_sequence(), config.parsed_coloring(), config.rounds, recycle=config.recycle, max_depth=config.max_depth)
    name = config.name or "yield"
    document = {
        "f0": fidelity(state),
        "rounds": config.rounds,
        "recycle": config.recycle,
        "final_fidelity": ledger.final_fidelity,
        "inputs_per_output": ledger.inputs_per_output,
        "exact_inputs_per_output": ledger.exact_inputs_per_output,
        "initial_count": ledger.initial_count,
        "outputs": ledger.outputs,
        "recycled_outputs": ledger.recycled_outputs,
        "ledger": ledger.rounds,
        "cohorts": [{"label": c.label, "count": c.count, "fidelity": c.fidelity, "step": c.step} for c in ledger.cohorts],
    }
    return CommandResult(
        documents={name: document},
        summary=f"F={ledger.final_fidelity:.6f} after {config.rounds} rounds, {ledger.inputs_per_output:.1f} inputs per output",
    )


def cmd_recycle_compare(config: RunConfig) -> CommandResult:
    if not config.f0_grid:
        raise ConfigError("recycle-compare needs a non-empty f0_grid")
    rows = recycle_compare(
        config.f0_grid,
        config.parsed_sequence(),
        config.parsed_coloring(),
        config.edge_set(),
        rounds=config.rounds,
        max_extra_steps=config.max_extra_steps,
        max_depth=config.max_depth,
    )
    frame = pl.DataFrame(
        [r.model_dump() for r in rows],
        schema={
            "f0": pl.Float64,
            "p": pl.Float64,
            "f_target": pl.Float64,
            "baseline_outputs": pl.Float64,
            "extra_outputs": pl.Float64,
            "extra_fraction": pl.Float64,
            "extra_cohorts": pl.Int64,
        },
    )
    mean = sum(r.extra_fraction for r in rows) / len(rows)
    return CommandResult(tables={config.name or "recycle_compare": frame}, summary=f"mean extra-output fraction {mean:.4%} over {len(rows)} F0 values")


def cmd_verify(
    seed: int | None = None,
    exhaustive_n: int = EXHAUSTIVE_N,
    random_cases: int = RANDOM_CASES,
    protocol_cases: int = PROTOCOL_CASES,
) -> CommandResult:
    report = run_verification(seed=seed or 0, exhaustive_n=exhaustive_n, random_cases=random_cases, protocol_cases=protocol_cases)
    return CommandResult(
        documents={"verify": report},
        summary=report.summary(),
        exit_code=0 if report.ok else 1,
    )
