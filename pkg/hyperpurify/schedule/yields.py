"""Expected-count bookkeeping of how many noisy inputs each purified output costs.

A cohort is a group of identical states (same conditional state, fractional
expected count). Each sub-protocol pairs a cohort up and splits the pairs into
kept, discarded and, with recycling, one merged cohort of P-perp branches that
carries on at the next step of the sequence.
"""

from __future__ import annotations

import math

from pydantic import Field

from hyperpurify.base_model import FrozenModel
from hyperpurify.hypergraph import Coloring, EdgeSet
from hyperpurify.logger import get_logger
from hyperpurify.purify import subprotocol_keep_or_none, subprotocol_recycle
from hyperpurify.schedule.sequence import Sequence
from hyperpurify.states import HBState, NoiseSpec, fidelity, mixture, noisy_target, white_noise_for_fidelity
from hyperpurify.tracing import get_tracer

log = get_logger(__name__)
tracer = get_tracer(__name__)

DEFAULT_INITIAL_COUNT = 1e6
DEFAULT_RECYCLE_DEPTH = 5
DEFAULT_MIN_FRACTION = 1e-6


class Cohort(FrozenModel):
    label: str
    state: HBState
    count: float = Field(ge=0.0)
    step: int = 0
    depth: int = 0

    @property
    def fidelity(self) -> float:
        return fidelity(self.state)


class YieldRound(FrozenModel):
    """One sub-protocol applied to one cohort; ``pairs == kept + discarded + recycled``."""

    step: int
    cohort: str
    color: str
    inputs: float
    pairs: float
    kept: float
    discarded: float
    recycled: float
    fidelity_in: float
    fidelity_out: float | None
    p_keep: float
    p_reduce: dict[int, float]
    cost_factor: float


class YieldLedger(FrozenModel):
    rounds: list[YieldRound]
    initial_count: float
    outputs: float
    final_fidelity: float
    inputs_per_output: float
    exact_inputs_per_output: float
    recycled_outputs: float = 0.0
    cohorts: list[Cohort]

    def outputs_at_least(self, threshold: float) -> float:
        return sum(c.count for c in self.cohorts if c.count > 0 and c.fidelity >= threshold - 1e-12)


class CohortPipeline:
    """Steps cohorts through a sequence, recording every split in a ledger."""

    def __init__(self, sequence: Sequence, coloring: Coloring, recycle: bool = False, max_depth: int = 1) -> None:
        self.sequence = sequence
        self.coloring = coloring
        self.recycle = recycle
        self.max_depth = max_depth
        self.rounds: list[YieldRound] = []

    def color_at(self, step: int) -> str:
        return self.sequence.steps[step % len(self.sequence.steps)]

    def step(self, cohort: Cohort) -> tuple[Cohort | None, Cohort | None]:
        """Apply the next sub-protocol; returns the kept cohort and the recycled one."""
        color = self.color_at(cohort.step)
        pairs = cohort.count / 2
        spawn = self.recycle and cohort.depth < self.max_depth

        recycled_cohort: Cohort | None = None
        recycled = 0.0
        if spawn:
            result, branches = subprotocol_recycle(cohort.state, color, self.coloring)
            live = [b for b in branches if b.state is not None]
            weight = sum(b.probability for b in live)
            if weight > 0:
                merged = mixture([b.state for b in live if b.state is not None], [b.probability / weight for b in live])
                recycled = pairs * weight
                recycled_cohort = Cohort(
                    label=f"{cohort.label}/r{cohort.step + 1}",
                    state=merged,
                    count=recycled,
                    step=cohort.step + 1,
                    depth=cohort.depth + 1,
                )
        else:
            result = subprotocol_keep_or_none(cohort.state, color, self.coloring)

        kept = pairs * result.keep_probability
        kept_cohort = None
        if result.kept is not None:
            kept_cohort = Cohort(label=cohort.label, state=result.kept, count=kept, step=cohort.step + 1, depth=cohort.depth)

        p_success = math.prod(result.p_reduce_vertex.values()) * result.p_keep
        self.rounds.append(
            YieldRound(
                step=cohort.step + 1,
                cohort=cohort.label,
                color=color,
                inputs=2 * pairs,
                pairs=pairs,
                kept=kept,
                discarded=pairs - kept - recycled,
                recycled=recycled,
                fidelity_in=cohort.fidelity,
                fidelity_out=kept_cohort.fidelity if kept_cohort is not None else None,
                p_keep=result.p_keep,
                p_reduce=result.p_reduce_vertex,
                cost_factor=2 / p_success if p_success > 0 else math.inf,
            )
        )
        return kept_cohort, recycled_cohort


def yield_estimate(
    state: HBState,
    sequence: Sequence,
    coloring: Coloring,
    rounds: int,
    recycle: bool = False,
    initial_count: float = DEFAULT_INITIAL_COUNT,
    max_depth: int = 1,
) -> YieldLedger:
    """Run ``rounds`` sub-protocols on the main cohort.

    ``inputs_per_output`` multiplies 2 / (prod_v p_v * p_keep) over the steps,
    with p_v the probability that reduction v succeeds;
    ``exact_inputs_per_output`` uses the joint all-P probability instead.
    Recycled cohorts are stepped alongside until the main cohort finishes;
    ``recycled_outputs`` counts those that end at or above its fidelity.
    """
    pipeline = CohortPipeline(sequence, coloring, recycle=recycle, max_depth=max_depth)
    main: Cohort | None = Cohort(label="main", state=state, count=initial_count)
    side: list[Cohort] = []
    finished: list[Cohort] = []
    cost = 1.0

    with tracer.start_as_current_span("yield_estimate") as span:
        span.set_attribute("rounds", rounds)
        span.set_attribute("recycle", recycle)
        for _ in range(rounds):
            if main is None:
                break
            main, spawned = pipeline.step(main)
            cost *= pipeline.rounds[-1].cost_factor
            advanced: list[Cohort] = []
            for cohort in side:
                kept, more = pipeline.step(cohort)
                advanced.extend(c for c in (kept, more) if c is not None)
            side = advanced + ([spawned] if spawned is not None else [])
        if main is not None:
            finished.append(main)
        finished.extend(side)

    outputs = main.count if main is not None else 0.0
    final_fidelity = main.fidelity if main is not None else 0.0
    recycled_outputs = sum(c.count for c in side if c.count > 0 and c.fidelity >= final_fidelity - 1e-12) if main is not None else 0.0
    return YieldLedger(
        rounds=pipeline.rounds,
        initial_count=initial_count,
        outputs=outputs,
        final_fidelity=final_fidelity,
        inputs_per_output=cost,
        exact_inputs_per_output=initial_count / outputs if outputs > 0 else math.inf,
        recycled_outputs=recycled_outputs,
        cohorts=finished,
    )


class RecycleComparison(FrozenModel):
    f0: float
    p: float
    f_target: float
    baseline_outputs: float
    extra_outputs: float
    extra_fraction: float
    extra_cohorts: int


def recycle_compare_one(
    f0: float,
    sequence: Sequence,
    coloring: Coloring,
    target: EdgeSet,
    rounds: int = 3,
    max_extra_steps: int = 12,
    max_depth: int = DEFAULT_RECYCLE_DEPTH,
    min_fraction: float = DEFAULT_MIN_FRACTION,
    initial_count: float = DEFAULT_INITIAL_COUNT,
) -> RecycleComparison:
    """Extra outputs of fidelity >= F_rounds that recycling adds over the plain protocol.

    The kept branch is identical in both protocols, so the baseline is the
    main cohort. Recycled cohorts keep running through the sequence (past the
    last round if needed) until they reach the baseline fidelity; those that
    do within ``max_extra_steps`` count as extra outputs. Their own P-perp
    branches are recycled too, down to ``max_depth`` generations. Cohorts
    smaller than ``min_fraction`` of the baseline are dropped.
    """
    p = white_noise_for_fidelity(target.n_vertices, f0)
    start = noisy_target(target, NoiseSpec(kind="white", p=p))
    pipeline = CohortPipeline(sequence, coloring, recycle=True, max_depth=max_depth)

    main: Cohort | None = Cohort(label="main", state=start, count=initial_count)
    spawned: list[Cohort] = []
    for _ in range(rounds):
        assert main is not None
        main, more = pipeline.step(main)
        if more is not None:
            spawned.append(more)
    if main is None:
        return RecycleComparison(f0=f0, p=p, f_target=0.0, baseline_outputs=0.0, extra_outputs=0.0, extra_fraction=0.0, extra_cohorts=0)
    f_target = main.fidelity

    floor = min_fraction * main.count
    extra = 0.0
    successes = 0
    queue = list(spawned)
    while queue:
        cohort = queue.pop(0)
        start_step = cohort.step
        current: Cohort | None = cohort
        while current is not None and current.count > floor:
            if current.fidelity >= f_target - 1e-12:
                extra += current.count
                successes += 1
                break
            if current.step - start_step >= max_extra_steps:
                break
            current, more = pipeline.step(current)
            if more is not None:
                queue.append(more)

    log.debug("F0=%.4f F_target=%.6f extra=%.6g of %.6g", f0, f_target, extra, main.count)
    return RecycleComparison(
        f0=f0,
        p=p,
        f_target=f_target,
        baseline_outputs=main.count,
        extra_outputs=extra,
        extra_fraction=extra / main.count if main.count > 0 else 0.0,
        extra_cohorts=successes,
    )


def recycle_compare(
    f0_grid: list[float],
    sequence: Sequence,
    coloring: Coloring,
    target: EdgeSet,
    rounds: int = 3,
    max_extra_steps: int = 12,
    max_depth: int = DEFAULT_RECYCLE_DEPTH,
) -> list[RecycleComparison]:
    with tracer.start_as_current_span("recycle_compare") as span:
        span.set_attribute("points", len(f0_grid))
        return [recycle_compare_one(f0, sequence, coloring, target, rounds, max_extra_steps, max_depth) for f0 in f0_grid]
