"""Noise thresholds by bisection, and exhaustive searches over sequences."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Literal

from hyperpurify.base_model import FrozenModel
from hyperpurify.errors import NonMonotoneThresholdError
from hyperpurify.hypergraph import Coloring, EdgeSet
from hyperpurify.logger import get_logger
from hyperpurify.schedule.adaptive import AdaptiveConfig, AdaptiveController
from hyperpurify.schedule.runner import ConvergenceSettings, SequenceCursor, Stepper, Verdict, drive
from hyperpurify.schedule.sequence import Sequence, full_space, triple_permutation_space
from hyperpurify.states import NoiseKind, NoiseSpec, noisy_target
from hyperpurify.tracing import get_tracer

log = get_logger(__name__)
tracer = get_tracer(__name__)

SearchSpace = Literal["triple-perms", "full"]


class TrailPoint(FrozenModel):
    p: float
    purified: bool
    reason: str
    repetitions: int
    fidelity: float


class ThresholdResult(FrozenModel):
    """Smallest purifiable noise parameter and the bisection trail that found it."""

    noise: NoiseKind
    schedule: str
    p_min: float
    lower: float
    trail: list[TrailPoint]


def _stepper(schedule: Sequence | AdaptiveConfig) -> Stepper:
    if isinstance(schedule, AdaptiveConfig):
        return AdaptiveController(schedule)
    return SequenceCursor(schedule)


def is_purifiable(
    kind: NoiseKind,
    p: float,
    schedule: Sequence | AdaptiveConfig,
    target: EdgeSet,
    coloring: Coloring,
    settings: ConvergenceSettings,
) -> Verdict:
    state = noisy_target(target, NoiseSpec(kind=kind, p=p))
    return drive(state, _stepper(schedule), coloring, settings)


def _describe(schedule: Sequence | AdaptiveConfig) -> str:
    if isinstance(schedule, AdaptiveConfig):
        return f"adaptive({schedule.s1}->{schedule.s2})"
    return str(schedule)


def _check_grid(evaluate: Callable[[float], bool], settings: ConvergenceSettings, lo: float, hi: float, name: str) -> None:
    """Every grid point above the final interval must purify, every one below must not."""
    bottom, top = settings.bracket
    k = settings.monotonicity_samples
    for i in range(1, k + 1):
        p = bottom + (top - bottom) * i / (k + 1)
        if lo < p < hi:
            continue
        if evaluate(p) != (p >= hi):
            raise NonMonotoneThresholdError(f"{name} is not monotone in p: p={p:.6f} disagrees with the threshold {hi:.6f}")


def find_threshold(
    kind: NoiseKind,
    schedule: Sequence | AdaptiveConfig,
    target: EdgeSet,
    coloring: Coloring,
    settings: ConvergenceSettings | None = None,
) -> ThresholdResult:
    """Bisect p over the bracket; purifiability must hold at the top and fail at the bottom.

    Returns the upper end of the final interval, so ``p_min`` is always a
    purifiable noise parameter. Bisection alone only sees the endpoints it
    visits, so a purifiable window below the threshold goes unnoticed unless
    ``settings.monotonicity_samples`` adds a grid of samples across the bracket.
    """
    settings = settings or ConvergenceSettings()
    lo, hi = settings.bracket
    trail: list[TrailPoint] = []

    def evaluate(p: float) -> bool:
        v = is_purifiable(kind, p, schedule, target, coloring, settings)
        trail.append(TrailPoint(p=p, purified=v.purified, reason=v.reason, repetitions=v.repetitions, fidelity=v.fidelity))
        return v.purified

    with tracer.start_as_current_span("find_threshold") as span:
        span.set_attribute("noise", kind)
        span.set_attribute("schedule", _describe(schedule))
        if not evaluate(hi):
            raise NonMonotoneThresholdError(f"{_describe(schedule)} does not purify at the top of the bracket p={hi}")
        if evaluate(lo):
            raise NonMonotoneThresholdError(f"{_describe(schedule)} already purifies at the bottom of the bracket p={lo}")
        while hi - lo > settings.resolution:
            mid = (lo + hi) / 2
            if evaluate(mid):
                hi = mid
            else:
                lo = mid
        _check_grid(evaluate, settings, lo, hi, _describe(schedule))
        span.set_attribute("p_min", hi)

    log.debug("Threshold %s %s: %.6f", kind, _describe(schedule), hi)
    return ThresholdResult(noise=kind, schedule=_describe(schedule), p_min=hi, lower=lo, trail=trail)


class SearchEntry(FrozenModel):
    rank: int
    sequence: str
    p_min: float


def _score(args: tuple[NoiseKind, Sequence, EdgeSet, Coloring, ConvergenceSettings]) -> float:
    kind, sequence, target, coloring, settings = args
    return find_threshold(kind, sequence, target, coloring, settings).p_min


def candidate_space(space: SearchSpace, length: int = 9, palette: str = "ABC") -> list[Sequence]:
    if space == "triple-perms":
        return triple_permutation_space(length, palette)
    return full_space(length, palette)


def search_sequences(
    kind: NoiseKind,
    target: EdgeSet,
    coloring: Coloring,
    space: SearchSpace = "triple-perms",
    length: int = 9,
    settings: ConvergenceSettings | None = None,
    workers: int = 1,
) -> list[SearchEntry]:
    """Score every candidate by its threshold; best first, ties broken by the sequence text."""
    settings = settings or ConvergenceSettings()
    candidates = candidate_space(space, length, "".join(sorted(set(coloring.colors))))
    jobs = [(kind, c, target, coloring, settings) for c in candidates]
    log.info("Scoring %d candidate sequences with %d worker(s)", len(jobs), workers)

    with tracer.start_as_current_span("search_sequences") as span:
        span.set_attribute("candidates", len(jobs))
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                scores = list(pool.map(_score, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
        else:
            scores = [_score(job) for job in jobs]

    ranked = sorted(zip(candidates, scores), key=lambda cs: (cs[1], str(cs[0])))
    return [SearchEntry(rank=i + 1, sequence=str(c), p_min=s) for i, (c, s) in enumerate(ranked)]
