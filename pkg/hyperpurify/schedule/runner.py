"""Running sequences of sub-protocols and deciding whether a state purifies."""

from __future__ import annotations

from typing import Literal, Protocol

from pydantic import ConfigDict, Field

from hyperpurify.base_model import BaseModel, FrozenModel
from hyperpurify.errors import ImpossibleBranchError
from hyperpurify.hypergraph import Coloring
from hyperpurify.logger import get_logger
from hyperpurify.purify import subprotocol_keep
from hyperpurify.schedule.sequence import Sequence
from hyperpurify.states import HBState, fidelity, trace_distance

log = get_logger(__name__)


class ConvergenceSettings(BaseModel):
    """When a trajectory counts as purified, and how finely thresholds are bisected."""

    model_config = ConfigDict(extra="forbid")

    target_fidelity: float = Field(default=1 - 1e-6, gt=0.0, le=1.0)
    max_repetitions: int = Field(default=500, gt=0)
    stagnation_tol: float = 1e-9
    stagnation_below: float = 0.99
    decreasing_repetitions: int = Field(default=10, gt=0)
    decrease_tol: float = 1e-12
    resolution: float = Field(default=1e-4, gt=0.0)
    bracket: tuple[float, float] = (0.0, 1.0)
    # evenly spaced extra samples across the bracket after bisection; 0 trusts monotonicity
    monotonicity_samples: int = Field(default=0, ge=0)


VerdictReason = Literal["target", "stagnation", "decreasing", "max_repetitions", "impossible"]


class Verdict(FrozenModel):
    purified: bool
    reason: VerdictReason
    repetitions: int
    fidelity: float


class ConvergenceMonitor:
    """Fed the fidelity after each full repetition; returns a verdict once one is reached."""

    def __init__(self, settings: ConvergenceSettings) -> None:
        self.settings = settings
        self.repetitions = 0
        self._previous: float | None = None
        self._decreasing = 0

    def observe(self, fid: float) -> Verdict | None:
        s = self.settings
        self.repetitions += 1
        if fid >= s.target_fidelity:
            return Verdict(purified=True, reason="target", repetitions=self.repetitions, fidelity=fid)
        if self._previous is not None:
            if abs(fid - self._previous) < s.stagnation_tol and fid < s.stagnation_below:
                return Verdict(purified=False, reason="stagnation", repetitions=self.repetitions, fidelity=fid)
            self._decreasing = self._decreasing + 1 if fid < self._previous - s.decrease_tol else 0
            if self._decreasing >= s.decreasing_repetitions:
                return Verdict(purified=False, reason="decreasing", repetitions=self.repetitions, fidelity=fid)
        self._previous = fid
        if self.repetitions >= s.max_repetitions:
            return Verdict(purified=False, reason="max_repetitions", repetitions=self.repetitions, fidelity=fid)
        return None


class Stepper(Protocol):
    """Source of colors for consecutive sub-protocols."""

    def next_color(self) -> str: ...

    def observe(self, color: str, p_minus: float) -> None: ...

    @property
    def at_boundary(self) -> bool: ...


class SequenceCursor:
    """Cycles through a fixed sequence."""

    def __init__(self, sequence: Sequence) -> None:
        self.sequence = sequence
        self.position = 0

    def next_color(self) -> str:
        color = self.sequence.steps[self.position]
        self.position = (self.position + 1) % len(self.sequence.steps)
        return color

    def observe(self, color: str, p_minus: float) -> None:
        pass

    @property
    def at_boundary(self) -> bool:
        return self.position == 0


class TrajectoryPoint(FrozenModel):
    repetition: int
    step: int
    color: str
    fidelity: float
    p_keep: float
    p_minus: float
    trace_distance: float | None = None


class Trajectory(FrozenModel):
    points: list[TrajectoryPoint]
    final: HBState

    def fidelities(self) -> list[float]:
        return [p.fidelity for p in self.points]

    def repetition_ends(self) -> list[TrajectoryPoint]:
        """Last point of every completed repetition."""
        ends: list[TrajectoryPoint] = []
        for i, p in enumerate(self.points):
            nxt = self.points[i + 1] if i + 1 < len(self.points) else None
            if nxt is None or nxt.repetition != p.repetition:
                ends.append(p)
        return ends


def run_sequence(
    state: HBState,
    sequence: Sequence,
    coloring: Coloring,
    repetitions: int,
    reference: HBState | None = None,
) -> Trajectory:
    """Apply ``sequence`` ``repetitions`` times, keeping only the "+1" branch.

    With ``reference`` set, every point also carries the trace distance to it.
    Raises ``ImpossibleBranchError`` when the keep branch dies out.
    """
    points: list[TrajectoryPoint] = []
    for rep in range(1, repetitions + 1):
        for step, color in enumerate(sequence.steps):
            result = subprotocol_keep(state, color, coloring)
            assert result.kept is not None
            state = result.kept
            points.append(
                TrajectoryPoint(
                    repetition=rep,
                    step=step,
                    color=color,
                    fidelity=fidelity(state),
                    p_keep=result.p_keep,
                    p_minus=result.p_minus,
                    trace_distance=trace_distance(state, reference) if reference is not None else None,
                )
            )
    return Trajectory(points=points, final=state)


def drive(state: HBState, stepper: Stepper, coloring: Coloring, settings: ConvergenceSettings) -> Verdict:
    """Run sub-protocols chosen by ``stepper`` until the monitor decides."""
    monitor = ConvergenceMonitor(settings)
    while True:
        color = stepper.next_color()
        try:
            result = subprotocol_keep(state, color, coloring)
        except ImpossibleBranchError:
            return Verdict(purified=False, reason="impossible", repetitions=monitor.repetitions, fidelity=0.0)
        assert result.kept is not None
        state = result.kept
        stepper.observe(color, result.p_minus)
        if stepper.at_boundary:
            verdict = monitor.observe(fidelity(state))
            if verdict is not None:
                return verdict


def purify_until(state: HBState, sequence: Sequence, coloring: Coloring, settings: ConvergenceSettings | None = None) -> Verdict:
    return drive(state, SequenceCursor(sequence), coloring, settings or ConvergenceSettings())
