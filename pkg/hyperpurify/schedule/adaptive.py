"""Switching from sequence S1 to S2 on the statistics of "-1" outcomes.

Every party keeps the last three "-1" probabilities of the sub-protocols that
measured it. The rule is only evaluated once ``warmup_passes`` full passes of
S1 have run, so the buffers hold settled values rather than the opening
transient. After that, when a party's buffer is full and a . x > b (x oldest
first), the run switches to S2 for good, starting from S2's first step.
"""

from __future__ import annotations

from collections import deque
from typing import Literal

import numpy as np
from pydantic import Field

from hyperpurify.base_model import FrozenModel
from hyperpurify.errors import ConfigError, PoolExhaustedError
from hyperpurify.hypergraph import Coloring
from hyperpurify.logger import get_logger
from hyperpurify.purify import subprotocol_keep
from hyperpurify.schedule.runner import SequenceCursor, TrajectoryPoint
from hyperpurify.schedule.sequence import Sequence
from hyperpurify.states import HBState, fidelity

log = get_logger(__name__)

BUFFER_SIZE = 3


class AdaptiveConfig(FrozenModel):
    s1: Sequence
    s2: Sequence
    a: tuple[float, float, float]
    b: float
    warmup_passes: int = Field(default=1, ge=0)

    @property
    def warmup_steps(self) -> int:
        return self.warmup_passes * len(self.s1.steps)


ADAPTIVE_PRESETS: dict[str, AdaptiveConfig] = {
    "white": AdaptiveConfig(s1=Sequence.parse("ABC-CBA-ABC"), s2=Sequence.parse("BAB-CAB-ABA"), a=(0.33, 0.35, 0.32), b=0.35),
    "dephasing": AdaptiveConfig(s1=Sequence.parse("ABC-CBA-CBA"), s2=Sequence.parse("CCC-ACB-CBC"), a=(0.35, 0.43, 0.21), b=0.39),
    "depolarizing": AdaptiveConfig(s1=Sequence.parse("ABC-CAB-BCA"), s2=Sequence.parse("BBB-BCB-BBB-BAB"), a=(0.35, 0.34, 0.31), b=0.44),
}


class AdaptiveController:
    """Stepper running S1 until the switching rule fires, then S2 forever."""

    def __init__(self, config: AdaptiveConfig) -> None:
        self.config = config
        self.buffers: dict[str, deque[float]] = {}
        self.cursor = SequenceCursor(config.s1)
        self.switched = False
        self.steps_taken = 0
        self.switch_step: int | None = None
        self._just_switched = False

    def push(self, color: str, p_minus: float) -> None:
        self.buffers.setdefault(color, deque(maxlen=BUFFER_SIZE)).append(p_minus)

    def should_switch(self, color: str) -> bool:
        buffer = self.buffers.get(color)
        if buffer is None or len(buffer) < BUFFER_SIZE:
            return False
        return float(np.dot(self.config.a, list(buffer))) > self.config.b

    def next_color(self) -> str:
        self._just_switched = False
        self.steps_taken += 1
        return self.cursor.next_color()

    def observe(self, color: str, p_minus: float) -> None:
        self.push(color, p_minus)
        if self.switched or self.steps_taken < self.config.warmup_steps:
            return
        if self.should_switch(color):
            self.switched = True
            self.switch_step = self.steps_taken
            self.cursor = SequenceCursor(self.config.s2)
            self._just_switched = True
            log.debug("Switching to %s after step %d", self.config.s2, self.steps_taken)

    @property
    def at_boundary(self) -> bool:
        return self.cursor.at_boundary and not self._just_switched


class AdaptiveTrajectory(FrozenModel):
    points: list[TrajectoryPoint]
    final: HBState
    switch_step: int | None
    mode: Literal["exact", "monte-carlo"]
    pool_remaining: int | None = None


def adaptive_run(
    state: HBState,
    config: AdaptiveConfig,
    coloring: Coloring,
    steps: int,
    mode: Literal["exact", "monte-carlo"] = "exact",
    pool: int | None = None,
    seed: int | None = None,
) -> AdaptiveTrajectory:
    """Run ``steps`` sub-protocols under the switching rule.

    In monte-carlo mode ``pool`` identical copies are paired up; the numbers
    surviving the reductions and the "+1" post-selection are binomial draws,
    and the controller sees the observed "-1" frequency instead of the exact
    probability. All survivors share the exact conditional state.
    """
    controller = AdaptiveController(config)
    rng: np.random.Generator | None = None
    count = 0
    if mode == "monte-carlo":
        if pool is None or seed is None:
            raise ConfigError("monte-carlo mode needs both a pool size and a seed")
        rng = np.random.default_rng(seed)
        count = pool

    points: list[TrajectoryPoint] = []
    repetition = 1
    for step in range(steps):
        color = controller.next_color()
        result = subprotocol_keep(state, color, coloring)
        assert result.kept is not None
        p_minus = result.p_minus
        if rng is not None:
            pairs = count // 2
            all_p = int(rng.binomial(pairs, min(result.p_all_p, 1.0)))
            if all_p == 0:
                raise PoolExhaustedError(f"no pair passed the reductions at step {step} (pool {count})")
            kept = int(rng.binomial(all_p, result.p_keep))
            p_minus = 1.0 - kept / all_p
            count = kept
            if count < 2 and step < steps - 1:
                raise PoolExhaustedError(f"pool exhausted after step {step}: {count} states left")
        state = result.kept
        controller.observe(color, p_minus)
        points.append(
            TrajectoryPoint(repetition=repetition, step=step, color=color, fidelity=fidelity(state), p_keep=result.p_keep, p_minus=p_minus)
        )
        if controller.at_boundary:
            repetition += 1
    return AdaptiveTrajectory(
        points=points,
        final=state,
        switch_step=controller.switch_step,
        mode=mode,
        pool_remaining=count if rng is not None else None,
    )
