"""Experiment configuration loaded from one JSON file per experiment."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Literal

from pydantic import ConfigDict, Field, ValidationError

from hyperpurify.base_model import BaseModel
from hyperpurify.errors import ConfigError
from hyperpurify.hypergraph import Coloring, EdgeSet, parse_hypergraph
from hyperpurify.schedule import ADAPTIVE_PRESETS, BASELINE_SEQUENCE, AdaptiveConfig, ConvergenceSettings, Sequence
from hyperpurify.states import HBState, NoiseKind, NoiseSpec, basis_projector, mixture, noisy_target, pure_target
from hyperpurify.utils.dict_tools import merge_dict_data


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True, validate_assignment=True)


class NoiseConfig(StrictModel):
    kind: NoiseKind = "white"
    p: float | None = None


class AdaptiveSection(StrictModel):
    """Either a ``preset`` noise kind from the published table or all four fields."""

    preset: NoiseKind | None = None
    s1: str | None = None
    s2: str | None = None
    a: tuple[float, float, float] | None = None
    b: float | None = None
    warmup_passes: int | None = None

    def resolve(self) -> AdaptiveConfig:
        base = ADAPTIVE_PRESETS[self.preset].model_dump() if self.preset else {}
        overrides = {k: v for k, v in {"s1": self.s1, "s2": self.s2, "a": self.a, "b": self.b, "warmup_passes": self.warmup_passes}.items() if v is not None}
        merged = {**base, **overrides}
        missing = {"s1", "s2", "a", "b"} - merged.keys()
        if missing:
            raise ConfigError(f"adaptive section needs a preset or the fields {sorted(missing)}")
        return AdaptiveConfig.model_validate(merged)


class RunConfig(StrictModel):
    name: str | None = None
    label: str | None = None
    target: str = "3; {1,2,3}"
    coloring: str = "ABC"
    noise: NoiseConfig = Field(default_factory=NoiseConfig)
    sequence: str = BASELINE_SEQUENCE
    adaptive: AdaptiveSection | None = None
    mode: Literal["exact", "monte-carlo"] = "exact"
    repetitions: int = Field(default=9, gt=0)
    steps: int = Field(default=27, gt=0)
    pool: int | None = Field(default=None, gt=1)
    seed: int | None = Field(default=None, ge=0)
    rounds: int = Field(default=3, gt=0)
    recycle: bool = False
    f0: float | None = None
    f0_grid: list[float] = Field(default_factory=list)
    max_extra_steps: int = 12
    max_depth: int = 1
    space: Literal["triple-perms", "full"] = "triple-perms"
    length: int = 9
    expected: float | None = None
    reference: Literal["none", "h0-h001"] = "none"
    convergence: ConvergenceSettings = Field(default_factory=ConvergenceSettings)
    cells: list[dict[str, Any]] = Field(default_factory=list)

    def edge_set(self) -> EdgeSet:
        return parse_hypergraph(self.target)

    def parsed_coloring(self) -> Coloring:
        return Coloring.parse(self.coloring)

    def parsed_sequence(self) -> Sequence:
        return Sequence.parse(self.sequence)

    def schedule(self) -> Sequence | AdaptiveConfig:
        return self.adaptive.resolve() if self.adaptive is not None else self.parsed_sequence()

    def initial_state(self) -> HBState:
        target = self.edge_set()
        if self.noise.p is None:
            return pure_target(target)
        return noisy_target(target, NoiseSpec(kind=self.noise.kind, p=self.noise.p))

    def reference_state(self) -> HBState | None:
        if self.reference == "none":
            return None
        target = self.edge_set()
        return mixture([basis_projector(target, 0), basis_projector(target, 1)], [0.5, 0.5])

    def expand_cells(self) -> list["RunConfig"]:
        """One config per cell, each cell deep-merged over the base; the base alone if there are none."""
        if not self.cells:
            return [self]
        base = self.model_dump(exclude={"cells"}, exclude_none=True)
        return [RunConfig.model_validate(merge_dict_data(base, cell)) for cell in self.cells]


def load_config(path: str | Path) -> RunConfig:
    try:
        raw = json.loads(Path(path).read_text())
    except FileNotFoundError as e:
        raise ConfigError(f"config file {path} not found") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"config file {path} is not valid JSON: {e}") from e
    try:
        return RunConfig.model_validate(raw)
    except ValidationError as e:
        raise ConfigError(f"invalid config {path}:\n{e}") from e
