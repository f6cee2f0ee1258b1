from __future__ import annotations

import itertools
from typing import Any

from pydantic import model_validator

from hyperpurify.base_model import FrozenModel
from hyperpurify.errors import SequenceParseError

BASELINE_SEQUENCE = "ABC-CAB-BCA"


class Sequence(FrozenModel):
    """Ordered colors, one sub-protocol per step; printed in dash-separated triples."""

    steps: tuple[str, ...]

    @model_validator(mode="before")
    @classmethod
    def _from_text(cls, data: Any) -> Any:
        if isinstance(data, str):
            return {"steps": _split(data)}
        if isinstance(data, dict) and isinstance(data.get("steps"), str):
            return {**data, "steps": _split(data["steps"])}
        return data

    @model_validator(mode="after")
    def _check_steps(self) -> "Sequence":
        if not self.steps:
            raise SequenceParseError("a sequence needs at least one step")
        for s in self.steps:
            if len(s) != 1 or not s.isalpha() or not s.isupper():
                raise SequenceParseError(f"steps are single upper-case color letters, got {s!r}")
        return self

    @classmethod
    def parse(cls, text: str) -> "Sequence":
        return cls(steps=_split(text))

    def __str__(self) -> str:
        text = "".join(self.steps)
        return "-".join(text[i : i + 3] for i in range(0, len(text), 3))


def _split(text: str) -> tuple[str, ...]:
    cleaned = text.replace("-", "").replace(" ", "").strip()
    if not cleaned:
        raise SequenceParseError(f"empty sequence {text!r}")
    if not cleaned.isalpha():
        raise SequenceParseError(f"unexpected characters in sequence {text!r}")
    return tuple(cleaned)


def triple_permutation_space(length: int = 9, palette: str = "ABC") -> list[Sequence]:
    """Concatenations of permutations of the palette, e.g. 6^3 = 216 candidates of length 9."""
    k = len(palette)
    if length % k:
        raise SequenceParseError(f"length {length} is not a multiple of the palette size {k}")
    perms = ["".join(p) for p in itertools.permutations(palette)]
    return [Sequence.parse("".join(combo)) for combo in itertools.product(perms, repeat=length // k)]


def full_space(length: int = 9, palette: str = "ABC") -> list[Sequence]:
    return [Sequence.parse("".join(combo)) for combo in itertools.product(palette, repeat=length)]
