from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Literal, Optional

from ..errors import InvalidArgumentError


@dataclass(frozen=True)
class EvaluatorChoice:
    kind: Literal["mc", "scan"] = "mc"
    samples: int = 20000
    theta_count: int = 256

    def __post_init__(self) -> None:
        if self.kind not in ("mc", "scan"):
            raise InvalidArgumentError(f"Unknown evaluator: {self.kind!r}")
        if self.kind == "mc" and self.samples < 1:
            raise InvalidArgumentError("Monte Carlo evaluator needs samples >= 1")
        if self.kind == "scan" and self.theta_count < 4:
            raise InvalidArgumentError("Scan evaluator needs theta_count >= 4")


@dataclass(frozen=True)
class ScheduleChoice:
    kind: Literal["greedy", "simulated_annealing"] = "greedy"
    t0: float = 1.0
    cooling: float = 0.999

    def __post_init__(self) -> None:
        if self.kind not in ("greedy", "simulated_annealing"):
            raise InvalidArgumentError(f"Unknown schedule: {self.kind!r}")
        if self.kind == "simulated_annealing" and not (self.t0 > 0 and 0 < self.cooling <= 1):
            raise InvalidArgumentError("Annealing needs t0 > 0 and cooling in (0, 1]")

    def temperature(self, step: int) -> float:
        return self.t0 * self.cooling ** step


@dataclass(frozen=True)
class SearchConfig:
    segment_count: int
    length_budget: float
    iterations: int
    proposal_scale: float = 0.05
    seed: int = 0
    evaluator: EvaluatorChoice = field(default_factory=EvaluatorChoice)
    schedule: ScheduleChoice = field(default_factory=ScheduleChoice)
    final_theta_count: int = 1024

    def __post_init__(self) -> None:
        if self.segment_count < 1:
            raise InvalidArgumentError("segment_count must be >= 1")
        if not (math.isfinite(self.length_budget) and self.length_budget > 0):
            raise InvalidArgumentError("length_budget must be positive")
        if self.iterations < 0:
            raise InvalidArgumentError("iterations must be >= 0")
        if not self.proposal_scale > 0:
            raise InvalidArgumentError("proposal_scale must be positive")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class HistoryEntry:
    iteration: int
    objective: float
    accepted: bool
    current: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class RunManifest:
    """What was run, with which configuration, and where it wrote."""

    command: str
    argv: List[str]
    config: Dict[str, Any]
    version: str
    seeds: List[int] = field(default_factory=list)
    inputs: List[str] = field(default_factory=list)
    outputs: List[str] = field(default_factory=list)
    started_at: Optional[str] = None
    finished_at: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunManifest":
        return cls(
            command=str(data["command"]),
            argv=[str(a) for a in data.get("argv", [])],
            config=dict(data.get("config") or {}),
            version=str(data.get("version", "")),
            seeds=[int(s) for s in data.get("seeds", [])],
            inputs=[str(p) for p in data.get("inputs", [])],
            outputs=[str(p) for p in data.get("outputs", [])],
            started_at=data.get("started_at"),
            finished_at=data.get("finished_at"),
        )
