from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from .domain import ConvexDomain
from .geometry import LineCoords


class Method(str, Enum):
    BREAKPOINT_SCAN = "breakpoint_scan"
    MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True)
class DeviationTarget:
    """factor * chord is the count a line should see; factor = (2/pi) L / area."""

    factor: float
    domain: ConvexDomain
    realized_length: float

    @classmethod
    def for_length(cls, length: float, domain: ConvexDomain) -> "DeviationTarget":
        return cls(2.0 / math.pi * float(length) / domain.area, domain, float(length))

    @classmethod
    def with_factor(cls, factor: float, domain: ConvexDomain, length: float = 0.0) -> "DeviationTarget":
        return cls(float(factor), domain, float(length))


@dataclass(frozen=True)
class DiscrepancyReport:
    sup_value: float
    witness: Optional[LineCoords]
    method: Method
    theta_samples: int
    mc_samples: int
    certified_gap: float
    degenerate_lines_skipped: int
    factor: float
    realized_length: float
    witness_count: Optional[int] = None
    witness_chord: Optional[float] = None
    metadata: Dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def upper_bound(self) -> float:
        return self.sup_value + self.certified_gap

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sup_value": self.sup_value,
            "witness": None if self.witness is None else {"theta": self.witness.theta, "offset": self.witness.offset},
            "method": self.method.value,
            "theta_samples": self.theta_samples,
            "mc_samples": self.mc_samples,
            "certified_gap": None if math.isinf(self.certified_gap) else self.certified_gap,
            "degenerate_lines_skipped": self.degenerate_lines_skipped,
            "factor": self.factor,
            "realized_length": self.realized_length,
            "witness_count": self.witness_count,
            "witness_chord": self.witness_chord,
            "metadata": dict(self.metadata),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DiscrepancyReport":
        w = data.get("witness")
        gap = data.get("certified_gap")
        return cls(
            sup_value=float(data["sup_value"]),
            witness=None if w is None else LineCoords(w["theta"], w["offset"]),
            method=Method(data["method"]),
            theta_samples=int(data.get("theta_samples", 0)),
            mc_samples=int(data.get("mc_samples", 0)),
            certified_gap=math.inf if gap is None else float(gap),
            degenerate_lines_skipped=int(data.get("degenerate_lines_skipped", 0)),
            factor=float(data.get("factor", 0.0)),
            realized_length=float(data.get("realized_length", 0.0)),
            witness_count=data.get("witness_count"),
            witness_chord=data.get("witness_chord"),
            metadata=dict(data.get("metadata") or {}),
        )


@dataclass(frozen=True)
class PropositionCheck:
    holds: bool
    margin: float
    lhs: float
    rhs: float
    c: float
    x: float


@dataclass(frozen=True)
class ScalingRow:
    length: float
    n: int
    epsilon: float
    realized_length: float
    sup_value: float
    certified_gap: float
    primitive_count: int
    pencil_deviation: Optional[float] = None

    @property
    def normalized(self) -> float:
        return self.sup_value / self.length ** (1.0 / 3.0)


@dataclass(frozen=True)
class ScalingStudy:
    rows: List[ScalingRow]
    slope: Optional[float]
    intercept: Optional[float]
    residuals: List[float]
    c_estimate: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rows": [asdict(r) for r in self.rows],
            "slope": self.slope,
            "intercept": self.intercept,
            "residuals": list(self.residuals),
            "c_estimate": self.c_estimate,
        }


@dataclass(frozen=True)
class SinSumResult:
    n: int
    theta: float
    direct_value: float
    fourier_value: float
    tail_bound: float


@dataclass(frozen=True)
class LongimeterExtremes:
    n: int
    min_rel_error: float
    max_rel_error: float
    argmin_theta: float
    argmax_theta: float
