__all__ = [
    "LineCoords",
    "Segment",
    "Circle",
    "Arc",
    "Primitive",
    "IntersectionResult",
    "make_arc",
    "ConvexDomain",
    "Disk",
    "ConvexPolygon",
    "Reuleaux",
    "domain_from_dict",
    "RectifiableSet",
    "SteinhausParams",
    "DeviationTarget",
    "DiscrepancyReport",
    "Method",
    "PropositionCheck",
    "ScalingRow",
    "ScalingStudy",
    "SinSumResult",
    "LongimeterExtremes",
    "SearchConfig",
    "EvaluatorChoice",
    "ScheduleChoice",
    "HistoryEntry",
    "RunManifest",
]

from .geometry import Arc, Circle, IntersectionResult, LineCoords, Primitive, Segment, make_arc
from .domain import ConvexDomain, ConvexPolygon, Disk, Reuleaux, domain_from_dict
from .rset import RectifiableSet, SteinhausParams
from .report import (
    DeviationTarget,
    DiscrepancyReport,
    LongimeterExtremes,
    Method,
    PropositionCheck,
    ScalingRow,
    ScalingStudy,
    SinSumResult,
)
from .run import EvaluatorChoice, HistoryEntry, RunManifest, ScheduleChoice, SearchConfig
