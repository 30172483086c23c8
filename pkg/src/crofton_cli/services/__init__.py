__all__ = [
    "count_intersections",
    "chord_length",
    "steinhaus_clip",
    "steinhaus_for_length",
    "disk_construction",
    "deviation",
    "sup_discrepancy_scan",
    "sup_discrepancy_mc",
    "crofton_integrals",
    "optimize",
    "parse_domain",
    "EvaluatorSettings",
]

from .geom import chord_length, count_intersections
from .construct import disk_construction, steinhaus_clip, steinhaus_for_length
from .discrepancy import crofton_integrals, deviation, sup_discrepancy_mc, sup_discrepancy_scan
from .search import optimize
from .domain_spec import parse_domain
from .config import EvaluatorSettings
