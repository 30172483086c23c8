"""Human-readable command output (rich tables on stderr)."""
from __future__ import annotations

import math
from typing import Any, Dict, Iterable, Mapping

from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from ..models import DiscrepancyReport, ScalingStudy

console = Console(stderr=True)


def _fmt(value: Any) -> str:
    if isinstance(value, float):
        if math.isinf(value):
            return "∞"
        return f"{value:.6g}"
    return str(value)


def report_table(report: DiscrepancyReport, title: str = "Buffon discrepancy") -> Table:
    table = Table(title=title, show_header=False)
    table.add_column("field", style="bold")
    table.add_column("value")
    table.add_row("sup", _fmt(report.sup_value))
    table.add_row("certified gap", _fmt(report.certified_gap))
    table.add_row("method", report.method.value)
    if report.witness is not None:
        table.add_row("witness", f"θ={report.witness.theta:.9g}  p={report.witness.offset:.9g}")
        table.add_row("witness count / chord", f"{report.witness_count} / {_fmt(report.witness_chord)}")
    table.add_row("factor", _fmt(report.factor))
    table.add_row("length", _fmt(report.realized_length))
    table.add_row("angles / samples", f"{report.theta_samples} / {report.mc_samples}")
    table.add_row("degenerate skipped", str(report.degenerate_lines_skipped))
    return table


def scaling_table(study: ScalingStudy) -> Table:
    table = Table(title="Steinhaus scaling")
    for col in ("L", "n", "ε", "realized", "sup", "sup/L^(1/3)", "pencil"):
        table.add_column(col, justify="right")
    for row in study.rows:
        table.add_row(
            _fmt(row.length),
            str(row.n),
            _fmt(row.epsilon),
            _fmt(row.realized_length),
            _fmt(row.sup_value),
            _fmt(row.normalized),
            "-" if row.pencil_deviation is None else _fmt(row.pencil_deviation),
        )
    if study.slope is not None:
        table.caption = f"slope {study.slope:.4f}, c ≈ {study.c_estimate:.4f}"
    else:
        table.caption = f"fit needs three or more lengths; c ≈ {study.c_estimate:.4f}"
    return table


def verify_panel(suite: str, passed: bool, checks: Iterable[Mapping[str, Any]]) -> Panel:
    table = Table(show_header=True)
    table.add_column("check")
    table.add_column("value", justify="right")
    table.add_column("limit", justify="right")
    table.add_column("ok", justify="center")
    for c in checks:
        table.add_row(str(c["name"]), _fmt(c.get("value")), _fmt(c.get("limit")), "✅" if c["ok"] else "❌")
    status = Text("PASS", style="bold green") if passed else Text("FAIL", style="bold red")
    return Panel(table, title=f"verify {suite}", subtitle=status)


def settings_table(cfg: Dict[str, Any]) -> Table:
    table = Table(title="crofton settings", show_header=False)
    table.add_column("key", style="bold")
    table.add_column("value")

    def walk(prefix: str, node: Any) -> None:
        if isinstance(node, dict):
            for k, v in node.items():
                walk(f"{prefix}.{k}" if prefix else str(k), v)
        else:
            table.add_row(prefix, _fmt(node))

    walk("", cfg)
    return table
