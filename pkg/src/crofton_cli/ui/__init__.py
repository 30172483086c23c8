__all__ = [
    "RenderStyle",
    "SetRenderer",
    "render_svg",
    "console",
    "report_table",
    "scaling_table",
    "verify_panel",
    "settings_table",
]

from .svg import RenderStyle, SetRenderer, render_svg
from .console import console, report_table, scaling_table, settings_table, verify_panel
