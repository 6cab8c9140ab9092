from .render import (
    CURVES_HEADER,
    HEATMAP_HEADER,
    PlotError,
    PlotSpec,
    SchemaError,
    marked_critical_column,
    render,
)

__all__ = [
    "CURVES_HEADER",
    "HEATMAP_HEADER",
    "PlotError",
    "PlotSpec",
    "SchemaError",
    "marked_critical_column",
    "render",
]
__version__ = "0.1.0"
