"""Multicolor Ramsey numbers of double stars: constructions, detectors, bounds and search."""

from __future__ import annotations

__version__ = "0.1.0"

from .graph import (  # noqa: E402
    BipartiteColoring,
    Claim,
    ColorSubgraphView,
    ColoringError,
    CompleteColoring,
    DoubleStarPattern,
    Graph,
    Provenance,
    Witness,
    WitnessFormatError,
    color_degree,
    deserialize_witness,
    serialize_witness,
)
from .detect import contains_double_star, find_mono_double_star  # noqa: E402
from .constructions import verify_witness  # noqa: E402
from .search import ArrowResult, arrows, ramsey_number  # noqa: E402

__all__ = [
    "ArrowResult",
    "BipartiteColoring",
    "Claim",
    "ColorSubgraphView",
    "ColoringError",
    "CompleteColoring",
    "DoubleStarPattern",
    "Graph",
    "Provenance",
    "Witness",
    "WitnessFormatError",
    "arrows",
    "color_degree",
    "contains_double_star",
    "deserialize_witness",
    "find_mono_double_star",
    "ramsey_number",
    "serialize_witness",
    "verify_witness",
]
