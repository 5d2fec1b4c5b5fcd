"""One-cylinder permutation data: strata, elementary moves and their orbit classes.

Thin wrapper over the C++ extension; `classify` returns the report parsed
from JSON.
"""

import json as _json

from ._core import (
    CylError,
    Permutation,
    OrbitResult,
    Universe,
    MAX_ENUMERATION_LETTERS,
    __version__,
    apply_move,
    default_suspension,
    double_factorial_odd,
    enumerate,
    neighbors,
    orbit_closure,
    parse,
    partition,
    polygon,
    polygon_svg,
    reference_lookup,
    s_move,
    same_class,
    t_applicable,
    t_inverse,
    t_inverse_applicable,
    t_move,
    u_bottom,
    u_top,
)
from ._core import classify as _classify_json


def classify(kind, letters, mixed=False, moves=None, signature=None,
             ignore_marked_points=False, workers=1):
    """Partition the universe of canonical permutations; returns the report dict."""
    return _json.loads(_classify_json(kind, letters, mixed, moves, signature,
                                      ignore_marked_points, workers))


__all__ = [
    "CylError",
    "Permutation",
    "OrbitResult",
    "Universe",
    "MAX_ENUMERATION_LETTERS",
    "__version__",
    "apply_move",
    "classify",
    "default_suspension",
    "double_factorial_odd",
    "enumerate",
    "neighbors",
    "orbit_closure",
    "parse",
    "partition",
    "polygon",
    "polygon_svg",
    "reference_lookup",
    "s_move",
    "same_class",
    "t_applicable",
    "t_inverse",
    "t_inverse_applicable",
    "t_move",
    "u_bottom",
    "u_top",
]
