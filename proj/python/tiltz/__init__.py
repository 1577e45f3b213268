"""SL2 tilting quiver algebra engine.

Vertices are the integers v >= 1 (highest weight v - 1). Sets are written
as in the CLI, e.g. "{5,4,3|0}"; words as "e[11] U{1,0} D{1} e[13]".
"""

import json

from ._tiltz import (
    casimir_scalar,
    block,
    digit_set,
    down_hull,
    equiv_class,
    expand,
    generation,
    hom_basis,
    hom_dim,
    is_down_admissible,
    is_eve,
    is_up_admissible,
    minimal_down_stretches,
    minimal_up_stretches,
    normalize,
    reflect_down,
    reflect_up,
    value,
    variant_compose,
    variant_value,
)
from . import _tiltz

__all__ = [
    "block", "casimir_scalar", "center", "digit_set", "donkin", "down_hull", "equiv_class",
    "expand", "generation", "hom_basis", "hom_dim", "is_down_admissible", "is_eve",
    "is_up_admissible", "minimal_down_stretches", "minimal_up_stretches", "normalize",
    "normalize_json", "quiver", "reflect_down", "reflect_up", "value", "variant_center",
    "variant_compose", "variant_value",
]


def quiver(p, eve, bound, format="json"):
    """The block of `eve` in [1, bound]: a dict for json, a string for dot."""
    out = _tiltz._quiver(p, eve, bound, format)
    return json.loads(out) if format == "json" else out


def normalize_json(word, p, weights=False):
    return json.loads(_tiltz._normalize_json(word, p, weights))


def center(p, eve, bound, margin, solver=False):
    """Centrality report for the block of `eve` truncated at `bound`."""
    return json.loads(_tiltz._center(p, eve, bound, margin, solver))


def variant_center(kind, base, n, margin, literal=False):
    return json.loads(_tiltz._variant_center(kind, base, n, margin, literal))


def donkin(v, p):
    return json.loads(_tiltz._donkin(v, p))
