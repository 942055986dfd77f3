"""JSON instance files.

One object per instance with a ``family`` key, ``n``, the family-specific
keys and ``order`` (the value order as a permutation of ``0..n-1``, best
first).
"""

from __future__ import annotations

import json
from pathlib import Path

from .graphic import GraphicMatroid, HypergraphicMatroid
from .laminar import LaminarMatroid
from .linear import LinearMatroid
from .matching import MatchingMatroid
from .transversal import ArcCapacityGammoid, GammoidMatroid, TransversalMatroid
from .uniform import PartitionMatroid, UniformMatroid

FAMILIES = ("uniform", "partition", "graphic", "hypergraphic", "laminar", "transversal",
            "gammoid", "semiplanar", "matching", "framed", "linear")


class InstanceError(ValueError):
    """Malformed instance data; ``path`` names the offending key."""

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


def _need(d: dict, key: str):
    if key not in d:
        raise InstanceError("missing key", key)
    return d[key]


def instance_from_dict(d: dict):
    if not isinstance(d, dict):
        raise InstanceError("instance must be a JSON object")
    fam = _need(d, "family")
    if fam not in FAMILIES:
        raise InstanceError(f"unknown family {fam!r}; expected one of {', '.join(FAMILIES)}", "family")
    order = d.get("order")
    try:
        if fam == "uniform":
            M = UniformMatroid(_need(d, "n"), _need(d, "rank"), order=order)
        elif fam == "partition":
            M = PartitionMatroid(_need(d, "parts"), d.get("caps"), order=order)
        elif fam == "graphic":
            M = GraphicMatroid(_need(d, "n_vertices"), _need(d, "edges"), order=order)
        elif fam == "hypergraphic":
            M = HypergraphicMatroid(_need(d, "n_vertices"), _need(d, "edges"), order=order)
        elif fam == "laminar":
            M = LaminarMatroid(_need(d, "n"), _need(d, "laminar_sets"), _need(d, "caps"), order=order)
        elif fam == "transversal":
            M = TransversalMatroid(_need(d, "n_left"), _need(d, "bipartite_adj"), order=order)
        elif fam == "gammoid":
            M = GammoidMatroid(_need(d, "n_nodes"), _need(d, "digraph_arcs"), _need(d, "sources"),
                               _need(d, "terminals"), mu=d.get("mu"), order=order)
        elif fam == "semiplanar":
            src = _need(d, "sources")
            if len(src) != 1:
                raise InstanceError("an arc-capacity gammoid has exactly one source", "sources")
            M = ArcCapacityGammoid(_need(d, "n_nodes"), _need(d, "digraph_arcs"), _need(d, "caps"), src[0],
                                   _need(d, "terminals"), positions=d.get("positions"), order=order)
        elif fam == "matching":
            M = MatchingMatroid(_need(d, "n_vertices"), _need(d, "edges"), _need(d, "terminals"), order=order)
        else:
            M = LinearMatroid(_need(d, "matrix"), d.get("field_p", 2), d.get("k"), order=order)
    except InstanceError:
        raise
    except (TypeError, ValueError) as exc:
        raise InstanceError(str(exc), fam) from exc
    if "n" in d and d["n"] != M.n:
        raise InstanceError(f"declared n={d['n']} but the data defines {M.n} elements", "n")
    return M


def instance_to_dict(M) -> dict:
    return M.to_dict()


def load_instance(path) -> object:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", str(path))
    return instance_from_dict(data)


def save_instance(M, path) -> None:
    Path(path).write_text(json.dumps(instance_to_dict(M), indent=1) + "\n")
