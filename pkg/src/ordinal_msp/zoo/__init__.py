"""Concrete matroid families and their canonical witnesses."""

from .graphic import GraphicMatroid, HypergraphicMatroid, canonical_orientation, is_forest
from .io import FAMILIES, InstanceError, instance_from_dict, instance_to_dict, load_instance, save_instance
from .laminar import LaminarMatroid, fibers, pre_nex, representative
from .linear import LinearMatroid, frame_injection, fundamental_circuit, gf_rank
from .matching import MatchingMatroid
from .transversal import (ArcCapacityGammoid, GammoidMatroid, TransversalMatroid, canonical_matching,
                          canonical_path_system, laminar_as_gammoid)
from .uniform import PartitionMatroid, UniformMatroid

__all__ = [
    "ArcCapacityGammoid", "FAMILIES", "GammoidMatroid", "GraphicMatroid", "HypergraphicMatroid",
    "InstanceError", "LaminarMatroid", "LinearMatroid", "MatchingMatroid", "PartitionMatroid",
    "TransversalMatroid", "UniformMatroid", "canonical_matching", "canonical_orientation",
    "canonical_path_system", "fibers", "frame_injection", "fundamental_circuit", "gf_rank",
    "instance_from_dict", "instance_to_dict", "is_forest", "laminar_as_gammoid", "load_instance",
    "pre_nex", "representative", "save_instance",
]
