"""framelab: finite distributive lattices, Priestley spaces, chain frames.

A workbench for the order-theoretic side of pointfree topology on finite
carriers: exhaustive poset enumeration, Birkhoff representation, the
way-below / well-inside operator suite, Priestley-space operator calculus
(kernel, core, regular part, center, spatial part), symbolic complete chains
as infinite witnesses, and per-theorem validators run over a generated corpus.
"""

from .errors import (
    BindingError,
    CapacityError,
    ConsistencyError,
    CycleError,
    DistributivityError,
    FrameLabError,
    IsoFailure,
    NormalizationError,
    NotFrameHom,
    NotLatticeError,
    UnknownPredicate,
)
from .posets import (
    MonotoneMap,
    PointSet,
    Poset,
    all_upsets,
    compose_maps,
    down_closure,
    enumerate_posets,
    isomorphic,
    max_elements,
    min_elements,
    monotone_maps,
    up_closure,
)

__all__ = [
    "BindingError",
    "CapacityError",
    "ConsistencyError",
    "CycleError",
    "DistributivityError",
    "FrameLabError",
    "IsoFailure",
    "NormalizationError",
    "NotFrameHom",
    "NotLatticeError",
    "UnknownPredicate",
    "MonotoneMap",
    "PointSet",
    "Poset",
    "all_upsets",
    "compose_maps",
    "down_closure",
    "enumerate_posets",
    "isomorphic",
    "max_elements",
    "min_elements",
    "monotone_maps",
    "up_closure",
]
