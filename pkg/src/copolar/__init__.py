"""Copolar duality, copolar addition and covolumes of cobounded convex sets."""

from .errors import (
    CopolarError,
    DimensionMismatch,
    DimensionOverflow,
    EmptyInput,
    EmptySublevel,
    Infeasible,
    NonPositiveNormal,
    NotCobounded,
    TOutOfRange,
    TruncationTooSmall,
)
from .geometry import (
    CopolarBody,
    DualGenerators,
    VertexSet,
    body,
    canonicalize,
    canonicalize_generators,
    copolar_combination,
    copolar_of_body,
    copolar_of_dual,
    copolar_sum,
    covolume,
    hull_complete,
    minkowski_combination,
    multiplicative_combination,
    support_value,
    vertex_enumeration,
)
from .newton import ExponentSet, newton_number, newton_polyhedron
from .transforms import (
    GridBox,
    GridFn,
    ReinhardtSpec,
    capacity,
    extremal_convex_image,
    extremal_gap,
    geodesic_convex_image,
    legendre_duality_residual,
    legendre_grid,
    reinhardt_volume,
)

__version__ = "0.1.0"
