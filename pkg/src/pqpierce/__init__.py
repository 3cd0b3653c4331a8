"""Exact-arithmetic piercing of (4,3)-families of convex polygons by nine points."""
from .errors import (
    ConstructionIncomplete,
    DomainError,
    GenerationError,
    InvariantViolation,
    OrderAmbiguous,
    PQPierceError,
    PreconditionError,
)
from .geom import ConvexPolygon, Point, Q, pt
from .instance import Family, check_43, generate_cluster, generate_random_43
from .oracle import min_piercing, verify_piercing
from .pierce943 import PiercingCertificate, pierce_all

__all__ = [
    "ConstructionIncomplete", "ConvexPolygon", "DomainError", "Family", "GenerationError",
    "InvariantViolation", "OrderAmbiguous", "PQPierceError", "PiercingCertificate", "Point",
    "PreconditionError", "Q", "check_43", "generate_cluster", "generate_random_43",
    "min_piercing", "pierce_all", "pt", "verify_piercing",
]
