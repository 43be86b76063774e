"""Exact computations with G-parking function ideals, their skeleton
subideals, spherical parking functions and DFS burning bijections."""

from skelpf.errors import (
    DomainError,
    NotArtinianError,
    NotParkingFunctionError,
    NotSphericalError,
    PhiUndefinedError,
    SkelpfError,
)
from skelpf.graph import (
    RootedMultigraph,
    complete,
    complete_ab,
    complete_bipartite_ab,
    delete_all_between,
    delete_edge,
    delete_root_edges,
    delete_vertex,
    edges_leaving,
    genus,
    is_connected,
    laplacian_det,
    signless_laplacian_det,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "NotArtinianError",
    "NotParkingFunctionError",
    "NotSphericalError",
    "PhiUndefinedError",
    "RootedMultigraph",
    "SkelpfError",
    "complete",
    "complete_ab",
    "complete_bipartite_ab",
    "delete_all_between",
    "delete_edge",
    "delete_root_edges",
    "delete_vertex",
    "edges_leaving",
    "genus",
    "is_connected",
    "laplacian_det",
    "signless_laplacian_det",
]
