"""Solvers, kernels and generators for self-deleting s-t paths."""
from .core import (
    Instance,
    InstanceStats,
    PathCertificate,
    SelfDeletingGraph,
    SolveOutcome,
    Status,
    induced_subgraph,
    is_f_conforming,
    shorten_walk,
    stats,
    validate,
)
from .formats import parse_sdg, write_sdg
from .portfolio import PortfolioPolicy, solve

__all__ = [
    "Instance",
    "InstanceStats",
    "PathCertificate",
    "PortfolioPolicy",
    "SelfDeletingGraph",
    "SolveOutcome",
    "Status",
    "induced_subgraph",
    "is_f_conforming",
    "parse_sdg",
    "shorten_walk",
    "solve",
    "stats",
    "validate",
    "write_sdg",
]

__version__ = "0.1.0"
