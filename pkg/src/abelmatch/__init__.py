"""Matroids over abelian groups and their matchability."""

from .groups import INF, GroupCtx, OrderedSubset
from .matching import MatchReport, MatchWitness, group_matching, matroid_matched
from .matroids import (
    Matroid,
    PanhandleParams,
    SchubertParams,
    make_from_bases,
    make_panhandle,
    make_schubert,
    make_uniform,
)

__version__ = "0.1.0"

__all__ = [
    "INF",
    "GroupCtx",
    "OrderedSubset",
    "Matroid",
    "MatchReport",
    "MatchWitness",
    "PanhandleParams",
    "SchubertParams",
    "group_matching",
    "make_from_bases",
    "make_panhandle",
    "make_schubert",
    "make_uniform",
    "matroid_matched",
]
