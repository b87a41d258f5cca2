"""Upper-bound constructions and exact oracles for [k]-Roman domination on C_m x P_n."""

from .grid import Grid, Vertex, make_grid
from .verify import Labeling, VerifyReport, check, weight

__version__ = "0.1.0"

__all__ = ["Grid", "Vertex", "make_grid", "Labeling", "VerifyReport", "check", "weight"]
