"""Generative models and analytics for venture-capital syndication networks."""

__version__ = "0.1.0"

from .graph import SyndicationGraph, density, second_order, shortest_distance  # noqa: E402
from .kernels import BACKEND  # noqa: E402
from .sim import SimulationConfig, growth_schedule, run  # noqa: E402

__all__ = [
    "BACKEND",
    "SimulationConfig",
    "SyndicationGraph",
    "density",
    "growth_schedule",
    "run",
    "second_order",
    "shortest_distance",
]
