"""Bound states, second-sheet resonances and guided-channel scattering for a
2D Schroedinger operator with a delta interaction on a line and point
interactions off it."""

import math

from ._leakywire import *  # noqa: F401,F403
from ._leakywire import (  # noqa: F401
    ConfigError,
    ConvergenceError,
    DomainError,
    Error,
    PoleOnPathError,
    RegionError,
    ThresholdError,
)

_PSI1 = -0.5772156649015329


def beta_for_level(eps):
    """Coupling beta whose isolated point-interaction level is eps < 0."""
    if not eps < 0:
        raise ValueError("eps must be negative")
    return (_PSI1 - 0.5 * math.log(-eps / 4.0)) / (2.0 * math.pi)
