"""Theta derivatives with rational characteristics through theta constants."""

from .characteristics import Characteristic, Phase, reduce, reduce_mirror
from .engine import BACKEND, TauPoint, theta, theta_d1, theta_d2
from .expression import ThetaExpression, ThetaMonomial, normalize
from .orbits import char_chain, orbit_of, partition
from .solver import DegenerateIdentity, PeriodTooLarge, solve_chain

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Characteristic",
    "DegenerateIdentity",
    "Phase",
    "PeriodTooLarge",
    "TauPoint",
    "ThetaExpression",
    "ThetaMonomial",
    "char_chain",
    "normalize",
    "orbit_of",
    "partition",
    "reduce",
    "reduce_mirror",
    "solve_chain",
    "theta",
    "theta_d1",
    "theta_d2",
]
