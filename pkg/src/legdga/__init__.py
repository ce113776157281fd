"""Legendrian knot DGAs from fronts and Morse complex sequences, over Z/2."""

from .algebra import DgaElement
from .diagram import FrontDiagram, FrontError, Generator, parse_front
from .mcs import AFormMcs, HandleslideMark, Mcs, McsError, aform_from_set, enumerate_aform, parse_mcs, propagate

__all__ = [
    "AFormMcs",
    "DgaElement",
    "FrontDiagram",
    "FrontError",
    "Generator",
    "HandleslideMark",
    "Mcs",
    "McsError",
    "aform_from_set",
    "enumerate_aform",
    "parse_front",
    "parse_mcs",
    "propagate",
]
