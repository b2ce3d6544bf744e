"""Exact filtered cohomology, A-infinity products and symbol checks for symplectic cochain models."""

from .exterior import Form, wedge
from .filtered import FilteredComplex, filtered_cohomology, primitive_cohomologies
from .model import CORPUS, Model, ModelError, bundled_model, load_model, resolve_model
from .sl2 import SymplecticStructure

__all__ = [
    "CORPUS",
    "FilteredComplex",
    "Form",
    "Model",
    "ModelError",
    "SymplecticStructure",
    "bundled_model",
    "filtered_cohomology",
    "load_model",
    "primitive_cohomologies",
    "resolve_model",
    "wedge",
]

__version__ = "0.1.0"
