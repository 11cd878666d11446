"""Exact symbolic checks for metric globally framed f-structures."""

from .scalars import Chart, ScalarField
from .specfile import ManifoldSpec, builtin_fixture, load_manifold_spec, parse_manifold_spec
from .structure import GffStructure, classify

__all__ = [
    "Chart",
    "ScalarField",
    "ManifoldSpec",
    "builtin_fixture",
    "load_manifold_spec",
    "parse_manifold_spec",
    "GffStructure",
    "classify",
]
__version__ = "0.1.0"
