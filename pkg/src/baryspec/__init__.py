"""Barycentric refinements of finite simple graphs and their spectra."""

from baryspec.errors import CapacityError, GraphError, NumericError
from baryspec.graph import SimpleGraph, degree_sequence, generate, inductive_dimension, make_graph
from baryspec.complex import CliqueComplex, build_complex, euler_characteristic
from baryspec.barycentric import RefinedGraph, dimension_coloring, refine, refine_iter
from baryspec.operators import (
    OperatorMatrix,
    Spectrum,
    betti_numbers,
    dirac,
    eigenvalues,
    exterior_derivative,
    hodge_laplacian,
    scalar_laplacian,
)
from baryspec.spectral import SpectrumProfile, profile
from baryspec.counting import evolve, stirling2, transfer_matrix

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "CliqueComplex",
    "GraphError",
    "NumericError",
    "OperatorMatrix",
    "RefinedGraph",
    "SimpleGraph",
    "Spectrum",
    "SpectrumProfile",
    "betti_numbers",
    "build_complex",
    "degree_sequence",
    "dimension_coloring",
    "dirac",
    "eigenvalues",
    "euler_characteristic",
    "evolve",
    "exterior_derivative",
    "generate",
    "hodge_laplacian",
    "inductive_dimension",
    "make_graph",
    "profile",
    "refine",
    "refine_iter",
    "scalar_laplacian",
    "stirling2",
    "transfer_matrix",
]
