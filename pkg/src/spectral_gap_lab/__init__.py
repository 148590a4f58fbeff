"""Numerical laboratory for the Neumann spectral gap of 1D Schrodinger operators."""
from .bounds import BoundReport, FitResult, bound_report, fit_exponent
from .eigensolver import EigenResult, discretize, lowest_two, solve_extrapolated
from .potentials import Kind, PotentialSpec, evaluate, validate_hypotheses
from .stepsolver import StepProblem, quantization_residual, separation, solve_ground

__all__ = [
    "BoundReport", "EigenResult", "FitResult", "Kind", "PotentialSpec", "StepProblem",
    "bound_report", "discretize", "evaluate", "fit_exponent", "lowest_two",
    "quantization_residual", "separation", "solve_extrapolated", "solve_ground",
    "validate_hypotheses",
]
__version__ = "0.1.0"
