"""Hybrid point-value / cell-average schemes for 1D hyperbolic systems."""

from .errors import (CharacteristicsCrossedError, ConfigurationError, HybridAFError,
                     NotFoundError, PositivityError, SolverError, VacuumError)
from .mesh import Mesh, build_irregular, build_uniform
from .models import (Burgers, EulerEntropy, EulerPrimitive, GasParams, ScalarAdvection,
                     make_model)
from .mood import MoodConfig
from .problems import PROBLEMS, Problem, get_problem
from .spatial import SolutionField, residual
from .timestepping import SchemeConfig, compute_dt, run, step

__all__ = [
    "Burgers", "CharacteristicsCrossedError", "ConfigurationError", "EulerEntropy",
    "EulerPrimitive", "GasParams", "HybridAFError", "Mesh", "MoodConfig", "NotFoundError",
    "PROBLEMS", "PositivityError", "Problem", "ScalarAdvection", "SchemeConfig",
    "SolutionField", "SolverError", "VacuumError", "build_irregular", "build_uniform",
    "compute_dt", "get_problem", "make_model", "residual", "run", "step",
]
