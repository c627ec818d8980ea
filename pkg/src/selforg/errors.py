"""Exception types raised by the solvers.

Every error carries a short machine-readable ``code`` used by the CLI when
reporting failures.
"""

from __future__ import annotations


class SelforgError(ValueError):
    code = "error"


class ConfigError(SelforgError):
    code = "config_invalid"


class BracketError(SelforgError):
    code = "bracket_invalid"


class EvaluationError(SelforgError):
    code = "evaluation_failure"


class ResolutionError(SelforgError):
    code = "insufficient_resolution"

    def __init__(self, message: str, suggested_panels: int):
        super().__init__(message)
        self.suggested_panels = suggested_panels


class SingularScalingError(SelforgError):
    code = "singular_scaling"


class DegenerateEigenvalueError(SelforgError):
    code = "degenerate_eigenvalue"


class PerturbationBreakdown(SelforgError):
    code = "perturbation_invalid"


class InfiniteQError(SelforgError):
    code = "infinite_q"


class NoPeriodError(SelforgError):
    code = "no_period"


class NotPeriodicModeError(SelforgError):
    code = "not_periodic_mode"


class ParityError(SelforgError):
    code = "unsupported_parity"


class FraunhoferZoneError(SelforgError):
    code = "fraunhofer_precondition"


class No3DModeError(SelforgError):
    code = "no_3d_mode"


class ConvergenceError(SelforgError, RuntimeError):
    code = "solver_failure"
