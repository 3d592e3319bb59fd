"""
Exceptions raised by fluxgo. All of them derive from ValueError, so code that guards
numerical routines with `except ValueError` keeps working.
"""

class FluxgoError(ValueError):
    """Base class. `kind` is the name recorded in sweep tables and reports."""
    @property
    def kind(self):
        return type(self).__name__

class ConfigError(FluxgoError):
    """Malformed or out-of-range configuration (CLI exit code 2)."""

class NonMonotone(FluxgoError):
    """A generating function with f'(x) <= 0."""

class PoleInDomain(FluxgoError):
    """A Moebius pole -a/b inside the declared domain."""

class InadmissibleShock(FluxgoError):
    """E_n*l >= hbar/(12 pi): the reciprocal branch would reach its pole."""

class KinkEvaluation(FluxgoError):
    """A pointwise derivative quantity requested at a declared kink."""

class DomainViolation(FluxgoError):
    """An evaluation point outside the domain of a generating function."""

class QuadratureFailure(FluxgoError):
    """Adaptive quadrature could not reach its tolerance."""

class TruncationFailure(FluxgoError):
    """A truncated integration window cannot meet the requested tail bound."""

class CoincidentPoints(FluxgoError):
    """Two-point functions at coincident arguments."""

class ExtrapolationDivergence(FluxgoError):
    """Successive point-splitting extrapolants grow instead of settling."""

class ScenarioOrderViolation(FluxgoError):
    """A switching scenario that breaks x_i <= 0 <= t_s <= x_f or admissibility."""

class OptimizerStall(FluxgoError):
    """The direct search ended without meeting the constraint tolerance."""
    def __init__(self,message,best=None):
        super().__init__(message)
        self.best=best
