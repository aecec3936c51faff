"""
Geometry Errors Module
Exception hierarchy shared by the geometry kernels, analysis modules and CLI
"""


class GeometryError(Exception):
    """Base class for failures in orthoscheme computations"""

    code = "geometry_error"

    @property
    def detail(self) -> str:
        return str(self)


class DomainError(GeometryError, ValueError):
    """Parameters or vectors outside the domain of an operation"""

    code = "domain_error"


class RegimeError(GeometryError):
    """A formula was requested outside the combinatorial regime it covers"""

    code = "regime_error"


class BracketError(RegimeError):
    """Root of the derivative could not be bracketed"""

    code = "bracket_error"


class DegeneratePolytopeError(RegimeError):
    """Half-space system is infeasible or no Monte-Carlo sample was accepted"""

    code = "degenerate_polytope"
