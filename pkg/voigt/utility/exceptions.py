"""
Exceptions raised by voigt. Library code raises these; only the command line
layer turns them into exit statuses.
"""


class voigtexception(Exception):
    """
    Base of all voigt errors.
    """


class griderror(voigtexception, ValueError):
    """
    Invalid grid construction.
    """


class parametererror(voigtexception, ValueError):
    """
    A parameter lies outside its admissible range.
    """


class hypothesiserror(voigtexception):
    """
    A stability hypothesis is violated by the given configuration.
    """


class stabilityerror(hypothesiserror):
    """
    No stability certificate can be issued (e.g. q(0) >= p).
    """


class certificateerror(voigtexception):
    """
    A certificate could not be completed within the configured limits.
    """


class functionalerror(voigtexception):
    """
    The requested functional is not available for the forcing.
    """


class integratorerror(voigtexception):
    """
    The time integrator failed.
    """


class forcingerror(voigtexception):
    """
    The forcing evaluated to a non-finite value.
    """

    def __init__(self, x: float, t: float, value: float) -> None:
        super().__init__(f"Non-finite forcing {value} at x={x}, t={t}")
        self.x = x
        self.t = t


class configerror(voigtexception, ValueError):
    """
    Invalid run configuration, carrying the dotted path of the field.
    """

    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path}: {message}")
        self.path = path
