"""Exception hierarchy.

Every error carries the name of the module it originated from so the CLI can
print ``module: ErrorName: message``.  Errors are split into input problems
(exit code 1) and axiom/model violations (exit code 2).
"""


class KRError(Exception):
    """Base class for all errors raised by krtool."""

    module = "krtool"
    exit_code = 1

    def __init__(self, message="", *, module=None):
        super().__init__(message)
        if module is not None:
            self.module = module

    @property
    def label(self):
        return type(self).__name__

    def describe(self):
        msg = str(self)
        head = f"{self.module}: {self.label}"
        return f"{head}: {msg}" if msg else head


class InputError(KRError):
    exit_code = 1


class ModelViolation(KRError):
    exit_code = 2


# surface_mesh
class ParseError(InputError):
    module = "surface_mesh"


class NotManifold(InputError):
    module = "surface_mesh"


class Disconnected(InputError):
    module = "surface_mesh"


# pl_critical
class BoundaryVertex(InputError):
    module = "pl_critical"


class AxiomViolation(ModelViolation):
    """An axiom required by the theory does not hold for the input.

    ``axiom`` names it: ``AxBd``, ``AxSPN`` or ``AxFibr-criterion``.
    """

    axiom = "?"

    def __init__(self, message="", *, axiom=None, module=None):
        super().__init__(message, module=module)
        if axiom is not None:
            self.axiom = axiom

    @property
    def label(self):
        name = type(self).__name__
        if name == "AxiomViolation":
            return f"AxiomViolation[{self.axiom}]"
        return f"{self.axiom}/{name}"


class AxBdViolation(AxiomViolation):
    module = "pl_critical"
    axiom = "AxBd"


class MixedDegenerate(ModelViolation):
    module = "pl_critical"


# local_model
class MultipleLinearFactor(ModelViolation):
    module = "local_model"


class DivisionFailure(ModelViolation):
    module = "local_model"


class NotIsolated(ModelViolation):
    module = "local_model"


# kr_graph
class AnnotationMissing(AxiomViolation):
    module = "kr_graph"
    axiom = "AxSPN"


class AxSPNViolation(AxiomViolation):
    module = "kr_graph"
    axiom = "AxSPN"


# framed_graph
class MissingCyclicOrder(ModelViolation):
    module = "framed_graph"


# aut_group
class GraphMismatch(ModelViolation):
    module = "aut_group"


class AutBudget(ModelViolation):
    module = "aut_group"


# homology_action
class NonOrientable(ModelViolation):
    module = "homology_action"


class CurveThroughSigma(ModelViolation):
    module = "homology_action"


# homotopy_report
class NoSPoint(ModelViolation):
    module = "homotopy_report"


class UnknownSurface(ModelViolation):
    module = "homotopy_report"


# cli_io
class AnnotationError(InputError):
    module = "cli_io"
