class SKTException(Exception):
    pass


class DomainError(SKTException):
    pass


class ConfigError(SKTException):
    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class PlotInputError(SKTException):
    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class SolverException(SKTException):
    def __init__(
        self,
        message: str,
        state=None,
        residual_norm: float | None = None,
        iterations: int = 0,
    ):
        super().__init__(message)
        self.state = state
        self.residual_norm = residual_norm
        self.iterations = iterations


class SingularJacobian(SolverException):
    pass


class NoConvergence(SolverException):
    pass


class StepRejected(SolverException):
    pass


class EigensolveFailed(SKTException):
    def __init__(self, message: str, state=None):
        super().__init__(message)
        self.state = state


class ContinuationException(SKTException):
    pass


class BranchStalled(ContinuationException):
    def __init__(self, message: str, branch=None):
        super().__init__(message)
        self.branch = branch


class SwitchFailed(ContinuationException):
    pass
