class PrnError(RuntimeError):
    def __init__(self, msg="The regulatory network could not be analysed"):
        super().__init__(msg)


class InvalidNodeError(PrnError):
    def __init__(self, msg="The node does not exist in the influence graph"):
        super().__init__(msg)


class InvalidStateError(PrnError):
    def __init__(self, msg="The state is outside the network's domains"):
        super().__init__(msg)


class InvalidRegulatorStateError(PrnError):
    def __init__(self, msg="The regulator state does not belong to the node"):
        super().__init__(msg)


class IllFormedConstraintError(PrnError):
    def __init__(self, msg="The influence constraints are not well-formed"):
        super().__init__(msg)


class MalformedConfigurationError(PrnError):
    def __init__(self, msg="The event set is not a configuration of the occurrence net"):
        super().__init__(msg)


class FixpointDivergenceError(PrnError):
    def __init__(self, msg="Constraint narrowing did not reach a fixpoint within its round bound"):
        super().__init__(msg)


class ScaleGuardError(PrnError):
    def __init__(self, msg="The parametrisation space is too large to enumerate"):
        super().__init__(msg)
