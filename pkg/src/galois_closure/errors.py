"""Exception types shared by the instances and the CLI."""


class CoverError(ValueError):
    """An input is not a valid cover (arrow between connected objects)."""


class NonCovering(CoverError):
    """A map fails one clause of the covering-map definition."""

    def __init__(self, clause: str, witness):
        self.clause = clause
        self.witness = witness
        super().__init__(f"not a covering map: {clause} fails at {witness!r}")


class EmptyDomain(CoverError):
    def __init__(self):
        super().__init__("cover has an empty domain")


class DisconnectedCodomain(CoverError):
    def __init__(self, component_labels=None):
        self.witness = component_labels
        super().__init__("codomain is empty or disconnected")


class DisconnectedDomain(CoverError):
    def __init__(self):
        super().__init__("domain is disconnected; covers must join connected objects")


class ContractViolation(ValueError):
    """Arguments are individually valid but do not fit together (e.g. codomains differ)."""


class MalformedInput(ValueError):
    """A JSON document does not have the expected shape."""
