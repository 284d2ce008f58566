"""Exception types shared across modules."""


class BudgetExceeded(RuntimeError):
    """An exhaustive search gave up before reaching a verdict.

    This is distinct from a negative answer: nothing is known about the
    instance.
    """

    def __init__(self, what: str, nodes: int, unit: str = "nodes"):
        super().__init__(f"{what}: search budget of {nodes} {unit} exceeded")
        self.what = what
        self.nodes = nodes
        self.unit = unit


class NotCentered(ValueError):
    def __init__(self, witness):
        super().__init__(f"coloring is not centered; witness {sorted(witness)}")
        self.witness = frozenset(witness)


class NotLinear(ValueError):
    def __init__(self, detail: str, witness=None):
        super().__init__(f"coloring is not linear: {detail}")
        self.witness = witness


class NotATree(ValueError):
    pass


class PreconditionError(ValueError):
    """Raised with the name of the violated precondition."""

    def __init__(self, name: str, detail: str = ""):
        super().__init__(f"precondition '{name}' violated" + (f": {detail}" if detail else ""))
        self.name = name
