"""Exception types shared across the package."""


class VariableMismatch(ValueError):
    """Two Laurent polynomials in different variables were combined."""


class WindowExhausted(ValueError):
    """An operation needs exponents outside the guaranteed window."""


class UnderdeterminedWindow(WindowExhausted):
    """The window is too small for the solver to give meaningful dimensions."""


class UnsupportedDegree(ValueError):
    """Cochain degree outside the range handled here (0..3)."""


class UndefinedValue(KeyError):
    """A cochain was evaluated on a tuple whose value left the window."""


class NotACocycle(ValueError):
    def __init__(self, counterexample):
        self.counterexample = counterexample
        super().__init__(f"cocycle condition fails at {counterexample}")
