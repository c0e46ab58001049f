class VerificationError(ArithmeticError):
    """An identity or inequality that must hold came out false.

    Raised by the exact checkers and the numeric agreement checks; the CLI
    maps it to exit status 1, distinct from usage errors.
    """


class ClassificationError(RuntimeError):
    """A prime produced a splitting pattern outside the scenario's legal table."""

    def __init__(self, prime: int, message: str):
        super().__init__(f"p={prime}: {message}")
        self.prime = prime
