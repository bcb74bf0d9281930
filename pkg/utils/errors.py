# Exception hierarchy shared by every package; the CLI maps it to exit codes


class LoewyError(Exception):
    """Base exception for the library."""

    pass


class InputError(LoewyError):
    """Custom exception for malformed input (parse or schema errors)."""

    pass


class DomainError(LoewyError):
    """Custom exception for mathematically invalid requests."""

    pass


class PoleNear(DomainError):
    """Raised when an evaluation point sits too close to a pole."""

    def __init__(self, location: complex, message: str = "evaluation point near a pole"):
        super().__init__(f"{message} (near {location})")
        self.location = location
