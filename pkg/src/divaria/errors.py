"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or inconsistent input (bad arity, failed precondition, parse error)."""


class ResourceError(RuntimeError):
    """A documented complexity bound was exceeded (arity or T-degree cap)."""
