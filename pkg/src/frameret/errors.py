class CapExceededError(RuntimeError):
    """An exact enumeration would exceed the configured size cap."""
