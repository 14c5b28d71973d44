"""Size guards shared by the expensive kernels."""


class GuardError(ValueError):
    """A requested computation exceeds a size guard and was not forced."""


def check_guard(value: int, limit: int, what: str, force: bool = False) -> None:
    """Raise :class:`GuardError` when ``value`` exceeds ``limit``.

    ``force=True`` opts in to long runtimes and skips the check.
    """
    if value > limit and not force:
        raise GuardError(
            f"{what} {value} exceeds the default guard of {limit}; "
            "pass force=True (or --force on the command line) to accept the runtime"
        )
