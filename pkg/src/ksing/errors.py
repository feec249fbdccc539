"""Shared error base class."""


class InputError(ValueError):
    """Invalid user input or configuration.

    The CLI maps every InputError subclass to exit code 2; anything else
    that escapes is an internal error (exit code 3).
    """
