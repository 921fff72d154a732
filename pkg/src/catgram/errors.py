"""Exception types shared across the package."""


class CatgramError(Exception):
    """Base class for all errors raised by catgram."""


class CompositionError(CatgramError):
    """An algebraic operation was applied to incompatible operands.

    Raised for endpoint mismatches in path composition, gap-type mismatches
    in spliced composition, and color/index mismatches in tree substitution.
    """


class InputError(CatgramError):
    """External input (JSON, classical grammar text, CLI words) is malformed
    or refers to undeclared names."""
