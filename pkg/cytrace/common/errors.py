class SchemaError(ValueError):
    """
    Raised when an artifact or a constructed object is structurally malformed:
    a map is not total, an index is out of range, a JSON document does not parse
    or carries an unknown "kind".
    """
    pass

class UsageError(ValueError):
    """
    Raised for unknown check names, non-positive bounds and other bad user input.
    """
    pass

class TruncationError(ValueError):
    """
    Raised when an operation needs simplices above the truncation degree.
    """
    pass

class ResidualError(ValueError):
    """
    Raised when a power series cannot be written as a product over the given
    truncation set because a coefficient outside its span is nonzero.
    """
    def __init__(self, exponent, coefficient):
        self.exponent = exponent
        self.coefficient = coefficient
        super().__init__(
            f'Nonzero coefficient {coefficient} at t^{exponent}, '
            f'which is outside the span of the truncation set.')

class NotInvertibleError(ValueError):
    """
    Raised when a matrix that should be an automorphism has a non-unit determinant.
    """
    pass
