"""Exception hierarchy shared by the library and the command line."""


class SurdforgeError(ValueError):
    """Base class for every domain error raised by surdforge."""


class InvalidSurdError(SurdforgeError):
    pass


class InvalidParameterError(SurdforgeError):
    pass


class NotDescendableError(SurdforgeError):
    pass


class NotFiniteError(SurdforgeError):
    pass


class OutOfRangeError(SurdforgeError, IndexError):
    pass


class DegeneratePeriodError(SurdforgeError):
    pass
