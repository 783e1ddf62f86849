class InputError(Exception):
    pass


class VariableMismatchError(InputError):
    def __init__(self, msg, *, expected, actual):
        super().__init__(msg)
        self.expected = expected
        self.actual = actual


class ZeroPolynomialError(InputError):
    pass


class RankMismatchError(InputError):
    def __init__(self, msg, *, expected, actual):
        super().__init__(msg)
        self.expected = expected
        self.actual = actual


class InfiniteDimensionalError(InputError):
    def __init__(self, msg, *, component):
        super().__init__(msg)
        self.component = component


class NotLocalAtOriginError(InputError):
    def __init__(self, msg, *, generator):
        super().__init__(msg)
        self.generator = generator


class NotArtinianError(InputError):
    pass


class UnitIdealError(InputError):
    pass


class ModeUnsupportedError(InputError):
    def __init__(self, msg, *, mode):
        super().__init__(msg)
        self.mode = mode


class BadChainError(InputError):
    def __init__(self, msg, *, position, colengths):
        super().__init__(msg)
        self.position = position
        self.colengths = colengths


class WindowTooSmallError(InputError):
    def __init__(self, msg, *, n, window):
        super().__init__(msg)
        self.n = n
        self.window = window


class ParseError(InputError):
    def __init__(self, msg, *, lineno, col_offset, expected=()):
        super().__init__(msg)
        self.lineno = lineno
        self.col_offset = col_offset
        self.expected = tuple(expected)


class SemanticError(ParseError):
    pass


class UnsupportedConstructError(InputError):
    def __init__(self, msg, *, dialect, construct):
        super().__init__(msg)
        self.dialect = dialect
        self.construct = construct


class InhomogeneousRelationError(InputError):
    def __init__(self, msg, *, column):
        super().__init__(msg)
        self.column = column


class DisagreementError(Exception):
    def __init__(self, msg, *, verdict, tor_dim):
        super().__init__(msg)
        self.verdict = verdict
        self.tor_dim = tor_dim
