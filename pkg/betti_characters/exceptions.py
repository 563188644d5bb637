"""
Exception hierarchy. Every exception carries the exit code the command line front end reports for it.
"""


class BettiCharactersError(Exception):
    exit_code = 5


class UsageError(BettiCharactersError, ValueError):
    exit_code = 3


class GradingError(UsageError):
    pass


class ParseError(UsageError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__('{message} (at position {position})'.format(message=message, position=position))


class DivisionByZero(UsageError, ZeroDivisionError):
    pass


class InvarianceError(BettiCharactersError):
    exit_code = 2


class ContainmentError(BettiCharactersError):
    exit_code = 2


class NotInImageError(BettiCharactersError):
    exit_code = 2


class UnsupportedError(BettiCharactersError):
    exit_code = 4


class UnsupportedConjugation(UnsupportedError):
    pass


class ReducibleMinimalPolynomial(UnsupportedError):
    pass


class InternalInvariantError(BettiCharactersError):
    exit_code = 5


class ComputationTimeout(BettiCharactersError):
    exit_code = 6
