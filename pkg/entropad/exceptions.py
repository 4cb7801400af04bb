"""
Custom exception classes for use within entropad.
The general pattern follows two families. Anything that the caller can fix by passing
different input (a malformed density operator, a key outside the key space, a config
typo) is an EntropadUserException. Anything that means our own numerics broke a promise
(an eigensolver that did not converge, a proof step that failed to hold) is an
EntropadProgramException.

Use case 1 - Raise exception for common situation
    Example: a method in an abstract class is not implemented.

    Prefer the built-in exception that best fits the situation.

    Solution for Example:
        raise NotImplementedError(f"Unimplemented function in {type(self).__name__}")

Use case 2 - Raise exception for a named error kind
    Example: two states of different dimension are compared.

    Each named error kind below subclasses one of the two families, and also the
    built-in exception it most resembles, so callers may catch either.

    Solution for Example:
        raise DimensionMismatchException(f"Cannot compare {dim_a} with {dim_b}")

Use case 3 - Catch exception from library and change the message
    Example: numpy's eigensolver raised LinAlgError.

    Re-raise with the closest custom exception, chaining the original.

    Solution for Example:
            ...
        except LinAlgError as ex:
            raise NoConvergenceException("Eigensolver did not converge") from ex
"""
from logging import Logger


def log_exception(logger: Logger, exception: BaseException):
    """
    Log an exception to the provided logger. User errors are logged as a single line,
    everything else with its stack trace.
    """
    if isinstance(exception, EntropadUserException):
        logger.error(str(exception))
    else:
        logger.error(str(exception), exc_info=exception)


class EntropadUserException(Exception):
    """
    An exception arising from user error or wrong input. This exception SHOULD NOT print
    a stack trace, rather print only the provided message.
    """

    pass


class EntropadProgramException(Exception):
    """
    An exception arising from a program error or unexpected program state. This
    exception SHOULD print a stack trace along with its message.
    """

    pass


# Linear algebra.


class NonHermitianException(EntropadUserException, ValueError):
    pass


class InvalidStateException(EntropadUserException, ValueError):
    """A matrix failed the density operator checks (trace one, positive)."""

    pass


class DimensionMismatchException(EntropadUserException, ValueError):
    pass


class LengthMismatchException(EntropadUserException, ValueError):
    pass


class NoConvergenceException(EntropadProgramException):
    pass


# Hash families.


class ZeroIndexException(EntropadUserException, ValueError):
    pass


class DomainTooLargeException(EntropadUserException, ValueError):
    pass


# Sources.


class EntropyTooLowException(EntropadUserException, ValueError):
    pass


class MassNotNormalizedException(EntropadUserException, ValueError):
    pass


class InvalidInterpretationException(EntropadUserException, ValueError):
    pass


class BadParametersException(EntropadUserException, ValueError):
    pass


# Cipher.


class BadKeyException(EntropadUserException, ValueError):
    pass


class BadIndexException(EntropadUserException, ValueError):
    pass


# Adversaries.


class LabelMismatchException(EntropadUserException, ValueError):
    pass


class ConstantPredicateException(EntropadUserException, ValueError):
    pass


class NoWitnessException(EntropadProgramException):
    """
    The predicate search came up empty. This only happens when the gap hypothesis was
    not met, or when the reduction itself is broken.
    """

    pass


class WitnessViolationException(EntropadProgramException):
    pass


# Command line.


class ConfigParseException(EntropadUserException):
    pass


class ParseException(EntropadUserException, ValueError):
    pass
