"""Exception types shared across the library."""


class KeyakError(Exception):
    """Base class for all library-specific errors."""


class StreamExhausted(KeyakError):
    """Read past the end of a byte stream."""


class PhaseError(KeyakError):
    """An operation was called while its object was in the wrong phase."""


class AuthenticationFailure(KeyakError):
    """A cryptogram's authentication tag did not verify."""
