"""Exception hierarchy.  Each class carries the CLI exit code it maps to."""


class FullMdimError(Exception):
    exit_code = 1


class ConfigError(FullMdimError, ValueError):
    exit_code = 2


class InfeasibleScheduleError(FullMdimError):
    """Some required proportion ``eta(n, k)`` exceeds what the block can give."""

    exit_code = 3


class DepthLimitError(FullMdimError):
    exit_code = 4


class WindowCapError(FullMdimError, ValueError):
    exit_code = 5


class CertificateError(FullMdimError):
    exit_code = 6


class VersionMismatchError(CertificateError):
    exit_code = 7


class CertificateInvariantError(CertificateError):
    """A loaded certificate breaks a construction inequality or identity."""

    exit_code = 8


class NotInJnError(FullMdimError, ValueError):
    exit_code = 9
