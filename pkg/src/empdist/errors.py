"""Exception hierarchy shared across the package.

Exit codes: 2 configuration error, 3 data error, 4 numeric fault.
"""


class EmpdistError(Exception):
    exit_code = 1


class ConfigError(EmpdistError):
    """Bad run configuration: missing paths, unknown keys, mode mismatches."""

    exit_code = 2


class DataError(EmpdistError):
    """Malformed input data: unparseable cells, missing columns or ids."""

    exit_code = 3


class FormatError(DataError):
    """Corrupt or mismatched binary file (bad magic, version, truncation)."""


class NumericFault(EmpdistError):
    """NaN/Inf encountered inside the network."""

    exit_code = 4


class DegenerateInputError(EmpdistError):
    """Statistic undefined on the given input (e.g. constant vector)."""

    exit_code = 3
