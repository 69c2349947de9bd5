"""Exception types shared across the package.

Parse failures carry the offending key path; numeric failures carry the
module name that raised them. The CLI maps these onto exit codes 2 and 3.
"""

from __future__ import annotations


class PeakcapError(Exception):
    """Base class for all package errors."""


class DomainError(PeakcapError):
    """A mathematical-domain violation (point outside the admissible set)."""


class SpecFileError(PeakcapError):
    """Strict-parse failure of a domain or measure file."""

    def __init__(self, key_path: str, message: str):
        self.key_path = key_path
        super().__init__(f"{key_path}: {message}")


class NumericError(PeakcapError):
    """A numeric pipeline failure attributable to a named module."""

    module = "peakcap"

    def __init__(self, message: str, module: str | None = None):
        if module is not None:
            self.module = module
        super().__init__(f"{self.module}: {message}")


class HorizonExceeded(NumericError):
    module = "domain"


class InsufficientFamily(NumericError):
    module = "peakfn"


class InadmissibleWitness(NumericError):
    module = "peakfn"

    def __init__(self, message: str, point: complex):
        self.point = point
        super().__init__(f"{message} (at sample {point!r})")


class FamilyExhausted(NumericError):
    module = "peakfn"

    def __init__(self, nu: int):
        self.nu = nu
        super().__init__(f"no admissible member at selection step nu={nu}")


class PeakViolation(NumericError):
    module = "peakfn"

    def __init__(self, point: complex, value: float):
        self.point = point
        self.value = value
        super().__init__(f"|F_N| = {value!r} >= 1 at grid point {point!r}")


class SamplingBudgetExhausted(NumericError):
    module = "potential"

    def __init__(self, n: int):
        self.n = n
        super().__init__(f"sampling budget exhausted at sequence index n={n}")
