from __future__ import annotations

from typing import Optional


class EnriquesKitError(Exception):
    """Base class for every error raised by enriques_kit."""


# lattice-core

class NonSymmetric(EnriquesKitError, ValueError):
    pass


class Degenerate(EnriquesKitError, ValueError):
    pass


class UnknownName(EnriquesKitError, ValueError):
    pass


class ZeroTwist(EnriquesKitError, ValueError):
    pass


class ZeroForm(EnriquesKitError, ValueError):
    pass


class DimensionMismatch(EnriquesKitError, ValueError):
    pass


# isometry

class NotAnIsometry(EnriquesKitError, ValueError):
    pass


class NotUnimodular(EnriquesKitError, ValueError):
    pass


class OrderExceedsBound(EnriquesKitError):
    def __init__(self, bound: int):
        super().__init__(f"no power up to {bound} is the identity (infinite or large order)")
        self.bound = bound


class NonCyclotomicFactor(EnriquesKitError):
    pass


class DecompositionFails(EnriquesKitError):
    pass


# enriques-constraints

class NotPrimitive(EnriquesKitError, ValueError):
    pass


class EmptyDomain(EnriquesKitError, ValueError):
    pass


class UnknownFamily(EnriquesKitError, ValueError):
    pass


class InadmissibleIndex(EnriquesKitError, ValueError):
    pass


# cone-engine

class NotPointed(EnriquesKitError, ValueError):
    pass


class EmptyInput(EnriquesKitError, ValueError):
    pass


# domain-transport

class DependentBasis(EnriquesKitError, ValueError):
    pass


class DefectOutsideKernel(EnriquesKitError):
    def __init__(self, index: int):
        super().__init__(f"commutator defect of candidate #{index} is not in the kernel set")
        self.index = index


# cli

class ParseError(EnriquesKitError, ValueError):
    def __init__(self, message: str, *, source: Optional[str] = None, field: Optional[str] = None):
        self.source = source
        self.field = field
        parts = [p for p in (source, field) if p]
        parts.append(message)
        super().__init__(": ".join(parts))


class UsageError(EnriquesKitError):
    pass
