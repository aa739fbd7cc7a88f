"""Error types shared across the package."""

from __future__ import annotations


class SpecrepError(Exception):
    """Base class for all package errors."""


class UnsupportedType(SpecrepError):
    """Cartan type string or (family, rank) pair outside the classical range."""


class TypeMismatch(SpecrepError):
    """Operands built from different root systems."""


class IndexOutOfFactor(SpecrepError):
    """Simple-root index does not belong to the named factor."""


class BadAlpha(SpecrepError):
    """alpha must lie in Delta - J."""


class NotQuasiParabolic(SpecrepError):
    """Root set is not an intersection of Phi_J(w)'s."""


class NonPrimeCharacteristic(SpecrepError):
    """Hecke-side computations need a prime p."""


class NotOmegaElement(SpecrepError):
    """Element is not in the Omega subgroup."""


class NoWitness(SpecrepError):
    """Exhaustive witness search came up empty."""


class CapExceeded(SpecrepError):
    """Enumeration would exceed the configured cap; never silently sampled."""


class TooLarge(SpecrepError):
    """Finite-group model outside the supported size budget."""


class ChainInvalid(SpecrepError):
    """A chain step failed its invariant."""
