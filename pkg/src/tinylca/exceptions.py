"""Exception types shared across the engine, loaders, CLI, and service."""

from __future__ import annotations


class TinyLcaError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(TinyLcaError):
    """Conversion or arithmetic attempted between incompatible dimensions."""


class UnknownSectorError(TinyLcaError):
    """A reduction map names a sector that is not in the sector-share table."""

    def __init__(self, unknown: list[str], valid: list[str]):
        self.unknown = sorted(unknown)
        self.valid = sorted(valid)
        super().__init__(
            f"unknown sector(s) {', '.join(self.unknown)}; "
            f"valid sectors: {', '.join(self.valid)}"
        )


class UnknownNameError(TinyLcaError):
    """A lookup by name failed; carries the set of valid names."""

    def __init__(self, kind: str, name: str, available: list[str]):
        self.kind = kind
        self.name = name
        self.available = sorted(available)
        super().__init__(
            f"unknown {kind} '{name}'; available: {', '.join(self.available) or '(none)'}"
        )
