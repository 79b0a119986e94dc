"""Sampling plans for the cross-section u -> log M(e^u, 1)."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .evaluate import ENVELOPE_U_FLOOR
from .expr import contains_envelope

__all__ = ["GridSpec", "DEFAULT_U_END"]

DEFAULT_U_END = -1.0e4


@dataclass(frozen=True)
class GridSpec:
    """Log-uniform grid in |u| from ``u_start`` down to ``u_end``.

    ``u_end=None`` means "pick per expression": -1e4, or -650 when the
    expression contains an envelope.
    """

    u_start: float = -1.0
    u_end: Optional[float] = None
    points: int = 4096
    windows: int = 8
    probes: int = 64

    def __post_init__(self):
        if not self.u_start < 0:
            raise ValueError("u_start must be negative")
        if self.u_end is not None and not self.u_end < self.u_start:
            raise ValueError("need u_end < u_start < 0")
        if self.windows < 1:
            raise ValueError("windows must be >= 1")
        if self.points < 2 * self.windows:
            raise ValueError("points must be at least 2 * windows")
        if self.probes < 0:
            raise ValueError("probes must be >= 0")

    def resolve(self, expr) -> "GridSpec":
        """Copy with ``u_end`` filled in for ``expr``."""
        if self.u_end is not None:
            if contains_envelope(expr) and self.u_end < ENVELOPE_U_FLOOR:
                return replace(self, u_end=ENVELOPE_U_FLOOR)
            return self
        u_end = ENVELOPE_U_FLOOR if contains_envelope(expr) else DEFAULT_U_END
        if not u_end < self.u_start:
            raise ValueError("u_start lies below the default u_end")
        return replace(self, u_end=u_end)

    def u_values(self) -> np.ndarray:
        """Grid points, ordered from u_start towards u_end."""
        if self.u_end is None:
            raise ValueError("unresolved grid; call resolve(expr) first")
        return -np.geomspace(-self.u_start, -self.u_end, self.points)
