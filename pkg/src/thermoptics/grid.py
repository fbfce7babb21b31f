from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_POINTS = 10**6


@dataclass(frozen=True)
class SweepGrid:
    """Uniform axis ``min, min + step, ..., max`` over one named parameter."""

    axis: str
    min: float
    max: float
    step: float

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError(f"grid step must be positive, got {self.step}")
        if not self.min < self.max:
            raise ValueError(f"empty grid: min={self.min} is not below max={self.max}")
        if (self.max - self.min) / self.step > MAX_POINTS:
            raise ValueError(f"grid over {self.axis!r} exceeds {MAX_POINTS} points")

    def __len__(self):
        # tolerate max not landing exactly on the lattice
        return int(np.floor((self.max - self.min) / self.step + 1e-9)) + 1

    def values(self) -> np.ndarray:
        # index-based so rows are reproducible bit for bit
        return self.min + self.step * np.arange(len(self))
