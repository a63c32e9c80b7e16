"""Seeded momentum sampling: uniform directions, log-uniform magnitudes."""

import numpy as np

UNIT_SCALE = (0.5, 2.0)


def sample_momenta(rng: np.random.Generator, count: int, scale_range: tuple[float, float] = UNIT_SCALE) -> np.ndarray:
    """Return ``count`` momenta as rows of a ``(count, 3)`` array."""
    lo, hi = scale_range
    if count < 1 or not 0 < lo <= hi:
        raise ValueError(f"Cannot sample {count} momenta in magnitude range {scale_range}")
    directions = rng.normal(size=(count, 3))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    magnitudes = np.exp(rng.uniform(np.log(lo), np.log(hi), size=count))
    return directions * magnitudes[:, None]
