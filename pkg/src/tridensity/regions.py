"""Region classification of density triples and closed-form minimal densities."""

from __future__ import annotations

import enum
import math
from itertools import permutations

from .graph import DensityTriple


class RegionLabel(str, enum.Enum):
    OUTSIDE_R = "OutsideR"
    R1 = "R1"
    R2 = "R2"

    def __str__(self):
        return self.value


def as_triple(d) -> DensityTriple:
    if isinstance(d, DensityTriple):
        return d
    a, b, c = d
    return DensityTriple(a, b, c)


def discriminant(d):
    """a^2 + b^2 + c^2 - 2ab - 2ac - 2bc + 4abc."""
    a, b, c = as_triple(d)
    return a * a + b * b + c * c - 2 * a * b - 2 * a * c - 2 * b * c + 4 * a * b * c


def in_R(d) -> bool:
    """True iff a triangle is forced: ab+c>1, ac+b>1 and bc+a>1 (strict)."""
    a, b, c = as_triple(d)
    return a * b + c > 1 and a * c + b > 1 and b * c + a > 1


def classify_region(d) -> RegionLabel:
    if not in_R(d):
        return RegionLabel.OUTSIDE_R
    return RegionLabel.R1 if discriminant(d) >= 0 else RegionLabel.R2


def sorted_min_last(d) -> tuple[float, float, float]:
    """Reorder so the last component is the minimum (first two keep their order)."""
    d = tuple(as_triple(d))
    k = d.index(min(d))
    rest = [d[i] for i in range(3) if i != k]
    return rest[0], rest[1], d[k]


def h7_value(a, b, c) -> float:
    """2*sqrt(ab(1-c)) + 2c - 2, the best density of the seven-vertex construction."""
    return 2 * math.sqrt(a * b * (1 - c)) + 2 * c - 2


def tmin_closed_form(d) -> float:
    """Minimal triangle density; exact outside R and on R1, conjectural on R2."""
    d = as_triple(d)
    region = classify_region(d)
    if region is RegionLabel.OUTSIDE_R:
        return 0.0
    if region is RegionLabel.R1:
        return float(sum(d) - 2)
    return h7_value(*sorted_min_last(d))


def tmin_all_orientations(d) -> float:
    """Minimum of the seven-vertex value over all orientations (equals the min-last form on R2)."""
    a, b, c = as_triple(d)
    return min(h7_value(x, y, z) for x, y, z in permutations((a, b, c)))


def linear_lower_bound(d):
    """a+b+c-2, a lower bound for every weighting."""
    return sum(as_triple(d)) - 2


def cyclic_upper_bound(d):
    """min{ab+c-1, ac+b-1, bc+a-1}; strictly above the minimum on R2."""
    a, b, c = as_triple(d)
    return min(a * b + c - 1, a * c + b - 1, b * c + a - 1)
