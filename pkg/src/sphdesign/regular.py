"""Trigonometric designs on odd-dimensional spheres.

For a frequency m and modulus n, the rows

    s(m) = (sin(2*pi*k*m/n))_{k=1..n}     c(m) = (cos(2*pi*k*m/n))_{k=1..n}

stack into a 2e x n matrix A(S) for a frequency set S = {m_1 < ... < m_e};
scaled by sqrt(2/(d+1)) with d = 2e-1 its columns are n points on S^d.  When
S is signed-sum-free at strength s, every degree-s harmonic basis element
sums to zero over the columns (products of sines and cosines expand into
cosines/sines of signed frequency combinations, and each non-vanishing
combination sums to zero over a full period), so the scaled matrix is an
s-design.  These are the "regular" designs; a regular s-design of size n on
S^d exists exactly when a strength-s set of (d+1)/2 frequencies exists mod n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateFrequencyError, DomainError, PreconditionError
from .harmonic import DesignMatrix
from .sidon import SidonSet


def trig_rows(m: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """The sine and cosine rows of frequency m over the n-th roots of unity.

    Entry k (k = 1..n) is sin(2*pi*k*m/n), cos(2*pi*k*m/n).  The product k*m
    is reduced mod n before multiplying by 2*pi/n, keeping arguments in
    [0, 2*pi) so residuals stay near machine precision even for large n.
    """
    if n < 2:
        raise DomainError(f"modulus must be >= 2, got {n}")
    if m % n == 0:
        raise DegenerateFrequencyError(
            f"frequency {m} is divisible by the modulus {n}; its rows would be "
            "constant and the columns could not be balanced"
        )
    k = np.arange(1, n + 1, dtype=np.int64)
    reduced = (k * (m % n)) % n
    angles = reduced * (2.0 * math.pi / n)
    return np.sin(angles), np.cos(angles)


@dataclass(frozen=True)
class RegularRecipe:
    """Parameters of one trigonometric design: frequencies and target strength.

    The resulting design lives on S^(2e-1) for e frequencies; the dimension
    is always odd.
    """

    frequencies: SidonSet
    strength: int

    def __post_init__(self) -> None:
        if self.strength not in (1, 2, 3):
            raise DomainError(f"strength {self.strength} not in 1..3")
        if len(self.frequencies) < 1:
            raise DomainError("need at least one frequency")
        if self.frequencies.strength < self.strength:
            raise PreconditionError(
                f"frequency set certified only at strength "
                f"{self.frequencies.strength}, need {self.strength}"
            )

    @property
    def dimension(self) -> int:
        return 2 * len(self.frequencies) - 1

    @property
    def size(self) -> int:
        return self.frequencies.modulus

    def describe(self) -> str:
        return (
            f"regular(strength={self.strength}, "
            f"frequencies={self.frequencies.describe()})"
        )

    def build(self) -> DesignMatrix:
        return build_regular(self.frequencies, self.strength)


def build_regular(frequencies: SidonSet, strength: int) -> DesignMatrix:
    """Stack scaled sin/cos rows for each frequency into a design matrix.

    Rows appear as s(m_1), c(m_1), ..., s(m_e), c(m_e) in increasing
    frequency order, scaled by sqrt(2/(d+1)); every column then has unit norm
    up to one rounding of the scale factor per entry (each sin/cos pair
    contributes exactly sin^2 + cos^2 = 1 before scaling).
    """
    recipe = RegularRecipe(frequencies, strength)
    n = frequencies.modulus
    scale = math.sqrt(2.0 / (recipe.dimension + 1))
    rows = []
    for m in frequencies.elements:
        sin_row, cos_row = trig_rows(m, n)
        rows.append(sin_row)
        rows.append(cos_row)
    entries = scale * np.vstack(rows)
    return DesignMatrix(
        dimension=recipe.dimension,
        strength=strength,
        entries=entries,
        provenance=recipe.describe(),
    )
