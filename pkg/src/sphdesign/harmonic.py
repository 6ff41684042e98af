"""Harmonic-polynomial moment tests for point sets on spheres.

A finite set of unit vectors on S^d is a spherical t-design exactly when
every homogeneous harmonic polynomial of degree 1..t sums to zero over the
set.  For degrees up to three the harmonic spaces admit explicit bases with
integer coefficients:

    degree 1:  x_i                      (0 <= i <= d)
    degree 2:  x_i x_j   (i < j)   and  x_i^2 - x_{i+1}^2
    degree 3:  x_i x_j x_k (i<j<k) and  x_i^3 - 3 x_i x_j^2  (i != j)

which keeps verification free of special-function evaluation: checking a
design is a matter of summing a few hundred sparse integer polynomials over
the columns of a matrix.

Two verifiers are provided.  ``verify_design`` sums the harmonic basis
elements directly.  ``moment_check`` is an independent oracle: it sums all
plain monomials of degree <= t and compares against the sphere's moments
(zero everywhere except the diagonal second moments, which must equal
n/(d+1)).  The two must agree on any matrix with unit columns, and tests
hold them to that.
"""

from __future__ import annotations

import math
from dataclasses import InitVar, dataclass
from itertools import combinations, combinations_with_replacement, permutations
from typing import Mapping

import numpy as np

from .exceptions import DomainError, ShapeError, UnsupportedDegreeError

MAX_DEGREE = 3

#: Column-norm slack accepted at construction time.  Verification applies the
#: real tolerance; this gate only rejects matrices that are not even close to
#: living on the sphere.
NORM_GATE = 1e-2


def default_tolerance(n_points: int) -> float:
    """Residual tolerance for an n-point verification: 1e-9 * max(1, n).

    Entries are O(1) and residuals are sums of n doubles, so the budget
    scales linearly with the number of points.
    """
    return 1e-9 * max(1, n_points)


def _monomial_str(exponents: tuple[int, ...]) -> str:
    parts = []
    for i, e in enumerate(exponents):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class HarmonicPolynomial:
    """A homogeneous polynomial stored as (coefficient, exponent-vector) terms.

    Coefficients are exact integers; every exponent vector has the same
    length (the variable count) and sums to ``degree``.
    """

    terms: tuple[tuple[int, tuple[int, ...]], ...]
    degree: int

    def __post_init__(self) -> None:
        if not self.terms:
            raise DomainError("a polynomial needs at least one term")
        if not 1 <= self.degree <= MAX_DEGREE:
            raise UnsupportedDegreeError(f"degree {self.degree} not in 1..{MAX_DEGREE}")
        width = len(self.terms[0][1])
        for coeff, exps in self.terms:
            if len(exps) != width:
                raise ShapeError("terms use inconsistent variable counts")
            if sum(exps) != self.degree:
                raise DomainError("terms are not homogeneous of the stated degree")
            if coeff == 0:
                raise DomainError("zero coefficients are not stored")

    @property
    def n_vars(self) -> int:
        return len(self.terms[0][1])

    def evaluate_columns(self, points: np.ndarray) -> np.ndarray:
        """Value of the polynomial at every column of a (n_vars, n) array."""
        if points.shape[0] != self.n_vars:
            raise ShapeError(
                f"polynomial in {self.n_vars} variables evaluated on "
                f"{points.shape[0]}-row matrix"
            )
        out = np.zeros(points.shape[1])
        for coeff, exps in self.terms:
            term = np.full(points.shape[1], float(coeff))
            for i, e in enumerate(exps):
                if e == 1:
                    term = term * points[i]
                elif e >= 2:
                    term = term * points[i] ** e
            out += term
        return out

    def laplacian_terms(self) -> dict[tuple[int, ...], int]:
        """Exponent->coefficient map of the Laplacian, empty iff harmonic."""
        acc: dict[tuple[int, ...], int] = {}
        for coeff, exps in self.terms:
            for i, e in enumerate(exps):
                if e < 2:
                    continue
                dropped = list(exps)
                dropped[i] = e - 2
                key = tuple(dropped)
                acc[key] = acc.get(key, 0) + coeff * e * (e - 1)
        return {k: v for k, v in acc.items() if v != 0}

    def is_harmonic(self) -> bool:
        return not self.laplacian_terms()

    def __str__(self) -> str:
        pieces = []
        for k, (coeff, exps) in enumerate(self.terms):
            mono = _monomial_str(exps)
            mag = abs(coeff)
            body = mono if mag == 1 else f"{mag}*{mono}"
            if k == 0:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(pieces)


def _single(i: int, width: int, power: int) -> tuple[int, ...]:
    exps = [0] * width
    exps[i] = power
    return tuple(exps)


def harmonic_dim(dimension: int, degree: int) -> int:
    """Dimension of the homogeneous harmonics of a given degree on S^dimension.

    Equals C(degree+d, d) - C(degree+d-2, d) with d = dimension; this is also
    the length of ``harmonic_basis(dimension, degree)``.
    """
    _check_dimension(dimension)
    _check_degree(degree)
    d = dimension
    return math.comb(degree + d, d) - math.comb(degree + d - 2, d)


def harmonic_basis(dimension: int, degree: int) -> list[HarmonicPolynomial]:
    """Explicit integer basis of the degree-s harmonics in dimension+1 variables.

    Ordering is deterministic: the all-distinct monomial family comes first,
    then the difference family, each sorted lexicographically by index tuple.
    """
    _check_dimension(dimension)
    _check_degree(degree)
    width = dimension + 1
    basis: list[HarmonicPolynomial] = []
    if degree == 1:
        for i in range(width):
            basis.append(HarmonicPolynomial(((1, _single(i, width, 1)),), 1))
    elif degree == 2:
        for i, j in combinations(range(width), 2):
            exps = [0] * width
            exps[i] = exps[j] = 1
            basis.append(HarmonicPolynomial(((1, tuple(exps)),), 2))
        for i in range(dimension):
            basis.append(
                HarmonicPolynomial(
                    ((1, _single(i, width, 2)), (-1, _single(i + 1, width, 2))), 2
                )
            )
    else:
        for i, j, k in combinations(range(width), 3):
            exps = [0] * width
            exps[i] = exps[j] = exps[k] = 1
            basis.append(HarmonicPolynomial(((1, tuple(exps)),), 3))
        for i, j in permutations(range(width), 2):
            mixed = [0] * width
            mixed[i] = 1
            mixed[j] = 2
            basis.append(
                HarmonicPolynomial(
                    ((1, _single(i, width, 3)), (-3, tuple(mixed))), 3
                )
            )
    return basis


def _check_degree(degree: int) -> None:
    if degree not in (1, 2, 3):
        raise UnsupportedDegreeError(f"degree {degree} not supported (need 1, 2, or 3)")


def _check_dimension(dimension: int) -> None:
    if dimension < 1:
        raise DomainError(f"dimension must be >= 1, got {dimension}")


@dataclass(frozen=True)
class DesignMatrix:
    """A (d+1) x n matrix whose columns are points on S^d.

    ``strength`` is the claimed design strength; it is a claim, not a checked
    fact -- run ``verify_design`` to check it.  Entries are copied and frozen
    so instances are safe to share across threads.
    """

    dimension: int
    strength: int
    entries: np.ndarray
    provenance: str | None = None
    norm_gate: InitVar[float] = NORM_GATE

    def __post_init__(self, norm_gate: float) -> None:
        _check_dimension(self.dimension)
        if self.strength not in (1, 2, 3):
            raise UnsupportedDegreeError(f"strength {self.strength} not in 1..3")
        arr = np.array(self.entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != self.dimension + 1:
            raise ShapeError(
                f"expected a {self.dimension + 1}-row matrix, got shape {arr.shape}"
            )
        if arr.shape[1] < 1:
            raise ShapeError("a design needs at least one point")
        if not np.all(np.isfinite(arr)):
            raise DomainError("entries must be finite")
        if np.max(np.abs(arr)) > 1.0 + norm_gate:
            raise DomainError("entries of unit vectors cannot exceed 1 in magnitude")
        norms = np.sum(arr * arr, axis=0)
        worst = float(np.max(np.abs(norms - 1.0)))
        if worst > norm_gate:
            raise DomainError(
                f"columns are not unit vectors (squared-norm deviation {worst:.3g})"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def size(self) -> int:
        return self.entries.shape[1]

    def with_provenance(self, provenance: str) -> "DesignMatrix":
        return DesignMatrix(self.dimension, self.strength, self.entries, provenance)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a design check.

    ``passed`` is true iff the column-norm deviation and every per-degree
    residual maximum are within ``tolerance``.
    """

    max_residual_by_degree: Mapping[int, float]
    norm_max_deviation: float
    tolerance: float
    passed: bool
    worst_polynomial: str | None

    def summary(self) -> str:
        lines = [
            f"norm max deviation : {self.norm_max_deviation:.3e}",
        ]
        for degree in sorted(self.max_residual_by_degree):
            lines.append(
                f"degree {degree} residual  : "
                f"{self.max_residual_by_degree[degree]:.3e}"
            )
        if self.worst_polynomial is not None:
            lines.append(f"worst polynomial   : {self.worst_polynomial}")
        lines.append(f"tolerance          : {self.tolerance:.3e}")
        lines.append(f"verdict            : {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def evaluate_sum(poly: HarmonicPolynomial, design: DesignMatrix) -> float:
    """Sum of ``poly`` over the design's columns.

    Accumulated with compensated summation (math.fsum), so the result is the
    correctly rounded sum of the per-column values and bit-identical across
    runs and summation orders.
    """
    if poly.n_vars != design.dimension + 1:
        raise ShapeError(
            f"polynomial in {poly.n_vars} variables does not fit a design "
            f"on S^{design.dimension}"
        )
    return math.fsum(poly.evaluate_columns(design.entries).tolist())


def _norm_deviation(design: DesignMatrix) -> float:
    norms = np.sum(design.entries * design.entries, axis=0)
    return float(np.max(np.abs(norms - 1.0)))


def verify_design(
    design: DesignMatrix, strength: int, tolerance: float | None = None
) -> VerificationReport:
    """Check the design property through harmonic basis sums.

    Sums every harmonic basis element of degree 1..strength over the columns
    and records the per-degree residual maxima; also checks that each column
    has unit norm.  Failure is a report outcome, never an exception.
    """
    _check_degree(strength)
    if tolerance is None:
        tolerance = default_tolerance(design.size)
    if tolerance <= 0:
        raise DomainError("tolerance must be positive")
    residuals: dict[int, float] = {}
    worst_value = -1.0
    worst_name: str | None = None
    for degree in range(1, strength + 1):
        degree_max = 0.0
        for poly in harmonic_basis(design.dimension, degree):
            value = abs(evaluate_sum(poly, design))
            if value > degree_max:
                degree_max = value
            if value > worst_value:
                worst_value = value
                worst_name = str(poly)
        residuals[degree] = degree_max
    norm_dev = _norm_deviation(design)
    passed = norm_dev <= tolerance and all(v <= tolerance for v in residuals.values())
    return VerificationReport(residuals, norm_dev, tolerance, passed, worst_name)


def moment_check(
    design: DesignMatrix, strength: int, tolerance: float | None = None
) -> VerificationReport:
    """Independent oracle: compare raw monomial sums with the sphere's moments.

    Degree-1 sums, all mixed monomial sums, and all degree-3 sums must vanish;
    each diagonal second moment sum(x_i^2) must equal n/(d+1).  On matrices
    with unit columns the verdict provably agrees with ``verify_design``.
    """
    _check_degree(strength)
    if tolerance is None:
        tolerance = default_tolerance(design.size)
    if tolerance <= 0:
        raise DomainError("tolerance must be positive")
    width = design.dimension + 1
    diagonal_target = design.size / width
    residuals: dict[int, float] = {}
    worst_value = -1.0
    worst_name: str | None = None
    for degree in range(1, strength + 1):
        degree_max = 0.0
        for index in combinations_with_replacement(range(width), degree):
            exps = [0] * width
            for i in index:
                exps[i] += 1
            poly = HarmonicPolynomial(((1, tuple(exps)),), degree)
            value = evaluate_sum(poly, design)
            if degree == 2 and len(set(index)) == 1:
                residual = abs(value - diagonal_target)
                name = f"{poly} (moment n/(d+1))"
            else:
                residual = abs(value)
                name = str(poly)
            if residual > degree_max:
                degree_max = residual
            if residual > worst_value:
                worst_value = residual
                worst_name = name
        residuals[degree] = degree_max
    norm_dev = _norm_deviation(design)
    passed = norm_dev <= tolerance and all(v <= tolerance for v in residuals.values())
    return VerificationReport(residuals, norm_dev, tolerance, passed, worst_name)
