"""Block-matrix constructions that combine designs into larger ones.

All four operations here preserve or raise strength by exploiting antipodal
symmetry and row rescaling:

* ``octahedron``: the 2d+2 signed standard basis vectors, the smallest
  possible 3-design on S^d.
* ``antipodal_double``: (A | -A) turns an even-strength design into one of
  the next odd strength, since odd-degree polynomials cancel pairwise.
* ``antipodal_lift``: appends a constant row to a doubled 2-design one
  dimension below, rescaling so columns stay unit and second moments stay
  balanced; the coefficients are alpha^2 = d/(d+1), delta^2 = 1/(d+1).
* ``merge_designs`` / ``merge_designs_antipodal``: paste a lower-dimensional
  design C into the top rows next to a rescaled design A.  The scale factors
  alpha, beta, delta solve the unit-norm and second-moment equations exactly
  (computed here in exact rational arithmetic before the final square root),
  and they are real only when the stated size inequalities hold.

Each operation verifies its inputs at the strength it needs and re-checks
the block-norm property the algebra relies on, so externally built matrices
can be merged as long as they actually have those properties.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exceptions import (
    DomainError,
    InfeasibleCoefficientError,
    PreconditionError,
    ShapeError,
)
from .harmonic import DesignMatrix, verify_design

#: Tolerance (in units of machine epsilon) for the block-constant column-norm
#: check required of the rescaled design in a merge.
BLOCK_NORM_EPS = 8


@dataclass(frozen=True)
class MergeCoefficients:
    """Squared scale factors of a block construction.

    ``beta_sq`` is None for the lift (no middle block) and ``delta_sq`` is
    None for the plain merge (no constant row).  All stored values are
    non-negative; the linear coefficients are their principal square roots.
    """

    alpha_sq: float
    beta_sq: float | None = None
    delta_sq: float | None = None

    def __post_init__(self) -> None:
        for name in ("alpha_sq", "beta_sq", "delta_sq"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise InfeasibleCoefficientError(f"{name} = {value} < 0")

    @property
    def alpha(self) -> float:
        return math.sqrt(self.alpha_sq)

    @property
    def beta(self) -> float:
        if self.beta_sq is None:
            raise DomainError("this construction has no beta block")
        return math.sqrt(self.beta_sq)

    @property
    def delta(self) -> float:
        if self.delta_sq is None:
            raise DomainError("this construction has no constant row")
        return math.sqrt(self.delta_sq)


def lift_coefficients(d: int) -> MergeCoefficients:
    """alpha^2 = d/(d+1), delta^2 = 1/(d+1): unit norms and balanced moments."""
    if d < 1:
        raise DomainError(f"target dimension must be >= 1, got {d}")
    return MergeCoefficients(
        alpha_sq=float(Fraction(d, d + 1)),
        delta_sq=float(Fraction(1, d + 1)),
    )


def merge_coefficients(d1: int, d2: int, n1: int, n2: int) -> MergeCoefficients:
    """alpha^2 = 1 - d2*n2/(d1*n1), beta^2 = 1 + n2/n1.

    Real exactly when d1*n1 >= d2*n2; the values are computed as exact
    rationals and rounded once, so the defining identities hold to a couple
    of machine epsilons.
    """
    _check_merge_sizes(d1, d2, n1, n2)
    num = d1 * n1 - d2 * n2
    if num < 0:
        raise InfeasibleCoefficientError(
            f"d1*n1 = {d1 * n1} < d2*n2 = {d2 * n2}: alpha would be imaginary"
        )
    return MergeCoefficients(
        alpha_sq=float(Fraction(num, d1 * n1)),
        beta_sq=float(Fraction(n1 + n2, n1)),
    )


def merge_antipodal_coefficients(
    d1: int, d2: int, n1: int, n2: int
) -> MergeCoefficients:
    """Scale factors for the antipodal merge.

    alpha^2 = d/(d+1) * (1 - (d2+1)*n2 / (2*d1*n1)),
    beta^2  = d/(d+1) * (1 + n2/(2*n1)),
    delta^2 = 1/(d+1) * (1 + n2/(2*n1)),     with d = d1 + d2.

    Real exactly when 2*d1*n1 >= (d2+1)*n2.
    """
    _check_merge_sizes(d1, d2, n1, n2, allow_zero_d2=True)
    d = d1 + d2
    num = 2 * d1 * n1 - (d2 + 1) * n2
    if num < 0:
        raise InfeasibleCoefficientError(
            f"2*d1*n1 = {2 * d1 * n1} < (d2+1)*n2 = {(d2 + 1) * n2}: "
            "alpha would be imaginary"
        )
    common = Fraction(2 * n1 + n2, 2 * n1)
    return MergeCoefficients(
        alpha_sq=float(Fraction(d, d + 1) * Fraction(num, 2 * d1 * n1)),
        beta_sq=float(Fraction(d, d + 1) * common),
        delta_sq=float(Fraction(1, d + 1) * common),
    )


def _check_merge_sizes(
    d1: int, d2: int, n1: int, n2: int, allow_zero_d2: bool = False
) -> None:
    if d1 < 2 or d1 % 2 != 0:
        raise DomainError(f"d1 must be a positive even integer, got {d1}")
    low = 0 if allow_zero_d2 else 2
    if d2 < low or d2 % 2 != 0:
        raise DomainError(
            f"d2 must be an even integer >= {low}, got {d2}"
        )
    if n1 < 1 or n2 < 1:
        raise DomainError("block sizes must be positive")


def octahedron(d: int) -> DesignMatrix:
    """The 2d+2 signed standard basis vectors: a 3-design of minimum size.

    Entries are exactly 0 and +-1, so all verification residuals cancel
    exactly in floating point.
    """
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    eye = np.eye(d + 1)
    return DesignMatrix(
        dimension=d,
        strength=3,
        entries=np.hstack([eye, -eye]),
        provenance=f"octahedron(dimension={d})",
    )


def antipodal_double(
    design: DesignMatrix, tolerance: float | None = None
) -> DesignMatrix:
    """(A | -A): one strength more than an even-strength input.

    Odd-degree polynomial sums cancel between the two copies, and the even
    degrees up to the input strength already vanish on each copy.
    """
    if design.strength % 2 != 0:
        raise PreconditionError(
            f"doubling needs an even-strength design, got strength "
            f"{design.strength}"
        )
    report = verify_design(design, design.strength, tolerance)
    if not report.passed:
        raise PreconditionError(
            f"input fails verification at strength {design.strength}: "
            f"worst {report.worst_polynomial}"
        )
    return DesignMatrix(
        dimension=design.dimension,
        strength=design.strength + 1,
        entries=np.hstack([design.entries, -design.entries]),
        provenance=f"double({design.provenance or 'input'})",
    )


def antipodal_lift(
    design: DesignMatrix, tolerance: float | None = None
) -> DesignMatrix:
    """Lift a 2-design on S^(d-1) to a 3-design of twice the size on S^d.

    The input block is scaled by alpha and doubled antipodally; a constant
    row at delta restores unit columns, and alpha^2 = d/(d+1) balances the
    second moments between old and new coordinates.
    """
    report = verify_design(design, 2, tolerance)
    if not report.passed:
        raise PreconditionError(
            f"lift needs a verified 2-design; worst residual on "
            f"{report.worst_polynomial}"
        )
    d = design.dimension + 1
    coeffs = lift_coefficients(d)
    alpha, delta = coeffs.alpha, coeffs.delta
    n1 = design.size
    top = np.hstack([alpha * design.entries, -alpha * design.entries])
    bottom = np.hstack([np.full((1, n1), delta), np.full((1, n1), -delta)])
    return DesignMatrix(
        dimension=d,
        strength=3,
        entries=np.vstack([top, bottom]),
        provenance=f"lift({design.provenance or 'input'})",
    )


def _check_block_norms(design: DesignMatrix, d1: int, target: Fraction) -> None:
    """Every column's squared norm over the top d1 rows must equal ``target``.

    This is the property the merge algebra actually uses; designs produced by
    ``build_regular`` have it exactly (each sin/cos row pair contributes
    2/(d+1) per column), and checking it directly lets externally loaded
    matrices be merged as long as they share it.
    """
    block = design.entries[:d1]
    norms = np.sum(block * block, axis=0)
    limit = BLOCK_NORM_EPS * np.finfo(float).eps
    deviation = float(np.max(np.abs(norms - float(target))))
    if deviation > limit:
        raise PreconditionError(
            f"top-{d1}-row column norms deviate from {target} by {deviation:.3e}; "
            "the merge needs a design with block-constant column norms"
        )


def merge_designs(
    a: DesignMatrix,
    c: DesignMatrix,
    d1: int,
    d2: int,
    tolerance: float | None = None,
) -> DesignMatrix:
    """Merge a 3-design A on S^d (d = d1+d2-1) with a 3-design C on S^(d1-1).

    Produces ((alpha*A1 | C), (beta*A2 | 0)) of size n1+n2 on S^d, where A1
    is the top-d1-row block of A.  Requires d1*n1 >= d2*n2 for a real alpha,
    and a design A whose columns carry exactly d1/(d+1) of their norm in the
    top block (true of the trigonometric designs).
    """
    coeffs = merge_coefficients(d1, d2, a.size, c.size)
    d = d1 + d2 - 1
    if a.dimension != d:
        raise ShapeError(
            f"A lives on S^{a.dimension}, expected S^{d} for d1={d1}, d2={d2}"
        )
    if c.dimension != d1 - 1:
        raise ShapeError(
            f"C lives on S^{c.dimension}, expected S^{d1 - 1} for d1={d1}"
        )
    _check_block_norms(a, d1, Fraction(d1, d + 1))
    report_a = verify_design(a, 3, tolerance)
    if not report_a.passed:
        raise PreconditionError(
            f"merge needs A verified at strength 3; worst residual on "
            f"{report_a.worst_polynomial}"
        )
    report_c = verify_design(c, 3, tolerance)
    if not report_c.passed:
        raise PreconditionError(
            f"merge needs C verified at strength 3; worst residual on "
            f"{report_c.worst_polynomial}"
        )
    alpha, beta = coeffs.alpha, coeffs.beta
    top = np.hstack([alpha * a.entries[:d1], c.entries])
    bottom = np.hstack([beta * a.entries[d1:], np.zeros((d2, c.size))])
    return DesignMatrix(
        dimension=d,
        strength=3,
        entries=np.vstack([top, bottom]),
        provenance=(
            f"merge(d1={d1}, d2={d2}, A={a.provenance or 'input'}, "
            f"C={c.provenance or 'input'})"
        ),
    )


def merge_designs_antipodal(
    a: DesignMatrix,
    c: DesignMatrix,
    d1: int,
    d2: int,
    tolerance: float | None = None,
) -> DesignMatrix:
    """Merge a 2-design A on S^(d-1) (d = d1+d2) with a 3-design C on S^(d1-1).

    Produces ((alpha*A1 | -alpha*A1 | C), (beta*A2 | -beta*A2 | 0),
    (delta*J | -delta*J | 0)) of size 2*n1+n2 on S^d.  The antipodal doubling
    supplies the odd-degree cancellations, so A only needs strength 2.
    Requires 2*d1*n1 >= (d2+1)*n2; d2 = 0 is allowed and simply omits the
    beta block.
    """
    coeffs = merge_antipodal_coefficients(d1, d2, a.size, c.size)
    d = d1 + d2
    if a.dimension != d - 1:
        raise ShapeError(
            f"A lives on S^{a.dimension}, expected S^{d - 1} for d1={d1}, d2={d2}"
        )
    if c.dimension != d1 - 1:
        raise ShapeError(
            f"C lives on S^{c.dimension}, expected S^{d1 - 1} for d1={d1}"
        )
    _check_block_norms(a, d1, Fraction(d1, d))
    report_a = verify_design(a, 2, tolerance)
    if not report_a.passed:
        raise PreconditionError(
            f"antipodal merge needs A verified at strength 2; worst residual "
            f"on {report_a.worst_polynomial}"
        )
    report_c = verify_design(c, 3, tolerance)
    if not report_c.passed:
        raise PreconditionError(
            f"antipodal merge needs C verified at strength 3; worst residual "
            f"on {report_c.worst_polynomial}"
        )
    n1, n2 = a.size, c.size
    alpha = coeffs.alpha
    delta = coeffs.delta
    blocks = [
        np.hstack([alpha * a.entries[:d1], -alpha * a.entries[:d1], c.entries])
    ]
    if d2 > 0:
        beta = coeffs.beta
        blocks.append(
            np.hstack(
                [beta * a.entries[d1:], -beta * a.entries[d1:], np.zeros((d2, n2))]
            )
        )
    row = np.full((1, n1), delta)
    blocks.append(np.hstack([row, -row, np.zeros((1, n2))]))
    return DesignMatrix(
        dimension=d,
        strength=3,
        entries=np.vstack(blocks),
        provenance=(
            f"antipodal-merge(d1={d1}, d2={d2}, A={a.provenance or 'input'}, "
            f"C={c.provenance or 'input'})"
        ),
    )
