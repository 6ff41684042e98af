"""Feasibility classification and construction planning for 3-designs.

For each dimension d and size n the classifier returns one of three
statuses.  Sizes below 2d+2 are provably impossible (the linear programming
bound for strength 3).  Every even n >= 2d+2 is constructible, as is every
odd n with 2n >= 5(d+1) except the two exceptional pairs (d, n) = (2, 9) and
(4, 13).  Everything else is open: no construction is known and those sizes
are conjectured impossible.

``plan`` maps a constructible pair to a deterministic recipe, first match
wins:

    1. n = 2d+2                  -> octahedron
    2. n even, d odd             -> regular design, frequencies {1, 3, .., d}
    3. n even, d even            -> lift of a regular 2-design on S^(d-1)
    4. n odd, d odd, enough
       frequencies available     -> regular design from the extremal set
    5. n odd, d odd, n >= 2d+7   -> merge with a pentagon (d1 = 2)
    6. n odd, d even, n >= 2d+7  -> antipodal merge with a pentagon

The recipe priority puts constructions with fewer irrational coefficients
first; any order that verifies is correct, determinism is the contract.
``build`` executes recipes recursively and stamps the result's provenance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .compose import (
    antipodal_double,
    antipodal_lift,
    merge_antipodal_coefficients,
    merge_coefficients,
    merge_designs,
    merge_designs_antipodal,
    octahedron,
)
from .exceptions import DomainError, PlanError, PlanInternalError
from .harmonic import DesignMatrix
from .regular import RegularRecipe
from .sidon import SidonSet, construct_bound_set, lower_bound_size, max_sidon_search


class Status(Enum):
    PROVEN_INFEASIBLE = "proven-infeasible"
    CONSTRUCTIBLE = "constructible"
    OPEN = "open"


@dataclass(frozen=True)
class Feasibility:
    status: Status
    reason: str


class RecipeKind(Enum):
    OCTAHEDRON = "octahedron"
    REGULAR = "regular"
    LIFT = "lift"
    MERGE = "merge"
    MERGE_ANTIPODAL = "merge-antipodal"
    DOUBLE = "double"


@dataclass(frozen=True)
class Recipe:
    """A construction plan: which operation, its parameters, its sub-recipes.

    Executing a planner-emitted recipe yields a design of exactly the
    requested dimension and size that passes verification at strength 3.
    """

    kind: RecipeKind
    dimension: int
    size: int
    strength: int = 3
    modulus: int | None = None
    elements: tuple[int, ...] | None = None
    d1: int | None = None
    d2: int | None = None
    sub_a: "Recipe | None" = None
    sub_c: "Recipe | None" = None

    def describe(self) -> str:
        if self.kind is RecipeKind.OCTAHEDRON:
            return f"octahedron(dimension={self.dimension})"
        if self.kind is RecipeKind.REGULAR:
            inner = ", ".join(map(str, self.elements or ()))
            return (
                f"regular(strength={self.strength}, "
                f"frequencies={{{inner}}} mod {self.modulus})"
            )
        if self.kind is RecipeKind.LIFT:
            return f"lift({self.sub_a.describe()})"
        if self.kind is RecipeKind.DOUBLE:
            return f"double({self.sub_a.describe()})"
        name = "merge" if self.kind is RecipeKind.MERGE else "antipodal-merge"
        return (
            f"{name}(d1={self.d1}, d2={self.d2}, A={self.sub_a.describe()}, "
            f"C={self.sub_c.describe()})"
        )


def dgs_bound(d: int, t: int) -> int:
    """Minimum possible size of a t-design on S^d (linear programming bound).

    C(floor(t/2)+d, d) + C(floor((t-1)/2)+d, d); for t = 3 this is 2d+2.
    """
    if d < 1 or t < 1:
        raise DomainError("dimension and strength must be >= 1")
    return math.comb(t // 2 + d, d) + math.comb((t - 1) // 2 + d, d)


_EXCEPTIONAL_OPEN = {(2, 9), (4, 13)}

#: Sizes additionally reported impossible in later work; surfaced as an
#: annotation only, since the nonexistence proof is not reproduced here.
_REPORTED_NONEXISTENT = {(2, 7)}


def classify(d: int, n: int) -> Feasibility:
    """Feasibility of a 3-design of size n on S^d.

    The threshold comparison 2n >= 5(d+1) is evaluated in integers, so
    half-integer boundaries cannot be missed to rounding.
    """
    if d < 1 or n < 1:
        raise DomainError("dimension and size must be >= 1")
    floor = dgs_bound(d, 3)
    if n < floor:
        return Feasibility(
            Status.PROVEN_INFEASIBLE,
            f"size {n} is below the minimum size {floor} = 2d+2 for S^{d}",
        )
    if n % 2 == 0:
        return Feasibility(
            Status.CONSTRUCTIBLE,
            f"even size {n} >= {floor}: antipodal constructions apply",
        )
    if 2 * n >= 5 * (d + 1) and (d, n) not in _EXCEPTIONAL_OPEN:
        return Feasibility(
            Status.CONSTRUCTIBLE,
            f"odd size {n} meets the 5(d+1)/2 threshold: regular/merge "
            "constructions apply",
        )
    if (d, n) in _EXCEPTIONAL_OPEN:
        reason = (
            f"odd size {n} on S^{d} is an exceptional case with no known "
            "construction; conjectured nonexistent"
        )
    else:
        reason = (
            f"odd size {n} is below the 5(d+1)/2 threshold; no construction "
            "is known and such designs are conjectured nonexistent"
        )
    if (d, n) in _REPORTED_NONEXISTENT:
        reason += " (nonexistence has additionally been reported in later work)"
    return Feasibility(Status.OPEN, reason)


def _pentagon_recipe() -> Recipe:
    return Recipe(
        kind=RecipeKind.REGULAR,
        dimension=1,
        size=5,
        strength=3,
        modulus=5,
        elements=(1,),
    )


def plan(d: int, n: int) -> Recipe:
    """Deterministic recipe for a constructible pair; first matching rule wins.

    Arithmetic preconditions of the chosen construction (including the
    non-negativity of the squared merge coefficients) are re-checked here; a
    constructible pair for which no rule fires, or whose rule fails its own
    preconditions, raises ``PlanInternalError`` -- that would be a bug, and
    the acceptance sweep tests that it cannot happen.
    """
    feasibility = classify(d, n)
    if feasibility.status is not Status.CONSTRUCTIBLE:
        raise PlanError(
            f"no recipe for dimension {d}, size {n}: {feasibility.reason}"
        )
    if n == 2 * d + 2:
        return Recipe(kind=RecipeKind.OCTAHEDRON, dimension=d, size=n)
    if n % 2 == 0 and d % 2 == 1:
        return Recipe(
            kind=RecipeKind.REGULAR,
            dimension=d,
            size=n,
            modulus=n,
            elements=tuple(range(1, d + 1, 2)),
        )
    if n % 2 == 0 and d % 2 == 0:
        half = n // 2
        sub = Recipe(
            kind=RecipeKind.REGULAR,
            dimension=d - 1,
            size=half,
            strength=2,
            modulus=half,
            elements=tuple(range(1, d // 2 + 1)),
        )
        return Recipe(
            kind=RecipeKind.LIFT, dimension=d, size=n, sub_a=sub
        )
    if d % 2 == 1:
        e = (d + 1) // 2
        if lower_bound_size(n, 3) >= e:
            extremal = construct_bound_set(n, 3)
            return Recipe(
                kind=RecipeKind.REGULAR,
                dimension=d,
                size=n,
                modulus=n,
                elements=extremal.elements[:e],
            )
        if n >= 2 * d + 7:
            n1 = n - 5
            merge_coefficients(2, d - 1, n1, 5)  # raises if alpha^2 < 0
            sub_a = Recipe(
                kind=RecipeKind.REGULAR,
                dimension=d,
                size=n1,
                modulus=n1,
                elements=tuple(range(1, d + 1, 2)),
            )
            return Recipe(
                kind=RecipeKind.MERGE,
                dimension=d,
                size=n,
                d1=2,
                d2=d - 1,
                sub_a=sub_a,
                sub_c=_pentagon_recipe(),
            )
    elif n >= 2 * d + 7:
        n1 = (n - 5) // 2
        merge_antipodal_coefficients(2, d - 2, n1, 5)  # raises if alpha^2 < 0
        sub_a = Recipe(
            kind=RecipeKind.REGULAR,
            dimension=d - 1,
            size=n1,
            strength=2,
            modulus=n1,
            elements=tuple(range(1, d // 2 + 1)),
        )
        return Recipe(
            kind=RecipeKind.MERGE_ANTIPODAL,
            dimension=d,
            size=n,
            d1=2,
            d2=d - 2,
            sub_a=sub_a,
            sub_c=_pentagon_recipe(),
        )
    raise PlanInternalError(
        f"no construction rule fired for constructible pair d={d}, n={n}"
    )


def execute(recipe: Recipe) -> DesignMatrix:
    """Run a recipe tree bottom-up; the result carries the recipe text."""
    if recipe.kind is RecipeKind.OCTAHEDRON:
        design = octahedron(recipe.dimension)
    elif recipe.kind is RecipeKind.REGULAR:
        frequencies = SidonSet(recipe.modulus, recipe.strength, recipe.elements)
        design = RegularRecipe(frequencies, recipe.strength).build()
    elif recipe.kind is RecipeKind.LIFT:
        design = antipodal_lift(execute(recipe.sub_a))
    elif recipe.kind is RecipeKind.DOUBLE:
        design = antipodal_double(execute(recipe.sub_a))
    elif recipe.kind is RecipeKind.MERGE:
        design = merge_designs(
            execute(recipe.sub_a), execute(recipe.sub_c), recipe.d1, recipe.d2
        )
    elif recipe.kind is RecipeKind.MERGE_ANTIPODAL:
        design = merge_designs_antipodal(
            execute(recipe.sub_a), execute(recipe.sub_c), recipe.d1, recipe.d2
        )
    else:  # pragma: no cover - enum is exhaustive
        raise PlanInternalError(f"unknown recipe kind {recipe.kind}")
    if design.dimension != recipe.dimension or design.size != recipe.size:
        raise PlanInternalError(
            f"recipe {recipe.describe()} produced dimension {design.dimension} "
            f"size {design.size}, expected {recipe.dimension}/{recipe.size}"
        )
    return design.with_provenance(recipe.describe())


def build(d: int, n: int) -> DesignMatrix:
    """Plan and execute: a verified-constructible design of size n on S^d."""
    return execute(plan(d, n))


def conjectured_size_threshold(d: int) -> int:
    """Conjectured smallest size m such that designs exist for every n >= m.

    The largest even integer not exceeding 5d/2 + 3, except dimension 2
    (where the answer is 10) and dimension 4 (14).  Conjectural: sizes
    between 2d+2 and this threshold of the wrong parity have no known
    construction but no nonexistence proof either.
    """
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    if d == 2:
        return 10
    if d == 4:
        return 14
    value = (5 * d + 6) // 2
    return value if value % 2 == 0 else value - 1


@dataclass(frozen=True)
class TableRow:
    """One dimension of the constructible-size table."""

    dimension: int
    min_size: int
    sizes: str
    threshold: int

    def to_json(self) -> dict:
        return {"d": self.dimension, "N": self.min_size, "sizes": self.sizes}


def results_table(
    d_max: int, check: bool = False, tolerance: float | None = None
) -> list[TableRow]:
    """Constructible sizes per dimension, one row per d <= d_max.

    Each row lists the constructible sizes up to the last gap explicitly and
    then "every n >= threshold" as a trailing ">= threshold" entry, scanning
    sizes up to 3d+10.  With ``check`` set, every size marked constructible
    is actually built and verified at strength 3 (slow).
    """
    if d_max < 1:
        raise DomainError(f"d_max must be >= 1, got {d_max}")
    rows = []
    for d in range(1, d_max + 1):
        window = 3 * d + 10
        constructible = [
            n
            for n in range(1, window + 1)
            if classify(d, n).status is Status.CONSTRUCTIBLE
        ]
        gaps = [n for n in range(1, window + 1) if n not in set(constructible)]
        threshold = max(gaps) + 1
        explicit = [n for n in constructible if n < threshold]
        parts = [str(n) for n in explicit] + [f"≥ {threshold}"]
        if check:
            from .harmonic import verify_design

            for n in constructible:
                design = build(d, n)
                report = verify_design(design, 3, tolerance)
                if not report.passed:
                    raise PlanInternalError(
                        f"table claims (d={d}, n={n}) constructible but "
                        f"verification failed: worst {report.worst_polynomial}"
                    )
        rows.append(
            TableRow(
                dimension=d,
                min_size=dgs_bound(d, 3),
                sizes=", ".join(parts),
                threshold=threshold,
            )
        )
    return rows


def render_results_table(rows: list[TableRow]) -> str:
    """Aligned text rendering of the constructible-size table."""
    lines = [f"{'d':>3}  {'N_d(3)':>7}  sizes"]
    for row in rows:
        lines.append(f"{row.dimension:>3}  {row.min_size:>7}  {row.sizes}")
    return "\n".join(lines)


@dataclass(frozen=True)
class ScanRow:
    dimension: int
    size: int
    max_set_size: int
    required: int

    @property
    def is_counterexample(self) -> bool:
        return self.max_set_size >= self.required


@dataclass(frozen=True)
class ScanReport:
    rows: list[ScanRow]
    certified: bool

    @property
    def counterexamples(self) -> list[ScanRow]:
        return [row for row in self.rows if row.is_counterexample]


def regular_nonexistence_scan(
    d_max: int, node_budget: int | None = None
) -> ScanReport:
    """Confirm no regular 3-design exists at odd sizes below the threshold.

    A regular 3-design of size n on S^d needs (d+1)/2 frequencies that are
    signed-sum-free at strength 3 mod n.  For every odd d <= d_max and every
    odd n with 2d+2 <= n < 5(d+1)/2, the exact search must therefore find
    s(n, 3) < (d+1)/2; any row where it does not is a counterexample to the
    expectation that the threshold is sharp.
    """
    if d_max < 3 or d_max % 2 == 0:
        raise DomainError(f"d_max must be an odd integer >= 3, got {d_max}")
    cache: dict[int, int] = {}
    certified = True
    rows = []
    for d in range(3, d_max + 1, 2):
        for n in range(2 * d + 3, (5 * (d + 1)) // 2, 2):
            if n not in cache:
                result = max_sidon_search(n, 3, node_budget)
                certified = certified and result.certified
                cache[n] = result.max_cardinality
            rows.append(
                ScanRow(
                    dimension=d,
                    size=n,
                    max_set_size=cache[n],
                    required=(d + 1) // 2,
                )
            )
    return ScanReport(rows=rows, certified=certified)
