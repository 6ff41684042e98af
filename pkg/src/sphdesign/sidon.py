"""Signed-sum-free ("Sidon-type") residue sets: checking, construction, search.

A set S of nonzero residues mod n has strength t when no sum
e_1*x_1 + ... + e_t*x_t with e_i in {0, +1, -1} and x_i in S (repetition
allowed) vanishes mod n except trivially: either every e_i is zero, or some
value occurs with both a +1 and a -1 coefficient.  Spelled out for t = 3,
the non-trivial families are

    a;   a + b;   a - b (a != b);   a + b + c;   a + b - c (c not in {a, b})

with a, b, c drawn from S with repetition.  (a + b + c can never cancel a
sign, and a + b - c is trivial exactly when c repeats a or b.)

The maximum size s(n, t) of such a set is n - 1 for t = 1 and
floor((n-1)/2) for t = 2.  For t = 3 there is a constructive lower bound:

    n even:                      floor(n/4)      (odd residues below n/2)
    n odd, p | n, p = 5 (mod 6): (p+1)n/(6p)     (p smallest such divisor)
    n odd otherwise:             floor((n+1)/6)  (odd residues below n/3)

``max_sidon_search`` determines s(n, t) exactly by exhaustive backtracking
with incremental forbidden-residue pruning; the equality of search and bound
for t = 3 is conjectural in general and is re-established here by running
the search.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .exceptions import DomainError, SidonViolationError


def _check_modulus(n: int) -> None:
    if n < 2:
        raise DomainError(f"modulus must be >= 2, got {n}")


def _check_strength(t: int) -> None:
    if t not in (1, 2, 3):
        raise DomainError(f"strength {t} not supported (need 1, 2, or 3)")


def _check_elements(elements: Sequence[int], n: int) -> tuple[int, ...]:
    elems = tuple(sorted(elements))
    for x in elems:
        if not 1 <= x <= n - 1:
            raise DomainError(f"element {x} outside [1, {n - 1}]")
    if len(set(elems)) != len(elems):
        raise DomainError("elements must be distinct")
    return elems


@dataclass(frozen=True)
class Violation:
    """A vanishing non-trivial signed sum, as (value, sign) pairs."""

    values: tuple[int, ...]
    signs: tuple[int, ...]
    modulus: int

    def __str__(self) -> str:
        parts = []
        for k, (value, sign) in enumerate(zip(self.values, self.signs)):
            if k == 0:
                parts.append(str(value) if sign > 0 else f"-{value}")
            else:
                parts.append(f"+ {value}" if sign > 0 else f"- {value}")
        return f"{' '.join(parts)} = 0 (mod {self.modulus})"


def find_violation(
    elements: Sequence[int], n: int, strength: int
) -> Violation | None:
    """First vanishing non-trivial signed sum of <= strength elements, or None.

    Families are scanned in a fixed order (singles, pair sums, pair
    differences, then for strength 3 the mixed a+b-c sums before the all-plus
    triples), so the witness is deterministic.
    """
    _check_modulus(n)
    _check_strength(strength)
    elems = _check_elements(elements, n)
    for a in elems:
        if a % n == 0:
            return Violation((a,), (1,), n)
    if strength >= 2:
        for a, b in combinations_with_replacement(elems, 2):
            if (a + b) % n == 0:
                return Violation((a, b), (1, 1), n)
        for a in elems:
            for b in elems:
                if a != b and (a - b) % n == 0:
                    return Violation((a, b), (1, -1), n)
    if strength >= 3:
        for a, b in combinations_with_replacement(elems, 2):
            for c in elems:
                if c != a and c != b and (a + b - c) % n == 0:
                    return Violation((a, b, c), (1, 1, -1), n)
        for a, b, c in combinations_with_replacement(elems, 3):
            if (a + b + c) % n == 0:
                return Violation((a, b, c), (1, 1, 1), n)
    return None


def is_sidon(elements: Sequence[int], n: int, strength: int) -> bool:
    """True iff no non-trivial signed sum of <= strength elements vanishes mod n."""
    return find_violation(elements, n, strength) is None


@dataclass(frozen=True)
class SidonSet:
    """A certified signed-sum-free set; the property is re-checked on creation."""

    modulus: int
    strength: int
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_modulus(self.modulus)
        _check_strength(self.strength)
        elems = _check_elements(self.elements, self.modulus)
        object.__setattr__(self, "elements", elems)
        witness = find_violation(elems, self.modulus, self.strength)
        if witness is not None:
            raise SidonViolationError(
                f"{set(elems) or '{}'} is not signed-sum-free at strength "
                f"{self.strength} mod {self.modulus}: {witness}"
            )

    def __len__(self) -> int:
        return len(self.elements)

    def describe(self) -> str:
        inner = ", ".join(map(str, self.elements))
        return f"{{{inner}}} mod {self.modulus}"


def _smallest_divisor_5_mod_6(n: int) -> int | None:
    for d in range(5, n + 1, 6):
        if n % d == 0:
            return d
    return None


def lower_bound_size(n: int, strength: int) -> int:
    """Constructive lower bound for s(n, strength); exact for strengths 1 and 2."""
    _check_modulus(n)
    _check_strength(strength)
    if strength == 1:
        return n - 1
    if strength == 2:
        return (n - 1) // 2
    if n % 2 == 0:
        return n // 4
    p = _smallest_divisor_5_mod_6(n)
    if p is not None:
        return (p + 1) * n // (6 * p)
    return (n + 1) // 6


def construct_bound_set(n: int, strength: int) -> SidonSet:
    """Explicit set realizing ``lower_bound_size``; re-verified on construction.

    Strength 1 takes every nonzero residue, strength 2 the residues up to
    (n-1)/2.  Strength 3 takes the odd residues below n/2 (n even), the
    arithmetic pattern {a*p + 2*b + 1} when n has a divisor p = 6q+5 (n odd),
    and otherwise the odd residues below n/3.
    """
    _check_modulus(n)
    _check_strength(strength)
    if strength == 1:
        elems: Iterable[int] = range(1, n)
    elif strength == 2:
        elems = range(1, (n - 1) // 2 + 1)
    elif n % 2 == 0:
        elems = range(1, n // 2, 2)
    else:
        p = _smallest_divisor_5_mod_6(n)
        if p is not None:
            q = (p - 5) // 6
            elems = sorted(
                a * p + 2 * b + 1 for a in range(n // p) for b in range(q + 1)
            )
        else:
            elems = range(1, (n + 2) // 3, 2)
    return SidonSet(n, strength, tuple(elems))


@dataclass(frozen=True)
class SidonSearchResult:
    """Outcome of an exhaustive maximum search.

    ``witness`` is the lexicographically smallest set of maximum size.  When a
    node budget ran out, ``certified`` is False and ``max_cardinality`` is only
    the best size found, not a proven maximum.
    """

    modulus: int
    strength: int
    max_cardinality: int
    witness: SidonSet
    nodes_explored: int
    matches_lower_bound: bool
    certified: bool = True


def _half_solutions(w: int, n: int) -> list[int]:
    """Residues z with 2z = w (mod n)."""
    w %= n
    if n % 2 == 1:
        return [(w * ((n + 1) // 2)) % n]
    if w % 2 == 0:
        return [w // 2, w // 2 + n // 2]
    return []


def _conflict_groups(n: int, strength: int) -> list[int]:
    """Bitmasks of disjoint residue groups, at most one usable per group.

    At strength >= 2, x and n-x cannot coexist (their sum vanishes).  At
    strength 3 the quadruple {x, n-x, 2x, n-2x} is pairwise incompatible:
    every pair admits a vanishing non-trivial signed sum of at most three
    terms (x+x-2x, x+x+(n-2x), (n-x)+(n-x)+2x, (n-x)+(n-x)-(n-2x), and the
    two mirror sums).  A greedy disjoint cover by such cliques yields an
    admissible search bound: no completion can exceed one element per group.
    At strength 1 every group is a singleton and the bound degenerates to a
    plain popcount.
    """
    groups: list[int] = []
    assigned = [False] * n
    assigned[0] = True
    for x in range(1, n):
        if assigned[x]:
            continue
        cell = {x}
        if strength >= 2:
            cell.add(n - x)
        if strength >= 3:
            quad = cell | {(2 * x) % n, (n - 2 * x) % n}
            if len(quad) == 4 and not any(assigned[y] for y in quad):
                cell = quad
        mask = 0
        for y in cell:
            assigned[y] = True
            mask |= 1 << y
        groups.append(mask)
    return groups


def _search_tables(
    n: int, strength: int
) -> tuple[int, list[int], list[list[int]] | None, list[int]]:
    """Admissible-candidate mask, per-element forbid masks, and bound groups.

    ``single[y]`` holds the residues z that vanish in a sum with one or two
    copies of y alone (z+y, z+2y, z-2y, 2z+y, 2z-y); ``pair[y][a]`` holds the
    residues completing a vanishing sum with one copy each of y and a
    (z = +-(y+a), +-(y-a)).  Bit 0 is never set: residue 0 is not a candidate.
    """
    allowed = 0
    for y in range(1, n):
        if strength >= 2 and (2 * y) % n == 0:
            continue
        if strength >= 3 and (3 * y) % n == 0:
            continue
        allowed |= 1 << y

    single = [0] * n
    for y in range(1, n):
        mask = 0
        if strength >= 2:
            mask |= 1 << (n - y)
        if strength >= 3:
            mask |= 1 << ((2 * y) % n)
            mask |= 1 << ((n - 2 * y) % n)
            for z in _half_solutions(y, n):
                mask |= 1 << z
            for z in _half_solutions(n - y, n):
                mask |= 1 << z
        single[y] = mask & ~1

    pair: list[list[int]] | None = None
    if strength >= 3:
        pair = [[0] * n for _ in range(n)]
        for y in range(1, n):
            row = pair[y]
            for a in range(1, n):
                mask = (
                    (1 << ((y + a) % n))
                    | (1 << ((n - y - a) % n))
                    | (1 << ((y - a) % n))
                    | (1 << ((a - y) % n))
                )
                row[a] = mask & ~1

    return allowed, single, pair, _conflict_groups(n, strength)


def _search_python(
    n: int,
    strength: int,
    allowed0: int,
    single: list[int],
    pair: list[list[int]] | None,
    groups: list[int],
    node_budget: int | None,
) -> tuple[int, tuple[int, ...], int, bool]:
    """Reference DFS over arbitrary-width Python bitmasks."""
    best_size = 0
    best: tuple[int, ...] = ()
    nodes = 0
    exhausted = False

    def can_improve(depth: int, child: int) -> bool:
        need = best_size - depth
        if need < 0:
            return True
        count = 0
        for gmask in groups:
            if child & gmask:
                count += 1
                if count > need:
                    return True
        return False

    def extend(members: list[int], allowed: int) -> None:
        nonlocal best_size, best, nodes, exhausted
        remaining = allowed
        while remaining:
            low = remaining & -remaining
            y = low.bit_length() - 1
            remaining ^= low
            if node_budget is not None and nodes >= node_budget:
                exhausted = True
                return
            nodes += 1
            members.append(y)
            if len(members) > best_size:
                best_size = len(members)
                best = tuple(members)
            child = allowed & -(1 << (y + 1))
            child &= ~single[y]
            if pair is not None:
                row = pair[y]
                for a in members[:-1]:
                    child &= ~row[a]
            if child and can_improve(len(members), child):
                extend(members, child)
            members.pop()
            if exhausted:
                return

    extend([], allowed0)
    return best_size, best, nodes, exhausted


def max_sidon_search(
    n: int,
    strength: int,
    node_budget: int | None = None,
    engine: str = "auto",
) -> SidonSearchResult:
    """Exact maximum signed-sum-free set in Z_n by pruned backtracking.

    Candidates are tried in increasing order; adding x clears every residue
    that would complete a vanishing non-trivial sum with the chosen elements,
    so each node extends only over still-admissible residues.  Subtrees are
    cut with an admissible conflict-group bound (see ``_conflict_groups``),
    which preserves both exactness and the lexicographic minimality of the
    reported witness: a subtree is skipped only when it provably cannot beat
    the best size already found, and the first maximum-size set reached in
    ascending order is the lexicographically smallest one.

    ``engine`` selects the DFS implementation: "python" (arbitrary modulus),
    "numba" (compiled, n <= 126), or "auto".  Both traverse the identical
    tree and return identical results, node counts included.

    ``node_budget`` caps the number of visited nodes; when exhausted the
    result carries ``certified=False`` and reports the best set found so far
    instead of silently returning an uncertified maximum as exact.
    """
    _check_modulus(n)
    _check_strength(strength)
    if engine not in ("auto", "python", "numba"):
        raise DomainError(f"unknown engine {engine!r}")
    bound = lower_bound_size(n, strength)
    allowed0, single, pair, groups = _search_tables(n, strength)

    use_kernel = False
    if engine == "numba":
        use_kernel = True
    elif engine == "auto":
        use_kernel = n <= _kernel_max_modulus()

    if use_kernel:
        from . import _searchkernel

        best_size, best, nodes, exhausted = _searchkernel.run_search(
            n, strength, allowed0, single, pair, groups, node_budget
        )
    else:
        best_size, best, nodes, exhausted = _search_python(
            n, strength, allowed0, single, pair, groups, node_budget
        )

    return SidonSearchResult(
        modulus=n,
        strength=strength,
        max_cardinality=best_size,
        witness=SidonSet(n, strength, best),
        nodes_explored=nodes,
        matches_lower_bound=(best_size == bound),
        certified=not exhausted,
    )


def _kernel_max_modulus() -> int:
    try:
        from . import _searchkernel
    except ImportError:
        return 0
    return _searchkernel.MAX_LANE_MODULUS


@dataclass(frozen=True)
class BoundComparisonRow:
    """One modulus of the search-vs-bound table."""

    modulus: int
    strength: int
    lower_bound: int
    exact: int
    equal: bool
    witness: tuple[int, ...]
    nodes: int
    certified: bool

    def to_json(self) -> dict:
        return {
            "n": self.modulus,
            "t": self.strength,
            "bound": self.lower_bound,
            "exact": self.exact,
            "equal": self.equal,
            "witness": list(self.witness),
            "nodes": self.nodes,
            "certified": self.certified,
        }


def _table_row(args: tuple[int, int, int | None]) -> BoundComparisonRow:
    n, strength, node_budget = args
    result = max_sidon_search(n, strength, node_budget)
    return BoundComparisonRow(
        modulus=n,
        strength=strength,
        lower_bound=lower_bound_size(n, strength),
        exact=result.max_cardinality,
        equal=result.matches_lower_bound,
        witness=result.witness.elements,
        nodes=result.nodes_explored,
        certified=result.certified,
    )


def conjecture_table(
    n_max: int,
    strength: int = 3,
    jobs: int = 1,
    node_budget: int | None = None,
) -> list[BoundComparisonRow]:
    """Compare exact search against the constructive bound for 2 <= n <= n_max.

    The expected outcome at strength 3 is equality in every row.  With
    ``jobs`` > 1 the per-modulus searches run in worker processes; rows come
    back in modulus order either way, so output is schedule-independent.
    """
    _check_strength(strength)
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max}")
    tasks = [(n, strength, node_budget) for n in range(2, n_max + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_table_row, tasks, chunksize=4))
    return [_table_row(task) for task in tasks]


def render_table(rows: Sequence[BoundComparisonRow]) -> str:
    """Aligned text rendering of a search-vs-bound table."""
    header = f"{'n':>4}  {'t':>2}  {'bound':>5}  {'exact':>5}  {'equal':>5}  {'nodes':>9}  witness"
    lines = [header]
    for row in rows:
        witness = "{" + ", ".join(map(str, row.witness)) + "}"
        flag = "yes" if row.equal else "NO"
        if not row.certified:
            flag += "?"
        lines.append(
            f"{row.modulus:>4}  {row.strength:>2}  {row.lower_bound:>5}  "
            f"{row.exact:>5}  {flag:>5}  {row.nodes:>9}  {witness}"
        )
    return "\n".join(lines)
