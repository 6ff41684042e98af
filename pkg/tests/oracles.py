"""Independent reference implementations used only by tests.

Nothing here shares code with the package's search: the extension check
below walks the definition of a signed-sum-free set term by term, and the
enumeration does plain depth-first extension with no forbidden-residue
masks and no cardinality bound (only a depth cap).  Disagreement between
these and the production search is a bug in one of them.
"""

from __future__ import annotations

from itertools import product


def sidon_by_definition(elements: list[int], n: int, t: int) -> bool:
    """Literal quantifier sweep over every (x_1..x_t, e_1..e_t) combination."""
    for xs in product(elements, repeat=t):
        for es in product((-1, 0, 1), repeat=t):
            if all(e == 0 for e in es):
                continue
            positive = {x for x, e in zip(xs, es) if e == 1}
            negative = {x for x, e in zip(xs, es) if e == -1}
            if positive & negative:
                continue  # trivial: a value carries both signs
            if sum(e * x for x, e in zip(xs, es)) % n == 0:
                return False
    return True


def _can_extend(members: list[int], y: int, n: int, t: int) -> bool:
    """Definition-level check of every new sum created by adding y.

    Members are sorted below y, so y - a never vanishes and every sum family
    involving y reduces to: ky for k <= t; y + a; 2y +- a; y + a + b;
    a + b - y; and y +- (a - b) for distinct a, b.  (y + 2a and y - 2a are
    the a = b cases of the last two triple families.)
    """
    if y % n == 0:
        return False
    if t >= 2:
        if (2 * y) % n == 0:
            return False
        for a in members:
            if (y + a) % n == 0:
                return False
    if t >= 3:
        if (3 * y) % n == 0:
            return False
        y2 = 2 * y
        k = len(members)
        for i in range(k):
            a = members[i]
            if (y2 + a) % n == 0 or (y2 - a) % n == 0:
                return False
            for j in range(i, k):
                b = members[j]
                s = a + b
                if (s + y) % n == 0 or (s - y) % n == 0:
                    return False
                if a != b and ((y + a - b) % n == 0 or (y - a + b) % n == 0):
                    return False
    return True


def brute_force_max_sidon(n: int, t: int, depth_cap: int) -> int:
    """Largest signed-sum-free set found by uncapped depth-first extension.

    Every valid set of size <= depth_cap is visited; with depth_cap set to
    (lower bound + 1), a return value above the bound disproves the bound's
    sharpness and a return value equal to it confirms the exact maximum.
    """
    best = 0

    def extend(members: list[int], start: int) -> None:
        nonlocal best
        if len(members) > best:
            best = len(members)
        if len(members) >= depth_cap:
            return
        for y in range(start, n):
            if _can_extend(members, y, n, t):
                members.append(y)
                extend(members, y + 1)
                members.pop()

    extend([], 1)
    return best
