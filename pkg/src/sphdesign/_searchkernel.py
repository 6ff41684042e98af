"""Compiled inner loop for the maximum signed-sum-free set search.

Same algorithm as the pure-Python path in ``sidon.max_sidon_search`` --
ascending depth-first extension over admissible residues with incremental
forbidden-mask narrowing and the conflict-group bound -- restated over a
pair of uint64 bitmask lanes so numba can compile it.  Visit order, node
counts, and results are identical to the pure path; tests hold the two
engines to bit-equality on a sweep of moduli.

Only moduli with n <= 126 fit the two lanes; larger moduli take the pure
path automatically.
"""

from __future__ import annotations

import numpy as np
from numba import njit

MAX_LANE_MODULUS = 126

_U1 = np.uint64(1)


def split_mask(mask: int) -> tuple[int, int]:
    """Split an arbitrary-width Python bitmask into (low, high) uint64 lanes."""
    return mask & 0xFFFFFFFFFFFFFFFF, (mask >> 64) & 0xFFFFFFFFFFFFFFFF


@njit(cache=True)
def _run(
    n,
    strength,
    allowed_lo,
    allowed_hi,
    single_lo,
    single_hi,
    pair_lo,
    pair_hi,
    group_lo,
    group_hi,
    node_budget,
):
    max_depth = 70
    ent_lo = np.zeros(max_depth + 1, np.uint64)
    ent_hi = np.zeros(max_depth + 1, np.uint64)
    cursor = np.zeros(max_depth + 1, np.int64)
    members = np.zeros(max_depth + 1, np.int64)
    best = np.zeros(max_depth + 1, np.int64)

    ent_lo[0] = allowed_lo
    ent_hi[0] = allowed_hi
    cursor[0] = 1
    best_size = 0
    nodes = np.int64(0)
    exhausted = False
    n_groups = group_lo.shape[0]
    depth = 0

    while depth >= 0:
        y = cursor[depth]
        found = np.int64(-1)
        elo = ent_lo[depth]
        ehi = ent_hi[depth]
        while y < n:
            if y < 64:
                if (elo >> np.uint64(y)) & _U1:
                    found = y
                    break
            else:
                if (ehi >> np.uint64(y - 64)) & _U1:
                    found = y
                    break
            y += 1
        if found < 0:
            depth -= 1
            continue
        cursor[depth] = found + 1
        if node_budget >= 0 and nodes >= node_budget:
            exhausted = True
            break
        nodes += 1
        members[depth] = found
        size = depth + 1
        if size > best_size:
            best_size = size
            for i in range(size):
                best[i] = members[i]

        clo = elo
        chi = ehi
        if found < 63:
            clo &= ~((_U1 << np.uint64(found + 1)) - _U1)
        elif found == 63:
            clo = np.uint64(0)
        else:
            clo = np.uint64(0)
            chi &= ~((_U1 << np.uint64(found - 63)) - _U1)
        clo &= ~single_lo[found]
        chi &= ~single_hi[found]
        if strength >= 3:
            for i in range(depth):
                a = members[i]
                clo &= ~pair_lo[found, a]
                chi &= ~pair_hi[found, a]

        if clo | chi:
            need = best_size - size
            descend = need < 0
            if not descend:
                count = 0
                for g in range(n_groups):
                    if (clo & group_lo[g]) | (chi & group_hi[g]):
                        count += 1
                        if count > need:
                            descend = True
                            break
            if descend:
                depth += 1
                ent_lo[depth] = clo
                ent_hi[depth] = chi
                cursor[depth] = found + 1

    return best_size, best, nodes, exhausted


def run_search(
    n: int,
    strength: int,
    allowed: int,
    single_forbid: list[int],
    pair_forbid: list[list[int]] | None,
    groups: list[int],
    node_budget: int | None,
) -> tuple[int, tuple[int, ...], int, bool]:
    """Marshal Python bitmasks into lanes and run the compiled search."""
    if n > MAX_LANE_MODULUS:
        raise ValueError(f"compiled kernel supports n <= {MAX_LANE_MODULUS}")
    a_lo, a_hi = split_mask(allowed)
    single_lo = np.zeros(n, np.uint64)
    single_hi = np.zeros(n, np.uint64)
    for y in range(1, n):
        lo, hi = split_mask(single_forbid[y])
        single_lo[y] = lo
        single_hi[y] = hi
    pair_lo = np.zeros((n, n), np.uint64)
    pair_hi = np.zeros((n, n), np.uint64)
    if pair_forbid is not None:
        for y in range(1, n):
            row = pair_forbid[y]
            for a in range(1, n):
                lo, hi = split_mask(row[a])
                pair_lo[y, a] = lo
                pair_hi[y, a] = hi
    group_lo = np.zeros(len(groups), np.uint64)
    group_hi = np.zeros(len(groups), np.uint64)
    for g, mask in enumerate(groups):
        lo, hi = split_mask(mask)
        group_lo[g] = lo
        group_hi[g] = hi
    budget = np.int64(-1 if node_budget is None else node_budget)
    best_size, best, nodes, exhausted = _run(
        np.int64(n),
        np.int64(strength),
        np.uint64(a_lo),
        np.uint64(a_hi),
        single_lo,
        single_hi,
        pair_lo,
        pair_hi,
        group_lo,
        group_hi,
        budget,
    )
    witness = tuple(int(v) for v in best[:best_size])
    return int(best_size), witness, int(nodes), bool(exhausted)
