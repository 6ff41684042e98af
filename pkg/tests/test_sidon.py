"""Tests for signed-sum-free set checking, construction, and search."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_max_sidon, sidon_by_definition
from sphdesign.exceptions import DomainError, SidonViolationError
from sphdesign.sidon import (
    SidonSet,
    conjecture_table,
    construct_bound_set,
    find_violation,
    is_sidon,
    lower_bound_size,
    max_sidon_search,
    render_table,
)


class TestChecker:
    def test_small_positive_case(self):
        # exhaustive cross-check of {1, 3} mod 8 against the definition
        assert sidon_by_definition([1, 3], 8, 3)
        assert is_sidon([1, 3], 8, 3)

    def test_violation_with_mixed_signs(self):
        witness = find_violation([1, 2], 6, 3)
        assert witness is not None
        assert witness.values == (1, 1, 2)
        assert witness.signs == (1, 1, -1)
        assert str(witness) == "1 + 1 - 2 = 0 (mod 6)"

    def test_violation_with_triple_sum(self):
        witness = find_violation([2], 6, 3)
        assert witness is not None
        assert witness.values == (2, 2, 2)
        assert witness.signs == (1, 1, 1)

    def test_odd_residues_below_half(self):
        assert is_sidon([1, 3, 5], 12, 3)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            is_sidon([0], 6, 3)
        with pytest.raises(DomainError):
            is_sidon([6], 6, 3)
        with pytest.raises(DomainError):
            is_sidon([1, 1], 6, 3)

    @given(
        st.integers(min_value=2, max_value=40).flatmap(
            lambda n: st.tuples(
                st.just(n),
                st.sets(st.integers(min_value=1, max_value=n - 1), max_size=5),
            )
        ),
        st.sampled_from([1, 2, 3]),
    )
    @settings(max_examples=200, deadline=None)
    def test_matches_definition(self, n_and_set, t):
        n, elements = n_and_set
        assert is_sidon(sorted(elements), n, t) == sidon_by_definition(
            sorted(elements), n, t
        )

    @given(
        st.integers(min_value=4, max_value=60),
        st.integers(min_value=0, max_value=2**20),
    )
    @settings(max_examples=150, deadline=None)
    def test_monotone_under_subsets(self, n, seed):
        full = construct_bound_set(n, 3).elements
        keep = [x for i, x in enumerate(full) if (seed >> i) & 1]
        assert is_sidon(keep, n, 3)

    @given(
        st.integers(min_value=4, max_value=60),
        st.integers(min_value=1, max_value=59),
    )
    @settings(max_examples=150, deadline=None)
    def test_dilation_closure(self, n, u):
        if math.gcd(u, n) != 1:
            return
        base = construct_bound_set(n, 3).elements
        dilated = sorted((u * x) % n for x in base)
        assert is_sidon(dilated, n, 3)


class TestSidonSet:
    def test_rejects_violating_set(self):
        with pytest.raises(SidonViolationError):
            SidonSet(6, 3, (1, 2))

    def test_sorts_elements(self):
        assert SidonSet(12, 3, (5, 1, 3)).elements == (1, 3, 5)

    def test_empty_set_is_valid(self):
        assert len(SidonSet(2, 3, ())) == 0


class TestLowerBound:
    @pytest.mark.parametrize(
        "n,t,expected",
        [
            (12, 3, 3),
            (25, 3, 5),  # smallest divisor 5 = 5 (mod 6)
            (9, 3, 1),
            (11, 2, 5),
            (11, 3, 2),  # 11 itself is 5 (mod 6)
            (35, 3, 7),
            (2, 3, 0),
            (3, 3, 0),
            (4, 3, 1),
            (10, 1, 9),
        ],
    )
    def test_reference_values(self, n, t, expected):
        assert lower_bound_size(n, t) == expected

    @pytest.mark.parametrize("t", [1, 2, 3])
    def test_construction_realizes_bound(self, t):
        for n in range(2, 501):
            built = construct_bound_set(n, t)  # re-verified on construction
            assert len(built) == lower_bound_size(n, t), n


class TestConstruction:
    @pytest.mark.parametrize(
        "n,t,expected",
        [
            (12, 3, (1, 3, 5)),
            (25, 3, (1, 6, 11, 16, 21)),
            (35, 3, (1, 6, 11, 16, 21, 26, 31)),
            (9, 3, (1,)),
            (11, 3, (1, 3)),
            (8, 2, (1, 2, 3)),
            (5, 1, (1, 2, 3, 4)),
        ],
    )
    def test_explicit_sets(self, n, t, expected):
        assert construct_bound_set(n, t).elements == expected


class TestSearch:
    @pytest.mark.parametrize(
        "n,expected,witness",
        [
            (5, 1, (1,)),
            (8, 2, (1, 3)),
            (12, 3, (1, 3, 5)),
        ],
    )
    def test_reference_values(self, n, expected, witness):
        result = max_sidon_search(n, 3)
        assert result.max_cardinality == expected
        assert result.witness.elements == witness
        assert result.matches_lower_bound
        assert result.certified

    def test_strength_one_is_everything(self):
        for n in (5, 9, 14):
            result = max_sidon_search(n, 1)
            assert result.max_cardinality == n - 1
            assert result.witness.elements == tuple(range(1, n))

    def test_strength_two_formula(self):
        for n in range(2, 30):
            assert max_sidon_search(n, 2).max_cardinality == (n - 1) // 2

    @pytest.mark.parametrize("n", range(2, 41))
    def test_against_brute_force(self, n):
        bound = lower_bound_size(n, 3)
        result = max_sidon_search(n, 3)
        assert result.max_cardinality == brute_force_max_sidon(n, 3, bound + 1)

    def test_strength_nesting(self):
        for n in range(2, 30):
            s3 = max_sidon_search(n, 3).max_cardinality
            s2 = max_sidon_search(n, 2).max_cardinality
            s1 = max_sidon_search(n, 1).max_cardinality
            assert s3 <= s2 <= s1

    def test_budget_exhaustion_is_flagged(self):
        result = max_sidon_search(40, 3, node_budget=10)
        assert not result.certified
        assert result.nodes_explored <= 10
        assert is_sidon(result.witness.elements, 40, 3)

    def test_engines_agree(self):
        for n in (17, 24, 33, 47):
            py = max_sidon_search(n, 3, engine="python")
            nb = max_sidon_search(n, 3, engine="numba")
            assert py.max_cardinality == nb.max_cardinality
            assert py.witness.elements == nb.witness.elements
            assert py.nodes_explored == nb.nodes_explored

    @pytest.mark.parametrize("n", range(4, 26))
    def test_witness_is_lexicographically_smallest(self, n):
        from itertools import combinations

        result = max_sidon_search(n, 3)
        first = next(
            combo
            for combo in combinations(range(1, n), result.max_cardinality)
            if is_sidon(combo, n, 3)
        )
        assert result.witness.elements == first

    def test_rejects_unknown_engine(self):
        with pytest.raises(DomainError):
            max_sidon_search(10, 3, engine="gpu")


class TestConjectureTable:
    def test_small_rows(self):
        rows = conjecture_table(4)
        assert [(r.modulus, r.lower_bound, r.exact) for r in rows] == [
            (2, 0, 0),
            (3, 0, 0),
            (4, 1, 1),
        ]
        assert all(r.equal and r.certified for r in rows)

    def test_all_equal_to_twenty(self):
        rows = conjecture_table(20)
        assert all(r.equal for r in rows)

    def test_parallel_matches_serial(self):
        serial = conjecture_table(15)
        parallel = conjecture_table(15, jobs=2)
        assert [(r.modulus, r.exact, r.witness) for r in serial] == [
            (r.modulus, r.exact, r.witness) for r in parallel
        ]

    def test_render_is_aligned(self):
        text = render_table(conjecture_table(6))
        lines = text.splitlines()
        assert lines[0].split()[:4] == ["n", "t", "bound", "exact"]
        assert len(lines) == 6  # header + rows for n = 2..6
