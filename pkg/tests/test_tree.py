"""Tests for parent/children/child_count/depth and tree slices."""

import pytest

from scripts.rows import leftmost_sequence
from scripts.tree import (
    build_slice,
    child_count,
    child_count_sum,
    children,
    depth,
    parent,
    path_to_root,
    rhythm,
)
from scripts.utils.errors import SizeLimit, UnsupportedRepresentation
from scripts.utils.exactnum import ApproxK, RationalK
from scripts.utils.models import ChildRange


class TestParent:
    """Tests for parent."""

    def test_examples(self, phi, three):
        assert parent(3, phi) == 1
        assert parent(0, phi) == 0
        assert parent(7, three) == 2

    def test_negative_node(self, phi):
        with pytest.raises(ValueError):
            parent(-1, phi)


class TestChildren:
    """Tests for child ranges."""

    def test_examples(self, phi, three, three_halves):
        assert children(1, phi) == ChildRange(lo=2, hi=3)
        assert children(0, three) == ChildRange(lo=0, hi=2)
        assert children(2, three_halves) == ChildRange(lo=3, hi=4)

    def test_range_helpers(self):
        r = ChildRange(lo=3, hi=5)
        assert r.size == 3
        assert 4 in r
        assert 6 not in r
        assert list(r.nodes()) == [3, 4, 5]

    def test_partition(self, oracle_ks):
        for k in oracle_ks:
            owner = {}
            for n in range(0, 2001):
                for c in children(n, k).nodes():
                    assert c not in owner, (k, c)
                    owner[c] = n
            for m in range(1, 2001):
                assert m in children(parent(m, k), k)
                assert owner[m] == parent(m, k)

    def test_approximate_k(self):
        k = ApproxK("real:pi")
        assert children(1, k) == ChildRange(lo=4, hi=6)


class TestChildCount:
    """Tests for child_count and its cross-check."""

    def test_examples(self, phi, three_halves):
        assert child_count(1, phi) == 2
        assert child_count(1, three_halves) == 1
        assert child_count(0, phi) == 2
        assert child_count(0, RationalK(7, 2)) == 4

    def test_always_floor_or_ceil(self, oracle_ks):
        for k in oracle_ks:
            assert {child_count(n, k) for n in range(1, 3000)} <= {k.floor_k, k.ceil_k}

    def test_cross_check_agrees(self, oracle_ks):
        for k in oracle_ks:
            for n in range(0, 10_001):
                child_count(n, k, cross_check=True)

    def test_cross_check_from_config(self, config_yaml_file, phi):
        from scripts.utils.config import load_config

        load_config(config_path=config_yaml_file)
        assert child_count(4, phi) == 2

    def test_rational_period(self):
        k = RationalK(7, 3)
        counts = [child_count(n, k) for n in range(1, 301)]
        assert counts[3:] == counts[:-3]

    def test_three_halves_alternates(self, three_halves):
        """h(n) runs 2, 1, 2, 1, ... from the root."""
        counts = [child_count(n, three_halves) for n in range(0, 1001)]
        assert counts == [2 if n % 2 == 0 else 1 for n in range(0, 1001)]


class TestTelescope:
    """Tests for child-count sums."""

    def test_sum_equals_ceiling(self, oracle_ks):
        for k in oracle_ks:
            running = 0
            for n_nodes in range(1, 3001):
                running += child_count(n_nodes - 1, k)
                assert running == k.ceil_scaled(n_nodes), (k, n_nodes)

    def test_child_count_sum(self, phi):
        assert child_count_sum(100, phi) == phi.ceil_scaled(100)


class TestDepth:
    """Tests for depth and path_to_root."""

    def test_examples(self, phi, three_halves):
        assert depth(0, phi) == 0
        assert depth(4, three_halves) == 3
        # 12 = f_4 opens the row at depth 5
        assert depth(12, phi) == 5

    def test_path_to_root(self, three_halves):
        assert path_to_root(4, three_halves) == [4, 2, 1, 0]
        assert path_to_root(0, three_halves) == [0]

    def test_leftmost_nodes_open_rows(self, oracle_ks):
        for k in oracle_ks:
            f = leftmost_sequence(k, 15)
            for d, f_d in enumerate(f):
                assert depth(f_d, k) == d + 1
                if f_d > 1:
                    assert depth(f_d - 1, k) == d


class TestRhythm:
    """Tests for the child-count rhythm of rational k."""

    def test_three_halves(self, three_halves):
        r = rhythm(three_halves)
        assert (r.q, r.p) == (2, 3)
        assert r.counts == [2, 1]
        assert r.valid

    def test_five_thirds(self):
        r = rhythm(RationalK(5, 3))
        assert r.counts == [2, 2, 1]
        assert sum(r.counts) == 5

    def test_integer(self, three):
        assert rhythm(three).counts == [3]

    def test_irrational_rejected(self, phi):
        with pytest.raises(UnsupportedRepresentation):
            rhythm(phi)


class TestBuildSlice:
    """Tests for breadth-first tree slices."""

    def test_complete_ternary(self, three):
        tree = build_slice(three, 2)
        assert tree.rows == [[0], [1, 2], [3, 4, 5, 6, 7, 8]]

    def test_phi_row_lengths(self, phi):
        assert build_slice(phi, 3).row_lengths == [1, 1, 2, 3]

    def test_three_halves_row_lengths(self, three_halves):
        tree = build_slice(three_halves, 4)
        assert tree.row_lengths == [1, 1, 1, 2, 3]
        assert tree.node_count == 8

    def test_rows_sorted_disjoint_and_linked(self, oracle_ks):
        for k in oracle_ks:
            tree = build_slice(k, 8)
            seen: set[int] = set()
            for d, row in enumerate(tree.rows):
                assert row == sorted(row)
                assert not seen & set(row)
                seen |= set(row)
                if d:
                    assert all(parent(n, k) in tree.rows[d - 1] for n in row)

    def test_depth_zero(self, phi):
        assert build_slice(phi, 0).rows == [[0]]

    def test_size_limit(self, three):
        with pytest.raises(SizeLimit) as info:
            build_slice(three, 10, max_nodes=1000)
        assert info.value.exit_code == 5

    def test_size_limit_from_config(self, config_yaml_file, three):
        from scripts.utils.config import load_config

        load_config(config_path=config_yaml_file)
        with pytest.raises(SizeLimit):
            build_slice(three, 8)
