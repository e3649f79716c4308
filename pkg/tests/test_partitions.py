"""Union-find and partition block counting."""
import random

import pytest

from potts_ghs import DisjointSet, Partition, block_count, merge_constraints


def test_disjoint_set_basics():
    ds = DisjointSet(4)
    assert ds.n_blocks == 4
    assert ds.union(0, 1) is True
    assert ds.n_blocks == 3
    assert ds.union(1, 0) is False
    assert ds.n_blocks == 3
    assert ds.find(0) == ds.find(1)
    ds.union(2, 3)
    ds.union(0, 3)
    assert ds.n_blocks == 1
    assert len({ds.find(i) for i in range(4)}) == 1


def test_merge_constraints_examples():
    # Elements run over {0, ..., n_sites}: the ghost site 0 plus the sites.
    assert merge_constraints(4, []).block_count == 5
    p = merge_constraints(4, [(0, 1), (2, 3)])
    assert p.block_count == 3
    assert p.blocks == ((0, 1), (2, 3), (4,))
    redundant = merge_constraints(4, [(1, 2), (1, 3), (2, 3)])
    assert redundant.block_count == 3
    assert redundant.blocks == ((0,), (1, 2, 3), (4,))


def test_blocks_are_sorted_by_minimum_element():
    p = merge_constraints(5, [(3, 4), (0, 2)])
    assert [min(b) for b in p.blocks] == sorted(min(b) for b in p.blocks)
    index = p.block_index
    assert index[3] == index[4]
    assert index[0] == index[2]
    assert index[1] not in (index[0], index[3])


def test_out_of_range_and_self_pairs_rejected():
    with pytest.raises(ValueError):
        merge_constraints(3, [(0, 4)])
    with pytest.raises(ValueError):
        merge_constraints(3, [(-1, 0)])
    with pytest.raises(ValueError):
        merge_constraints(3, [(1, 1)])


def test_block_count_matches_full_partition():
    rng = random.Random(21)
    for _ in range(50):
        n = rng.randint(1, 8)
        eqs = [
            (rng.randrange(n), rng.randrange(n))
            for _ in range(rng.randint(0, 10))
        ]
        eqs = [(i, j) for i, j in eqs if i != j]
        assert block_count(n, eqs) == merge_constraints(n, eqs).block_count


def test_adding_constraints_never_increases_blocks():
    rng = random.Random(22)
    for _ in range(30):
        n = rng.randint(2, 7)
        eqs: list[tuple[int, int]] = []
        prev = n
        for _ in range(6):
            i, j = rng.randrange(n), rng.randrange(n)
            if i == j:
                continue
            eqs.append((i, j))
            cur = block_count(n, eqs)
            assert cur <= prev
            assert cur >= 1
            prev = cur


def test_partition_is_hashable_and_frozen():
    p = merge_constraints(3, [(0, 1)])
    assert isinstance(p, Partition)
    assert hash(p) == hash(merge_constraints(3, [(1, 0)]))
    with pytest.raises(Exception):
        p.blocks = ()
