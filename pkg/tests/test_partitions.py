"""Partition enumeration, statistics, and permutation action."""

import json
from itertools import combinations, product

import pytest

from magvertex.algebra import LaurentPoly
from magvertex.partitions import (
    EMPTY, InvalidPartitionError, PartitionTuple, ResourceLimitError,
    SolidPartition, all_perms, character, compose_perms, count_partitions,
    enumerate_partitions, enumerate_tuples, fixed_pairs, is_valid, k_stat, mu,
    mu_tuple, perm_substitution, permute, permute_tuple,
)

# independently brute-forced counts (exhaustive growth over a bounding box)
SOLID_COUNTS = [1, 1, 4, 10, 26, 59, 140]    # n = 0..6; n=6 anchored at 140
PLANE_COUNTS = [1, 1, 3, 6, 13, 24, 48, 86, 160]
YOUNG_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22]


def box2(i, j):
    return (i, j, 0, 0)


# -- validity -----------------------------------------------------------------

def test_is_valid_examples():
    assert is_valid(set())
    assert is_valid({(0, 0, 0, 0), (0, 0, 0, 1)})
    assert not is_valid({(1, 0, 0, 0)})


def test_constructor_rejects_invalid():
    with pytest.raises(InvalidPartitionError):
        SolidPartition([(0, 0, 0, 1)])


# -- enumeration ----------------------------------------------------------------

def test_solid_counts_through_six():
    assert [count_partitions(4, n) for n in range(7)] == SOLID_COUNTS


def test_plane_and_young_counts():
    assert [count_partitions(3, n) for n in range(9)] == PLANE_COUNTS
    assert [count_partitions(2, n) for n in range(9)] == YOUNG_COUNTS
    assert [count_partitions(1, n) for n in range(5)] == [1] * 5


def test_enumerate_two_boxes_oracle():
    # independent oracle: filter all 2-subsets of a 2-cube for downward closure
    pts = [b for b in product(range(2), repeat=4)]
    ref = sorted(
        tuple(sorted(pair)) for pair in combinations(pts, 2) if is_valid(set(pair)))
    got = [p.boxes for p in enumerate_partitions(4, 2)]
    assert sorted(got) == ref
    assert len(got) == 4


def test_enumeration_size_zero_and_determinism():
    assert enumerate_partitions(4, 0) == [EMPTY]
    a = [p.boxes for p in enumerate_partitions(4, 3)]
    b = [p.boxes for p in enumerate_partitions(4, 3)]
    assert a == b == sorted(a)


def test_enumeration_ceiling():
    with pytest.raises(ResourceLimitError):
        enumerate_partitions(4, 9)
    with pytest.raises(ResourceLimitError):
        enumerate_partitions(3, 21)


def test_enumerate_tuples_counts():
    assert len(enumerate_tuples(2, 1)) == 2
    assert len(enumerate_tuples(2, 2)) == 9  # 4 + 1*1 + 4 by composition convolution
    assert len(enumerate_tuples(1, 3)) == 10
    assert all(t.size == 2 for t in enumerate_tuples(2, 2))


# -- character ---------------------------------------------------------------------

def test_character_examples():
    assert character(EMPTY).is_zero()
    assert character(SolidPartition([(0, 0, 0, 0)])) == \
        LaurentPoly.const(("t1", "t2", "t3"), 1)
    two = SolidPartition([(0, 0, 0, 0), (0, 0, 0, 1)])
    assert character(two) == LaurentPoly.from_spec(
        ("t1", "t2", "t3"), (1, {}), (1, {"t1": -1, "t2": -1, "t3": -1}))


def test_character_rank_is_size():
    for n in range(5):
        for p in enumerate_partitions(4, n):
            assert character(p).coeff_sum() == p.size


# -- statistics ---------------------------------------------------------------------

def test_mu_examples():
    assert mu(SolidPartition([(0, 0, 0, 0), (0, 0, 0, 1)])) == 1
    assert mu(SolidPartition([(0, 0, 0, 0), (1, 0, 0, 0)])) == 0
    for p in enumerate_partitions(3, 4):
        assert mu(p) == 0  # plane partitions have no diagonal overhang


def test_k_stat_examples():
    assert k_stat(SolidPartition([(0, 0, 0, 0)])) == 0
    assert k_stat(SolidPartition([(0, 0, 0, 0), (0, 0, 0, 1)])) == 1
    assert k_stat(SolidPartition([(0, 0, 0, 0), (1, 0, 0, 0)])) == 0


def test_fixed_pairs_examples():
    # frozen by direct pair enumeration over the definition
    assert fixed_pairs(SolidPartition([(0, 0, 0, 0)])) == 0
    assert fixed_pairs(SolidPartition([(0, 0, 0, 0), (0, 0, 0, 1)])) == 1
    assert fixed_pairs(SolidPartition([(0, 0, 0, 0), (1, 0, 0, 0)])) == 0


def test_parity_sweep_small():
    for n in range(5):
        for p in enumerate_partitions(4, n):
            assert (fixed_pairs(p) - k_stat(p)) % 2 == 0


def test_mu_tuple_sums():
    t = PartitionTuple([SolidPartition([(0, 0, 0, 0), (0, 0, 0, 1)]),
                        SolidPartition([(0, 0, 0, 0)])])
    assert mu_tuple(t) == 1


# -- permutations --------------------------------------------------------------------

def test_permute_examples():
    p = SolidPartition([(0, 0, 0, 0), (1, 0, 0, 0)])
    assert permute(p, (0, 1, 2, 3)) == p
    swapped = permute(p, (3, 1, 2, 0))
    assert swapped == SolidPartition([(0, 0, 0, 0), (0, 0, 0, 1)])


def test_permute_group_action():
    p = SolidPartition([(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 0, 0)])
    sigma, tau = (1, 2, 0, 3), (3, 0, 2, 1)
    step = permute(permute(p, sigma), tau)
    assert step == permute(p, compose_perms(tau, sigma))


def test_character_commutes_with_permutation():
    for p in enumerate_partitions(4, 3):
        for sigma in all_perms():
            lhs = character(permute(p, sigma))
            rhs = character(p).substitute(perm_substitution(sigma))
            assert lhs == rhs


# -- serialization ----------------------------------------------------------------------

def test_partition_json_round_trip():
    p = SolidPartition([(0, 0, 0, 0), (0, 0, 0, 1), (1, 0, 0, 0)])
    assert SolidPartition.from_json(json.loads(json.dumps(p.to_json()))) == p
    t = PartitionTuple([p, EMPTY])
    assert PartitionTuple.from_json(json.loads(json.dumps(t.to_json()))) == t
    with pytest.raises(InvalidPartitionError):
        SolidPartition.from_json({"boxes": [[2, 0, 0, 0]]})
