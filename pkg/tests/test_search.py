import numpy as np
import pytest

from qlsmub.search import (
    ENUMERATION_CAP,
    PAIRS_CAP,
    EnumerationResult,
    EquivalenceReport,
    count_latin_by_columns,
    cross_validate_lemma16,
    enumerate_latin,
    find_orthogonal_pairs,
)
from qlsmub.squares import LatinSquare, are_orthogonal

KNOWN_COUNTS = {1: 1, 2: 2, 3: 12, 4: 576}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_enumeration_counts(n):
    result = enumerate_latin(n)
    assert isinstance(result, EnumerationResult)
    assert result.order == n
    assert result.count == KNOWN_COUNTS[n]
    assert count_latin_by_columns(n) == KNOWN_COUNTS[n]


def test_enumeration_is_lexicographic_and_distinct():
    squares = enumerate_latin(3).squares
    keys = [tuple(s.cells.ravel().tolist()) for s in squares]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)
    assert squares[0].cells.tolist() == [[0, 1, 2], [1, 2, 0], [2, 0, 1]]


def test_enumeration_caps():
    for bad in (0, ENUMERATION_CAP + 1, -2):
        with pytest.raises(ValueError):
            enumerate_latin(bad)
        with pytest.raises(ValueError):
            count_latin_by_columns(bad)


def test_orthogonal_pairs_small_orders():
    assert len(find_orthogonal_pairs(1)) == 1
    assert find_orthogonal_pairs(2) == []
    pairs = find_orthogonal_pairs(3)
    assert len(pairs) == 72


def test_orthogonal_pairs_are_orthogonal_and_symmetric():
    pairs = find_orthogonal_pairs(3)
    for a, b in pairs:
        assert are_orthogonal(a, b)
    keyed = {
        (tuple(a.cells.ravel().tolist()), tuple(b.cells.ravel().tolist()))
        for a, b in pairs
    }
    assert all((kb, ka) in keyed for ka, kb in keyed)


def test_orthogonal_pairs_contain_the_two_cyclic_twists():
    cyclic = LatinSquare([[(r + c) % 3 for c in range(3)] for r in range(3)])
    twisted = LatinSquare([[(r + 2 * c) % 3 for c in range(3)] for r in range(3)])
    pairs = find_orthogonal_pairs(3)
    assert any(a == cyclic and b == twisted for a, b in pairs)


def test_orthogonal_pairs_cap():
    with pytest.raises(ValueError):
        find_orthogonal_pairs(PAIRS_CAP + 1)


@pytest.mark.parametrize(
    "n, positives", [(1, 1), (2, 0), (3, 72)]
)
def test_cross_validation_agrees(n, positives):
    report = cross_validate_lemma16(n)
    assert isinstance(report, EquivalenceReport)
    assert report.consistent
    assert report.disagreements == []
    assert report.pairs_checked == KNOWN_COUNTS[n] ** 2
    assert report.positives == positives


def test_cross_validation_cap():
    with pytest.raises(ValueError):
        cross_validate_lemma16(5)
