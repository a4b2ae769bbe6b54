import pytest

from superschur.tableaux import (
    Tableau,
    conjugate,
    enumerate_standard,
    hook_content_count,
    partition,
    partition_dominates,
    partitions_of,
    shape_data,
)
from superschur.weights import Weight


def test_conjugate():
    assert conjugate((2, 1)) == (2, 1)
    assert conjugate((3,)) == (1, 1, 1)
    assert conjugate((4, 2, 1)) == (3, 2, 1, 1)
    for size in range(7):
        for p in partitions_of(size):
            assert conjugate(conjugate(p)) == p


def test_partition_normalization():
    assert partition((2, 1, 0, 0)) == (2, 1)
    with pytest.raises(ValueError):
        partition((1, 2))


def test_partition_dominance():
    assert partition_dominates((1, 1), (2,))
    assert not partition_dominates((2,), (1, 1))
    assert not partition_dominates((1,), (2,))


def test_enumerate_examples():
    assert len(enumerate_standard((1,), 3)) == 3
    assert [str(t) for t in enumerate_standard((2, 1), 2)] == ["11/2", "12/2"]
    assert len(enumerate_standard((2, 1), 3)) == 8
    assert enumerate_standard((2,), 0) == []


def test_hook_content_examples():
    assert hook_content_count((2, 1), 3) == 8
    assert hook_content_count((1,), 5) == 5
    assert hook_content_count((4,), 1) == 1
    assert hook_content_count((1, 1), 1) == 0


def test_enumeration_is_sorted_standard_and_distinct():
    for shape in [(3, 1), (2, 2), (2, 1, 1)]:
        tabs = enumerate_standard(shape, 3)
        words = [tuple(x for r in t.rows for x in r) for t in tabs]
        assert words == sorted(set(words))
        assert all(t.is_standard() for t in tabs)


def test_tableau_roundtrip_and_checks():
    t = Tableau(((1, 2), (2,)))
    assert Tableau.from_json(t.to_json()) == t
    assert t.shape == (2, 1)
    assert t.columns() == [(1, 2), (2,)]
    assert t.is_standard()
    assert not Tableau(((2, 1),)).is_standard()
    assert not Tableau(((1,), (1,))).is_standard()
    with pytest.raises(ValueError):
        Tableau(((1,), (1, 2)))


def test_shape_data():
    sd = shape_data(Weight.parse("1,0|2"))
    assert (sd.a, sd.b, sd.mu) == (0, 0, Weight.parse("1,0|2"))
    sd = shape_data(Weight.parse("-1|-1"))
    assert (sd.a, sd.b, sd.mu) == (-1, -1, Weight.parse("0|0"))
    # the determinant power comes off the whole block, keeping weights intact
    sd = shape_data(Weight.parse("2,-1|-2"))
    assert (sd.a, sd.b) == (-1, -2)
    assert sd.mu == Weight.parse("3,0|0")
    assert sd.nu == ((1, 1, 1), ())
    with pytest.raises(ValueError):
        shape_data(Weight.parse("0,1|0"))


def test_shape_data_recovers_lambda():
    for text in ("2,-1|-2", "0,-3|4,-1", "-2,-2|-1,-1", "5,1|0,0"):
        lam = Weight.parse(text)
        sd = shape_data(lam)
        rebuilt = [x + sd.a for x in sd.mu.plus] + [x + sd.b for x in sd.mu.minus]
        assert tuple(rebuilt) == lam.entries
        assert all(x >= 0 for x in sd.mu.entries)
