from itertools import combinations, product

import pytest

from superschur.arith import FieldConfig
from superschur.bidet import (
    BideterminantIndex,
    InconsistentStraightening,
    Straightener,
    assemble_factor_basis,
    bideterminant,
    factor_basis_count,
    factor_basis_report,
    independence_rank,
    minor,
    standard_indices,
    straighten,
    trace_formula,
)
from superschur.superpoly import y_ring
from superschur.tableaux import Tableau
from superschur.weights import Weight

EMPTY = Tableau(())


def T(*rows):
    return Tableau(tuple(tuple(r) for r in rows))


def y(R, i, j):
    return R.var((i, j))


def test_minor_small():
    R = y_ring(2, 0)
    assert minor(R, 1, (1,), (2,)) == y(R, 1, 2)
    assert minor(R, 1, (1, 2), (1, 2)) == y(R, 1, 1) * y(R, 2, 2) - y(R, 1, 2) * y(R, 2, 1)
    with pytest.raises(ValueError):
        minor(R, 1, (2, 1), (1, 2))
    with pytest.raises(ValueError):
        minor(R, 1, (1, 3), (1, 2))


def test_minor_of_second_block():
    R = y_ring(1, 2)
    assert minor(R, 2, (1,), (2,)) == y(R, 2, 3)


def test_trace_formula_matches_minor():
    R = y_ring(3, 0)
    assert trace_formula(R, 1, (1, 3), (2, 3)) == minor(R, 1, (1, 3), (2, 3))
    for k in (1, 2, 3):
        for rows in combinations((1, 2, 3), k):
            for cols in combinations((1, 2, 3), k):
                assert trace_formula(R, 1, rows, cols) == minor(R, 1, rows, cols)


def test_bideterminant_examples():
    R = y_ring(1, 0)
    idx = BideterminantIndex(Weight.of((1,), ()), 0, 0, T((1,)), T((1,)), EMPTY, EMPTY)
    assert bideterminant(idx, R) == y(R, 1, 1)
    R2 = y_ring(1, 1)
    idx = BideterminantIndex(Weight.parse("0|0"), -1, 0, EMPTY, EMPTY, EMPTY, EMPTY)
    assert bideterminant(idx, R2) == R2.den_inverse("D1")


def test_bideterminant_two_one():
    R = y_ring(2, 0)
    idx = BideterminantIndex(Weight.of((2, 1), ()), 0, 0, T((1, 1), (2,)), T((1, 2), (2,)), EMPTY, EMPTY)
    # columns: rows (1,2) x cols (1,2) minor, then rows (1) x cols (2)
    expected = (y(R, 1, 1) * y(R, 2, 2) - y(R, 1, 2) * y(R, 2, 1)) * y(R, 1, 2)
    assert bideterminant(idx, R) == expected


def test_index_validation():
    mu = Weight.of((2,), ())
    with pytest.raises(ValueError):
        BideterminantIndex(mu, 0, 0, T((1,)), T((1, 1)), EMPTY, EMPTY)
    with pytest.raises(ValueError):
        BideterminantIndex(mu, 0, 0, T((1, 3)), T((1, 1)), EMPTY, EMPTY)
    with pytest.raises(ValueError):
        BideterminantIndex(mu, 1, 0, T((1, 1)), T((1, 1)), EMPTY, EMPTY)


def test_independence_rank(field):
    R = y_ring(2, 0)
    gens = [y(R, i, j) for i in (1, 2) for j in (1, 2)]
    assert independence_rank(gens, field) == 4
    assert independence_rank(gens + gens, field) == 4
    shape11 = standard_indices(Weight.of((1, 1), ()))
    assert len(shape11) == 1
    assert independence_rank([bideterminant(i, R) for i in shape11], field) == 1


def test_independence_clears_denominators(field):
    R = y_ring(1, 1)
    d = R.den_inverse("D1")
    elems = [d, y(R, 1, 1) * d * d, y(R, 2, 2) * d]
    # y11 * D1^-2 equals D1^-1 in the localization
    assert independence_rank(elems, field) == 2


def test_straighten_standard_is_identity(field):
    mu = Weight.of((2, 1), ())
    idx = standard_indices(mu)[3]
    assert straighten(idx, field) == {idx: field(1)}


def test_straighten_column_swap():
    mu = Weight.of((1, 1), ())
    idx = BideterminantIndex(mu, 0, 0, T((2,), (1,)), T((1,), (2,)), EMPTY, EMPTY)
    (std, coeff), = straighten(idx).items()
    assert std.is_standard()
    assert coeff == -1


def test_straighten_gl3_shape21():
    mu = Weight.of((2, 1, 0), ())
    s = Straightener(mu)
    idx = BideterminantIndex(mu, 0, 0, T((2, 1), (3,)), T((3, 1), (1,)), EMPTY, EMPTY)
    expansion = s(idx)
    R = s.ring
    total = R.zero()
    for k, c in expansion.items():
        total = total + bideterminant(k, R) * int(c)
    assert total == bideterminant(idx, R)


def test_straighten_super_shape(field):
    mu = Weight.parse("1,1|1")
    idx = BideterminantIndex(mu, 0, 0, T((2,), (1,)), T((2,), (1,)), T((1,)), T((1,)))
    expansion = straighten(idx, field)
    assert all(k.is_standard() for k in expansion)


def test_straightener_rejects_other_shape():
    s = Straightener(Weight.of((1, 1), ()))
    idx = BideterminantIndex(Weight.of((2, 0), ()), 0, 0, T((1, 1)), T((1, 1)), EMPTY, EMPTY)
    with pytest.raises(ValueError):
        s(idx)
    assert issubclass(InconsistentStraightening, ArithmeticError)


@pytest.mark.parametrize("text,count", [("1|0", 4), ("0|1", 4), ("1|1", 4), ("0|0", 4),
                                        ("1,0|0", 64), ("-1|-1", 4), ("0,0|0", 16)])
def test_factor_basis_counts(text, count):
    lam = Weight.parse(text)
    elements, _ = assemble_factor_basis(lam, with_images=False)
    assert len(elements) == count == factor_basis_count(lam)
    assert len({(e.odd_pattern, e.index) for e in elements}) == count


@pytest.mark.parametrize("text", ["1|0", "0|1", "1|1", "-1|-1", "2|0"])
def test_factor_basis_full_rank_gl11(text, field):
    rep = factor_basis_report(Weight.parse(text), field)
    assert rep["rank"] == rep["count"]
    assert rep["elapsed_ms"] is None


def test_factor_basis_parity():
    elements, images = assemble_factor_basis(Weight.parse("1|0"))
    for e, img in zip(elements, images):
        assert img.parity == e.parity


def test_report_fields():
    rep = factor_basis_report(Weight.parse("1|0"), FieldConfig(3), timing=True)
    assert set(rep) == {"lambda", "mu", "a", "b", "count", "rank", "field", "elapsed_ms"}
    assert rep["elapsed_ms"] >= 0
