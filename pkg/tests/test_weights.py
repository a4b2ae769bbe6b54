import random

import pytest
from hypothesis import given, strategies as st

from superschur.weights import (
    Weight,
    WeightIdeal,
    admissible_decomposition,
    congruent_predecessor,
    dominance_leq,
    dominant_strong_below,
    is_dominant,
    special_filtration,
    strong_leq,
)

W = Weight.parse


def test_parse_and_format():
    w = W("2,0|1")
    assert (w.m, w.n) == (2, 1)
    assert w.plus == (2, 0) and w.minus == (1,)
    assert str(w) == "2,0|1"
    assert W("0|").n == 0
    with pytest.raises(ValueError):
        W("1,2")
    with pytest.raises(ValueError):
        Weight((1, 2), 1, 2)


def test_is_dominant():
    assert is_dominant(W("2,0|1"))
    assert not is_dominant(W("0,1|0"))
    assert is_dominant(W("3,3|-1,-5"))


def test_dominance_leq():
    for split in ("1,1|0", "1|1,0"):
        mu = W(split)
        lam = Weight((2, 0, 0), mu.m, mu.n)
        assert dominance_leq(mu, lam)
    assert dominance_leq(W("1,0|0"), W("1,0|0"))
    assert not dominance_leq(W("1,0|1"), W("1,0|0"))
    with pytest.raises(ValueError):
        dominance_leq(W("1|0"), W("1,0|0"))


def test_strong_leq():
    assert strong_leq(W("1,1|0"), W("2,0|0"))
    assert not strong_leq(W("1,0|1,0"), W("2,0|0,0"))
    assert dominance_leq(W("1,0|1,0"), W("2,0|0,0"))
    assert strong_leq(W("1,0|1,0"), W("1,0|1,0"))


def dominant_weights(m, n, low=-2, high=2):
    from itertools import product
    out = []
    for e in product(range(low, high + 1), repeat=m + n):
        w = Weight(e, m, n)
        if is_dominant(w):
            out.append(w)
    return out


def test_orders_are_partial_orders():
    ws = dominant_weights(2, 1)
    for order in (dominance_leq, strong_leq):
        for a in ws:
            assert order(a, a)
            for b in ws:
                if order(a, b) and order(b, a):
                    assert a == b
                if strong_leq(a, b):
                    assert dominance_leq(a, b)
                if a.size != b.size:
                    assert not dominance_leq(a, b)
    sample = ws[:40]
    for a in sample:
        for b in sample:
            for c in sample:
                if dominance_leq(a, b) and dominance_leq(b, c):
                    assert dominance_leq(a, c)


def test_dominant_strong_below_brute_force():
    for lam in (W("2,0|1,0"), W("1,1,-1|2"), W("3,0|0")):
        expected = {
            w for w in dominant_weights(lam.m, lam.n, -3, 3) if strong_leq(w, lam)
        }
        assert set(dominant_strong_below(lam)) == expected


def test_ideal_membership_and_normalization():
    ideal = WeightIdeal([W("2,0|0"), W("1,1|0")])
    assert ideal.generators == (W("2,0|0"),)
    assert W("1,1|0") in ideal
    assert W("0,1|0") not in ideal
    with pytest.raises(ValueError):
        WeightIdeal([W("0,1|0")])


def test_admissible_decomposition_examples():
    got = admissible_decomposition(WeightIdeal([W("1|0")]), 1)
    assert [((p.a, p.b), members) for p, members in got] == [
        ((1, 0), [W("1|0")]),
        ((0, 1), [W("0|1")]),
    ]
    got = admissible_decomposition(WeightIdeal([W("0|0")]), 0)
    assert [((p.a, p.b), m) for p, m in got] == [((0, 0), [W("0|0")])]
    got = admissible_decomposition(WeightIdeal([W("1,0|0")]), 0)
    assert [((p.a, p.b), m) for p, m in got] == [((1, 0), [W("1,0|0")])]


def test_admissible_pieces_are_ideals_with_fixed_block_sums():
    ideal = WeightIdeal([W("2,0|1"), W("1,1|1")])
    pieces = admissible_decomposition(ideal, 2)
    seen = set()
    for pair, members in pieces:
        ms = set(members)
        assert not seen & ms
        seen |= ms
        for mu in members:
            assert is_dominant(mu)
            assert (mu.size_plus, mu.size_minus) == (pair.a, pair.b)
            assert mu in ideal
            for below in dominant_strong_below(mu):
                assert below in ms


def test_special_filtration():
    assert special_filtration({W("0|0")}) == [W("0|0")]
    assert special_filtration({W("2,0|0"), W("1,1|0")}) == [W("2,0|0"), W("1,1|0")]
    chain = [W("3,0|0"), W("2,1|0")]
    assert special_filtration(set(dominant_strong_below(W("3,0|0")))) == chain
    with pytest.raises(ValueError):
        special_filtration({W("2,0|0")})


def test_special_filtration_complements_stay_ideals():
    base = set(dominant_strong_below(W("2,1|2,0"))) | set(dominant_strong_below(W("3,0|1,1")))
    order = special_filtration(base)
    rest = set(base)
    for w in order:
        rest.discard(w)
        for v in rest:
            for below in dominant_strong_below(v):
                assert below in rest


def test_congruent_predecessor_example():
    assert congruent_predecessor(W("2|1"), (0, 0), 3) == W("0|3")


def test_congruent_predecessor_errors():
    with pytest.raises(ValueError):
        congruent_predecessor(W("2|1"), (0, 1), 3)
    with pytest.raises(ValueError):
        congruent_predecessor(W("0,1|1"), (0, 0, 1), 3)


@given(st.integers(0, 10**6))
def test_congruent_predecessor_postconditions(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 3), rng.randint(1, 3)
    q = rng.choice([3, 5, 9])
    lam = Weight.of(sorted((rng.randint(-6, 6) for _ in range(m)), reverse=True),
                    sorted((rng.randint(-6, 6) for _ in range(n)), reverse=True))
    alpha = [rng.randrange(q) for _ in range(m + n)]
    alpha[-1] = (alpha[-1] + lam.size - sum(alpha)) % q
    mu = congruent_predecessor(lam, alpha, q)
    assert is_dominant(mu)
    assert dominance_leq(mu, lam)
    assert all((x - a) % q == 0 for x, a in zip(mu, alpha))


def test_congruent_predecessor_keeps_congruent_lambda():
    lam = W("4,1|2,-1")
    alpha = tuple(x % 3 for x in lam)
    assert congruent_predecessor(lam, alpha, 3) == lam
