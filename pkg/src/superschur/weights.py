"""Weights of GL(m|n): orders, ideals, admissible decomposition, filtrations.

Weights are written ``2,0|1`` on the command line and in reports: the even
block, a bar, then the odd block.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True, order=True)
class Weight:
    entries: tuple[int, ...]
    m: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if self.m < 0 or self.n < 0 or len(self.entries) != self.m + self.n:
            raise ValueError(f"weight {self.entries} does not fit GL({self.m}|{self.n})")

    @classmethod
    def of(cls, plus: Sequence[int], minus: Sequence[int] = ()) -> "Weight":
        return cls(tuple(plus) + tuple(minus), len(plus), len(minus))

    @classmethod
    def parse(cls, text: str) -> "Weight":
        text = text.strip()
        if text.count("|") != 1:
            raise ValueError(f"weight {text!r} needs exactly one '|' separator")
        left, right = text.split("|")
        plus = [int(x) for x in left.split(",") if x.strip()]
        minus = [int(x) for x in right.split(",") if x.strip()]
        return cls.of(plus, minus)

    def __str__(self) -> str:
        return ",".join(map(str, self.plus)) + "|" + ",".join(map(str, self.minus))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    @property
    def plus(self) -> tuple[int, ...]:
        return self.entries[: self.m]

    @property
    def minus(self) -> tuple[int, ...]:
        return self.entries[self.m:]

    @property
    def size(self) -> int:
        return sum(self.entries)

    @property
    def size_plus(self) -> int:
        return sum(self.plus)

    @property
    def size_minus(self) -> int:
        return sum(self.minus)

    def with_entries(self, entries: Iterable[int]) -> "Weight":
        return Weight(tuple(entries), self.m, self.n)

    def shifted(self, l: int) -> "Weight":
        """lambda - l*(eps_m - eps_{m+1})."""
        e = list(self.entries)
        e[self.m - 1] -= l
        e[self.m] += l
        return self.with_entries(e)


def _same_shape(mu: Weight, lam: Weight) -> None:
    if (mu.m, mu.n) != (lam.m, lam.n):
        raise ValueError(f"shape mismatch: GL({mu.m}|{mu.n}) vs GL({lam.m}|{lam.n})")


def _weakly_decreasing(xs: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(xs, xs[1:]))


def is_dominant(lam: Weight) -> bool:
    return _weakly_decreasing(lam.plus) and _weakly_decreasing(lam.minus)


def _prefix_leq(mu: Sequence[int], lam: Sequence[int]) -> bool:
    if sum(mu) != sum(lam):
        return False
    return all(s >= 0 for s in accumulate(l - u for l, u in zip(lam, mu)))


def dominance_leq(mu: Weight, lam: Weight) -> bool:
    """mu <= lam: lam - mu is a nonnegative sum of positive roots."""
    _same_shape(mu, lam)
    return _prefix_leq(mu.entries, lam.entries)


def strong_leq(mu: Weight, lam: Weight) -> bool:
    """Blockwise dominance on the GL(m) and GL(n) parts."""
    _same_shape(mu, lam)
    return _prefix_leq(mu.plus, lam.plus) and _prefix_leq(mu.minus, lam.minus)


def _dominant_block_below(top: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All weakly decreasing vectors dominated by ``top`` (itself decreasing)."""
    k = len(top)
    if k == 0:
        yield ()
        return
    lo, hi = top[-1], top[0]
    total = sum(top)
    bounds = list(accumulate(top))

    def rec(prefix: list[int], s: int, cap: int):
        i = len(prefix)
        if i == k - 1:
            last = total - s
            if lo <= last <= cap:
                yield tuple(prefix) + (last,)
            return
        remaining = k - i
        for x in range(min(cap, bounds[i] - s, hi), lo - 1, -1):
            # the rest must be >= lo each and <= x each
            rest = total - s - x
            if rest > x * (remaining - 1) or rest < lo * (remaining - 1):
                continue
            prefix.append(x)
            yield from rec(prefix, s + x, x)
            prefix.pop()

    yield from rec([], 0, hi)


def dominant_strong_below(lam: Weight) -> list[Weight]:
    """Every dominant mu with mu <=_s lam, sorted."""
    if not is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    out = [
        Weight(p + q, lam.m, lam.n)
        for p in _dominant_block_below(lam.plus)
        for q in _dominant_block_below(lam.minus)
    ]
    return sorted(out)


class WeightIdeal:
    """Ideal of dominant weights, stored by its generators."""

    def __init__(self, generators: Iterable[Weight]):
        gens = list(dict.fromkeys(generators))
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        shape = (gens[0].m, gens[0].n)
        for g in gens:
            if (g.m, g.n) != shape:
                raise ValueError("generators of mixed shape")
            if not is_dominant(g):
                raise ValueError(f"generator {g} is not dominant")
        # drop generators lying below another one
        keep = [
            g for g in gens
            if not any(h != g and dominance_leq(g, h) for h in gens)
        ]
        self.generators: tuple[Weight, ...] = tuple(sorted(keep, reverse=True))
        self.m, self.n = shape

    def __contains__(self, mu: Weight) -> bool:
        return is_dominant(mu) and any(dominance_leq(mu, g) for g in self.generators)

    def __repr__(self) -> str:
        return "WeightIdeal(" + ", ".join(str(g) for g in self.generators) + ")"


@dataclass(frozen=True)
class AdmissiblePair:
    a: int
    b: int
    generator: int
    shift: int


def admissible_decomposition(
    ideal: WeightIdeal, lmax: int
) -> list[tuple[AdmissiblePair, list[Weight]]]:
    """Pieces Gamma_{a,b} for every admissible (a, b) reached with shift <= lmax.

    Each piece is complete: it collects the shifted generators of every index
    that reaches (a, b), whatever shift that needs.
    """
    if lmax < 0:
        raise ValueError("lmax must be nonnegative")
    if ideal.m == 0 or ideal.n == 0:
        raise ValueError("admissible decomposition needs m, n >= 1")
    pairs: dict[tuple[int, int], AdmissiblePair] = {}
    for i, g in enumerate(ideal.generators):
        for l in range(lmax + 1):
            key = (g.size_plus - l, g.size_minus + l)
            pairs.setdefault(key, AdmissiblePair(key[0], key[1], i, l))
    out = []
    for key in sorted(pairs, key=lambda ab: (-ab[0], ab[1])):
        a, b = key
        members: set[Weight] = set()
        for g in ideal.generators:
            l = g.size_plus - a
            if l < 0 or b - g.size_minus != l:
                continue
            members.update(dominant_strong_below(g.shifted(l)))
        out.append((pairs[key], sorted(members, reverse=True)))
    return out


def _check_ideal(weights: set[Weight]) -> None:
    for w in weights:
        if not is_dominant(w):
            raise ValueError(f"{w} is not dominant")
        for below in dominant_strong_below(w):
            if below not in weights:
                raise ValueError(f"set is not downward closed: {below} <=_s {w} missing")


def special_filtration(weights: Iterable[Weight]) -> list[Weight]:
    """Peel off maximal elements one at a time (largest entry vector first)."""
    rest = set(weights)
    _check_ideal(rest)
    order = []
    while rest:
        maximal = [
            w for w in rest
            if not any(v != w and strong_leq(w, v) for v in rest)
        ]
        top = max(maximal, key=lambda w: w.entries)
        order.append(top)
        rest.remove(top)
    return order


def congruent_predecessor(lam: Weight, alpha: Sequence[int], q: int) -> Weight:
    """Dominant mu <= lam with mu_i = alpha_i (mod q) for every i.

    Greedy construction: largest congruent choices down the even block,
    smallest congruent choices up the odd block, then the smallest shift t of
    mu_m by q*t that makes mu_{m+1} >= mu_{m+2}.
    """
    m, n = lam.m, lam.n
    if m < 1 or n < 1:
        raise ValueError("congruent_predecessor needs m, n >= 1")
    if not is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    alpha = tuple(alpha)
    if len(alpha) != m + n:
        raise ValueError("alpha has the wrong length")
    if any(not 0 <= x < q for x in alpha):
        raise ValueError(f"alpha entries must lie in [0, {q})")
    if (sum(alpha) - lam.size) % q:
        raise ValueError(f"|alpha| = {sum(alpha)} is not congruent to |lambda| = {lam.size} mod {q}")

    def largest_at_most(bound: int, residue: int) -> int:
        return bound - (bound - residue) % q

    def smallest_at_least(bound: int, residue: int) -> int:
        return bound + (residue - bound) % q

    plus: list[int] = []
    cap = None
    for i in range(m):
        bound = lam[i] if cap is None else min(cap, lam[i])
        plus.append(largest_at_most(bound, alpha[i]))
        cap = plus[-1]
    minus_tail: list[int] = []  # mu_{m+n}, mu_{m+n-1}, ..., mu_{m+2}
    floor = None
    for j in range(m + n - 1, m, -1):
        bound = lam[j] if floor is None else max(floor, lam[j])
        minus_tail.append(smallest_at_least(bound, alpha[j]))
        floor = minus_tail[-1]
    tail = minus_tail[::-1]
    base_first = lam.size - sum(plus) - sum(tail)
    t = 0
    if tail and base_first < tail[0]:
        t = -(-(tail[0] - base_first) // q)
    plus[-1] -= q * t
    first = base_first + q * t
    return Weight(tuple(plus) + (first,) + tuple(tail), m, n)
