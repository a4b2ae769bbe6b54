"""Generalized bideterminants and bases of the filtration factors of K[GL(m|n)].

A bideterminant of shape mu is a product of column minors: column c of the
row tableau picks the rows, column c of the column tableau picks the columns.
Negative determinant powers are carried as denominator exponents.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

from .arith import FieldConfig
from .linalg import SpanSolver, rank
from .superpoly import (
    Ring,
    SuperPolynomial,
    _perm_sign,
    phi_star,
    y_ring,
)
from .tableaux import (
    Partition,
    ShapeData,
    Tableau,
    enumerate_standard,
    hook_content_count,
    partition,
    partition_dominates,
    partitions_of,
    shape_data,
)
from .weights import Weight


def _block_key(ring: Ring, block: int, r: int, c: int) -> tuple[int, int]:
    off = 0 if block == 1 else ring.m
    return (off + r, off + c)


def _block_size(ring: Ring, block: int) -> int:
    return ring.m if block == 1 else ring.n


def _det_of_indices(ring: Ring, block: int, rows: Sequence[int], cols: Sequence[int]) -> SuperPolynomial:
    """det(y_{rows[u], cols[v]}) for arbitrary index sequences (repeats give 0)."""
    k = len(rows)
    out = ring.zero()
    for perm in permutations(range(k)):
        term = ring.const(_perm_sign(perm))
        for u, v in enumerate(perm):
            term = term * ring.var(_block_key(ring, block, rows[u], cols[v]))
        out = out + term
    return out


def _check_indices(ring: Ring, block: int, rows: Sequence[int], cols: Sequence[int]) -> None:
    size = _block_size(ring, block)
    if len(rows) != len(cols):
        raise ValueError("rows and cols differ in length")
    for seq in (rows, cols):
        if any(not 1 <= x <= size for x in seq):
            raise ValueError(f"index out of range for a {size}x{size} block: {seq}")


def minor(ring: Ring, block: int, rows: Sequence[int], cols: Sequence[int]) -> SuperPolynomial:
    """Minor of Y11 (block 1) or Y22 (block 2); indices are 1-based in the block."""
    _check_indices(ring, block, rows, cols)
    for seq in (rows, cols):
        if any(a >= b for a, b in zip(seq, seq[1:])):
            raise ValueError(f"indices must strictly increase: {seq}")
    return _det_of_indices(ring, block, rows, cols)


def _wedge_insert(word: tuple[int, ...], a: int) -> tuple[int, tuple[int, ...]] | None:
    """w_word ^ w_a rewritten in increasing order: (sign, sorted word)."""
    if a in word:
        return None
    above = sum(1 for x in word if x > a)
    return (-1) ** above, tuple(sorted(word + (a,)))


def trace_formula(ring: Ring, block: int, rows: Sequence[int], cols: Sequence[int]) -> SuperPolynomial:
    """tr(Y o phi) for phi = w*_rows (x) w_cols acting on the exterior power.

    Y acts on Lambda^k W by w_J -> (Y w_j1) ^ ... ^ (Y w_jk); the trace is
    summed over the whole basis of Lambda^k W.
    """
    _check_indices(ring, block, rows, cols)
    for seq in (rows, cols):
        if any(a >= b for a, b in zip(seq, seq[1:])):
            raise ValueError(f"indices must strictly increase: {seq}")
    size = _block_size(ring, block)
    k = len(rows)
    rows, cols = tuple(rows), tuple(cols)

    def act(word: tuple[int, ...]) -> dict[tuple[int, ...], SuperPolynomial]:
        vec = {(): ring.one()}
        for j in word:
            nxt: dict[tuple[int, ...], SuperPolynomial] = {}
            for w, coeff in vec.items():
                for a in range(1, size + 1):
                    hit = _wedge_insert(w, a)
                    if hit is None:
                        continue
                    sign, new = hit
                    term = coeff * ring.var(_block_key(ring, block, a, j)) * sign
                    nxt[new] = nxt[new] + term if new in nxt else term
            vec = nxt
        return vec

    total = ring.zero()
    for basis_word in combinations(range(1, size + 1), k):
        # phi(w_K) = w*_rows(w_K) w_cols
        if basis_word != rows:
            continue
        image = act(cols)
        total = total + image.get(basis_word, ring.zero())
    return total


@dataclass(frozen=True)
class BideterminantIndex:
    """Shape data (mu, a, b) plus the four tableaux of a generalized bideterminant."""

    mu: Weight
    a: int
    b: int
    row_plus: Tableau
    col_plus: Tableau
    row_minus: Tableau
    col_minus: Tableau

    def __post_init__(self):
        m, n = self.mu.m, self.mu.n
        mu_p, mu_m = partition(self.mu.plus), partition(self.mu.minus)
        if self.a > 0 or self.b > 0:
            raise ValueError("determinant exponents a, b must be <= 0")
        for t, shape, bound in (
            (self.row_plus, mu_p, m), (self.col_plus, mu_p, m),
            (self.row_minus, mu_m, n), (self.col_minus, mu_m, n),
        ):
            if t.shape != shape:
                raise ValueError(f"tableau shape {t.shape} does not match {shape}")
            if t.max_entry() > bound or any(x < 1 for r in t.rows for x in r):
                raise ValueError(f"tableau entries must lie in [1, {bound}]")

    @property
    def tableaux(self) -> tuple[Tableau, Tableau, Tableau, Tableau]:
        return (self.row_plus, self.col_plus, self.row_minus, self.col_minus)

    def is_standard(self) -> bool:
        return all(t.is_standard() for t in self.tableaux)

    def to_json(self) -> dict:
        return {
            "mu": str(self.mu), "a": self.a, "b": self.b,
            "tableaux": [t.to_json() for t in self.tableaux],
        }

    def __str__(self) -> str:
        return f"[{self.row_plus}:{self.col_plus}][{self.row_minus}:{self.col_minus}]" \
               f"D1^{self.a}D2^{self.b}"


def bideterminant(idx: BideterminantIndex, ring: Ring | None = None) -> SuperPolynomial:
    m, n = idx.mu.m, idx.mu.n
    ring = ring or y_ring(m, n)
    out = ring.one()
    for block, ti, tj in ((1, idx.row_plus, idx.col_plus), (2, idx.row_minus, idx.col_minus)):
        for ci, cj in zip(ti.columns(), tj.columns()):
            out = out * _det_of_indices(ring, block, ci, cj)
    if idx.a:
        out = out * ring.den_inverse("D1", -idx.a)
    if idx.b:
        out = out * ring.den_inverse("D2", -idx.b)
    return out


def standard_indices(mu: Weight, a: int = 0, b: int = 0) -> list[BideterminantIndex]:
    """All standard bideterminant indices of shape mu, in a fixed order."""
    mu_p, mu_m = partition(mu.plus), partition(mu.minus)
    plus = enumerate_standard(mu_p, mu.m) if mu.m or not mu_p else []
    minus = enumerate_standard(mu_m, mu.n) if mu.n or not mu_m else []
    return [
        BideterminantIndex(mu, a, b, ip, jp, im, jm)
        for ip, jp, im, jm in product(plus, plus, minus, minus)
    ]


def coefficient_rows(elements: Sequence[SuperPolynomial]) -> list[dict]:
    """Numerators of the elements over one common denominator."""
    if not elements:
        return []
    ring = elements[0].ring
    target = [0] * ring.n_dens
    for f in elements:
        if f.ring is not ring:
            raise ValueError("elements live in different rings")
        target = [max(x, y) for x, y in zip(target, f.max_denominator())]
    return [f.numerator(target) for f in elements]


def independence_rank(elements: Sequence[SuperPolynomial], field: FieldConfig) -> int:
    return rank(coefficient_rows(elements), field)


class InconsistentStraightening(ArithmeticError):
    """A bideterminant is not in the span of the standard ones."""


def _spanning_indices(mu: Weight, a: int, b: int) -> list[BideterminantIndex]:
    """Standard indices of shape mu and of every blockwise-dominated shape."""
    mu_p, mu_m = partition(mu.plus), partition(mu.minus)
    out = standard_indices(mu, a, b)
    for pp in partitions_of(sum(mu_p)):
        for pm in partitions_of(sum(mu_m)):
            if (pp, pm) == (mu_p, mu_m):
                continue
            if len(pp) > mu.m or len(pm) > mu.n:
                continue
            if partition_dominates(pp, mu_p) and partition_dominates(pm, mu_m):
                pi = Weight(tuple(pp) + (0,) * (mu.m - len(pp)) + tuple(pm) + (0,) * (mu.n - len(pm)),
                            mu.m, mu.n)
                out.extend(standard_indices(pi, a, b))
    return out


class Straightener:
    """Expands bideterminants of one shape in standard bideterminants."""

    def __init__(self, mu: Weight, a: int = 0, b: int = 0, field: FieldConfig | None = None):
        self.field = field or FieldConfig.rational()
        self.mu, self.a, self.b = mu, a, b
        self.ring = y_ring(mu.m, mu.n)
        self.basis = _spanning_indices(mu, a, b)
        elems = [bideterminant(i, self.ring) for i in self.basis]
        self._target = [0] * self.ring.n_dens
        for f in elems:
            self._target = [max(x, y) for x, y in zip(self._target, f.max_denominator())]
        self.solver = SpanSolver([f.numerator(self._target) for f in elems], self.field)

    def __call__(self, idx: BideterminantIndex) -> dict[BideterminantIndex, object]:
        if (idx.mu, idx.a, idx.b) != (self.mu, self.a, self.b):
            raise ValueError("index has a different shape")
        f = bideterminant(idx, self.ring)
        target = [max(x, y) for x, y in zip(self._target, f.max_denominator())]
        if target != self._target:
            raise ValueError("unexpected denominator")
        coeffs, residual = self.solver.solve(f.numerator(self._target))
        if residual:
            raise InconsistentStraightening(f"{idx} is not spanned by standard bideterminants")
        return {self.basis[i]: c for i, c in sorted(coeffs.items())}


def straighten(idx: BideterminantIndex, field: FieldConfig | None = None) -> dict[BideterminantIndex, object]:
    """Express a bideterminant through standard ones of the same or smaller shapes.

    Solved by exact linear algebra; a nonzero residual raises
    :class:`InconsistentStraightening`.
    """
    return Straightener(idx.mu, idx.a, idx.b, field)(idx)


# ---------------------------------------------------------------------------
# factor bases

def odd_positions(m: int, n: int) -> list[tuple[int, int]]:
    size = m + n
    return [
        (i, j) for i in range(1, size + 1) for j in range(1, size + 1)
        if (i <= m) != (j <= m)
    ]


@dataclass(frozen=True)
class FactorBasisElement:
    odd_pattern: tuple[tuple[int, int], ...]
    index: BideterminantIndex

    @property
    def parity(self) -> int:
        return len(self.odd_pattern) % 2

    def source(self, ring: Ring) -> SuperPolynomial:
        """The element before phi*: odd y's (row-major) times the bideterminant."""
        out = ring.one()
        for pos in self.odd_pattern:
            out = out * ring.var(pos)
        return out * bideterminant(self.index, ring)

    def to_json(self) -> dict:
        return {"odd": [list(p) for p in self.odd_pattern], **self.index.to_json()}


def factor_basis_count(lam: Weight) -> int:
    sd = shape_data(lam)
    cp = hook_content_count(sd.mu_plus, lam.m)
    cm = hook_content_count(sd.mu_minus, lam.n)
    return (2 ** (lam.m * lam.n) * cp * cm) ** 2


def assemble_factor_basis(
    lam: Weight, with_images: bool = True
) -> tuple[list[FactorBasisElement], list[SuperPolynomial]]:
    """Basis of the filtration factor of K[GL(m|n)] at the maximal weight lam.

    Every subset of odd positions crossed with every standard quadruple of
    shape_data(lam); the images are taken through phi*.
    """
    sd: ShapeData = shape_data(lam)
    m, n = lam.m, lam.n
    odd = odd_positions(m, n)
    patterns = [
        tuple(p for p, bit in zip(odd, bits) if bit)
        for bits in product((0, 1), repeat=len(odd))
    ]
    indices = standard_indices(sd.mu, sd.a, sd.b)
    elements = [FactorBasisElement(pat, idx) for pat in patterns for idx in indices]
    images: list[SuperPolynomial] = []
    if with_images:
        ring = y_ring(m, n)
        bidets = {idx: bideterminant(idx, ring) for idx in indices}
        odd_parts = {}
        for pat in patterns:
            f = ring.one()
            for pos in pat:
                f = f * ring.var(pos)
            odd_parts[pat] = phi_star(f)
        bidet_images = {idx: phi_star(f) for idx, f in bidets.items()}
        images = [odd_parts[e.odd_pattern] * bidet_images[e.index] for e in elements]
    return elements, images


def factor_basis_report(lam: Weight, field: FieldConfig, timing: bool = False) -> dict:
    """Count and rank of the factor basis at lam, as a JSON-ready dict."""
    start = time.perf_counter()
    elements, images = assemble_factor_basis(lam)
    r = independence_rank(images, field)
    elapsed = (time.perf_counter() - start) * 1000.0
    sd = shape_data(lam)
    return {
        "lambda": str(lam),
        "mu": str(sd.mu),
        "a": sd.a,
        "b": sd.b,
        "count": len(elements),
        "rank": r,
        "field": field.name,
        "elapsed_ms": round(elapsed, 3) if timing else None,
    }
