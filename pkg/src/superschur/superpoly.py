"""Supercommutative polynomials localized at block determinants.

A ring is a list of variables with parities plus a list of denominators
(determinants of square even blocks).  A monomial is a triple
``(even exponents, odd bitmask, denominator exponents)``: odd variables occur
at most once and are kept in the global variable order, so multiplying two
monomials only needs the Koszul sign of merging their odd masks.

Tensor powers use the same engine on slot-tagged copies of the variables,
slots ordered left to right; the super tensor sign rule then falls out of
ordinary supercommutativity.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .arith import Scalar

DEFAULT_MAX_DEGREE = 24

Key = tuple  # (ev: tuple[int, ...], od: int, dn: tuple[int, ...])


class DegreeGuardError(ArithmeticError):
    """A product exceeded the ring's degree guard."""


class UnsupportedDenominator(ValueError):
    """Comultiplication of an inverse that is not group-like."""


@lru_cache(maxsize=1 << 16)
def _koszul(od1: int, od2: int) -> int:
    """Parity of the number of inversions when appending od2 after od1."""
    count = 0
    b = od2
    while b:
        low = b & -b
        count += bin(od1 & ~((low << 1) - 1)).count("1")
        b ^= low
    return count & 1


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


class Ring:
    """Variable context for :class:`SuperPolynomial`."""

    def __init__(
        self,
        name: str,
        variables: Sequence[tuple[Hashable, str, int]],
        denominators: Sequence[tuple[str, Sequence[Sequence[Hashable]]]] = (),
        max_degree: int = DEFAULT_MAX_DEGREE,
    ):
        self.name = name
        self.keys = [v[0] for v in variables]
        self.labels = [v[1] for v in variables]
        self.parities = [v[2] for v in variables]
        self.index = {k: i for i, k in enumerate(self.keys)}
        self.even_vars = [i for i, p in enumerate(self.parities) if p == 0]
        self.odd_vars = [i for i, p in enumerate(self.parities) if p == 1]
        self.slot_of = {}
        for pos, i in enumerate(self.even_vars):
            self.slot_of[i] = ("e", pos)
        for bit, i in enumerate(self.odd_vars):
            self.slot_of[i] = ("o", bit)
        self.den_labels = [d[0] for d in denominators]
        self.den_blocks = [tuple(tuple(r) for r in d[1]) for d in denominators]
        self.den_index = {lab: i for i, lab in enumerate(self.den_labels)}
        self.max_degree = max_degree
        self._det_cache: dict[tuple[int, int], SuperPolynomial] = {}
        self._tensor_cache: dict[int, TensorRing] = {}
        # m, n, coproduct support are set by the factories
        self.m = self.n = 0
        self.coproduct: str | None = None

    def __repr__(self) -> str:
        return f"Ring({self.name})"

    @property
    def n_even(self) -> int:
        return len(self.even_vars)

    @property
    def n_dens(self) -> int:
        return len(self.den_labels)

    def zero_key(self) -> Key:
        return ((0,) * self.n_even, 0, (0,) * self.n_dens)

    def zero(self) -> "SuperPolynomial":
        return SuperPolynomial(self, {})

    def const(self, c: Scalar) -> "SuperPolynomial":
        return SuperPolynomial(self, {self.zero_key(): c} if c else {})

    def one(self) -> "SuperPolynomial":
        return self.const(1)

    def var(self, key: Hashable) -> "SuperPolynomial":
        i = self.index[key]
        kind, pos = self.slot_of[i]
        ev = [0] * self.n_even
        od = 0
        if kind == "e":
            ev[pos] = 1
        else:
            od = 1 << pos
        return SuperPolynomial(self, {(tuple(ev), od, (0,) * self.n_dens): 1})

    def has(self, key: Hashable) -> bool:
        return key in self.index

    def parity_of(self, key: Hashable) -> int:
        return self.parities[self.index[key]]

    def den_inverse(self, label: str, power: int = 1) -> "SuperPolynomial":
        d = self.den_index[label]
        dn = [0] * self.n_dens
        dn[d] = power
        return SuperPolynomial(self, {((0,) * self.n_even, 0, tuple(dn)): 1})

    def det(self, d: int, power: int = 1) -> "SuperPolynomial":
        """The defining polynomial of denominator ``d`` raised to ``power``."""
        if (d, power) not in self._det_cache:
            if power == 0:
                val = self.one()
            elif power == 1:
                block = self.den_blocks[d]
                val = determinant([[self.var(k) for k in row] for row in block], self)
            else:
                val = self.det(d, power - 1) * self.det(d, 1)
            self._det_cache[(d, power)] = val
        return self._det_cache[(d, power)]

    def tensor(self, k: int) -> "TensorRing":
        if k not in self._tensor_cache:
            self._tensor_cache[k] = TensorRing(self, k)
        return self._tensor_cache[k]

    def monomial_degree(self, key: Key) -> int:
        return sum(key[0]) + bin(key[1]).count("1")

    def key_factors(self, key: Key) -> list[tuple[str, int]]:
        ev, od, dn = key
        out = []
        for i in range(len(self.keys)):
            kind, pos = self.slot_of[i]
            if kind == "e" and ev[pos]:
                out.append((self.labels[i], ev[pos]))
            elif kind == "o" and od >> pos & 1:
                out.append((self.labels[i], 1))
        for d, e in enumerate(dn):
            if e:
                out.append((self.den_labels[d], -e))
        return out

    def sort_key(self, key: Key) -> tuple:
        ev, od, dn = key
        full = []
        for i in range(len(self.keys)):
            kind, pos = self.slot_of[i]
            full.append(ev[pos] if kind == "e" else (od >> pos) & 1)
        return (tuple(-x for x in full), dn)


class TensorRing(Ring):
    """k-fold super tensor power of a base ring, slots ordered left to right."""

    def __init__(self, base: Ring, k: int):
        variables = []
        for s in range(k):
            for key, lab, par in zip(base.keys, base.labels, base.parities):
                variables.append(((s, key), f"{lab}@{s}", par))
        dens = []
        for s in range(k):
            for lab, block in zip(base.den_labels, base.den_blocks):
                dens.append((f"{lab}@{s}", [[(s, key) for key in row] for row in block]))
        super().__init__(f"{base.name}^{k}", variables, dens, base.max_degree)
        self.base = base
        self.k = k
        self.m, self.n = base.m, base.n

    def inject(self, f: "SuperPolynomial", slots: Sequence[int]) -> "SuperPolynomial":
        """Place slot t of ``f`` (a base element, or a tensor of len(slots)
        factors) at slot ``slots[t]`` of this ring.  Slots must increase."""
        src = f.ring
        if isinstance(src, TensorRing) and src.base is self.base:
            src_k = src.k
        elif src is self.base:
            src_k = 1
        else:
            raise ValueError("element does not belong to this tensor family")
        if len(slots) != src_k or list(slots) != sorted(slots) or slots[-1] >= self.k:
            raise ValueError("slots must be increasing and in range")
        b = self.base
        ne, no, nd = b.n_even, len(b.odd_vars), b.n_dens
        out = {}
        for (ev, od, dn), c in f.terms.items():
            nev = [0] * (ne * self.k)
            ndn = [0] * (nd * self.k)
            nod = 0
            for t, s in enumerate(slots):
                nev[s * ne:(s + 1) * ne] = ev[t * ne:(t + 1) * ne]
                ndn[s * nd:(s + 1) * nd] = dn[t * nd:(t + 1) * nd]
                chunk = (od >> (t * no)) & ((1 << no) - 1)
                nod |= chunk << (s * no)
            out[(tuple(nev), nod, tuple(ndn))] = c
        return SuperPolynomial(self, out)

    def split_key(self, key: Key) -> list[Key]:
        """Per-slot base keys of a tensor monomial (no sign: slots are ordered)."""
        b = self.base
        ne, no, nd = b.n_even, len(b.odd_vars), b.n_dens
        ev, od, dn = key
        return [
            (ev[s * ne:(s + 1) * ne], (od >> (s * no)) & ((1 << no) - 1), dn[s * nd:(s + 1) * nd])
            for s in range(self.k)
        ]


class SuperPolynomial:
    """Element of a localized supercommutative polynomial ring."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping[Key, Scalar]):
        self.ring = ring
        self.terms = {k: v for k, v in terms.items() if v != 0}

    # arithmetic -------------------------------------------------------
    def _check(self, other: "SuperPolynomial") -> None:
        if other.ring is not self.ring:
            raise ValueError(f"context mismatch: {self.ring.name} vs {other.ring.name}")

    def _coerce(self, other) -> "SuperPolynomial":
        if isinstance(other, SuperPolynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return SuperPolynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return SuperPolynomial(self.ring, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SuperPolynomial(self.ring, {k: v * other for k, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ring = self.ring
        guard = ring.max_degree
        out: dict[Key, Scalar] = {}
        for (e1, o1, d1), c1 in self.terms.items():
            deg1 = sum(e1) + bin(o1).count("1")
            for (e2, o2, d2), c2 in other.terms.items():
                if o1 & o2:
                    continue
                deg = deg1 + sum(e2) + bin(o2).count("1")
                if deg > guard:
                    raise DegreeGuardError(f"degree {deg} exceeds guard {guard} in {ring.name}")
                key = (
                    tuple(a + b for a, b in zip(e1, e2)),
                    o1 | o2,
                    tuple(a + b for a, b in zip(d1, d2)),
                )
                c = c1 * c2
                if _koszul(o1, o2):
                    c = -c
                out[key] = out.get(key, 0) + c
        return SuperPolynomial(ring, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are taken through denominators")
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    # structure --------------------------------------------------------
    def is_homogeneous(self) -> bool:
        return len({bin(k[1]).count("1") % 2 for k in self.terms}) <= 1

    @property
    def parity(self) -> int:
        pars = {bin(k[1]).count("1") % 2 for k in self.terms}
        if len(pars) > 1:
            raise ValueError("element is not homogeneous")
        return pars.pop() if pars else 0

    def degree(self) -> int:
        return max((self.ring.monomial_degree(k) for k in self.terms), default=0)

    def max_denominator(self) -> tuple[int, ...]:
        dn = [0] * self.ring.n_dens
        for _, _, d in self.terms:
            dn = [max(a, b) for a, b in zip(dn, d)]
        return tuple(dn)

    def at_denominator(self, target: Sequence[int]) -> "SuperPolynomial":
        """Same element rewritten with every term over D^target."""
        ring = self.ring
        target = tuple(target)
        groups: dict[tuple, dict] = {}
        for (ev, od, dn), c in self.terms.items():
            if any(a > b for a, b in zip(dn, target)):
                raise ValueError(f"target denominator {target} below {dn}")
            groups.setdefault(dn, {})[(ev, od, (0,) * ring.n_dens)] = c
        out = ring.zero()
        for dn, terms in groups.items():
            part = SuperPolynomial(ring, terms)
            for d, (have, want) in enumerate(zip(dn, target)):
                if want > have:
                    part = part * ring.det(d, want - have)
            out = out + part
        return SuperPolynomial(ring, {(ev, od, target): c for (ev, od, _), c in out.terms.items()})

    def numerator(self, target: Sequence[int] | None = None) -> dict[tuple, Scalar]:
        """Coefficients over the common denominator as ``{(ev, od): c}``."""
        if target is None:
            target = self.max_denominator()
        return {(ev, od): c for (ev, od, _), c in self.at_denominator(target).terms.items()}

    def is_zero(self) -> bool:
        if not self.terms:
            return True
        return not self.at_denominator(self.max_denominator()).terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, SuperPolynomial) or other.ring is not self.ring:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("SuperPolynomial is unhashable")

    def __bool__(self):
        return not self.is_zero()

    # text -------------------------------------------------------------
    def to_text(self) -> str:
        if not self.terms:
            return "0"
        ring = self.ring
        parts = []
        for key in sorted(self.terms, key=ring.sort_key):
            c = self.terms[key]
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            factors = [lab if e == 1 else f"{lab}^{e}" for lab, e in ring.key_factors(key)]
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            parts.append(sign + "*".join(factors))
        return "".join(parts)

    def __repr__(self) -> str:
        return self.to_text()


def determinant(matrix: Sequence[Sequence[SuperPolynomial]], ring: Ring) -> SuperPolynomial:
    """Leibniz determinant of a square matrix of pairwise commuting entries."""
    k = len(matrix)
    if any(len(row) != k for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    out = ring.zero()
    for perm in permutations(range(k)):
        term = ring.const(_perm_sign(perm))
        for r, c in enumerate(perm):
            term = term * matrix[r][c]
        out = out + term
    return out


# ---------------------------------------------------------------------------
# concrete rings

def _block(i: int, m: int) -> int:
    return 0 if i <= m else 1


def _position_parity(i: int, j: int, m: int) -> int:
    return int(_block(i, m) != _block(j, m))


def _make_ring(name, prefix, m, n, keep, coproduct, max_degree) -> Ring:
    size = m + n
    wide = size >= 10
    variables = []
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            if keep(i, j):
                lab = f"{prefix}{i}_{j}" if wide else f"{prefix}{i}{j}"
                variables.append(((i, j), lab, _position_parity(i, j, m)))
    dens = []
    if m:
        dens.append(("D1", [[(i, j) for j in range(1, m + 1)] for i in range(1, m + 1)]))
    if n:
        dens.append(("D2", [[(i, j) for j in range(m + 1, size + 1)] for i in range(m + 1, size + 1)]))
    ring = Ring(name, variables, dens, max_degree)
    ring.m, ring.n = m, n
    ring.coproduct = coproduct
    return ring


_RINGS: dict[tuple, Ring] = {}


def _cached_ring(kind: str, m: int, n: int, max_degree: int) -> Ring:
    key = (kind, m, n, max_degree)
    if key not in _RINGS:
        if kind == "gl":
            ring = _make_ring(f"K[GL({m}|{n})]", "x", m, n, lambda i, j: True, "full", max_degree)
        elif kind == "y":
            ring = _make_ring(f"K[U-xGevxU+]({m}|{n})", "y", m, n, lambda i, j: True, None, max_degree)
        else:
            ring = _make_ring(f"K[P-]({m}|{n})", "y", m, n,
                              lambda i, j: not (i <= m < j), "pminus", max_degree)
        _RINGS[key] = ring
    return _RINGS[key]


def gl_ring(m: int, n: int, max_degree: int = DEFAULT_MAX_DEGREE) -> Ring:
    """K[GL(m|n)] on the generic matrix x_ij, localized at det X11, det X22."""
    return _cached_ring("gl", m, n, max_degree)


def y_ring(m: int, n: int, max_degree: int = DEFAULT_MAX_DEGREE) -> Ring:
    """K[U^-] (x) K[G_ev] (x) K[U^+] flattened onto one generic matrix y_ij."""
    return _cached_ring("y", m, n, max_degree)


def pminus_ring(m: int, n: int, max_degree: int = DEFAULT_MAX_DEGREE) -> Ring:
    """K[P^-]: the y_ij with the upper odd block Y12 removed."""
    return _cached_ring("pminus", m, n, max_degree)


# ---------------------------------------------------------------------------
# morphisms

class Morphism:
    """Parity-preserving algebra morphism given on generators.

    ``den_images[d]`` is the image of D_d^{-1}; ``None`` means the morphism is
    undefined on that inverse and raises :class:`UnsupportedDenominator`.
    """

    def __init__(
        self,
        source: Ring,
        target: Ring,
        var_images: Mapping[Hashable, SuperPolynomial],
        den_images: Sequence[SuperPolynomial | None],
    ):
        self.source, self.target = source, target
        self.images = [var_images[k] for k in source.keys]
        for k, img in zip(source.keys, self.images):
            if img.ring is not target:
                raise ValueError(f"image of {k} lives in the wrong ring")
            if img.terms and img.parity != source.parity_of(k):
                raise ValueError(f"image of {k} has the wrong parity")
        self.den_images = list(den_images)
        self._pow: dict[tuple[str, int, int], SuperPolynomial] = {}

    def _power(self, kind: str, idx: int, e: int) -> SuperPolynomial:
        key = (kind, idx, e)
        if key not in self._pow:
            if kind == "v":
                base = self.images[idx]
            else:
                base = self.den_images[idx]
                if base is None:
                    raise UnsupportedDenominator(
                        f"{self.source.den_labels[idx]}^-1 has no image under this morphism")
            self._pow[key] = base if e == 1 else self._power(kind, idx, e - 1) * base
        return self._pow[key]

    def __call__(self, f: SuperPolynomial) -> SuperPolynomial:
        if f.ring is not self.source:
            raise ValueError(f"morphism source is {self.source.name}, got {f.ring.name}")
        src = self.source
        out = self.target.zero()
        for (ev, od, dn), c in f.terms.items():
            term = self.target.const(c)
            for pos, e in enumerate(ev):
                if e:
                    term = term * self._power("v", src.even_vars[pos], e)
            bit = 0
            while od >> bit:
                if od >> bit & 1:
                    term = term * self.images[src.odd_vars[bit]]
                bit += 1
            for d, e in enumerate(dn):
                if e:
                    term = term * self._power("d", d, e)
            out = out + term
        return out


def _delta_images(ring: Ring) -> tuple[dict, list]:
    if ring.coproduct is None:
        raise UnsupportedDenominator(f"{ring.name} carries no coproduct here")
    T = ring.tensor(2)
    size = ring.m + ring.n
    images = {}
    for (i, j) in ring.keys:
        img = T.zero()
        for k in range(1, size + 1):
            if ring.has((i, k)) and ring.has((k, j)):
                img = img + T.inject(ring.var((i, k)), [0]) * T.inject(ring.var((k, j)), [1])
        images[(i, j)] = img
    dens: list = []
    for lab in ring.den_labels:
        if ring.coproduct == "pminus":
            inv = ring.den_inverse(lab)
            dens.append(T.inject(inv, [0]) * T.inject(inv, [1]))
        else:
            dens.append(None)
    return images, dens


@lru_cache(maxsize=None)
def _delta(ring: Ring) -> Morphism:
    images, dens = _delta_images(ring)
    return Morphism(ring, ring.tensor(2), images, dens)


def comultiply(f: SuperPolynomial) -> SuperPolynomial:
    """Delta(x_ij) = sum_k x_ik (x) x_kj, extended multiplicatively.

    On K[P^-] the block determinants are group-like, so their inverses are
    handled; on K[GL(m|n)] only denominator-free elements are accepted.
    """
    return _delta(f.ring)(f)


def _slot_morphism(T: TensorRing, s: int, kind: str) -> Morphism:
    """Delta or counit applied at slot ``s`` of a k-fold tensor."""
    base, k = T.base, T.k
    if kind == "delta":
        target = base.tensor(k + 1)
        d_images, d_dens = _delta_images(base)
    else:
        target = base if k == 2 else base.tensor(k - 1)

    def place(f: SuperPolynomial, slots: list[int]) -> SuperPolynomial:
        if target is base:
            return f
        return target.inject(f, slots)

    images = {}
    for (t, key) in T.keys:
        v = base.var(key)
        if t < s:
            images[(t, key)] = place(v, [t])
        elif t > s:
            images[(t, key)] = place(v, [t + 1 if kind == "delta" else t - 1])
        elif kind == "delta":
            images[(t, key)] = target.inject(d_images[key], [s, s + 1])
        else:
            i, j = key
            images[(t, key)] = target.const(1 if i == j else 0)
    dens = []
    for lab in T.den_labels:
        base_lab, t = lab.rsplit("@", 1)
        t = int(t)
        inv = base.den_inverse(base_lab)
        if t < s:
            dens.append(place(inv, [t]))
        elif t > s:
            dens.append(place(inv, [t + 1 if kind == "delta" else t - 1]))
        elif kind == "delta":
            img = d_dens[base.den_index[base_lab]]
            dens.append(None if img is None else target.inject(img, [s, s + 1]))
        else:
            dens.append(target.one())
    return Morphism(T, target, images, dens)


_slot_cache: dict = {}
_MORPHISMS: dict = {}


def comultiply_slot(F: SuperPolynomial, s: int) -> SuperPolynomial:
    """(id^s (x) Delta (x) id^(k-1-s)) applied to a k-fold tensor."""
    key = (id(F.ring), s, "delta")
    if key not in _slot_cache:
        _slot_cache[key] = (F.ring, _slot_morphism(F.ring, s, "delta"))
    return _slot_cache[key][1](F)


def counit_slot(F: SuperPolynomial, s: int) -> SuperPolynomial:
    """Apply the counit x_ij -> delta_ij at slot ``s``."""
    key = (id(F.ring), s, "counit")
    if key not in _slot_cache:
        _slot_cache[key] = (F.ring, _slot_morphism(F.ring, s, "counit"))
    return _slot_cache[key][1](F)


def counit(f: SuperPolynomial) -> Scalar:
    """epsilon(x_ij) = delta_ij; block determinants map to 1."""
    ring = f.ring
    total = 0
    for (ev, od, _), c in f.terms.items():
        if od:
            continue
        if all(not e or ring.keys[ring.even_vars[pos]][0] == ring.keys[ring.even_vars[pos]][1]
               for pos, e in enumerate(ev)):
            total += c
    return total


# ---------------------------------------------------------------------------
# block inverses, phi*, z_ij

def invert_even_block(ring: Ring, block: int) -> list[list[SuperPolynomial]]:
    """Entries of the inverse of the even block X11 (block=1) or X22 (block=2).

    Each entry is an adjugate entry times D_block^{-1}.
    """
    lab = f"D{block}"
    if lab not in ring.den_index:
        raise ValueError(f"{ring.name} has no block {block}")
    d = ring.den_index[lab]
    keys = ring.den_blocks[d]
    size = len(keys)
    if any(len(row) != size for row in keys):
        raise ValueError("block is not square")
    inv_det = ring.den_inverse(lab)
    out = []
    for r in range(size):
        row = []
        for c in range(size):
            # adj[r][c] = (-1)^(r+c) * minor deleting row c, column r
            sub = [
                [ring.var(keys[i][j]) for j in range(size) if j != r]
                for i in range(size) if i != c
            ]
            cof = determinant(sub, ring) if sub else ring.one()
            if (r + c) % 2:
                cof = -cof
            row.append(cof * inv_det)
        out.append(row)
    return out


def phi_star_morphism(m: int, n: int, max_degree: int = DEFAULT_MAX_DEGREE) -> Morphism:
    """phi*: K[U^-] (x) K[G_ev] (x) K[U^+] -> K[GL(m|n)].

    Y11 -> X11, Y21 -> X21 X11^-1, Y12 -> X11^-1 X12,
    Y22 -> X22 - X21 X11^-1 X12.
    """
    key = ("phi", m, n, max_degree)
    if key in _MORPHISMS:
        return _MORPHISMS[key]
    if m < 1 or n < 1:
        raise ValueError("phi* needs m, n >= 1")
    Y, X = y_ring(m, n, max_degree), gl_ring(m, n, max_degree)
    inv = invert_even_block(X, 1)
    x = X.var
    lo, hi = range(1, m + 1), range(m + 1, m + n + 1)
    images = {}
    for (i, j) in Y.keys:
        if i <= m and j <= m:
            img = x((i, j))
        elif i > m and j <= m:
            img = X.zero()
            for k in lo:
                img = img + x((i, k)) * inv[k - 1][j - 1]
        elif i <= m < j:
            img = X.zero()
            for k in lo:
                img = img + inv[i - 1][k - 1] * x((k, j))
        else:
            img = x((i, j))
            for k in lo:
                for l in lo:
                    img = img - x((i, k)) * inv[k - 1][l - 1] * x((l, j))
        images[(i, j)] = img
    # det of the Schur complement is det(X22) * (1 + nilpotent)
    schur = determinant([[images[(i, j)] for j in hi] for i in hi], X)
    d2inv = X.den_inverse("D2")
    nil = schur * d2inv - X.one()
    series, power = X.one(), X.one()
    for _ in range(m * n):
        power = power * (-nil)
        series = series + power
    dens = [X.den_inverse("D1"), d2inv * series]
    _MORPHISMS[key] = Morphism(Y, X, images, dens)
    return _MORPHISMS[key]


def phi_star(f: SuperPolynomial) -> SuperPolynomial:
    ring = f.ring
    return phi_star_morphism(ring.m, ring.n, ring.max_degree)(f)


def z_element(ring: Ring, i: int, j: int) -> SuperPolynomial:
    """z_ij = (Y21 Y11^{-1})_ij in K[P^-]."""
    m, n = ring.m, ring.n
    if not (m < i <= m + n and 1 <= j <= m):
        raise ValueError(f"z_{i}{j} needs m < i <= m+n and 1 <= j <= m")
    inv = invert_even_block(ring, 1)
    out = ring.zero()
    for k in range(1, m + 1):
        out = out + ring.var((i, k)) * inv[k - 1][j - 1]
    return out


# ---------------------------------------------------------------------------
# membership in L (x) K[P^-]

def _l_generators(ring: Ring) -> list[SuperPolynomial]:
    m, n = ring.m, ring.n
    inv = invert_even_block(ring, 1)
    gens = []
    for u in range(m + 1, m + n + 1):
        for v in range(m + 1, m + n + 1):
            for s in range(1, m + 1):
                for t in range(1, m + 1):
                    gens.append(ring.var((u, v)) * inv[s - 1][t - 1])
    return gens


def _l_monomials(ring: Ring, degree: int) -> list[SuperPolynomial]:
    gens = _l_generators(ring)
    out, layer = [], [(0, ring.one())]
    for _ in range(degree):
        nxt = []
        for start, mono in layer:
            for g in range(start, len(gens)):
                nxt.append((g, mono * gens[g]))
        layer = nxt
        out.extend(p for _, p in layer)
    return out


def in_L(f: SuperPolynomial, degree: int, field=None) -> tuple[bool, dict | None]:
    """Is f in the span of products of 1..degree generators y_uv y^(-1)_st?"""
    from .arith import FieldConfig
    from .linalg import SpanSolver

    field = field or FieldConfig.rational()
    ring = f.ring
    monos = _l_monomials(ring, degree)
    target = [max(a, b) for a, b in zip(f.max_denominator(), (0,) * ring.n_dens)]
    for p in monos:
        target = [max(a, b) for a, b in zip(target, p.max_denominator())]
    rows = [p.numerator(target) for p in monos]
    solver = SpanSolver(rows, field)
    coeffs, residual = solver.solve(f.numerator(target))
    if residual:
        return False, None
    return True, {monos[i].to_text(): c for i, c in sorted(coeffs.items())}


def check_invariant_mod_L(
    ring: Ring, i: int, j: int, max_l_degree: int = 2
) -> tuple[bool, dict]:
    """Verify Delta(z_ij) - z_ij (x) 1 lies in L (x) K[P^-].

    The difference is split by right tensor factor; each left coefficient is
    tested for membership in L, truncated at the smallest degree that works.
    The certificate lists, per right monomial, the left factor, the degree
    used and its expansion in L-monomials.
    """
    if ring.coproduct != "pminus":
        raise ValueError("z_ij invariance is a statement about K[P^-]")
    z = z_element(ring, i, j)
    T = ring.tensor(2)
    rem = comultiply(z) - T.inject(z, [0]) * T.inject(ring.one(), [1])
    return tensor_in_L(rem, max_l_degree, label=f"z_{i}{j}")


def tensor_in_L(
    F: SuperPolynomial, max_l_degree: int = 2, label: str = ""
) -> tuple[bool, dict]:
    """Membership of a 2-fold tensor in L (x) K[P^-], with certificate."""
    T = F.ring
    ring = T.base
    target = F.max_denominator()
    num = F.at_denominator(target)
    groups: dict[Key, dict[Key, Scalar]] = {}
    for key, c in num.terms.items():
        left, right = T.split_key(key)
        groups.setdefault(right, {})[left] = c
    cert = {"element": label, "remainder": F.to_text(), "factors": []}
    ok = True
    for right in sorted(groups, key=ring.sort_key):
        left_poly = SuperPolynomial(ring, groups[right])
        right_poly = SuperPolynomial(ring, {right: 1})
        found = None
        for deg in range(1, max_l_degree + 1):
            member, expansion = in_L(left_poly, deg)
            if member:
                found = (deg, expansion)
                break
        entry = {
            "right": right_poly.to_text(),
            "left": left_poly.to_text(),
            "degree": found[0] if found else None,
            "expansion": found[1] if found else None,
        }
        cert["factors"].append(entry)
        if not found:
            ok = False
    cert["degree"] = max((e["degree"] or 0 for e in cert["factors"]), default=0)
    return ok, cert
