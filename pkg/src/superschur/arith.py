"""Exact scalars and the binomial / idempotent value functions.

Coefficients live either in the prime field F_p (p odd) or in the rationals.
A prime power q = p^r only ever enters as a modulus.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, prod
from typing import Sequence, Union

Scalar = Union[int, Fraction]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def prime_power_base(q: int) -> tuple[int, int]:
    """Return (p, r) with q = p**r, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    r, rest = 0, q
    while rest % p == 0:
        rest //= p
        r += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, r


@dataclass(frozen=True)
class FieldConfig:
    """Ground field: F_p when ``characteristic`` is an odd prime, else Q.

    ``r`` fixes the Frobenius level q = p**r used by the idempotents.
    """

    characteristic: int = 0
    r: int = 1

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and (p < 3 or not is_prime(p)):
            raise ValueError(f"characteristic must be 0 or an odd prime, got {p}")
        if self.r < 1:
            raise ValueError("r must be positive")

    @classmethod
    def rational(cls) -> "FieldConfig":
        return cls(0)

    @property
    def q(self) -> int:
        if self.characteristic == 0:
            raise ValueError("q is undefined in characteristic 0")
        return self.characteristic ** self.r

    @property
    def name(self) -> str:
        if self.characteristic == 0:
            return "Q"
        return f"F_{self.characteristic}"

    def __call__(self, x: Scalar) -> Scalar:
        p = self.characteristic
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def inv(self, x: Scalar) -> Scalar:
        x = self(x)
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / x
        return pow(x, -1, self.characteristic)

    def check_q(self, q: int) -> None:
        p = self.characteristic
        if p == 0:
            raise ValueError("idempotents h^(q) need positive characteristic")
        base, _ = prime_power_base(q)
        if base != p:
            raise ValueError(f"q={q} is not a power of the characteristic {p}")


def binom_int(b: int, a: int) -> int:
    """Generalized binomial coefficient binom(b, a) for any integer top."""
    if a < 0:
        raise ValueError("binomial bottom must be nonnegative")
    if b >= 0:
        return comb(b, a)
    # negative top: reflection identity
    return (-1) ** a * comb(a - b - 1, a)


def _lucas(b: int, a: int, p: int) -> int:
    out = 1
    while a:
        bd, ad = b % p, a % p
        if ad > bd:
            return 0
        out = out * comb(bd, ad) % p
        b //= p
        a //= p
    return out


def binom_mod_p(b: int, a: int, p: int) -> int:
    """binom(b, a) reduced mod p, by Lucas' theorem on the p-adic digits."""
    if a < 0:
        raise ValueError("binomial bottom must be nonnegative")
    if b >= 0:
        return _lucas(b, a, p)
    sign = -1 if a % 2 else 1
    return sign * _lucas(a - b - 1, a, p) % p


@lru_cache(maxsize=None)
def _h_sum_cached(t: int, q: int, x: int) -> int:
    p, _ = prime_power_base(q)
    total = 0
    for k in range(t, q):
        term = binom_mod_p(k, t, p) * binom_mod_p(x, k, p)
        total += -term if (k - t) % 2 else term
    return total % p


def h_sum(t: int, q: int, x: int) -> int:
    """The literal alternating sum defining h_t^(q)(x), evaluated in F_p."""
    if not 0 <= t < q:
        raise ValueError(f"need 0 <= t < q, got t={t}, q={q}")
    return _h_sum_cached(t, q, x)


def h_closed(t: int, q: int, m: int) -> int:
    """Closed form of h_t^(q)(m): the indicator of m = t (mod q)."""
    if not 0 <= t < q:
        raise ValueError(f"need 0 <= t < q, got t={t}, q={q}")
    return 1 if (m - t) % q == 0 else 0


def h_weight(alpha: Sequence[int], q: int, mu: Sequence[int], literal: bool = False) -> int:
    """h_alpha^(q)(mu) as a product over coordinates.

    With ``literal`` the coordinates are evaluated through :func:`h_sum`
    instead of the congruence test.
    """
    if len(alpha) != len(mu):
        raise ValueError(f"length mismatch: {len(alpha)} vs {len(mu)}")
    for a in alpha:
        if not 0 <= a < q:
            raise ValueError(f"alpha entries must lie in [0, {q}), got {a}")
    h = h_sum if literal else h_closed
    if literal:
        p, _ = prime_power_base(q)
        return prod(h(a, q, x) for a, x in zip(alpha, mu)) % p
    return prod(h(a, q, x) for a, x in zip(alpha, mu))
