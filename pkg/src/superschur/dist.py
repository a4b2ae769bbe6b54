"""Action of the distribution algebra of GL(m|n) on mixed tensor powers.

Vectors live in V^{(x)a} (x) W^{(x)b} with W = V*.  A basis word is a pair
``(vs, ws)`` of letter tuples; letter i has parity 0 iff i <= m.  Operators
are never built as algebra elements, only their actions are implemented.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from typing import Iterator, Sequence, Union

from .arith import FieldConfig, Scalar, binom_int, binom_mod_p, h_closed, h_weight, prime_power_base

Word = tuple[tuple[int, ...], tuple[int, ...]]


def letter_parity(i: int, m: int) -> int:
    return 0 if i <= m else 1


def word_weight(word: Word, m: int, n: int) -> tuple[int, ...]:
    mu = [0] * (m + n)
    for i in word[0]:
        mu[i - 1] += 1
    for i in word[1]:
        mu[i - 1] -= 1
    return tuple(mu)


def word_text(word: Word) -> str:
    parts = [f"v{i}" for i in word[0]] + [f"w{i}" for i in word[1]]
    return "(x)".join(parts) if parts else "1"


def word_height(word: Word) -> int:
    return sum(word[0])


@dataclass
class MixedTensorVector:
    m: int
    n: int
    field: FieldConfig
    terms: dict[Word, Scalar] = dc_field(default_factory=dict)

    @classmethod
    def basis_vector(cls, word: Word, m: int, n: int, field: FieldConfig) -> "MixedTensorVector":
        size = m + n
        for i in word[0] + word[1]:
            if not 1 <= i <= size:
                raise ValueError(f"letter {i} out of range for GL({m}|{n})")
        return cls(m, n, field, {(tuple(word[0]), tuple(word[1])): field(1)})

    def zero(self) -> "MixedTensorVector":
        return MixedTensorVector(self.m, self.n, self.field)

    def add_term(self, word: Word, c: Scalar) -> None:
        c = self.field(self.terms.get(word, 0) + c)
        if c:
            self.terms[word] = c
        else:
            self.terms.pop(word, None)

    def __add__(self, other: "MixedTensorVector") -> "MixedTensorVector":
        out = MixedTensorVector(self.m, self.n, self.field, dict(self.terms))
        for w, c in other.terms.items():
            out.add_term(w, c)
        return out

    def __sub__(self, other: "MixedTensorVector") -> "MixedTensorVector":
        return self + other.scale(-1)

    def scale(self, c: Scalar) -> "MixedTensorVector":
        c = self.field(c)
        if not c:
            return self.zero()
        return MixedTensorVector(self.m, self.n, self.field,
                                 {w: self.field(v * c) for w, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, MixedTensorVector):
            return NotImplemented
        return (self - other).is_zero()

    def weights(self) -> set[tuple[int, ...]]:
        return {word_weight(w, self.m, self.n) for w in self.terms}

    def to_json(self) -> list[dict]:
        return [
            {"word": word_text(w), "coeff": str(c)}
            for w, c in sorted(self.terms.items())
        ]


# ---------------------------------------------------------------------------
# generators

@dataclass(frozen=True)
class E:
    """Divided power e_ij^(t), i != j."""

    i: int
    j: int
    t: int = 1


@dataclass(frozen=True)
class Binom:
    """binom(e_i, s)."""

    i: int
    s: int


@dataclass(frozen=True)
class Hq:
    """The idempotent h_alpha^(q)(e); ``literal`` evaluates the defining sums."""

    alpha: tuple[int, ...]
    q: int
    literal: bool = False


@dataclass(frozen=True)
class HqAt:
    """Single-coordinate idempotent h_a^(q)(e_index)."""

    index: int
    a: int
    q: int


@dataclass(frozen=True)
class H0:
    """h_l = e_1 + ... + e_{m+n} - l (characteristic 0)."""

    l: int


@dataclass(frozen=True)
class DiagPoly:
    """A polynomial in e_1, ..., e_{m+n}: terms (exponent tuple, integer coefficient)."""

    terms: tuple[tuple[tuple[int, ...], int], ...]

    def __call__(self, mu: Sequence[int]) -> int:
        total = 0
        for exps, c in self.terms:
            v = c
            for x, e in zip(mu, exps):
                v *= x ** e
            total += v
        return total

    def is_zero(self) -> bool:
        return all(c == 0 for _, c in self.terms)

    def __str__(self) -> str:
        out = []
        for exps, c in self.terms:
            mono = "*".join(f"e{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e)
            out.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(out) if out else "0"


Generator = Union[E, Binom, Hq, HqAt, H0, DiagPoly]
OperatorWord = Sequence[Generator]


def _is_odd_pair(i: int, j: int, m: int) -> bool:
    return (i <= m) != (j <= m)


def _check_E(g: E, m: int, n: int) -> None:
    size = m + n
    if not (1 <= g.i <= size and 1 <= g.j <= size) or g.i == g.j:
        raise ValueError(f"invalid root vector e_{g.i}{g.j} for GL({m}|{n})")
    if g.t < 0:
        raise ValueError("divided power exponent must be nonnegative")
    if _is_odd_pair(g.i, g.j, m) and g.t > 1:
        raise ValueError(f"e_{g.i}{g.j} is odd: divided powers above 1 are not defined")


def _single_action(i: int, j: int, odd: bool, is_w: bool, letter: int, m: int) -> tuple[int, int] | None:
    """e_ij on one tensor factor: (coefficient, new letter) or None."""
    if not is_w:
        return (1, i) if letter == j else None
    if letter != i:
        return None
    # dual action: e_ij w_k = -(-1)^{|e_ij||k|} delta_ik w_j
    sign = -1
    if odd and letter_parity(letter, m):
        sign = 1
    return sign, j


def apply_E(g: E, x: MixedTensorVector) -> MixedTensorVector:
    m, n, F = x.m, x.n, x.field
    _check_E(g, m, n)
    out = x.zero()
    if g.t == 0:
        return MixedTensorVector(m, n, F, dict(x.terms))
    odd = _is_odd_pair(g.i, g.j, m)
    for word, coeff in x.terms.items():
        letters = [(False, c) for c in word[0]] + [(True, c) for c in word[1]]
        nv = len(word[0])
        hits = []
        for pos, (is_w, c) in enumerate(letters):
            res = _single_action(g.i, g.j, odd, is_w, c, m)
            if res is not None:
                hits.append((pos, res))
        if odd:
            parities = [letter_parity(c, m) for _, c in letters]
            pre = [0]
            for p_ in parities:
                pre.append(pre[-1] + p_)
            for pos, (c, new) in hits:
                sign = -1 if pre[pos] % 2 else 1
                new_letters = [l for _, l in letters]
                new_letters[pos] = new
                w = (tuple(new_letters[:nv]), tuple(new_letters[nv:]))
                out.add_term(w, coeff * c * sign)
        else:
            # even divided power: distribute t single hits over distinct slots
            for chosen in combinations(hits, g.t):
                new_letters = [l for _, l in letters]
                c_total = 1
                for pos, (c, new) in chosen:
                    new_letters[pos] = new
                    c_total *= c
                w = (tuple(new_letters[:nv]), tuple(new_letters[nv:]))
                out.add_term(w, coeff * c_total)
    return out


def _binom(field: FieldConfig, b: int, a: int) -> Scalar:
    if field.characteristic:
        return binom_mod_p(b, a, field.characteristic)
    return binom_int(b, a)


def diagonal_value(g: Generator, mu: Sequence[int], field: FieldConfig) -> Scalar:
    """Scalar by which a diagonal generator acts on a weight vector of weight mu."""
    size = len(mu)
    if isinstance(g, Binom):
        if not 1 <= g.i <= size or g.s < 0:
            raise ValueError(f"invalid binomial element ({g.i}, {g.s})")
        return field(_binom(field, mu[g.i - 1], g.s))
    if isinstance(g, Hq):
        field.check_q(g.q)
        if len(g.alpha) != size:
            raise ValueError("alpha has the wrong length")
        return field(h_weight(g.alpha, g.q, mu, literal=g.literal))
    if isinstance(g, HqAt):
        field.check_q(g.q)
        if not 1 <= g.index <= size:
            raise ValueError(f"index {g.index} out of range")
        return field(h_closed(g.a, g.q, mu[g.index - 1]))
    if isinstance(g, H0):
        if field.characteristic:
            raise ValueError("h_l is a characteristic-0 element")
        return field(sum(mu) - g.l)
    if isinstance(g, DiagPoly):
        return field(g(mu))
    raise TypeError(f"{g!r} is not a diagonal generator")


def apply_diag(g: Generator, x: MixedTensorVector) -> MixedTensorVector:
    out = x.zero()
    for word, coeff in x.terms.items():
        out.add_term(word, coeff * diagonal_value(g, word_weight(word, x.m, x.n), x.field))
    return out


def apply_generator(g: Generator, x: MixedTensorVector) -> MixedTensorVector:
    if isinstance(g, E):
        return apply_E(g, x)
    return apply_diag(g, x)


def apply_word(ops: OperatorWord, x: MixedTensorVector) -> MixedTensorVector:
    """Apply a product of generators; the rightmost one acts first."""
    for g in reversed(list(ops)):
        x = apply_generator(g, x)
        if x.is_zero():
            break
    return x


# ---------------------------------------------------------------------------
# modules

_MODULE_RE = re.compile(r"^\s*V\^?(\d+)\s*W\^?(\d+)\s*$")


def parse_module(spec: str) -> tuple[int, int]:
    """'V2W1' or 'V^2 W^1' -> (2, 1)."""
    match = _MODULE_RE.match(spec)
    if not match:
        raise ValueError(f"module spec {spec!r} must look like V2W1")
    return int(match.group(1)), int(match.group(2))


def module_name(a: int, b: int) -> str:
    return f"V^{a} W^{b}"


def basis_words(m: int, n: int, a: int, b: int) -> Iterator[Word]:
    letters = range(1, m + n + 1)
    for vs in product(letters, repeat=a):
        for ws in product(letters, repeat=b):
            yield vs, ws


def module_basis(m: int, n: int, a: int, b: int, field: FieldConfig) -> Iterator[MixedTensorVector]:
    for w in basis_words(m, n, a, b):
        yield MixedTensorVector(m, n, field, {w: field(1)})


# ---------------------------------------------------------------------------
# commutation formulae and the idempotent algebra

@dataclass
class CheckResult:
    clause: str
    q: int
    i: int
    j: int
    t: int
    a: int
    module: str
    status: str
    counterexample: str | None = None
    s: int | None = None

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {
            "clause": self.clause, "q": self.q, "i": self.i, "j": self.j,
            "t": self.t, "a": self.a, "module": self.module, "status": self.status,
        }
        if self.s is not None:
            out["s"] = self.s
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def _compare_on_basis(
    lhs: OperatorWord, rhs: OperatorWord, m: int, n: int, a: int, b: int, field: FieldConfig
) -> str | None:
    for word in basis_words(m, n, a, b):
        x = MixedTensorVector(m, n, field, {word: field(1)})
        if apply_word(lhs, x) != apply_word(rhs, x):
            return word_text(word)
    return None


def commutation_target(clause: str, q: int, a: int, t: int) -> int:
    if clause == "1":
        return a
    if clause == "2":
        return (a - t) % q
    if clause == "3":
        return (a + t) % q
    raise ValueError(f"unknown clause {clause}")


def verify_commutation(
    q: int, i: int, j: int, t: int, a: int, module: str, m: int, n: int,
    clause: str = "2", s: int | None = None, target: int | None = None,
) -> CheckResult:
    """Check h_a(e_s) e_ij^(t) = e_ij^(t) h_c(e_s) on every basis word of ``module``.

    Clause "1" uses an index s outside {i, j} and c = a; clause "2" uses s = i
    and c = a - t; clause "3" uses s = j and c = a + t (mod q).  ``target``
    overrides c (used to check that wrong identities are caught).
    """
    p, r = prime_power_base(q)
    field = FieldConfig(p, r)
    va, wb = parse_module(module)
    if not 1 <= t < q:
        raise ValueError(f"need 1 <= t < q, got t={t}")
    if not 0 <= a < q:
        raise ValueError(f"need 0 <= a < q, got a={a}")
    g = E(i, j, t)
    _check_E(g, m, n)
    if clause == "1":
        if s is None or s in (i, j) or not 1 <= s <= m + n:
            raise ValueError("clause 1 needs an index s outside {i, j}")
        idx = s
    elif clause == "2":
        idx = i
    else:
        idx = j
    c = commutation_target(clause, q, a, t) if target is None else target
    lhs = [HqAt(idx, a, q), g]
    rhs = [g, HqAt(idx, c, q)]
    bad = _compare_on_basis(lhs, rhs, m, n, va, wb, field)
    return CheckResult(
        clause, q, i, j, t, a, module_name(va, wb),
        "pass" if bad is None else "fail", bad, s if clause == "1" else None,
    )


def commutation_suite(q: int, module: str, m: int, n: int) -> Iterator[CheckResult]:
    """Every clause, every (i, j), every admissible t and every a."""
    size = m + n
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            if i == j:
                continue
            tmax = 1 if _is_odd_pair(i, j, m) else q - 1
            for t in range(1, tmax + 1):
                for a in range(q):
                    for s in range(1, size + 1):
                        if s not in (i, j):
                            yield verify_commutation(q, i, j, t, a, module, m, n, "1", s=s)
                    yield verify_commutation(q, i, j, t, a, module, m, n, "2")
                    yield verify_commutation(q, i, j, t, a, module, m, n, "3")


def all_alphas(q: int, size: int) -> Iterator[tuple[int, ...]]:
    return product(range(q), repeat=size)


def idempotent_suite(q: int, module: str, m: int, n: int, literal: bool = True) -> list[dict]:
    """Idempotency, orthogonality and partition of unity of the h_alpha^(q)."""
    p, r = prime_power_base(q)
    field = FieldConfig(p, r)
    va, wb = parse_module(module)
    alphas = list(all_alphas(q, m + n))
    reports = []
    status = {"idempotent": None, "orthogonal": None, "unity": None}
    for word in basis_words(m, n, va, wb):
        x = MixedTensorVector(m, n, field, {word: field(1)})
        images = {al: apply_diag(Hq(al, q, literal), x) for al in alphas}
        if status["idempotent"] is None:
            for al in alphas:
                if apply_diag(Hq(al, q, literal), images[al]) != images[al]:
                    status["idempotent"] = word_text(word)
                    break
        if status["orthogonal"] is None:
            for al in alphas:
                if images[al].is_zero():
                    continue
                for be in alphas:
                    if be != al and not apply_diag(Hq(be, q, literal), images[al]).is_zero():
                        status["orthogonal"] = word_text(word)
                        break
                if status["orthogonal"] is not None:
                    break
        if status["unity"] is None:
            total = x.zero()
            for al in alphas:
                total = total + images[al]
            if total != x:
                status["unity"] = word_text(word)
    for prop, bad in status.items():
        rep = {"check": prop, "q": q, "module": module_name(va, wb), "m": m, "n": n,
               "status": "pass" if bad is None else "fail"}
        if bad is not None:
            rep["counterexample"] = bad
        reports.append(rep)
    return reports


# ---------------------------------------------------------------------------
# the kernel of pi_l

def kernel_modules(l: int, kmax: int) -> list[tuple[int, int]]:
    """The modules V^(l+k) W^k with 0 <= k <= kmax and l + k >= 0."""
    return [(l + k, k) for k in range(max(0, -l), kmax + 1)]


def kernel_annihilation(l: int, q: int, alpha: Sequence[int], kmax: int, m: int, n: int) -> dict:
    """h_alpha^(q) with |alpha| != l (mod q) kills every V^(l+k) W^k, k <= kmax."""
    alpha = tuple(alpha)
    if len(alpha) != m + n:
        raise ValueError("alpha has the wrong length")
    if (sum(alpha) - l) % q == 0:
        raise ValueError(f"precondition violated: |alpha| = {sum(alpha)} = l mod {q}")
    p, r = prime_power_base(q)
    field = FieldConfig(p, r)
    bad = None
    for va, wb in kernel_modules(l, kmax):
        for word in basis_words(m, n, va, wb):
            if diagonal_value(Hq(alpha, q), word_weight(word, m, n), field):
                bad = (module_name(va, wb), word_text(word))
                break
        if bad:
            break
    rep = {"check": "annihilate", "l": l, "q": q, "alpha": list(alpha), "kmax": kmax,
           "status": "pass" if bad is None else "fail"}
    if bad:
        rep["counterexample"] = {"module": bad[0], "word": bad[1]}
    return rep


def char0_annihilation(l: int, kmax: int, m: int, n: int, extra_w: int = 0) -> dict:
    """h_l kills every V^(l+k) W^(k+extra_w); extra_w != 0 is the wrong-module sanity case."""
    field = FieldConfig.rational()
    bad = None
    for va, wb in kernel_modules(l, kmax):
        wb += extra_w
        for word in basis_words(m, n, va, wb):
            if diagonal_value(H0(l), word_weight(word, m, n), field):
                bad = (module_name(va, wb), word_text(word))
                break
        if bad:
            break
    rep = {"check": "annihilate0", "l": l, "kmax": kmax, "extra_w": extra_w,
           "status": "pass" if bad is None else "fail"}
    if bad:
        rep["counterexample"] = {"module": bad[0], "word": bad[1]}
    return rep


@dataclass(frozen=True)
class UTerm:
    """One summand u+ u- g of an element of Dist(G) in normal form."""

    upper: tuple[tuple[int, int, int], ...]   # (i, j, t) with i < j, product order
    lower: tuple[tuple[int, int, int], ...]   # (i, j, t) with i > j
    coeff: int = 1
    g: DiagPoly | None = None

    def exponents(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for i, j, t in self.upper + self.lower:
            out[(i, j)] = out.get((i, j), 0) + t
        return out

    @property
    def height(self) -> int:
        return sum(t * (i - j) for i, j, t in self.upper)

    def operators(self) -> list[Generator]:
        ops: list[Generator] = [E(i, j, t) for i, j, t in self.upper]
        ops += [E(i, j, t) for i, j, t in self.lower]
        if self.g is not None:
            ops.append(self.g)
        return ops

    def __str__(self) -> str:
        parts = [f"e{i}{j}" + (f"^({t})" if t > 1 else "") for i, j, t in self.upper + self.lower]
        if self.g is not None:
            parts.append(f"({self.g})")
        body = "*".join(parts) if parts else "1"
        return body if self.coeff == 1 else f"{self.coeff}*{body}"


class UParseError(ValueError):
    pass


def _parse_poly(text: str, size: int) -> DiagPoly:
    """Sums of products of integers and e_i (single-digit or e_{i}) with ^ powers."""
    text = text.replace(" ", "")
    if not text:
        raise UParseError("empty polynomial")
    terms: dict[tuple[int, ...], int] = {}
    for sign, body in re.findall(r"([+-]?)([^+-]+)", text):
        coeff = -1 if sign == "-" else 1
        exps = [0] * size
        for factor in body.split("*"):
            fm = re.fullmatch(r"e\{?(\d+)\}?(?:\^(\d+))?", factor)
            if fm:
                idx = int(fm.group(1))
                if not 1 <= idx <= size:
                    raise UParseError(f"e_{idx} out of range")
                exps[idx - 1] += int(fm.group(2) or 1)
            elif re.fullmatch(r"\d+", factor):
                coeff *= int(factor)
            else:
                raise UParseError(f"cannot parse polynomial factor {factor!r}")
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    return DiagPoly(tuple(sorted((k, v) for k, v in terms.items() if v)))


def _multiply_poly(f: DiagPoly, g: DiagPoly) -> DiagPoly:
    out: dict[tuple[int, ...], int] = {}
    for ea, ca in f.terms:
        for eb, cb in g.terms:
            key = tuple(x + y for x, y in zip(ea, eb))
            out[key] = out.get(key, 0) + ca * cb
    return DiagPoly(tuple(sorted((k, v) for k, v in out.items() if v)))


def parse_u(text: str, m: int, n: int) -> list[UTerm]:
    """Parse 'e12', 'e13*e31', '2*e12^(2)*e21 + e21', 'e12*(e1-2)'.

    Root vectors are written e<i><j> (or e<i>,<j>), divided powers as ^(t),
    and a parenthesised factor is a polynomial in e_1..e_{m+n}.
    """
    size = m + n
    text = text.strip()
    if text in ("", "1"):
        return [UTerm((), ())]
    # split on top-level '+'
    chunks, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            chunks.append(cur)
            cur = ""
        else:
            cur += ch
    chunks.append(cur)
    out = []
    for chunk in chunks:
        chunk = chunk.strip()
        factors, depth, cur = [], 0, ""
        for ch in chunk:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if ch == "*" and depth == 0:
                factors.append(cur.strip())
                cur = ""
            else:
                cur += ch
        factors.append(cur.strip())
        coeff, upper, lower, g = 1, [], [], None
        for f in factors:
            em = re.fullmatch(r"e(\d),?(\d)(?:\^\((\d+)\))?", f) or \
                re.fullmatch(r"e(\d+),(\d+)(?:\^\((\d+)\))?", f)
            if em:
                i, j, t = int(em.group(1)), int(em.group(2)), int(em.group(3) or 1)
                _check_E(E(i, j, t), m, n)
                (upper if i < j else lower).append((i, j, t))
            elif re.fullmatch(r"-?\d+", f):
                coeff *= int(f)
            elif f.startswith("(") and f.endswith(")"):
                poly = _parse_poly(f[1:-1], size)
                g = poly if g is None else _multiply_poly(g, poly)
            else:
                raise UParseError(f"cannot parse factor {f!r}")
        out.append(UTerm(tuple(upper), tuple(lower), coeff, g))
    return out


def random_u(rng: random.Random, m: int, n: int, terms: int = 2, with_g: bool = False):
    """A random element sum_s u+_s u-_s (g_s) with distinct monomials.

    Each of u+_s, u-_s has at most two root-vector factors on distinct
    positions; with ``with_g`` every term carries g_s = e_i^d - c.
    """
    size = m + n
    upper = [(i, j) for i in range(1, size + 1) for j in range(i + 1, size + 1)]
    lower = [(j, i) for i, j in upper]
    seen = set()
    out = []
    for _ in range(terms):
        for _attempt in range(20):
            parts = []
            for pool in (upper, lower):
                chosen = rng.sample(pool, rng.randint(0, min(2, len(pool))))
                part = []
                for i, j in chosen:
                    odd = (i <= m) != (j <= m)
                    part.append((i, j, 1 if odd else rng.randint(1, 2)))
                parts.append(tuple(part))
            g = None
            if with_g:
                idx = rng.randrange(max(size - 1, 1))
                exps = [0] * size
                exps[idx] = rng.randint(1, 2)
                g = DiagPoly(((tuple(exps), 1), ((0,) * size, -rng.randint(0, 3))))
            key = (parts[0], parts[1], g)
            if key not in seen:
                seen.add(key)
                out.append(UTerm(parts[0], parts[1], rng.choice([1, 2]), g))
                break
    return out


def _u_action(u: Sequence[UTerm], z: MixedTensorVector) -> MixedTensorVector:
    total = z.zero()
    for term in u:
        total = total + apply_word(term.operators(), z).scale(term.coeff)
    return total


def _witness_parts(term: UTerm, l: int, size: int):
    ex = term.exponents()
    t_plus = sum(t for i, j, t in term.upper)
    t_minus = sum(t for i, j, t in term.lower)
    k = max(t_minus, t_plus - l, 0)
    up_in = [sum(ex.get((i, j), 0) for i in range(1, j)) for j in range(1, size + 1)]
    low_out = [sum(ex.get((i, j), 0) for j in range(1, i)) for i in range(1, size + 1)]
    return t_plus, t_minus, k, up_in, low_out


def _word_of(counts_v: Sequence[tuple[int, int]], counts_w: Sequence[tuple[int, int]]) -> Word:
    vs = tuple(letter for letter, c in counts_v for _ in range(c))
    ws = tuple(letter for letter, c in counts_w for _ in range(c))
    return vs, ws


def kernel_witness(
    u: Sequence[UTerm], alpha: Sequence[int], q: int, l: int, m: int, n: int, balance: bool = False
) -> dict:
    """Build z with h_alpha z = z and u z != 0, following the height argument.

    With ``balance`` the word is padded by w_{m+n}^{sum beta}, which puts z
    in V^(l+k') W^k' exactly; otherwise the weight sum of z is l + sum(beta).
    Raises ``ArithmeticError`` if the construction fails.
    """
    size = m + n
    alpha = tuple(alpha)
    if len(alpha) != size or any(not 0 <= x < q for x in alpha):
        raise ValueError(f"alpha must have {size} entries in [0, {q})")
    if (sum(alpha) - l) % q:
        raise ValueError(f"precondition violated: |alpha| = {sum(alpha)} is not l mod {q}")
    if not u:
        raise ValueError("u has no terms")
    p, r = prime_power_base(q)
    field = FieldConfig(p, r)
    s = min(range(len(u)), key=lambda idx: (u[idx].height, idx))
    term = u[s]
    t_plus, t_minus, k, up_in, low_out = _witness_parts(term, l, size)

    def build(beta: Sequence[int]) -> Word:
        v_counts = [(1, l + k - t_plus)] + [(j + 1, beta[j] + up_in[j]) for j in range(size)]
        w_counts = [(1, k - t_minus)] + [(i + 1, low_out[i]) for i in range(size)]
        if balance:
            w_counts.append((size, sum(beta)))
        return _word_of(v_counts, w_counts)

    base = word_weight(build([0] * size), m, n)
    beta = [(alpha[i] - base[i]) % q for i in range(size)]
    if balance:
        # padding shifts the last coordinate by -sum(beta), a multiple of q
        assert sum(beta) % q == 0
    word = build(beta)
    z = MixedTensorVector(m, n, field, {word: field(1)})
    hz = apply_diag(Hq(alpha, q), z)
    result = _u_action(u, hz)
    heights = [word_height(w) for w in result.terms]
    report = {
        "l": l, "q": q, "alpha": list(alpha), "u": " + ".join(map(str, u)),
        "s": s, "t_plus": t_plus, "t_minus": t_minus, "k": k, "beta": beta,
        "balanced": balance,
        "module": module_name(len(word[0]), len(word[1])),
        "weight": list(word_weight(word, m, n)),
        "z": word_text(word),
        "h_alpha_fixes_z": hz == z,
        "result_terms": len(result.terms),
        "h_z_plus": word_height(word),
        "m_plus": term.height,
        "min_result_height": min(heights) if heights else None,
        "status": "pass" if hz == z and not result.is_zero() else "fail",
    }
    if report["status"] != "pass":
        raise ArithmeticError(f"witness construction failed: {report}")
    return report


def char0_witness(
    u: Sequence[UTerm], l: int, m: int, n: int,
    N: Sequence[int] | None = None, search: int = 12,
) -> dict:
    """Characteristic-0 witness: z = z+ (x) z- padded by the N_i.

    ``N`` gives N_1 > ... > N_{m+n-1} > 0 explicitly; otherwise N_i = c(m+n-i)
    for c = 1, 2, ... until u z != 0.
    """
    size = m + n
    field = FieldConfig.rational()
    if not u:
        raise ValueError("u has no terms")
    s = min(range(len(u)), key=lambda idx: (u[idx].height, idx))
    term = u[s]
    t_plus, t_minus, k, up_in, low_out = _witness_parts(term, l, size)
    if N is not None:
        N = list(N)
        if len(N) != size - 1 or any(a <= b for a, b in zip(N, N[1:])) or (N and N[-1] <= 0):
            raise ValueError("N must be strictly decreasing positive integers of length m+n-1")
        candidates = [N]
    else:
        candidates = [[c * (size - i) for i in range(1, size)] for c in range(1, search + 1)]
    for Ns in candidates:
        full = list(Ns) + [0]
        v_counts = [(1, l + k - t_plus)] + [(j + 1, up_in[j] + full[j]) for j in range(size)]
        w_counts = [(1, k - t_minus)] + [(i + 1, low_out[i]) for i in range(size)] + [(size, sum(full))]
        word = _word_of(v_counts, w_counts)
        mu = word_weight(word, m, n)
        z = MixedTensorVector(m, n, field, {word: field(1)})
        result = _u_action(u, z)
        g_val = term.g(mu) if term.g is not None else 1
        if not result.is_zero():
            return {
                "l": l, "u": " + ".join(map(str, u)), "s": s, "N": list(Ns), "k": k,
                "module": module_name(len(word[0]), len(word[1])),
                "weight": list(mu), "z": word_text(word),
                "g_s_value": str(g_val),
                "h_l_kills_z": apply_diag(H0(l), z).is_zero(),
                "result_terms": len(result.terms), "status": "pass",
            }
    raise ArithmeticError(f"no characteristic-0 witness found for u = {u} within the search range")
