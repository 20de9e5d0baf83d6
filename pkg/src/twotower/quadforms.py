"""Class groups of quadratic fields via binary quadratic forms.

Classes of forms of fundamental discriminant D under proper (SL2)
equivalence realize the narrow class group; the wide group is the
quotient by the class of a form representing -1 (a trivial quotient for
D < 0, and for D > 0 exactly when x^2 - D y^2 = -4 is solvable).

Everything works at desk scale: enumerate every reduced form, partition
indefinite forms into reduction cycles, and extract elementary divisors
by torsion counting plus a maximal-order peel for generators.
"""

from __future__ import annotations

import os
from collections import OrderedDict
from dataclasses import dataclass
from math import isqrt
from typing import NamedTuple

from .arith import factorization, is_fundamental, kronecker, sqrt_mod_prime, xgcd
from .errors import (
    BoundExceeded,
    DiscriminantMismatch,
    NoSquareRoot,
    NotFundamental,
    SquareDiscriminant,
)

DEFAULT_MAX_DISC = 10**8
_ENV_MAX_DISC = "TWO_TOWER_MAX_DISC"


class QuadForm(NamedTuple):
    """Integer binary quadratic form a x^2 + b xy + c y^2."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c


def max_disc_bound(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get(_ENV_MAX_DISC)
    return int(env) if env else DEFAULT_MAX_DISC


def _check_disc(d: int, bound: int | None = None) -> None:
    if abs(d) > max_disc_bound(bound):
        raise BoundExceeded(f"|{d}| exceeds the configured discriminant bound")
    if not is_fundamental(d):
        raise NotFundamental(f"{d} is not a fundamental discriminant")


def principal_form(d: int) -> QuadForm:
    b = d & 1
    return QuadForm(1, b, (b * b - d) // 4)


def _reduce_def(a: int, b: int, c: int) -> tuple[int, int, int]:
    """Unique reduced representative for D < 0 (positive definite)."""
    while True:
        if a > c:
            a, b, c = c, -b, a
            continue
        if b > a or b <= -a:
            r = b % (2 * a)
            if r > a:
                r -= 2 * a
            q = (b - r) // (2 * a)
            c += q * q * a - q * b
            b = r
            continue
        if (b == -a or a == c) and b < 0:
            b = -b
            continue
        return a, b, c


def _is_reduced_indef(a: int, b: int, c: int, d: int) -> bool:
    if b <= 0 or b * b >= d:
        return False
    w = 2 * abs(a)
    return (w + b) ** 2 > d and (w <= b or (w - b) ** 2 < d)


def _rho(a: int, b: int, c: int, d: int, s: int) -> tuple[int, int, int]:
    """One reduction step for indefinite forms; s = isqrt(d)."""
    ac = abs(c)
    hi = ac if ac > s else s
    r = hi - ((hi + b) % (2 * ac))
    return c, r, (r * r - d) // (4 * c)


def _reduce_indef(a: int, b: int, c: int, d: int) -> tuple[int, int, int]:
    """Some reduced form on the cycle of (a, b, c), disc d > 0 nonsquare."""
    s = isqrt(d)
    while not _is_reduced_indef(a, b, c, d):
        a, b, c = _rho(a, b, c, d, s)
    return a, b, c


def _cycle(form: tuple[int, int, int], d: int) -> list[tuple[int, int, int]]:
    """Full reduction cycle through a reduced indefinite form."""
    s = isqrt(d)
    out = [form]
    cur = _rho(*form, d, s)
    while cur != form:
        out.append(cur)
        cur = _rho(*cur, d, s)
    return out


def reduce_form(f: QuadForm) -> QuadForm:
    """Canonical reduced representative properly equivalent to f.

    For D < 0 this is the unique reduced form of the class; for D > 0 it
    is the lexicographically least (a, b) on the reduction cycle among
    forms with a > 0.
    """
    a, b, c = f
    d = b * b - 4 * a * c
    if d >= 0 and isqrt(d) ** 2 == d:
        raise SquareDiscriminant(f"discriminant {d} is a perfect square")
    if d < 0:
        if a < 0:
            raise ValueError("negative definite form; negate it first")
        return QuadForm(*_reduce_def(a, b, c))
    red = _reduce_indef(a, b, c, d)
    return QuadForm(*min(g for g in _cycle(red, d) if g[0] > 0))


def _compose_raw(f1, f2, d: int) -> tuple[int, int, int]:
    """Dirichlet composition of primitive forms of discriminant d."""
    a1, b1, _ = f1
    a2, b2, _ = f2
    s = (b1 + b2) // 2
    g1, u1, v1 = xgcd(a1, a2)
    g, u2, v2 = xgcd(g1, s)
    a3 = a1 * a2 // (g * g)
    num = u2 * (u1 * a1 * b2 + v1 * a2 * b1) + v2 * ((b1 * b2 + d) // 2)
    b3 = (num // g) % (2 * abs(a3))
    c3 = (b3 * b3 - d) // (4 * a3)
    return a3, b3, c3


def compose(f: QuadForm, g: QuadForm) -> QuadForm:
    """Reduced Gauss composite of two form classes."""
    d = f.b * f.b - 4 * f.a * f.c
    if g.b * g.b - 4 * g.a * g.c != d:
        raise DiscriminantMismatch("forms have different discriminants")
    return reduce_form(QuadForm(*_compose_raw(f, g, d)))


def inverse(f: QuadForm) -> QuadForm:
    return reduce_form(QuadForm(f.a, -f.b, f.c))


def _reduced_forms_neg(d: int) -> list[tuple[int, int, int]]:
    """All reduced forms of fundamental d < 0, ascending."""
    out = []
    b = d & 1
    while 3 * b * b <= -d:
        m = (b * b - d) // 4
        a = max(b, 1)
        while a * a <= m:
            if m % a == 0:
                c = m // a
                out.append((a, b, c))
                if 0 < b < a < c:
                    out.append((a, -b, c))
            a += 1
        b += 2
    out.sort()
    return out


def _reduced_forms_pos(d: int) -> list[tuple[int, int, int]]:
    """All reduced forms of fundamental d > 0, both leading signs."""
    out = []
    s = isqrt(d)
    b = 2 - (d & 1)
    while b <= s:
        m = (d - b * b) // 4
        lo = max((s - b) // 2 + 1, 1)
        hi = (s + b) // 2
        if hi - lo <= isqrt(m):
            for a in range(lo, hi + 1):
                if m % a == 0:
                    out.append((a, b, -(m // a)))
                    out.append((-a, b, m // a))
        else:
            a = 1
            while a * a <= m:
                if m % a == 0:
                    for w in {a, m // a}:
                        if lo <= w <= hi:
                            out.append((w, b, -(m // w)))
                            out.append((-w, b, m // w))
                a += 1
        b += 2
    out.sort()
    return out


class _ClassTable:
    """Per-discriminant registry of form classes and the group law on them."""

    def __init__(self, d: int):
        self.d = d
        self.index: dict[tuple[int, int, int], int] = {}
        self.reps: list[tuple[int, int, int]] = []
        if d < 0:
            for i, f in enumerate(_reduced_forms_neg(d)):
                self.index[f] = i
                self.reps.append(f)
        else:
            for f in _reduced_forms_pos(d):
                if f in self.index:
                    continue
                cyc = _cycle(f, d)
                rep = min(g for g in cyc if g[0] > 0)
                i = len(self.reps)
                self.reps.append(rep)
                for g in cyc:
                    self.index[g] = i
        self.h_plus = len(self.reps)
        self.principal = self.class_index(principal_form(d))
        if d > 0:
            b0 = d & 1
            self.neg_principal = self.class_index((-1, b0, (d - b0 * b0) // 4))
        else:
            self.neg_principal = self.principal
        self.wide_kernel = frozenset({self.principal, self.neg_principal})
        self.h_wide = self.h_plus // len(self.wide_kernel)
        self._mul: dict[tuple[int, int], int] = {}

    def class_index(self, f) -> int:
        a, b, c = f
        if self.d < 0:
            return self.index[_reduce_def(a, b, c)]
        return self.index[_reduce_indef(a, b, c, self.d)]

    def mul(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        key = (i, j)
        k = self._mul.get(key)
        if k is None:
            k = self.class_index(_compose_raw(self.reps[i], self.reps[j], self.d))
            self._mul[key] = k
        return k

    def pow(self, i: int, n: int) -> int:
        r = self.principal
        while n:
            if n & 1:
                r = self.mul(r, i)
            n >>= 1
            if n:
                i = self.mul(i, i)
        return r

    def inv(self, i: int) -> int:
        a, b, c = self.reps[i]
        return self.class_index((a, -b, c))

    def order(self, i: int) -> int:
        o = self.h_plus
        for p in factorization(self.h_plus):
            while o % p == 0 and self.pow(i, o // p) == self.principal:
                o //= p
        return o

    def order_2part_mod(self, i: int, wide: bool) -> int:
        """Largest 2-power dividing the class order, narrow or wide."""
        h = self.h_wide if wide else self.h_plus
        m = h
        while m % 2 == 0:
            m //= 2
        y = self.pow(i, m)
        kernel = self.wide_kernel if wide else frozenset({self.principal})
        part = 1
        while y not in kernel:
            y = self.mul(y, y)
            part *= 2
        return part


_tables: OrderedDict[int, _ClassTable] = OrderedDict()
_TABLE_CACHE_SIZE = 48


def _table(d: int, bound: int | None = None) -> _ClassTable:
    _check_disc(d, bound)
    t = _tables.get(d)
    if t is None:
        t = _ClassTable(d)
        _tables[d] = t
        while len(_tables) > _TABLE_CACHE_SIZE:
            _tables.popitem(last=False)
    else:
        _tables.move_to_end(d)
    return t


@dataclass(frozen=True)
class AbelianGroupStructure:
    """Elementary divisor presentation d1 | d2 | ... with one generator each."""

    elementary_divisors: tuple[int, ...]
    order: int
    generators: tuple[QuadForm, ...]

    def rank(self, p: int, i: int = 1) -> int:
        """Generalized p^i-rank d_{p^i}: divisors divisible by p^i."""
        q = p**i
        return sum(1 for d in self.elementary_divisors if d % q == 0)

    @property
    def two_rank(self) -> int:
        return self.rank(2, 1)

    @property
    def four_rank(self) -> int:
        return self.rank(2, 2)

    @property
    def two_part_order(self) -> int:
        out = 1
        for d in self.elementary_divisors:
            out *= d & -d
        return out

    @property
    def max_cyclic_2power(self) -> int:
        best = 1
        for d in self.elementary_divisors:
            best = max(best, d & -d)
        return best

    def describe(self) -> str:
        if not self.elementary_divisors:
            return "trivial (order 1)"
        parts = " x ".join(f"C{d}" for d in self.elementary_divisors)
        return f"{parts} (order {self.order})"


def _divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factorization(n).items():
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


def _plog(n: int, p: int) -> int:
    e = 0
    while n > 1:
        n //= p
        e += 1
    return e


def _structure(elements, mul, powf, inv, identity):
    """Invariant factors (descending) and matching generators.

    Divisor multiset by torsion counting; generators by peeling a
    maximal-order coset per factor, adjusted inside the running subgroup
    so each generator's order equals its factor exactly.
    """
    h = len(elements)
    if h == 1:
        return (), []
    h_fac = factorization(h)
    orders: dict[int, int] = {}
    for x in elements:
        o = h
        for p in h_fac:
            while o % p == 0 and powf(x, o // p) == identity:
                o //= p
        orders[x] = o
    layer_ranks: dict[int, list[int]] = {}
    for p, e_max in h_fac.items():
        prev = 0
        ranks = []
        for j in range(1, e_max + 1):
            q = p**j
            cnt = sum(1 for x in elements if q % orders[x] == 0)
            lg = _plog(cnt, p)
            ranks.append(lg - prev)
            prev = lg
            if ranks[-1] == 0:
                break
        layer_ranks[p] = [r for r in ranks if r > 0]
    width = max(r[0] for r in layer_ranks.values())
    divisors_desc = []
    for k in range(width):
        dk = 1
        for p, ranks in layer_ranks.items():
            dk *= p ** sum(1 for r in ranks if r > k)
        divisors_desc.append(dk)
    by_order_desc = sorted(elements, key=lambda e: -orders[e])
    subgroup = {identity}
    gens = []
    for dk in divisors_desc:
        pick = None
        for x in by_order_desc:
            if x in subgroup or orders[x] % dk:
                continue
            co = orders[x]
            for k in _divisors(orders[x]):
                if powf(x, k) in subgroup:
                    co = k
                    break
            if co == dk:
                pick = x
                break
        assert pick is not None, "no element matches the invariant factor"
        tgt = powf(pick, dk)
        if tgt != identity:
            adj = next(y for y in subgroup if powf(y, dk) == tgt)
            pick = mul(pick, inv(adj))
        gens.append(pick)
        new = set()
        g = identity
        for _ in range(dk):
            for z in subgroup:
                new.add(mul(z, g))
            g = mul(g, pick)
        subgroup = new
    assert len(subgroup) == h, "generators do not span the group"
    return tuple(divisors_desc), gens


_narrow_cache: dict[int, AbelianGroupStructure] = {}
_wide_cache: dict[int, AbelianGroupStructure] = {}


def narrow_class_group(d: int, bound: int | None = None) -> AbelianGroupStructure:
    """Structure of the narrow class group Cl+(Q(sqrt(d)))."""
    if abs(d) > max_disc_bound(bound):
        raise BoundExceeded(f"|{d}| exceeds the configured discriminant bound")
    got = _narrow_cache.get(d)
    if got is not None:
        return got
    t = _table(d, bound)
    divisors_desc, gens = _structure(
        list(range(t.h_plus)), t.mul, t.pow, t.inv, t.principal
    )
    out = AbelianGroupStructure(
        tuple(reversed(divisors_desc)),
        t.h_plus,
        tuple(QuadForm(*t.reps[g]) for g in reversed(gens)),
    )
    _narrow_cache[d] = out
    return out


def wide_class_group(d: int, bound: int | None = None) -> AbelianGroupStructure:
    """Structure of the wide class group Cl(Q(sqrt(d)))."""
    if abs(d) > max_disc_bound(bound):
        raise BoundExceeded(f"|{d}| exceeds the configured discriminant bound")
    got = _wide_cache.get(d)
    if got is not None:
        return got
    if d < 0:
        out = narrow_class_group(d, bound)
    else:
        t = _table(d, bound)
        if t.neg_principal == t.principal:
            out = narrow_class_group(d, bound)
        else:
            npi = t.neg_principal

            def canon(i: int) -> int:
                return min(i, t.mul(i, npi))

            elements = sorted({canon(i) for i in range(t.h_plus)})

            def mul(i: int, j: int) -> int:
                return canon(t.mul(i, j))

            def powf(i: int, n: int) -> int:
                return canon(t.pow(i, n))

            def inv(i: int) -> int:
                return canon(t.inv(i))

            identity = canon(t.principal)
            divisors_desc, gens = _structure(elements, mul, powf, inv, identity)
            out = AbelianGroupStructure(
                tuple(reversed(divisors_desc)),
                t.h_wide,
                tuple(QuadForm(*t.reps[g]) for g in reversed(gens)),
            )
    _wide_cache[d] = out
    return out


def class_number_wide(d: int, bound: int | None = None) -> int:
    return _table(d, bound).h_wide


def class_number_narrow(d: int, bound: int | None = None) -> int:
    return _table(d, bound).h_plus


def negative_pell_solvable(d: int) -> bool:
    """Whether x^2 - d y^2 = -4 has an integer solution (d > 0 fundamental).

    Detected on the principal reduction cycle: solvable exactly when the
    cycle contains a form with leading coefficient -1.
    """
    if d <= 0:
        raise ValueError("negative Pell detection needs d > 0")
    _check_disc(d, abs(d))
    f = _reduce_indef(*principal_form(d), d)
    return any(g[0] == -1 for g in _cycle(f, d))


def prime_form(d: int, p: int) -> QuadForm:
    """A form (p, b, c) of discriminant d for a prime p split or ramified in Q(sqrt(d))."""
    if kronecker(d, p) == -1:
        raise NoSquareRoot(f"{p} is inert in discriminant {d}")
    if p == 2:
        for b in (0, 1, 2):
            if (b * b - d) % 8 == 0:
                return QuadForm(2, b, (b * b - d) // 8)
        raise NoSquareRoot(f"no form of norm 2 for discriminant {d}")
    if d % p == 0:
        for cand in (0, p, 2 * p):
            if (cand * cand - d) % (4 * p) == 0:
                return QuadForm(p, cand, (cand * cand - d) // (4 * p))
        raise NoSquareRoot(f"no ramified form above {p} for discriminant {d}")
    if d % 2:
        r = sqrt_mod_prime(d % p, p)
        b = r if r % 2 == 1 else p - r
    else:
        r = sqrt_mod_prime((d // 4) % p, p)
        b = 2 * r
    b %= 2 * p
    assert (b * b - d) % (4 * p) == 0
    return QuadForm(p, b, (b * b - d) // (4 * p))


@dataclass(frozen=True)
class PrimeClassInfo:
    """Splitting of a rational prime and the 2-part of its ideal-class order."""

    split_type: str  # "split" | "inert" | "ramified"
    order_2part: int


def prime_class_info(
    d: int, p: int, wide: bool = True, bound: int | None = None
) -> PrimeClassInfo:
    """Decomposition data for p in Q(sqrt(d)).

    order_2part is the largest power of 2 dividing the order of the
    class of a prime above p, in the wide group by default (the narrow
    variant is experimental).  Inert primes are principal, so 1.
    """
    sym = kronecker(d, p)
    if sym == -1:
        return PrimeClassInfo("inert", 1)
    t = _table(d, bound)
    idx = t.class_index(prime_form(d, p))
    part = t.order_2part_mod(idx, wide)
    return PrimeClassInfo("split" if sym == 1 else "ramified", part)
