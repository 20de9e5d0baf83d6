"""Exact integer arithmetic: Kronecker symbols, factoring, prime discriminants.

Everything here is pure and deterministic; all arithmetic is arbitrary
precision.  Primality is never probabilistic in the colloquial sense: a
fixed Miller-Rabin base set proven complete below 3.3e24 is used first,
with a Baillie-PSW check (strong base-2 plus strong Lucas) for anything
larger.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from math import gcd, isqrt

from .errors import FactorizationFailed, NoSolution, NoSquareRoot, NotFundamental

# Trial division handles everything below this squared; Brent rho takes over.
_TRIAL_BOUND = 10**6
# Iterations of Brent rho per polynomial before switching constants.
_RHO_ROUNDS = 32
_RHO_ITERS = 1 << 20

# Deterministic for n < 3_317_044_064_679_887_385_961_981 (Sorenson-Webster).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, u, v) with g = gcd(a, b) >= 0 and u*a + v*b = g."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        return -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def kronecker(a: int, n: int) -> int:
    """Full Kronecker symbol (a/n), defined for all integers."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    k = 1
    if n < 0:
        n = -n
        if a < 0:
            k = -k
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        while n % 2 == 0:
            n //= 2
            if a % 8 in (3, 5):
                k = -k
    # Jacobi symbol on odd positive n.
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                k = -k
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a %= n
    return k if n == 1 else 0


def _mr_witness(n: int, a: int, d: int, s: int) -> bool:
    """True if a witnesses the compositeness of n (n odd, n-1 = d*2^s)."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def _strong_lucas_prp(n: int) -> bool:
    """Strong Lucas probable-prime test with Selfridge parameters."""
    # Find D = 5, -7, 9, ... with (D/n) = -1.
    d = 5
    while True:
        s = kronecker(d, n)
        if s == -1:
            break
        if s == 0 and abs(d) != n:
            return False
        d = -(d + 2) if d > 0 else -(d - 2)
    p, q = 1, (1 - d) // 4
    # n + 1 = k * 2^r with k odd
    k = n + 1
    r = 0
    while k % 2 == 0:
        k //= 2
        r += 1
    # Lucas sequence by binary ladder on index k.
    u, v, qk = 0, 2, 1
    for bit in bin(k)[2:]:
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (p * u + v) * ((n + 1) // 2) % n, (d * u + p * v) * ((n + 1) // 2) % n
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(r - 1):
        v = (v * v - 2 * qk) % n
        if v == 0:
            return True
        qk = qk * qk % n
    return False


def is_prime(n: int) -> bool:
    """Deterministic primality for 64-bit-ish inputs, BPSW beyond."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _MR_LIMIT:
        return not any(_mr_witness(n, a, d, s) for a in _MR_BASES)
    if _mr_witness(n, 2, d, s):
        return False
    if isqrt(n) ** 2 == n:
        return False
    return _strong_lucas_prp(n)


def _brent_rho(n: int) -> int:
    """Return a nontrivial factor of odd composite n, or raise."""
    for c in range(1, _RHO_ROUNDS + 1):
        y, m = 2, 128
        g = r = q = 1
        x = ys = y
        count = 0
        while g == 1 and count < _RHO_ITERS:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
            count += r
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    raise FactorizationFailed(f"no factor of {n} within effort bound")


def factor(n: int) -> list[int]:
    """Prime factorization of n >= 1 as a sorted list with multiplicity."""
    if n < 1:
        raise ValueError("factor() needs n >= 1")
    out: list[int] = []
    for p in (2, 3, 5):
        while n % p == 0:
            out.append(p)
            n //= p
    d = 7
    wheel = itertools.cycle((4, 2, 4, 2, 4, 6, 2, 6))
    while d * d <= n and d <= _TRIAL_BOUND:
        while n % d == 0:
            out.append(d)
            n //= d
        d += next(wheel)
    if n == 1:
        return sorted(out)
    stack = [n]
    while stack:
        m = stack.pop()
        if is_prime(m):
            out.append(m)
            continue
        g = _brent_rho(m)
        stack.append(g)
        stack.append(m // g)
    return sorted(out)


def factorization(n: int) -> dict[int, int]:
    """Prime factorization as an exponent map."""
    fac: dict[int, int] = {}
    for p in factor(n):
        fac[p] = fac.get(p, 0) + 1
    return fac


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorization(n).values())


def is_fundamental(d: int) -> bool:
    """True if d is the discriminant of a quadratic field."""
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return is_squarefree(abs(d))
    if d % 4 == 0:
        q = d // 4
        return q % 4 in (2, 3) and is_squarefree(abs(q))
    return False


@dataclass(frozen=True)
class PrimeDiscriminant:
    """One coprime factor of a fundamental discriminant: -4, +-8, or (-1)^((p-1)/2) p."""

    value: int
    prime: int

    @classmethod
    def from_value(cls, v: int) -> "PrimeDiscriminant":
        if v in (-4, 8, -8):
            return cls(v, 2)
        p = abs(v)
        if v % 4 == 1 and p % 2 == 1 and is_prime(p):
            return cls(v, p)
        raise NotFundamental(f"{v} is not a prime discriminant")

    @property
    def sign(self) -> int:
        return 1 if self.value > 0 else -1

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value:+d}"


@dataclass(frozen=True)
class QuadFieldSpec:
    """Quadratic field given by an ordered tuple of pairwise coprime prime discriminants."""

    discs: tuple[PrimeDiscriminant, ...]

    def __post_init__(self) -> None:
        if not self.discs:
            raise NotFundamental("at least one prime discriminant required")
        primes = [d.prime for d in self.discs]
        if len(set(primes)) != len(primes):
            raise NotFundamental("underlying primes must be pairwise distinct")

    @classmethod
    def from_disc_values(cls, values) -> "QuadFieldSpec":
        return cls(tuple(PrimeDiscriminant.from_value(v) for v in values))

    @classmethod
    def from_discriminant(cls, d: int) -> "QuadFieldSpec":
        return prime_disc_factorization(d)

    @property
    def discriminant(self) -> int:
        return reduce(lambda x, y: x * y, (d.value for d in self.discs), 1)

    @property
    def t(self) -> int:
        return len(self.discs)

    @property
    def is_imaginary(self) -> bool:
        return self.discriminant < 0

    def values(self) -> tuple[int, ...]:
        return tuple(d.value for d in self.discs)

    def reordered(self, perm) -> "QuadFieldSpec":
        return QuadFieldSpec(tuple(self.discs[i] for i in perm))

    def __repr__(self) -> str:
        inner = ", ".join(f"{d.value:+d}" for d in self.discs)
        return f"QuadFieldSpec({inner})"


def prime_disc_factorization(d: int) -> QuadFieldSpec:
    """Split a fundamental discriminant into prime discriminants, ascending by prime."""
    if not is_fundamental(d):
        raise NotFundamental(f"{d} is not a fundamental discriminant")
    odd = [p for p in factor(abs(d)) if p != 2]
    parts = [PrimeDiscriminant(p if p % 4 == 1 else -p, p) for p in sorted(set(odd))]
    rest = d
    for part in parts:
        rest //= part.value
    if rest != 1:
        if rest not in (-4, 8, -8):
            raise NotFundamental(f"{d} has invalid 2-part {rest}")
        parts.insert(0, PrimeDiscriminant(rest, 2))
    spec = QuadFieldSpec(tuple(parts))
    assert spec.discriminant == d
    return spec


def primes_up_to(n: int) -> list[int]:
    """Ascending primes <= n by sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i in range(2, n + 1) if sieve[i]]


def crt_prime_search(conditions, range_bound: int) -> list[int]:
    """All primes <= range_bound meeting every (modulus, allowed residues) condition.

    Raises NoSolution when the residue system is inconsistent (an empty
    residue set, or two conditions that cannot agree modulo the gcd of
    their moduli).
    """
    conds = [(int(m), frozenset(r % int(m) for r in rs)) for m, rs in conditions]
    for m, rs in conds:
        if m < 1:
            raise ValueError("moduli must be positive")
        if not rs:
            raise NoSolution(f"empty residue set modulo {m}")
    for (m1, r1), (m2, r2) in itertools.combinations(conds, 2):
        g = gcd(m1, m2)
        if g > 1 and not ({r % g for r in r1} & {r % g for r in r2}):
            raise NoSolution(f"conditions mod {m1} and mod {m2} are incompatible")
    hits = []
    for p in primes_up_to(range_bound):
        if all(p % m in rs for m, rs in conds):
            hits.append(p)
    return hits


def sqrt_mod_prime(a: int, p: int) -> int:
    """Least square root of a modulo prime p; raises NoSquareRoot if none."""
    a %= p
    if p == 2 or a == 0:
        return a % p
    if kronecker(a, p) != 1:
        raise NoSquareRoot(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        x = pow(a, (p + 1) // 4, p)
        return min(x, p - x)
    # Tonelli-Shanks: p - 1 = s * 2^e with s odd.
    s, e = p - 1, 0
    while s % 2 == 0:
        s //= 2
        e += 1
    n = 2
    while kronecker(n, p) != -1:
        n += 1
    x = pow(a, (s + 1) // 2, p)
    b = pow(a, s, p)
    g = pow(n, s, p)
    r = e
    while True:
        t, m = b, 0
        while t != 1:
            t = t * t % p
            m += 1
        if m == 0:
            return min(x, p - x)
        gs = pow(g, 1 << (r - m - 1), p)
        g = gs * gs % p
        x = x * gs % p
        b = b * g % p
        r = m
