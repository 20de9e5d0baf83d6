"""Empirical verification of the principal-genus splitting theorems.

Two families of proved statements are swept over primes up to a bound (a
violation would mean a defect in the class-group kernel, so the reports
must come back clean), and one open-ended experiment tabulates how the
2-part of prime ideal class orders depends on the Kronecker symbol
vector at the base field's prime discriminants.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .arith import QuadFieldSpec, is_prime, kronecker, primes_up_to
from .errors import PreconditionUnmet
from .quadforms import narrow_class_group, prime_class_info, wide_class_group
from .redei import redei_matrix
from .tower import splitting_count


@dataclass(frozen=True)
class ExperimentRow:
    """One prime's decomposition data over the base field."""

    p: int
    symbols: tuple[int, ...]
    split_type: str
    order_2part: int
    count_in_l: int

    def symbol_key(self) -> str:
        return ",".join(f"{s:+d}" for s in self.symbols)

    def tsv(self) -> str:
        return (
            f"{self.p}\t{self.symbol_key()}\t{self.split_type}"
            f"\t{self.order_2part}\t{self.count_in_l}"
        )


@dataclass(frozen=True)
class SplittingExperiment:
    """All primes up to the bound, coprime to the base discriminant."""

    base_field: QuadFieldSpec
    prime_bound: int
    group: str  # "wide" | "narrow"
    rows: tuple[ExperimentRow, ...]

    def summary(self) -> dict[str, list[int]]:
        acc: dict[str, set[int]] = {}
        for row in self.rows:
            acc.setdefault(row.symbol_key(), set()).add(row.order_2part)
        return {key: sorted(parts) for key, parts in sorted(acc.items())}


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of sweeping a proved splitting statement."""

    base_field: QuadFieldSpec
    prime_bound: int
    group: str
    checked: int
    violations: tuple[tuple[int, str], ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def describe(self) -> str:
        word = "violation" if len(self.violations) == 1 else "violations"
        return f"checked {self.checked} primes, {len(self.violations)} {word}"


def iter_rows(
    f: QuadFieldSpec, bound: int, wide: bool = True
) -> Iterator[ExperimentRow]:
    """Stream one row per prime <= bound coprime to the discriminant."""
    d = f.discriminant
    values = f.values()
    for p in primes_up_to(bound):
        if d % p == 0:
            continue
        info = prime_class_info(d, p, wide=wide)
        yield ExperimentRow(
            p,
            tuple(kronecker(v, p) for v in values),
            info.split_type,
            info.order_2part,
            splitting_count(f, p, wide=wide),
        )


def explore_symbol_dependence(
    f: QuadFieldSpec, bound: int, wide: bool = True
) -> SplittingExperiment:
    """Tabulate order 2-parts by Kronecker symbol vector; pure data, no claim."""
    rows = tuple(iter_rows(f, bound, wide))
    return SplittingExperiment(f, bound, "wide" if wide else "narrow", rows)


def verify_real_pair(
    l1: int, l2: int, bound: int, wide: bool = True
) -> VerifyReport:
    """Check that doubly-inert primes meet exactly 2 primes in the 2-class field.

    For F on two positive prime discriminants l1, l2 (both 1 mod 4) and
    any prime p with (l1/p) = (l2/p) = -1, the prime p splits into
    exactly two primes of F and both stay inert all the way up.
    """
    if l1 == l2 or l1 % 4 != 1 or l2 % 4 != 1 or not (is_prime(l1) and is_prime(l2)):
        raise PreconditionUnmet("need distinct primes l1, l2, both 1 mod 4")
    f = QuadFieldSpec.from_disc_values([l1, l2])
    checked = 0
    violations = []
    for p in primes_up_to(bound):
        if kronecker(l1, p) != -1 or kronecker(l2, p) != -1:
            continue
        checked += 1
        count = splitting_count(f, p, wide=wide)
        if count != 2:
            violations.append((p, f"expected 2 primes in L, found {count}"))
    return VerifyReport(f, bound, "wide" if wide else "narrow", checked, tuple(violations))


_TRIPLE_SHAPE = ((0, 1, 1), (0, 1, 1), (0, 0, 0))


def verify_imag_triple(
    l1: int, l2: int, l3: int, bound: int, wide: bool = True
) -> VerifyReport:
    """Check the two-primes-in-L criterion for an imaginary three-disc field.

    Requires Cl_2(F) of type C2 x C2^n with n >= 2 and, after reordering
    the three negative prime discriminants, the Redei matrix
    [[0,1,1],[0,1,1],[0,0,0]].  Under that ordering a prime of F above
    p splits into exactly 2 primes of the 2-class field iff the symbol
    vector at p is (+1,-1,-1) or (-1,+1,-1).
    """
    primes = (l1, l2, l3)
    if len(set(primes)) != 3 or any(q % 4 != 3 or not is_prime(q) for q in primes):
        raise PreconditionUnmet("need three distinct primes, all 3 mod 4")
    base = QuadFieldSpec.from_disc_values([-q for q in primes])
    ordered = None
    for perm in itertools.permutations(range(3)):
        candidate = base.reordered(perm)
        if redei_matrix(candidate).entries == _TRIPLE_SHAPE:
            ordered = candidate
            break
    if ordered is None:
        raise PreconditionUnmet("no ordering gives the required Redei matrix shape")
    d = ordered.discriminant
    group = wide_class_group(d) if wide else narrow_class_group(d)
    c = group.two_part_order
    if group.two_rank != 2 or group.four_rank != 1 or c < 8:
        raise PreconditionUnmet(f"Cl_2 is {group.describe()}, not C2 x C2^n with n >= 2")
    max_cyclic = group.max_cyclic_2power
    values = ordered.values()
    good = {(1, -1, -1), (-1, 1, -1)}
    checked = 0
    violations = []
    for p in primes_up_to(bound):
        if d % p == 0:
            continue
        checked += 1
        info = prime_class_info(d, p, wide=wide)
        two_primes_in_l = info.split_type == "split" and info.order_2part == max_cyclic
        predicted = tuple(kronecker(v, p) for v in values) in good
        if two_primes_in_l != predicted:
            violations.append(
                (p, f"splits-into-2 = {two_primes_in_l} but symbols predict {predicted}")
            )
    return VerifyReport(ordered, bound, "wide" if wide else "narrow", checked, tuple(violations))
