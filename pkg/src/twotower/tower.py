"""Infinite 2-class field tower criteria for imaginary quadratic fields.

The engine proves infinitude either by Golod-Shafarevich directly on the
2-rank, or by picking a quadratic subfield F of the genus field, passing
to its Hilbert 2-class field L, and counting primes of L over the
ramified primes of K that are unramified in F.  Splitting counts come
from the decomposition law, never from constructing L.  Certificates
carry enough witness data to be replayed from scratch; everything that
fails is recorded as a near-miss diagnostic.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import isqrt

from .arith import QuadFieldSpec
from .errors import DivisibilityViolation, PreconditionUnmet
from .quadforms import narrow_class_group, prime_class_info, wide_class_group
from .redei import CaseId, classify_open_case, four_rank_narrow, two_ranks


def gs_infinite(d2: int, unit_2rank: int) -> bool:
    """Golod-Shafarevich: 2-tower provably infinite once d2 >= 2 + 2*sqrt(1 + unit_2rank).

    Decided in exact integer arithmetic by squaring.
    """
    if d2 < 0 or unit_2rank < 0:
        raise ValueError("ranks are nonnegative")
    return d2 >= 2 and (d2 - 2) ** 2 >= 4 * (1 + unit_2rank)


def gs_required(unit_2rank: int) -> int:
    """Least integer d2 satisfying the Golod-Shafarevich criterion."""
    return 2 + isqrt(4 * (1 + unit_2rank) - 1) + 1


def cl2_order(f: QuadFieldSpec, wide: bool = True) -> int:
    """|Cl_2(F)| (wide by default), the 2-part of the class number."""
    group = (wide_class_group if wide else narrow_class_group)(f.discriminant)
    return group.two_part_order


def splitting_count(f: QuadFieldSpec, p: int, wide: bool = True) -> int:
    """Number of primes of L = F^1_(2) above the rational prime p.

    By the decomposition law each prime of F above p splits into
    |Cl_2(F)| / (2-part of its class order) primes of L; an inert p is
    principal in F and therefore totally split in L/F.
    """
    c = cl2_order(f, wide)
    info = prime_class_info(f.discriminant, p, wide=wide)
    if info.split_type == "inert":
        return c
    if info.split_type == "split":
        return 2 * (c // info.order_2part)
    return c // info.order_2part


@dataclass(frozen=True)
class Witness:
    """Decomposition data for one unramified-in-F prime of K."""

    prime: int
    split_type: str
    order_2part: int
    count_in_l: int

    def to_json_dict(self) -> dict:
        return {
            "prime": self.prime,
            "split_type": self.split_type,
            "order_2part": self.order_2part,
            "count_in_L": self.count_in_l,
        }


@dataclass(frozen=True)
class ThresholdCheck:
    """The exact Golod-Shafarevich instance a certificate rests on."""

    lhs: int
    required: int
    unit_2rank: int
    totally_real: bool

    def holds(self) -> bool:
        return self.lhs >= self.required

    def to_json_dict(self) -> dict:
        return {
            "lhs": self.lhs,
            "required": self.required,
            "unit_2rank": self.unit_2rank,
            "totally_real": self.totally_real,
        }


@dataclass(frozen=True)
class Certificate:
    """Replayable proof that K has an infinite 2-class field tower."""

    criterion: str
    base_field_discs: tuple[int, ...]
    cl2_order: int | None
    witnesses: tuple[Witness, ...]
    threshold_check: ThresholdCheck

    def to_json_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "base_field_discs": list(self.base_field_discs),
            "cl2_order": self.cl2_order,
            "witnesses": [w.to_json_dict() for w in self.witnesses],
            "threshold_check": self.threshold_check.to_json_dict(),
        }


@dataclass(frozen=True)
class Diagnostic:
    """Near-miss record: what a criterion achieved versus what it needed."""

    criterion: str
    achieved: int
    required: int
    detail: str = ""

    def to_json_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "achieved": self.achieved,
            "required": self.required,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class TowerReport:
    """Verdict for one field: proven infinite, or open with diagnostics."""

    spec: QuadFieldSpec
    verdict: str  # "InfiniteProven" | "Open"
    d2: int
    d4: int
    case: CaseId
    certificate: Certificate | None
    diagnostics: tuple[Diagnostic, ...]

    def to_json_dict(self) -> dict:
        return {
            "discriminant": self.spec.discriminant,
            "discs": list(self.spec.values()),
            "d2": self.d2,
            "d4": self.d4,
            "case": self.case.to_json_dict(),
            "verdict": self.verdict,
            "certificate": self.certificate.to_json_dict() if self.certificate else None,
            "diagnostics": [d.to_json_dict() for d in self.diagnostics],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=False)


def _sub_spec(k: QuadFieldSpec, indices) -> QuadFieldSpec:
    return QuadFieldSpec(tuple(k.discs[i] for i in indices))


def _witnesses(f: QuadFieldSpec, primes, wide: bool = True) -> tuple[Witness, ...]:
    out = []
    for p in primes:
        info = prime_class_info(f.discriminant, p, wide=wide)
        out.append(Witness(p, info.split_type, info.order_2part, splitting_count(f, p, wide)))
    return tuple(out)


def _bound_check(f: QuadFieldSpec, c: int, witnesses) -> ThresholdCheck:
    total = sum(w.count_in_l for w in witnesses)
    imaginary = f.discriminant < 0
    lhs = total - 1 - (c if imaginary else 0)
    return ThresholdCheck(lhs, gs_required(2 * c), 2 * c, not imaginary)


def _prop32_diag(name: str, f: QuadFieldSpec, check: ThresholdCheck) -> Diagnostic:
    return Diagnostic(
        "prop32-bound",
        check.lhs,
        check.required,
        f"{name} F={list(f.values())}: d2 Cl(KL) >= {check.lhs} by relative genus "
        f"theory, Golod-Shafarevich at [L:Q]={check.unit_2rank} needs {check.required}; "
        "the full d2 Cl(KL) criterion is not evaluated",
    )


def _attempt_triple(k: QuadFieldSpec, triple) -> tuple[Certificate | None, list[Diagnostic]]:
    f = _sub_spec(k, triple)
    rest = [k.discs[i].prime for i in range(k.t) if i not in triple]
    c = cl2_order(f)
    wit = _witnesses(f, rest)
    n_inert = sum(1 for w in wit if w.split_type == "inert")
    check = _bound_check(f, c, wit)
    diags = []
    name = "triple-16-two-inert"
    if c >= 16 and n_inert >= 2 and check.holds():
        return Certificate(name, f.values(), c, wit, check), diags
    if c < 16:
        diags.append(Diagnostic(f"{name}:cl2", c, 16, f"F={list(f.values())}"))
    if n_inert < 2:
        diags.append(Diagnostic(f"{name}:inert", n_inert, 2, f"F={list(f.values())}"))
    diags.append(_prop32_diag(name, f, check))
    return None, diags


def _attempt_pos_pair(k: QuadFieldSpec, pair) -> tuple[Certificate | None, list[Diagnostic]]:
    f = _sub_spec(k, pair)
    rest = [k.discs[i].prime for i in range(k.t) if i not in pair]
    c = cl2_order(f)  # wide: L = F^1_(2) is unramified at infinity too
    wit = _witnesses(f, rest)
    n_inert = sum(1 for w in wit if w.split_type == "inert")
    check = _bound_check(f, c, wit)
    diags = []
    if c >= 8 and n_inert >= 1 and check.holds():
        return Certificate("pos-pair-8-one-inert", f.values(), c, wit, check), diags
    if c >= 4 and n_inert >= 2 and check.holds():
        return Certificate("pos-pair-4-two-inert", f.values(), c, wit, check), diags
    if c < 8:
        diags.append(Diagnostic("pos-pair-8-one-inert:cl2", c, 8, f"F={list(f.values())}"))
    if n_inert < 1:
        diags.append(Diagnostic("pos-pair-8-one-inert:inert", n_inert, 1, f"F={list(f.values())}"))
    if c < 4:
        diags.append(Diagnostic("pos-pair-4-two-inert:cl2", c, 4, f"F={list(f.values())}"))
    if n_inert < 2:
        diags.append(Diagnostic("pos-pair-4-two-inert:inert", n_inert, 2, f"F={list(f.values())}"))
    diags.append(_prop32_diag("pos-pair", f, check))
    return None, diags


def _attempt_mixed_pair(k: QuadFieldSpec, pair) -> tuple[Certificate | None, list[Diagnostic]]:
    f = _sub_spec(k, pair)
    rest = [k.discs[i].prime for i in range(k.t) if i not in pair]
    c = cl2_order(f)
    wit = _witnesses(f, rest)
    n_inert = sum(1 for w in wit if w.split_type == "inert")
    n_total_split = sum(
        1 for w in wit if w.split_type == "split" and w.order_2part == 1
    )
    check = _bound_check(f, c, wit)
    diags = []
    if c >= 16 and n_inert >= 2 and check.holds():
        return Certificate("mixed-16-two-inert", f.values(), c, wit, check), diags
    if c >= 4 and n_inert >= 1 and n_total_split >= 1 and check.holds():
        return (
            Certificate("mixed-4-one-inert-one-split", f.values(), c, wit, check),
            diags,
        )
    if c < 16:
        diags.append(Diagnostic("mixed-16-two-inert:cl2", c, 16, f"F={list(f.values())}"))
    if n_inert < 2:
        diags.append(Diagnostic("mixed-16-two-inert:inert", n_inert, 2, f"F={list(f.values())}"))
    if c < 4:
        diags.append(Diagnostic("mixed-4-one-inert-one-split:cl2", c, 4, f"F={list(f.values())}"))
    if n_inert < 1:
        diags.append(
            Diagnostic("mixed-4-one-inert-one-split:inert", n_inert, 1, f"F={list(f.values())}")
        )
    if n_total_split < 1:
        diags.append(
            Diagnostic(
                "mixed-4-one-inert-one-split:split-complete",
                n_total_split,
                1,
                f"F={list(f.values())}",
            )
        )
    diags.append(_prop32_diag("mixed-pair", f, check))
    return None, diags


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise PreconditionUnmet(msg)


def lemma_triple(k: QuadFieldSpec, triple) -> Certificate | None:
    """Certificate from an imaginary three-disc base field, if the criteria hold."""
    triple = tuple(sorted(triple))
    _require(k.is_imaginary, "K must be imaginary")
    _require(len(set(triple)) == 3 and all(0 <= i < k.t for i in triple), "bad indices")
    _require(k.t >= 4, "at least one prime of K must stay unramified in F")
    prod = 1
    for i in triple:
        prod *= k.discs[i].value
    _require(prod < 0, "chosen discs must have negative product")
    return _attempt_triple(k, triple)[0]


def lemma_pos_pair(k: QuadFieldSpec, pair) -> Certificate | None:
    """Certificate from a real base field on two positive discs, if the criteria hold."""
    pair = tuple(sorted(pair))
    _require(k.is_imaginary, "K must be imaginary")
    _require(len(set(pair)) == 2 and all(0 <= i < k.t for i in pair), "bad indices")
    _require(k.t >= 3, "at least one prime of K must stay unramified in F")
    _require(all(k.discs[i].value > 0 for i in pair), "chosen discs must be positive")
    return _attempt_pos_pair(k, pair)[0]


def lemma_mixed_pair(k: QuadFieldSpec, pair) -> Certificate | None:
    """Certificate from an imaginary base field on two opposite-sign discs."""
    pair = tuple(sorted(pair))
    _require(k.is_imaginary, "K must be imaginary")
    _require(len(set(pair)) == 2 and all(0 <= i < k.t for i in pair), "bad indices")
    _require(k.t >= 3, "at least one prime of K must stay unramified in F")
    s0 = k.discs[pair[0]].value > 0
    s1 = k.discs[pair[1]].value > 0
    _require(s0 != s1, "chosen discs must have opposite sign")
    return _attempt_mixed_pair(k, pair)[0]


def kl_rank_lower_bound(k: QuadFieldSpec, f: QuadFieldSpec) -> int:
    """Relative-genus-theory lower bound on d2 Cl(KL), L the 2-class field of F."""
    k_values = set(k.values())
    if not set(f.values()) <= k_values:
        raise DivisibilityViolation("F's prime discriminants must divide K's")
    rest = [d.prime for d in k.discs if d.value not in set(f.values())]
    if not rest:
        raise DivisibilityViolation("at least one prime of K must be unramified in F")
    c = cl2_order(f)
    total = sum(splitting_count(f, p) for p in rest)
    return total - 1 - (c if f.discriminant < 0 else 0)


def analyze(k: QuadFieldSpec) -> TowerReport:
    """Full verdict for an imaginary quadratic field.

    Applies Golod-Shafarevich on the 2-rank, then every sign-admissible
    triple and pair through the base-field lemmas in a fixed order; the
    first certificate wins and any further passes are listed in the
    diagnostics.
    """
    _require(k.is_imaginary, "K must be imaginary")
    d2, _ = two_ranks(k)
    d4 = four_rank_narrow(k)
    if k.t == 5:
        case = classify_open_case(k)
    else:
        case = CaseId("NotOpen", (), "open-case catalog covers t = 5 only")
    diagnostics: list[Diagnostic] = []
    certificate: Certificate | None = None
    if gs_infinite(d2, 1):
        certificate = Certificate(
            "gs-two-rank",
            k.values(),
            None,
            (),
            ThresholdCheck(d2, gs_required(1), 1, False),
        )
    else:
        diagnostics.append(
            Diagnostic("gs-two-rank", d2, gs_required(1), "direct Golod-Shafarevich on K")
        )
        attempts = []
        if k.t >= 4:
            for triple in itertools.combinations(range(k.t), 3):
                prod = 1
                for i in triple:
                    prod *= k.discs[i].value
                if prod < 0:
                    attempts.append(("triple", triple))
        if k.t >= 3:
            for pair in itertools.combinations(range(k.t), 2):
                pos = sum(1 for i in pair if k.discs[i].value > 0)
                if pos == 2:
                    attempts.append(("pos-pair", pair))
                elif pos == 1:
                    attempts.append(("mixed-pair", pair))
        for kind, idx in attempts:
            fn = {
                "triple": _attempt_triple,
                "pos-pair": _attempt_pos_pair,
                "mixed-pair": _attempt_mixed_pair,
            }[kind]
            cert, diags = fn(k, idx)
            if cert is not None and certificate is None:
                certificate = cert
            elif cert is not None:
                diagnostics.append(
                    Diagnostic(
                        f"also-passes:{cert.criterion}",
                        cert.threshold_check.lhs,
                        cert.threshold_check.required,
                        f"F={list(cert.base_field_discs)}",
                    )
                )
            diagnostics.extend(diags)
    verdict = "InfiniteProven" if certificate else "Open"
    return TowerReport(k, verdict, d2, d4, case, certificate, tuple(diagnostics))


def replay_certificate(cert: Certificate, k: QuadFieldSpec) -> bool:
    """Recompute every recorded witness from scratch and re-derive the pass."""
    if cert.criterion == "gs-two-rank":
        d2, _ = two_ranks(k)
        return (
            cert.threshold_check.lhs == d2
            and gs_infinite(d2, cert.threshold_check.unit_2rank)
        )
    f = QuadFieldSpec.from_disc_values(cert.base_field_discs)
    if not set(f.values()) <= set(k.values()):
        return False
    c = cl2_order(f)
    if c != cert.cl2_order:
        return False
    rest = [d.prime for d in k.discs if d.value not in set(f.values())]
    if sorted(rest) != sorted(w.prime for w in cert.witnesses):
        return False
    fresh = {w.prime: w for w in _witnesses(f, rest)}
    for w in cert.witnesses:
        if fresh[w.prime] != w:
            return False
    check = _bound_check(f, c, cert.witnesses)
    if check != cert.threshold_check or not check.holds():
        return False
    n_inert = sum(1 for w in cert.witnesses if w.split_type == "inert")
    n_split = sum(
        1 for w in cert.witnesses if w.split_type == "split" and w.order_2part == 1
    )
    needs = {
        "triple-16-two-inert": c >= 16 and n_inert >= 2 and f.discriminant < 0,
        "pos-pair-8-one-inert": c >= 8 and n_inert >= 1 and f.discriminant > 0,
        "pos-pair-4-two-inert": c >= 4 and n_inert >= 2 and f.discriminant > 0,
        "mixed-16-two-inert": c >= 16 and n_inert >= 2 and f.discriminant < 0,
        "mixed-4-one-inert-one-split": c >= 4
        and n_inert >= 1
        and n_split >= 1
        and f.discriminant < 0,
    }
    return needs.get(cert.criterion, False)
