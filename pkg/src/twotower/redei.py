"""Redei matrices over F2, 2- and 4-rank formulas, and open-case classification.

The classification catalog (catalog.txt) lists the open 5x5 matrix cases
for imaginary quadratic fields with five ramified primes, in the
numbering of Sueyoshi's and Benjamin's casework; a field is classified by
searching sign-respecting permutations of its prime discriminants for an
exact match of the fixed entries.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from importlib import resources

from .arith import PrimeDiscriminant, QuadFieldSpec, kronecker


@dataclass(frozen=True)
class RedeiMatrix:
    """Additive Redei matrix: (-1)^a_ij = (p_i*/p_j), diagonal fixed by zero row sums."""

    entries: tuple[tuple[int, ...], ...]
    labels: tuple[PrimeDiscriminant, ...]

    @property
    def t(self) -> int:
        return len(self.labels)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(e) for e in row) for row in self.entries)


def redei_matrix(spec: QuadFieldSpec) -> RedeiMatrix:
    """Redei matrix of the field, rows/columns in the spec's disc order.

    Off-diagonal a_ij encodes (p_i*/p_j); the diagonal encodes the
    cofactor symbol ((Delta/p_i*)/p_i), which by multiplicativity equals
    the column sum of the off-diagonal entries, so column sums vanish.
    """
    t = spec.t
    discs = spec.discs
    delta = spec.discriminant
    rows = []
    for i in range(t):
        row = []
        for j in range(t):
            if i == j:
                top = delta // discs[i].value
                row.append(0 if kronecker(top, discs[i].prime) == 1 else 1)
            else:
                row.append(0 if kronecker(discs[i].value, discs[j].prime) == 1 else 1)
        rows.append(tuple(row))
    return RedeiMatrix(tuple(rows), discs)


def f2_rank(m: RedeiMatrix) -> int:
    """Rank over F2 by Gaussian elimination on row bitmasks."""
    rows = [sum(bit << k for k, bit in enumerate(row)) for row in m.entries]
    rank = 0
    for k in range(m.t):
        pivot = next((r for r in rows if r >> k & 1), None)
        if pivot is None:
            continue
        rank += 1
        rows = [r ^ pivot if r >> k & 1 else r for r in rows if r != pivot]
    return rank


def four_rank_narrow(spec: QuadFieldSpec) -> int:
    """d4 of the narrow class group, via the Redei-Reichardt rank formula."""
    return spec.t - 1 - f2_rank(redei_matrix(spec))


def two_ranks(spec: QuadFieldSpec) -> tuple[int, int]:
    """(narrow, wide) 2-ranks from genus theory."""
    narrow = spec.t - 1
    drop = 1 if spec.discriminant > 0 and any(d.value < 0 for d in spec.discs) else 0
    return narrow, narrow - drop


@dataclass(frozen=True)
class CaseId:
    """Catalog verdict: matched tag plus the disc permutation that matched."""

    tag: str
    permutation: tuple[int, ...] = ()
    reason: str = ""

    @property
    def is_open(self) -> bool:
        return self.tag != "NotOpen"

    def to_json_dict(self) -> dict:
        out = {"tag": self.tag, "permutation": list(self.permutation)}
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass(frozen=True)
class CatalogCase:
    tag: str
    status: str
    signs: tuple[str, ...]
    fixed: tuple[tuple[int | None, ...], ...]  # None on diagonal and wildcards
    note: str = ""


def _parse_catalog(text: str) -> tuple[CatalogCase, ...]:
    cases = []
    block: dict = {}

    def flush():
        if not block:
            return
        cases.append(
            CatalogCase(
                tag=block["case"],
                status=block.get("status", "open"),
                signs=tuple(block["signs"]),
                fixed=tuple(tuple(block["rows"][i]) for i in range(len(block["rows"]))),
                note=block.get("note", ""),
            )
        )
        block.clear()

    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "case":
            flush()
            block["case"] = rest
            block["rows"] = []
        elif key in ("status", "note"):
            block[key] = rest
        elif key == "signs":
            block["signs"] = rest.split()
        elif key == "row":
            row = [None if tok in ("-", "*") else int(tok) for tok in rest.split()]
            block["rows"].append(row)
        else:
            raise ValueError(f"unknown catalog line: {raw!r}")
    flush()
    return tuple(cases)


def catalog_text() -> str:
    return resources.files(__package__).joinpath("catalog.txt").read_text()


_CATALOG: tuple[CatalogCase, ...] | None = None


def catalog_cases() -> tuple[CatalogCase, ...]:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _parse_catalog(catalog_text())
    return _CATALOG


def _slot_ok(code: str, d: PrimeDiscriminant) -> bool:
    if code == "4":
        return d.value == -4
    if code == "-":
        return d.value < 0 and d.value != -4
    if code == "+":
        return d.value > 0
    raise ValueError(f"bad sign code {code}")


def classify_open_case(spec: QuadFieldSpec) -> CaseId:
    """Match a five-disc imaginary field against the open-matrix catalog.

    Searches all sign-admissible permutations of the discs; the matched
    permutation maps catalog slot k to spec disc permutation[k].  Fields
    matching no block (including everything already settled in the
    literature) come back as NotOpen.
    """
    if spec.t != 5 or spec.discriminant > 0:
        raise ValueError("classification is defined for imaginary fields with t = 5")
    discs = spec.discs
    # Pairwise symbol table in spec order; permutations just reindex it.
    a = [[0] * 5 for _ in range(5)]
    for i in range(5):
        for j in range(5):
            if i != j:
                a[i][j] = 0 if kronecker(discs[i].value, discs[j].prime) == 1 else 1
    for case in catalog_cases():
        slots: list[list[int]] = [
            [i for i in range(5) if _slot_ok(code, discs[i])] for code in case.signs
        ]
        for perm in itertools.permutations(range(5)):
            if any(perm[k] not in slots[k] for k in range(5)):
                continue
            ok = True
            for r in range(5):
                for c in range(5):
                    want = case.fixed[r][c]
                    if want is not None and a[perm[r]][perm[c]] != want:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                if case.status == "resolved":
                    return CaseId(
                        "NotOpen", perm, f"resolved elsewhere: {case.tag} ({case.note})"
                    )
                return CaseId(case.tag, perm)
    d4 = four_rank_narrow(spec)
    if d4 >= 3:
        reason = "4-rank >= 3: infinite 2-tower already known (Hajir), not an open case"
    else:
        reason = "no open-case match: settled in the literature or outside the catalog"
    return CaseId("NotOpen", (), reason)
