import itertools

import pytest

from twotower.arith import is_fundamental, prime_disc_factorization
from twotower.errors import Exhausted, TemplateMismatch
from twotower.quadforms import wide_class_group
from twotower.redei import classify_open_case, f2_rank, redei_matrix
from twotower.search import (
    _TEMPLATES,
    _template_ok,
    complete_tuple,
    dmw_family,
    find_base_fields,
    lopez_family,
)


def test_complete_case_b_gives_107_first():
    specs = complete_tuple("B", [-3, -11, None, -7, -31], 200, count=3)
    assert specs[0].values() == (-3, -11, -107, -7, -31)


def test_complete_case_b_progression():
    # 107's whole residue class mod 3*11*7*31*4 stays admissible: its next
    # prime member 107 + 28644 comes through the sieve and re-classifies.
    specs = complete_tuple("B", [-3, -11, None, -7, -31], 30000, count=500)
    qs = {-s.values()[2] for s in specs}
    assert 107 in qs and 107 + 28644 in qs
    mod = 3 * 11 * 7 * 31 * 4
    for spec in specs:
        q = -spec.values()[2]
        assert q % 4 == 3
        assert classify_open_case(spec).tag == "B"
    assert min(qs) == 107


def test_complete_reclassifies_to_case():
    for tag, partial in [
        ("A", [None, None, -7, -19, -3]),
        ("FamD2d", [-4, None, None, 5, 37]),
    ]:
        specs = complete_tuple(tag, partial, 400, count=2)
        assert specs
        for spec in specs:
            assert classify_open_case(spec).tag == tag


def test_complete_template_mismatch():
    from twotower.errors import NotFundamental

    with pytest.raises(NotFundamental):
        complete_tuple("B", [3, -11, None, -7, -31], 200)  # +3 is not a disc
    with pytest.raises(TemplateMismatch):
        complete_tuple("B", [5, -11, None, -7, -31], 200)  # positive in '-' slot
    with pytest.raises(TemplateMismatch):
        complete_tuple("NotOpen", [None] * 5, 100)
    with pytest.raises(TemplateMismatch):
        complete_tuple("B", [-3, -11, -7, -31], 200)  # four slots


def test_complete_exhausted():
    with pytest.raises(Exhausted):
        complete_tuple("B", [-3, -11, None, -7, -31], 100)  # 107 > 100


def test_find_base_fields_named_sets():
    r1 = find_base_fields("imaginary-3-neg", 16, 1, 1100)
    assert {-399, -1023} <= {s.discriminant for s in r1}
    r2 = find_base_fields("imaginary-with-minus4", 16, 1, 2300)
    assert {-740, -2211} <= {s.discriminant for s in r2}
    r3 = find_base_fields("real-pos-pair", 8, 0, 3000)
    assert {904, 2605} <= {s.discriminant for s in r3}
    # ascending |D|
    for r in (r1, r2, r3):
        absd = [abs(s.discriminant) for s in r]
        assert absd == sorted(absd)


def test_find_base_fields_brute_force_oracle():
    # independent dumb filter over every fundamental discriminant
    for template, min_cl2, rank_max, sign in [
        ("imaginary-3-neg", 16, 1, -1),
        ("real-pos-pair", 8, 0, 1),
    ]:
        got = {s.discriminant for s in find_base_fields(template, min_cl2, rank_max, 5000)}
        want = set()
        for absd in range(3, 5001):
            d = sign * absd
            if not is_fundamental(d):
                continue
            spec = prime_disc_factorization(d)
            if spec.t != _TEMPLATES[template]["t"]:
                continue
            if not _template_ok(template, spec):
                continue
            if f2_rank(redei_matrix(spec)) > rank_max:
                continue
            if wide_class_group(d).two_part_order < min_cl2:
                continue
            want.add(d)
        assert got == want, template


def test_unknown_template():
    with pytest.raises(TemplateMismatch):
        find_base_fields("nope", 4, 1, 100)


def test_dmw_family_verified():
    fields = list(itertools.islice(dmw_family(2, 5), 3))
    assert fields
    for spec in fields:
        q3, q5 = -spec.values()[0], spec.values()[1]
        assert q3 % 8 == 3 and q5 % 8 == 5
        group = wide_class_group(spec.discriminant)
        assert [d & -d for d in group.elementary_divisors if d % 2 == 0] == [4]


def test_lopez_family_verified():
    fields = list(itertools.islice(lopez_family(2, 3), 2))
    assert fields
    for spec in fields:
        assert spec.values()[0] == -4
        group = wide_class_group(spec.discriminant)
        assert sorted(d & -d for d in group.elementary_divisors if d % 2 == 0) == [2, 4]


CASE_SEEDS = {
    "A": ([None, None, -7, -19, -3], 500),
    "B": ([-3, -11, None, -7, -31], 200),
    "C": ([-4, None, -67, -3, -11], 200),
    "D1": ([-4, None, -67, -7, None], 200),
    "D2": ([-4, None, None, None, None], 60),
    "FamD2a": ([-4, None, None, 5, 29], 200),
    "FamD2b": ([-4, None, None, 5, 29], 200),
    "FamD2c": ([-4, None, None, 5, 37], 200),
    "FamD2d": ([-4, None, None, 5, 37], 200),
    "M16": ([-43, None, -3, None, 13], 200),
    "M28": ([None, None, -3, 13, None], 100),
    "M30": ([None, None, None, 5, 37], 80),
    "M32": ([None, None, -3, None, 1021], 400),
    "M34a": ([None, None, None, 5, 29], 80),
    "M34b": ([None, None, None, 5, 37], 80),
    "M49": ([None, None, None, 29, 5], 80),
}


def test_every_open_case_is_constructible():
    from twotower.redei import four_rank_narrow

    for tag, (partial, bound) in CASE_SEEDS.items():
        spec = complete_tuple(tag, partial, bound, count=1)[0]
        assert classify_open_case(spec).tag == tag
        # the family cases carry 4-rank 2, all other open matrices rank 4
        want_d4 = 2 if tag.startswith("FamD2") else 0
        assert four_rank_narrow(spec) == want_d4, (tag, spec)
