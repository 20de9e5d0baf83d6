import os
import random

import pytest

from twotower.arith import (
    QuadFieldSpec,
    is_fundamental,
    kronecker,
    prime_disc_factorization,
    primes_up_to,
)
from twotower.quadforms import narrow_class_group, wide_class_group
from twotower.redei import (
    catalog_cases,
    catalog_text,
    classify_open_case,
    f2_rank,
    four_rank_narrow,
    redei_matrix,
    two_ranks,
)

FULL = os.environ.get("TWOTOWER_FULL_SWEEPS") == "1"


def spec_of(*values):
    return QuadFieldSpec.from_disc_values(values)


def random_spec(rng):
    """Random valid spec with t <= 6."""
    odd = [p for p in primes_up_to(300) if p % 2 == 1]
    while True:
        t = rng.randint(1, 6)
        picks = rng.sample(odd, t)
        values = [p if p % 4 == 1 else -p for p in picks]
        if rng.random() < 0.4:
            values[0] = rng.choice([-4, 8, -8])
        return QuadFieldSpec.from_disc_values(values)


def test_redei_matrix_examples():
    assert redei_matrix(spec_of(-7, -19, -3)).entries == ((0, 1, 1), (0, 1, 1), (0, 0, 0))
    assert redei_matrix(spec_of(-4)).entries == ((0,),)
    assert redei_matrix(spec_of(5, 29)).entries == ((0, 0), (0, 0))


def test_f2_rank_examples():
    assert f2_rank(redei_matrix(spec_of(-7, -19, -3))) == 1
    assert f2_rank(redei_matrix(spec_of(5, 29))) == 0
    m = redei_matrix(spec_of(5, 29, 109, 661))
    # independent elimination over F2 on column vectors
    cols = [[m.entries[i][j] for i in range(m.t)] for j in range(m.t)]
    basis = []
    for v in cols:
        v = list(v)
        for b in basis:
            lead = next(i for i, x in enumerate(b) if x)
            if v[lead]:
                v = [x ^ y for x, y in zip(v, b)]
        if any(v):
            basis.append(v)
    assert f2_rank(m) == len(basis)


def test_four_rank_examples():
    assert four_rank_narrow(spec_of(-7, -19, -3)) == 1
    assert four_rank_narrow(spec_of(5, 29)) == 1
    assert four_rank_narrow(spec_of(-4)) == 0


def test_two_ranks_examples():
    assert two_ranks(spec_of(-4, 5, 37, -3, -7)) == (4, 4)
    assert two_ranks(spec_of(8, -3)) == (1, 1)
    assert two_ranks(spec_of(5, 29)) == (1, 1)
    assert two_ranks(spec_of(8, -3, -7)) == (2, 1)


def test_column_sums_always_zero_rows_where_expected():
    rng = random.Random(99)
    for _ in range(500):
        spec = random_spec(rng)
        m = redei_matrix(spec)
        for j in range(m.t):
            assert sum(m.entries[i][j] for i in range(m.t)) % 2 == 0, spec
        # row sums vanish too for imaginary fields avoiding -4
        if spec.discriminant < 0 and -4 not in spec.values():
            for row in m.entries:
                assert sum(row) % 2 == 0, spec


def test_diagonal_is_cofactor_symbol():
    rng = random.Random(5)
    for _ in range(200):
        spec = random_spec(rng)
        m = redei_matrix(spec)
        delta = spec.discriminant
        for i, d in enumerate(spec.discs):
            want = 0 if kronecker(delta // d.value, d.prime) == 1 else 1
            assert m.entries[i][i] == want


def test_redei_reichardt_oracle_small():
    for d in list(range(-6000, 0)) + list(range(2, 6001)):
        if not is_fundamental(d):
            continue
        spec = prime_disc_factorization(d)
        assert four_rank_narrow(spec) == narrow_class_group(d).four_rank, d


def test_two_ranks_match_groups_small():
    for d in list(range(-4000, 0)) + list(range(2, 4001)):
        if not is_fundamental(d):
            continue
        spec = prime_disc_factorization(d)
        narrow, wide = two_ranks(spec)
        assert narrow_class_group(d).two_rank == narrow, d
        assert wide_class_group(d).two_rank == wide, d


def test_classify_examples():
    assert classify_open_case(spec_of(-3, -8, -23, -7, -19)).tag == "B"
    assert classify_open_case(spec_of(-7, -3, -8, 29, 5)).tag == "M49"
    assert classify_open_case(spec_of(-3, -11, -107, -7, -31)).tag == "B"
    # d4 >= 3 means Redei rank <= 1: settled territory, never in the catalog
    high = spec_of(-7, 17, 41, 97, 8)
    assert four_rank_narrow(high) == 3
    got = classify_open_case(high)
    assert got.tag == "NotOpen" and "4-rank" in got.reason


def test_classify_permutation_invariance():
    rng = random.Random(13)
    fields = [spec_of(-3, -8, -23, -7, -19), spec_of(-7, -3, -8, 29, 5)]
    tags = [classify_open_case(f).tag for f in fields]
    for _ in range(200):
        perm = list(range(5))
        rng.shuffle(perm)
        for field, tag in zip(fields, tags):
            assert classify_open_case(field.reordered(perm)).tag == tag


def test_classify_matched_permutation_is_faithful():
    spec = spec_of(-8, 29, -7, 5, -3)  # shuffled Example-3.6 field
    case = classify_open_case(spec)
    assert case.tag == "M49"
    rearranged = spec.reordered(case.permutation)
    cat = next(c for c in catalog_cases() if c.tag == "M49")
    m = redei_matrix(rearranged)
    for i in range(5):
        for j in range(5):
            if cat.fixed[i][j] is not None:
                assert m.entries[i][j] == cat.fixed[i][j]


def test_classify_rejects_bad_input():
    with pytest.raises(ValueError):
        classify_open_case(spec_of(-3, -7))
    with pytest.raises(ValueError):
        classify_open_case(spec_of(5, 29, 109, 661, 13))


def test_catalog_text_round_trip():
    text = catalog_text()
    assert "case M49" in text and "case FamD2d" in text
    cases = catalog_cases()
    tags = [c.tag for c in cases]
    assert len(tags) == len(set(tags))
    open_tags = {c.tag for c in cases if c.status == "open"}
    assert open_tags == {
        "A", "B", "C", "D1", "D2",
        "FamD2a", "FamD2b", "FamD2c", "FamD2d",
        "M16", "M28", "M30", "M32", "M34a", "M34b", "M49",
    }
    for c in cases:
        assert len(c.signs) == 5 and len(c.fixed) == 5
        for i, row in enumerate(c.fixed):
            assert len(row) == 5
            assert row[i] is None  # diagonals never pinned
