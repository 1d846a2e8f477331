import random
from itertools import permutations

import pytest

from matinv2.errors import CatalogTooLargeError, DimensionMismatchError, ParseError
from matinv2.fields import gf2k, prime_field, rationals
from matinv2.invariants import (
    InvariantDescriptor,
    catalog,
    det,
    eval_invariant,
    fingerprint,
    generating_set,
    oracle_separated,
    pairsum,
    parse_descriptor,
    prop4_check,
    separated_by,
    separating_set,
    tr_word,
    zero_separating_set,
)
from matinv2.matrices import Mat2, MatrixTuple, eval_word

Q = rationals()


def unit(i, j, f=Q):
    return Mat2.unit(f, i, j)


def rtuple(f, d, rng):
    return MatrixTuple(
        [Mat2(f, *(f.random_element(rng) for _ in range(4))) for _ in range(d)]
    )


def test_descriptor_forms():
    for text in ("tr(1)", "det(3)", "tr(1,2,4)", "pairsum(5)"):
        assert str(parse_descriptor(text)) == text
    with pytest.raises(ParseError):
        tr_word(2, 1)
    with pytest.raises(ParseError):
        parse_descriptor("tr[1]")
    assert tr_word(1, 2, 4).degree() == 3
    assert det(2).degree() == 2
    assert tr_word(1, 3).multidegree(3) == (1, 0, 1)
    assert det(2).multidegree(3) == (0, 2, 0)


def test_separating_set_sizes():
    assert len(separating_set(1)) == 2
    assert len(separating_set(3)) == 10
    assert len(separating_set(4)) == 18
    for d in range(1, 8):
        n = len(separating_set(d))
        c2 = d * (d - 1) // 2
        c3 = d * (d - 1) * (d - 2) // 6
        assert n == 2 * d + c2 + c3


def test_catalog_order():
    assert [str(x) for x in separating_set(2)] == [
        "tr(1)", "det(1)", "tr(2)", "det(2)", "tr(1,2)",
    ]
    s3 = [str(x) for x in separating_set(3)]
    assert s3[-4:] == ["tr(1,2)", "tr(1,3)", "tr(2,3)", "tr(1,2,3)"]


def test_generating_set():
    assert generating_set(3, 0) == separating_set(3)
    assert generating_set(3, 101) == separating_set(3)
    assert len(generating_set(3, 2)) == 10
    assert len(generating_set(1, 2)) == 2
    assert len(generating_set(4, 2)) == 4 + (2**4 - 1)
    with pytest.raises(CatalogTooLargeError):
        generating_set(13, 2)


def test_zero_separating_set():
    assert [str(x) for x in zero_separating_set(1)] == ["tr(1)", "det(1)"]
    z2 = [str(x) for x in zero_separating_set(2)]
    assert z2 == ["tr(1)", "det(1)", "tr(2)", "det(2)", "pairsum(3)"]
    z3 = [str(x) for x in zero_separating_set(3)]
    assert z3[-3:] == ["pairsum(3)", "pairsum(4)", "pairsum(5)"]


def test_eval_invariant_examples():
    u = MatrixTuple([unit(1, 2), unit(2, 1)])
    assert eval_invariant(tr_word(1, 2), u) == 1
    ua = MatrixTuple([unit(1, 1), unit(2, 1), unit(1, 2)])
    ub = MatrixTuple([unit(2, 2), unit(2, 1), unit(1, 2)])
    assert eval_invariant(tr_word(1, 2, 3), ua) == 0
    assert eval_invariant(tr_word(1, 2, 3), ub) == 1
    m = MatrixTuple([Mat2.diag(Q, Q.one, Q.from_integer(-1))])
    assert eval_invariant(det(1), m) == -1
    assert eval_invariant(det(1), MatrixTuple.zero(Q, 1)) == 0


def test_pairsum_expands_to_pair_traces():
    rng = random.Random(1)
    for d in range(2, 6):
        u = rtuple(prime_field(101), d, rng)
        for k in range(3, 2 * d):
            expect = 0
            for i in range(1, d + 1):
                j = k - i
                if i < j <= d:
                    expect = (expect + eval_word(u, (i, j)).trace()) % 101
            assert eval_invariant(pairsum(k), u) == expect


def test_fingerprint_example_and_zero():
    u = MatrixTuple([unit(1, 2), unit(2, 1)])
    fp = fingerprint(u, separating_set(2))
    assert fp.values == (0, 0, 0, 0, 1)
    z = MatrixTuple.zero(Q, 3)
    assert all(v == 0 for v in fingerprint(z, separating_set(3)).values)


def test_separated_by_examples():
    u = MatrixTuple([unit(1, 2), unit(2, 1)])
    assert not separated_by(u, u, separating_set(2)).separated
    res = separated_by(u, MatrixTuple.zero(Q, 2), separating_set(2))
    assert res.separated and str(res.witness) == "tr(1,2)"
    ua = MatrixTuple([unit(1, 1), unit(2, 1), unit(1, 2)])
    ub = MatrixTuple([unit(2, 2), unit(2, 1), unit(1, 2)])
    rest = tuple(x for x in separating_set(3) if str(x) != "tr(1,2,3)")
    assert not separated_by(ua, ub, rest).separated
    res = separated_by(ua, ub, separating_set(3))
    assert res.separated and str(res.witness) == "tr(1,2,3)"
    with pytest.raises(DimensionMismatchError):
        separated_by(u, MatrixTuple.zero(Q, 3), separating_set(2))


def test_oracle_separated():
    rng = random.Random(2)
    for f in (Q, prime_field(101), gf2k(8)):
        for _ in range(100):
            u = rtuple(f, 3, rng)
            g = Mat2(f, *(f.random_element(rng) for _ in range(4)))
            if f.is_zero(g.det()):
                continue
            assert not oracle_separated(u, u.conjugated_by(g)).separated
    ua = MatrixTuple([unit(1, 1), unit(2, 1), unit(1, 2)])
    ub = MatrixTuple([unit(2, 2), unit(2, 1), unit(1, 2)])
    assert oracle_separated(ua, ub).separated


def test_monotonicity_of_separation():
    rng = random.Random(3)
    f = prime_field(101)
    for _ in range(200):
        d = rng.randint(2, 5)
        u, v = rtuple(f, d, rng), rtuple(f, d, rng)
        full = separating_set(d)
        sub = tuple(x for x in full if rng.random() < 0.5)
        if separated_by(u, v, sub).separated:
            assert separated_by(u, v, full).separated


def test_char2_fingerprints_cover_separating_values():
    # the characteristic-2 generating catalog contains the separating one
    f = gf2k(8)
    rng = random.Random(4)
    for _ in range(50):
        u = rtuple(f, 4, rng)
        s_vals = dict(zip(separating_set(4), fingerprint(u, separating_set(4)).values))
        g_vals = dict(zip(generating_set(4, 2), fingerprint(u, generating_set(4, 2)).values))
        for k, v in s_vals.items():
            assert g_vals[k] == v


def test_prop4_check():
    z = Mat2.zero(Q)
    u = MatrixTuple([unit(1, 1), unit(2, 1), unit(1, 2), z])
    v = MatrixTuple([unit(2, 2), unit(2, 1), unit(1, 2), z])
    res = prop4_check(u, v)
    assert not res.hypothesis_holds  # tr(1,2,3) differs
    rng = random.Random(5)
    f = prime_field(101)
    for _ in range(100):
        u = rtuple(f, 4, rng)
        g = Mat2(f, *(f.random_element(rng) for _ in range(4)))
        if f.is_zero(g.det()):
            continue
        res = prop4_check(u, u.conjugated_by(g))
        assert res.hypothesis_holds and res.conclusion_holds
    with pytest.raises(DimensionMismatchError):
        prop4_check(rtuple(f, 3, rng), rtuple(f, 3, rng))


def test_permutation_consistency_for_conjugates():
    f = prime_field(101)
    rng = random.Random(6)
    for _ in range(50):
        u = rtuple(f, 4, rng)
        g = Mat2(f, *(f.random_element(rng) for _ in range(4)))
        if f.is_zero(g.det()):
            continue
        v = u.conjugated_by(g)
        for p in permutations((1, 2, 3, 4)):
            assert eval_word(u, p).trace() == eval_word(v, p).trace()


def test_catalog_selector():
    assert catalog("S", 3) == separating_set(3)
    assert catalog("G", 3, 2) == generating_set(3, 2)
    assert catalog("Z", 3) == zero_separating_set(3)
    with pytest.raises(ParseError):
        catalog("X", 3)
