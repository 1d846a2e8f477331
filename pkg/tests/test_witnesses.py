import random

import pytest

from matinv2.cases import load_case
from matinv2.errors import DescriptorNotInSetError, MissingParameterError, UnitVanishesError
from matinv2.fields import gf2k, prime_field, rationals
from matinv2.invariants import (
    det,
    eval_invariant,
    oracle_separated,
    pairsum,
    prop4_check,
    separating_set,
    tr_word,
)
from matinv2.matrices import Mat2, MatrixTuple
from matinv2.witnesses import (
    GENERATOR_FAMILIES,
    WitnessPair,
    check_witness,
    conjugate_pair,
    draw_family_pairs,
    mirror_params,
    nonseparated_family,
    witness_for,
)

Q = rationals()


def test_witness_for_trace_d1():
    w = witness_for(tr_word(1), 1, Q)
    assert w.u[1] == Mat2.diag(Q, Q.one, Q.zero)
    assert w.v[1].is_zero()
    assert eval_invariant(det(1), w.u) == eval_invariant(det(1), w.v)
    assert eval_invariant(tr_word(1), w.u) != eval_invariant(tr_word(1), w.v)


def test_witness_for_det_d1_any_characteristic():
    for f in (Q, prime_field(101), gf2k(8)):
        w = witness_for(det(1), 1, f)
        assert f.is_zero(eval_invariant(tr_word(1), w.u))
        assert eval_invariant(det(1), w.u) == f.neg(f.one)
        assert not f.is_zero(eval_invariant(det(1), w.u))


def test_witness_for_pair_and_triple():
    w = witness_for(tr_word(1, 2), 2, Q)
    assert w.u[1] == Mat2.unit(Q, 1, 2) and w.u[2] == Mat2.unit(Q, 2, 1)
    assert eval_invariant(tr_word(1, 2), w.u) == 1
    w = witness_for(tr_word(1, 2, 3), 3, Q)
    assert eval_invariant(tr_word(1, 2, 3), w.u) == 0
    assert eval_invariant(tr_word(1, 2, 3), w.v) == 1


def test_witness_padding_leaves_other_slots_zero():
    w = witness_for(tr_word(2, 3, 5), 5, Q)
    for slot in (1, 4):
        assert w.u[slot].is_zero() and w.v[slot].is_zero()
    assert check_witness(w, 5)


def test_witness_rejects_foreign_descriptor():
    with pytest.raises(DescriptorNotInSetError):
        witness_for(tr_word(1, 2, 3), 2, Q)
    with pytest.raises(DescriptorNotInSetError):
        witness_for(pairsum(3), 2, Q)


def test_check_witness_negative():
    u = MatrixTuple([Mat2.unit(Q, 1, 2)])
    assert not check_witness(WitnessPair(u, u, tr_word(1)), 1)
    # disagreeing on a second descriptor also disqualifies
    a = MatrixTuple([Mat2.diag(Q, Q.from_integer(2), Q.zero)])
    b = MatrixTuple.zero(Q, 1)
    assert not check_witness(WitnessPair(a, b, det(1)), 1)


@pytest.mark.parametrize("field", [Q, prime_field(101), gf2k(8)],
                         ids=lambda f: str(f.spec))
def test_full_minimality_certificate(field):
    for d in range(1, 7):
        for f in separating_set(d):
            assert check_witness(witness_for(f, d, field), d)


def test_conjugate_pair():
    g = Mat2.from_integers(Q, [[0, 1], [1, 0]])
    u = MatrixTuple([Mat2.diag(Q, Q.one, Q.from_integer(2)), Mat2.unit(Q, 1, 2)])
    u2, v = conjugate_pair(u, g)
    assert u2 is u
    assert v[1] == Mat2.diag(Q, Q.from_integer(2), Q.one)
    assert v[2] == Mat2.unit(Q, 2, 1)
    assert not oracle_separated(u, v).separated
    ident = Mat2.identity(Q)
    assert conjugate_pair(u, ident)[1] == u


def test_nonseparated_family_generators():
    f = prime_field(101)
    rng = random.Random(0)
    for cid in GENERATOR_FAMILIES:
        pairs, draws = draw_family_pairs(cid, f, rng, 25)
        assert len(pairs) == 25
        for u, v in pairs:
            res = prop4_check(u, v)
            assert res.hypothesis_holds and res.conclusion_holds
            assert not oracle_separated(u, v).separated


def test_nonseparated_family_mirror_and_errors():
    f = prime_field(101)
    rng = random.Random(1)
    spec = load_case("L4.3")
    a_vals = {n: f.random_element(rng) for n in spec.free_variables() if n.startswith("a")}
    got = nonseparated_family(spec, f, mirror_params(spec, a_vals))
    assert got is not None
    u, v = got
    assert u == v
    with pytest.raises(MissingParameterError):
        nonseparated_family("L4.3", f, {})
    spec = load_case("L4.4-1.2b")
    params = {n: f.one for n in spec.free_variables()}
    params["b7"] = f.zero
    with pytest.raises(UnitVanishesError):
        nonseparated_family(spec, f, params)


def test_nonseparated_family_rejects_bad_draws():
    # branch chains leave hypothesis conditions open: random draws against
    # them must come back as None, not as invalid pairs
    f = prime_field(101)
    rng = random.Random(2)
    spec = load_case("L4.3")
    rejections = 0
    for _ in range(50):
        params = {n: f.random_element(rng) for n in spec.free_variables()}
        if nonseparated_family(spec, f, params) is None:
            rejections += 1
    assert rejections > 40
