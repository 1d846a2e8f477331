import random
from array import array
from fractions import Fraction

import pytest

from matinv2 import _kernel_py, kernel
from matinv2.errors import IndexOutOfRangeError
from matinv2.fields import gf2k, prime_field, rationals
from matinv2.invariants import (
    fingerprint,
    generating_set,
    separating_set,
    zero_separating_set,
)
from matinv2.matrices import Mat2, MatrixTuple, eval_word

compiled = pytest.importorskip("matinv2._kernel") if kernel.backend_name() == "compiled" else None


def random_catalog(rng, d, char):
    return rng.choice(
        [separating_set(d), zero_separating_set(d), generating_set(d, char)]
    )


def test_program_word_evaluation_matches_matrices():
    rng = random.Random(0)
    for f in (rationals(), prime_field(101), gf2k(16)):
        for _ in range(100):
            d = rng.randint(1, 5)
            u = MatrixTuple(
                [Mat2(f, *(f.random_element(rng) for _ in range(4))) for _ in range(d)]
            )
            words = [
                tuple(rng.randint(1, d) for _ in range(rng.randint(1, 6)))
                for _ in range(5)
            ]
            prog = kernel.compile_words(words, d)
            vals = kernel.evaluate(f, kernel.flatten(u), prog)
            assert vals == [eval_word(u, w).trace() for w in words]


def test_compile_rejects_bad_indices():
    with pytest.raises(IndexOutOfRangeError):
        kernel.compile_words([(1, 3)], 2)


@pytest.mark.skipif(kernel.backend_name() != "compiled", reason="compiled kernel unavailable")
def test_compiled_matches_python_finite_fields():
    rng = random.Random(1)
    for _ in range(300):
        d = rng.randint(1, 6)
        f = rng.choice([prime_field(2), prime_field(101), gf2k(1), gf2k(8), gf2k(16)])
        cat = random_catalog(rng, d, f.characteristic)
        prog_t, prog_a, _ = kernel.descriptor_program(cat, d)
        entries = [f.random_element(rng) for _ in range(4 * d)]
        ea = array("q", entries)
        if f.spec.kind == "prime":
            got_c = compiled.eval_program_prime(prog_a, ea, f.p)
            got_p = _kernel_py.eval_program_prime(prog_t, entries, f.p)
        else:
            got_c = compiled.eval_program_gf2k(prog_a, ea, f._exp, f._log)
            got_p = _kernel_py.eval_program_gf2k(prog_t, entries, f._exp, f._log, f.order - 1)
        assert got_c == got_p


@pytest.mark.skipif(kernel.backend_name() != "compiled", reason="compiled kernel unavailable")
def test_compiled_matches_python_int_path():
    rng = random.Random(2)
    for _ in range(200):
        d = rng.randint(1, 6)
        cat = random_catalog(rng, d, 0)
        prog_t, prog_a, _ = kernel.descriptor_program(cat, d)
        entries = [rng.randint(-9, 9) for _ in range(4 * d)]
        got_c = compiled.eval_program_int(prog_a, array("q", entries))
        got_p = _kernel_py.eval_program_int(prog_t, entries)
        assert got_c == got_p


def test_rational_big_values_use_exact_path():
    # values overflowing int64 must still evaluate exactly
    q = rationals()
    big = Fraction(2**70)
    u = MatrixTuple([Mat2(q, big, q.one, q.zero, big)] * 3)
    fp = fingerprint(u, separating_set(3))
    assert fp.values[0] == 2**71  # tr(1)
    assert fp.values[1] == 2**140  # det(1)
    frac = Fraction(1, 3)
    u = MatrixTuple([Mat2(q, frac, q.zero, q.zero, frac)])
    fp = fingerprint(u, separating_set(1))
    assert fp.values == (Fraction(2, 3), Fraction(1, 9))


def test_int_bound_estimate_is_safe():
    # products of entries below the bound check stay below 2^62
    q = rationals()
    rng = random.Random(3)
    for _ in range(50):
        d = rng.randint(4, 6)
        u = MatrixTuple(
            [Mat2.from_integers(q, [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)])
             for _ in range(d)]
        )
        cat = generating_set(d, 0)
        fp = fingerprint(u, cat)
        # cross-check against the object path
        slow = tuple(
            _kernel_py.eval_program_generic(
                kernel.descriptor_program(cat, d)[0], kernel.flatten(u), q
            )
        )
        assert fp.values == slow
