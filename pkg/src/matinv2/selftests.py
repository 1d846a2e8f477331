"""Seeded randomized property suites.

Shared by the CLI ``selftest`` subcommand and the acceptance tests.  Every
suite takes an explicit ``random.Random`` so runs are reproducible; reports
carry counters instead of prints so callers control the output format.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dataclass_field

from .cases import builtin_case_suite, verify_case
from .fields import Field
from .invariants import (
    fingerprint,
    generating_set,
    oracle_separated,
    prop4_check,
    separated_by,
    separating_set,
    zero_separating_set,
)
from .kernel import compile_words, evaluate, flatten
from .matrices import Mat2, MatrixTuple, clear_conjugator, conjugate, swap_conjugator
from .witnesses import GENERATOR_FAMILIES, check_witness, draw_family_pairs, witness_for


@dataclass
class SuiteReport:
    name: str
    checked: int = 0
    failures: int = 0
    counters: dict = dataclass_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def line(self) -> str:
        extra = "".join(f" {k}={v}" for k, v in sorted(self.counters.items()))
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} checked={self.checked} failures={self.failures}{extra}"


def random_mat(field: Field, rng: random.Random) -> Mat2:
    return Mat2(field, *(field.random_element(rng) for _ in range(4)))


def random_tuple(field: Field, d: int, rng: random.Random) -> MatrixTuple:
    return MatrixTuple([random_mat(field, rng) for _ in range(d)])


def random_invertible(field: Field, rng: random.Random) -> Mat2:
    while True:
        g = random_mat(field, rng)
        if not field.is_zero(g.det()):
            return g


def field_axioms(field: Field, iters: int, rng: random.Random) -> SuiteReport:
    rep = SuiteReport(f"field-axioms[{field.spec}]")
    for _ in range(iters):
        x, y = field.random_element(rng), field.random_element(rng)
        ok = field.sub(field.add(x, y), y) == x
        if not field.is_zero(y):
            ok = ok and field.mul(field.mul(x, y), field.inv(y)) == x
        ok = ok and field.parse(field.to_str(x)) == x
        rep.checked += 1
        rep.failures += not ok
    ch = field.characteristic
    if ch:
        s = field.zero
        for _ in range(ch):
            s = field.add(s, field.one)
        rep.checked += 1
        rep.failures += not field.is_zero(s)
    return rep


def conjugation_invariance(field: Field, d: int, iters: int, rng: random.Random) -> SuiteReport:
    rep = SuiteReport(f"conjugation-invariance[{field.spec},d={d}]")
    cat = generating_set(d, field.characteristic)
    for _ in range(iters):
        u = random_tuple(field, d, rng)
        g = random_invertible(field, rng)
        same = fingerprint(u, cat).values == fingerprint(u.conjugated_by(g), cat).values
        rep.checked += 1
        rep.failures += not same
    return rep


def cayley_hamilton(field: Field, iters: int, rng: random.Random) -> SuiteReport:
    rep = SuiteReport(f"cayley-hamilton[{field.spec}]")
    ident = Mat2.identity(field)
    for _ in range(iters):
        a = random_mat(field, rng)
        tr, dt = a.sigma()
        rep.checked += 1
        rep.failures += not (a * a - a.scaled(tr) + ident.scaled(dt)).is_zero()
    return rep


def separating_property(
    field: Field, d: int, random_pairs: int, conj_pairs: int, rng: random.Random
) -> SuiteReport:
    """Agreement on the separating catalog must imply agreement on the
    generating catalog (random draws plus conjugate pairs)."""
    rep = SuiteReport(f"separating-property[{field.spec},d={d}]")
    s_cat = separating_set(d)
    g_cat = generating_set(d, field.characteristic)
    s_agree = 0
    for _ in range(random_pairs):
        u = random_tuple(field, d, rng)
        v = random_tuple(field, d, rng)
        rep.checked += 1
        if separated_by(u, v, s_cat).separated:
            continue
        s_agree += 1
        if separated_by(u, v, g_cat).separated:
            rep.failures += 1
    for _ in range(conj_pairs):
        u = random_tuple(field, d, rng)
        v = u.conjugated_by(random_invertible(field, rng))
        rep.checked += 1
        if separated_by(u, v, s_cat).separated:
            rep.failures += 1  # invariance violated: also a hard failure
            continue
        s_agree += 1
        if separated_by(u, v, g_cat).separated:
            rep.failures += 1
    rep.counters["s_agree"] = s_agree
    return rep


_PERM4_WORDS = None


def _perm4_program():
    global _PERM4_WORDS
    if _PERM4_WORDS is None:
        from itertools import permutations

        _PERM4_WORDS = compile_words(sorted(permutations((1, 2, 3, 4))), 4)
    return _PERM4_WORDS


def family_prop4(
    field: Field, per_family: int, rng: random.Random, families=GENERATOR_FAMILIES
) -> SuiteReport:
    """Accepted family pairs agree on the 4-cycle, all 24 permuted 4-cycles,
    and the whole generating catalog; rejection rates are reported."""
    rep = SuiteReport(f"prop4-family[{field.spec}]")
    prog = _perm4_program()
    for case_id in families:
        pairs, draws = draw_family_pairs(case_id, field, rng, per_family)
        rep.counters[f"{case_id}.accepted"] = len(pairs)
        rep.counters[f"{case_id}.draws"] = draws
        if len(pairs) < per_family:
            rep.failures += 1
        for u, v in pairs:
            rep.checked += 1
            res = prop4_check(u, v)
            ok = res.hypothesis_holds and res.conclusion_holds
            ok = ok and evaluate(field, flatten(u), prog) == evaluate(field, flatten(v), prog)
            ok = ok and not oracle_separated(u, v).separated
            rep.failures += not ok
    return rep


def conjugator_properties(field: Field, iters: int, rng: random.Random) -> SuiteReport:
    """Shape and commutation contracts of the two explicit conjugators; over
    small prime fields, root absence is cross-checked exhaustively."""
    rep = SuiteReport(f"conjugators[{field.spec}]")
    exhaustive = field.spec.kind == "prime" and field.p <= 101
    swap = swap_conjugator(field)
    for _ in range(iters):
        a = random_mat(field, rng)
        sw = conjugate(swap, a)
        ok = sw.entries() == (a.e22, a.e21, a.e12, a.e11)
        x = field.random_element(rng)
        a1 = Mat2(field, x, field.one, field.zero, x)
        a2 = random_mat(field, rng)
        if field.is_zero(a2.e21) and a2.e11 == a2.e22:
            a2 = Mat2(field, a2.e11, a2.e12, field.one, a2.e22)
        g = clear_conjugator(a1, a2)
        if g is None:
            rep.counters["absent"] = rep.counters.get("absent", 0) + 1
            if exhaustive:
                has_root = any(
                    field.is_zero(
                        field.add(
                            field.sub(
                                field.mul(a2.e21, field.mul(t, t)),
                                field.mul(field.sub(a2.e22, a2.e11), t),
                            ),
                            field.neg(a2.e12),
                        )
                    )
                    for t in range(field.p)
                )
                ok = ok and not has_root
        else:
            res = conjugate(g, a2)
            ok = ok and field.is_zero(res.e12) and res.e21 == a2.e21
            ok = ok and g * a1 == a1 * g
            ok = ok and conjugate(g, a1) == a1
        rep.checked += 1
        rep.failures += not ok
    return rep


def zero_separation(field: Field, d_max: int, iters: int, rng: random.Random) -> SuiteReport:
    """u vs the zero tuple: the pair-sum catalog separates iff the
    generating catalog does; nilpotent upper-triangular tuples separate
    under neither."""
    rep = SuiteReport(f"zero-separation[{field.spec},d<={d_max}]")
    for i in range(iters):
        d = i % d_max + 1
        u = random_tuple(field, d, rng)
        zero = MatrixTuple.zero(field, d)
        by_z = separated_by(u, zero, zero_separating_set(d)).separated
        by_g = separated_by(u, zero, generating_set(d, field.characteristic)).separated
        rep.checked += 1
        rep.failures += by_z != by_g
    for d in range(1, d_max + 1):
        u = MatrixTuple(
            [Mat2(field, field.zero, field.random_element(rng), field.zero, field.zero) for _ in range(d)]
        )
        zero = MatrixTuple.zero(field, d)
        rep.checked += 1
        rep.failures += (
            separated_by(u, zero, zero_separating_set(d)).separated
            or separated_by(u, zero, generating_set(d, field.characteristic)).separated
        )
    return rep


def witness_certificate(field: Field, d_max: int) -> SuiteReport:
    """Deterministic: every separating-catalog element has a valid witness."""
    rep = SuiteReport(f"witness-certificate[{field.spec},d<={d_max}]")
    for d in range(1, d_max + 1):
        for f in separating_set(d):
            rep.checked += 1
            rep.failures += not check_witness(witness_for(f, d, field), d)
    return rep


def certificate_suite() -> SuiteReport:
    """Deterministic: every shipped case verifies in its frozen ring."""
    rep = SuiteReport("certificate-suite")
    for spec in builtin_case_suite():
        rep.checked += 1
        rep.failures += not verify_case(spec).passed
    return rep


def default_selftest(seed: int, iters: int, d: int | None, field: Field | None) -> list[SuiteReport]:
    """The CLI selftest plan: deterministic sub-seeds per suite."""
    from .fields import gf2k, prime_field, rationals

    master = random.Random(seed)
    sub = lambda: random.Random(master.randrange(2**63))
    fields = [field] if field is not None else [rationals(), prime_field(101), gf2k(16)]
    dims = [d] if d is not None else [4]
    reports = [certificate_suite()]
    for f in fields:
        reports.append(field_axioms(f, iters, sub()))
        reports.append(cayley_hamilton(f, iters, sub()))
        for dd in dims:
            reports.append(conjugation_invariance(f, dd, max(1, iters // 10), sub()))
            reports.append(separating_property(f, dd, iters, max(1, iters // 10), sub()))
        reports.append(conjugator_properties(f, iters, sub()))
        reports.append(zero_separation(f, min(5, max(dims)), iters, sub()))
        reports.append(witness_certificate(f, min(4, max(dims))))
    for f in fields:
        if f.spec.kind != "rational":
            reports.append(family_prop4(f, max(1, iters // 20), sub()))
    return reports
