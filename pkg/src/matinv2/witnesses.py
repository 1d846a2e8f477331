"""Minimality witnesses and non-separated pair families.

Each catalog element f of the separating set owns a concrete pair of
tuples agreeing on everything in the catalog except f.  The d <= 3
constructions use only entries from {-1, 0, 1}, so they transplant into
any field; larger d places the same matrices at the slots named by f and
zero matrices elsewhere (zero slots annihilate every mixed invariant, which
keeps the agreement argument self-evident).

``nonseparated_family`` replays a certificate case numerically to produce
adversarial pairs that agree on the whole separating catalog.  Chains
record necessary conditions only, so draws whose remaining freedom violates
the catalog are rejected, never repaired.  The GENERATOR_FAMILIES cases are
the fully-substituted chains whose random draws are accepted generically
(everything else rejects almost surely and is only useful with hand-picked
parameters, e.g. mirroring the a side onto the b side).
"""

from __future__ import annotations

from dataclasses import dataclass

from .cases import CaseSpec, instantiate_case, load_case
from .errors import DescriptorNotInSetError, DimensionMismatchError, UnitVanishesError
from .fields import Field
from .invariants import (
    InvariantDescriptor,
    eval_invariant,
    fingerprint,
    separated_by,
    separating_set,
)
from .matrices import Mat2, MatrixTuple

GENERATOR_FAMILIES = ("L4.4-1.2b", "L4.4-2.2b", "L4.6-1")


@dataclass(frozen=True)
class WitnessPair:
    u: MatrixTuple
    v: MatrixTuple
    distinguishing: InvariantDescriptor


def _place(field: Field, d: int, placed: dict[int, Mat2]) -> MatrixTuple:
    return MatrixTuple([placed.get(i, Mat2.zero(field)) for i in range(1, d + 1)])


def witness_for(f: InvariantDescriptor, d: int, field: Field) -> WitnessPair:
    """The minimality witness pair for one separating-catalog element."""
    if f not in separating_set(d):
        raise DescriptorNotInSetError(f"{f} is not in the separating catalog for d={d}")
    one = field.one
    if f.kind == "tr" and len(f.data) == 1:
        (i,) = f.data
        u = _place(field, d, {i: Mat2.diag(field, one, field.zero)})
        v = MatrixTuple.zero(field, d)
    elif f.kind == "det":
        (i,) = f.data
        u = _place(field, d, {i: Mat2.diag(field, one, field.neg(one))})
        v = MatrixTuple.zero(field, d)
    elif len(f.data) == 2:
        i, j = f.data
        u = _place(field, d, {i: Mat2.unit(field, 1, 2), j: Mat2.unit(field, 2, 1)})
        v = MatrixTuple.zero(field, d)
    else:
        i, j, k = f.data
        common = {j: Mat2.unit(field, 2, 1), k: Mat2.unit(field, 1, 2)}
        u = _place(field, d, {i: Mat2.unit(field, 1, 1), **common})
        v = _place(field, d, {i: Mat2.unit(field, 2, 2), **common})
    pair = WitnessPair(u, v, f)
    if not check_witness(pair, d):
        raise AssertionError(f"witness construction failed for {f}, d={d}, {field.spec}")
    return pair


def check_witness(w: WitnessPair, d: int) -> bool:
    """Exact check: agreement on the separating catalog minus the
    distinguishing element, disagreement on the element itself."""
    if w.u.d != d or w.v.d != d:
        raise DimensionMismatchError(f"witness tuples are not d={d}")
    cat = separating_set(d)
    fu = fingerprint(w.u, cat)
    fv = fingerprint(w.v, cat)
    for desc, a, b in zip(cat, fu.values, fv.values):
        if desc == w.distinguishing:
            if a == b:
                return False
        elif a != b:
            return False
    return True


def conjugate_pair(u: MatrixTuple, g: Mat2) -> tuple[MatrixTuple, MatrixTuple]:
    """(u, g u g^-1): the guaranteed-non-separated baseline family."""
    return u, u.conjugated_by(g)


def tuples_from_values(field: Field, values) -> tuple[MatrixTuple, MatrixTuple]:
    """Split the 32 entry values of a case replay into the (u, v) pair."""
    u = MatrixTuple([Mat2(field, *values[4 * i : 4 * i + 4]) for i in range(4)])
    v = MatrixTuple([Mat2(field, *values[16 + 4 * i : 16 + 4 * i + 4]) for i in range(4)])
    return u, v


def nonseparated_family(
    case: str | CaseSpec, field: Field, params: dict
) -> tuple[MatrixTuple, MatrixTuple] | None:
    """Numeric case replay, post-checked on the whole separating catalog.

    Returns None when the post-check fails (the drawn free parameters do
    not satisfy the conditions the chain leaves open).  Unit vanishing in
    the parameters raises UnitVanishesError; missing free variables raise
    MissingParameterError.
    """
    spec = load_case(case) if isinstance(case, str) else case
    values = instantiate_case(spec, field, params)
    u, v = tuples_from_values(field, values)
    if separated_by(u, v, separating_set(4)).separated:
        return None
    return u, v


def draw_family_pairs(case: str | CaseSpec, field: Field, rng, count: int, max_draws: int | None = None):
    """Rejection-sample `count` accepted pairs; returns (pairs, draws used)."""
    spec = load_case(case) if isinstance(case, str) else case
    free = spec.free_variables()
    pairs = []
    draws = 0
    limit = max_draws if max_draws is not None else 50 * count
    while len(pairs) < count and draws < limit:
        draws += 1
        params = {n: field.random_element(rng) for n in free}
        try:
            got = nonseparated_family(spec, field, params)
        except UnitVanishesError:
            continue
        if got is not None:
            pairs.append(got)
    return pairs, draws


def mirror_params(spec: CaseSpec, a_values: dict) -> dict:
    """Free-variable params copying the a side onto the b side.

    For cases whose presets treat both sides alike this replays to the
    trivially non-separated pair v = u.  Every free b-variable must have its
    partner a-value present in ``a_values``."""
    params = dict(a_values)
    for name in spec.free_variables():
        if name.startswith("b"):
            params[name] = a_values[f"a{name[1:]}"]
    return params
