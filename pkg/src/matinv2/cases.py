"""Certificate cases: parsing, symbolic verification, numeric instantiation.

A case file is UTF-8 text, one declaration per line:

    ring Z                  coefficient ring for verification (Z or F2)
    preset a2 = 0           fix an entry before the chain runs
    unit b7                 polynomial assumed nonzero (the only legal
                            denominators are products of declared units)
    sub b6 = a6*a7 / b7     one elimination step, applied in file order
    target Q = a4*T(2,3,4) + a5*T(1,3,4) - a4*a5*T(3,4)

``#`` starts a comment.  Expressions know the 32 entry variables, integer
constants, ``+ - * / ^`` and the condition atoms T(i), T(i,j), T(i,j,k),
D(i), Q, each standing for its A-minus-B difference polynomial.

Verification forms Q minus the target combination, pushes it through
presets and substitutions (each right-hand side resolved against earlier
steps), and accepts iff the cleared numerator is identically zero.  All
expressions are stored over Z; the ring only controls coefficient reduction
during verification, so numeric replays of a chain stay faithful to the
transcription in any characteristic.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, replace
from functools import lru_cache
from importlib import resources

from .errors import (
    IllegalDenominatorError,
    MalformedChainError,
    MissingParameterError,
    ParseError,
    UnitVanishesError,
)
from .polys import (
    NVARS,
    ZZ,
    ConditionId,
    FracPoly,
    Poly,
    Ring,
    condition_poly,
    exact_divide,
    ring_by_name,
    var_index,
    var_name,
)

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[ab]\d+|T|D|Q)|(?P<op>\*\*|[-+*/^(),]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ParseError(f"bad token at {text[pos:]!r}")
            break
        if m.group("int"):
            out.append(("int", m.group("int")))
        elif m.group("name"):
            out.append(("name", m.group("name")))
        else:
            op = m.group("op")
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    out.append(("end", ""))
    return out


class _ExprParser:
    """Recursive-descent parser producing FracPoly over Z."""

    def __init__(self, text: str, units: tuple[Poly, ...]) -> None:
        self.tokens = _tokenize(text)
        self.pos = 0
        self.units = units

    def peek(self) -> tuple[str, str]:
        return self.tokens[self.pos]

    def take(self, kind: str | None = None, value: str | None = None) -> tuple[str, str]:
        tok = self.tokens[self.pos]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"expected {value or kind}, got {tok[1]!r}")
        self.pos += 1
        return tok

    def parse(self) -> FracPoly:
        out = self.expr()
        self.take("end")
        return out

    def expr(self) -> FracPoly:
        acc = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            op = self.take("op")[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> FracPoly:
        acc = self.factor()
        while self.peek() == ("op", "*") or self.peek() == ("op", "/"):
            op = self.take("op")[1]
            rhs = self.factor()
            if op == "*":
                acc = acc * rhs
            else:
                acc = acc * _invert_unit_product(rhs, self.units)
        return acc

    def factor(self) -> FracPoly:
        if self.peek() == ("op", "-"):
            self.take("op", "-")
            return -self.factor()
        base = self.primary()
        if self.peek() == ("op", "^"):
            self.take("op", "^")
            n = int(self.take("int")[1])
            acc = FracPoly.from_poly(Poly.const(ZZ, 1))
            for _ in range(n):
                acc = acc * base
            return acc
        return base

    def primary(self) -> FracPoly:
        kind, value = self.peek()
        if kind == "int":
            self.take("int")
            return FracPoly.from_poly(Poly.const(ZZ, int(value)))
        if kind == "name":
            self.take("name")
            if value in ("T", "D"):
                self.take("op", "(")
                idx = [int(self.take("int")[1])]
                while self.peek() == ("op", ","):
                    self.take("op", ",")
                    idx.append(int(self.take("int")[1]))
                self.take("op", ")")
                return FracPoly.from_poly(condition_poly(ConditionId(value, tuple(idx))))
            if value == "Q":
                return FracPoly.from_poly(condition_poly(ConditionId("Q")))
            return FracPoly.from_poly(Poly.variable(ZZ, var_index(value)))
        if kind == "op" and value == "(":
            self.take("op", "(")
            inner = self.expr()
            self.take("op", ")")
            return inner
        raise ParseError(f"unexpected token {value!r}")


def _invert_unit_product(f: FracPoly, units: tuple[Poly, ...]) -> FracPoly:
    """1/f for f a (+-1-scaled) product of declared units."""
    if f.den:
        raise IllegalDenominatorError("nested fractions are not allowed")
    rem = f.num
    factors: dict[Poly, int] = {}
    progress = True
    while progress and not rem.is_const():
        progress = False
        for u in units:
            q = exact_divide(rem, u)
            if q is not None:
                factors[u] = factors.get(u, 0) + 1
                rem = q
                progress = True
                break
    if rem.is_const() and rem.const_value() in (1, -1):
        sign = rem.const_value()
    else:
        raise IllegalDenominatorError(
            f"denominator {f.num} is not a product of the declared units"
        )
    num = Poly.const(ZZ, sign)
    return FracPoly(num, tuple(sorted(factors.items(), key=lambda t: t[0].sort_key())))


def parse_expression(text: str, units: tuple[Poly, ...] = ()) -> FracPoly:
    return _ExprParser(text, units).parse()


@dataclass(frozen=True)
class CaseSpec:
    """One transcribed derivation: presets, units, ordered chain, target."""

    case_id: str
    ring: Ring
    presets: tuple[tuple[int, Poly], ...]
    substitutions: tuple[tuple[int, FracPoly], ...]
    units: tuple[Poly, ...]
    target: FracPoly
    notes: str = ""

    def assigned_variables(self) -> set[int]:
        return {i for i, _ in self.presets} | {i for i, _ in self.substitutions}

    def free_variables(self) -> tuple[str, ...]:
        assigned = self.assigned_variables()
        return tuple(var_name(i) for i in range(NVARS) if i not in assigned)

    def with_target(self, target: FracPoly) -> "CaseSpec":
        return replace(self, target=target)


def parse_case_text(text: str, case_id: str) -> CaseSpec:
    lines = [ln.strip() for ln in text.splitlines()]
    units: list[Poly] = []
    notes: list[str] = []
    for ln in lines:
        if ln.startswith("unit "):
            u = parse_expression(ln[5:], ())
            if u.den:
                raise ParseError(f"unit must be polynomial: {ln!r}")
            units.append(u.num)
        elif ln.startswith("#"):
            notes.append(ln[1:].strip())
    unit_tuple = tuple(units)

    ring: Ring | None = None
    presets: list[tuple[int, Poly]] = []
    subs: list[tuple[int, FracPoly]] = []
    target: FracPoly | None = None
    for ln in lines:
        if not ln or ln.startswith("#") or ln.startswith("unit "):
            continue
        if ln.startswith("ring "):
            ring = ring_by_name(ln[5:].strip())
        elif ln.startswith("preset "):
            lhs, _, rhs = ln[7:].partition("=")
            val = parse_expression(rhs, unit_tuple)
            if val.den:
                raise ParseError(f"preset must be polynomial: {ln!r}")
            presets.append((var_index(lhs.strip()), val.num))
        elif ln.startswith("sub "):
            lhs, _, rhs = ln[4:].partition("=")
            subs.append((var_index(lhs.strip()), parse_expression(rhs, unit_tuple)))
        elif ln.startswith("target "):
            lhs, _, rhs = ln[7:].partition("=")
            if lhs.strip() != "Q":
                raise ParseError(f"target must be of the form 'target Q = ...': {ln!r}")
            target = parse_expression(rhs, unit_tuple)
        else:
            raise ParseError(f"unrecognized declaration: {ln!r}")
    if ring is None:
        raise ParseError(f"case {case_id}: missing ring declaration")
    if target is None:
        raise ParseError(f"case {case_id}: missing target declaration")
    return CaseSpec(
        case_id=case_id,
        ring=ring,
        presets=tuple(presets),
        substitutions=tuple(subs),
        units=unit_tuple,
        target=target,
        notes="\n".join(notes),
    )


def _resolved_steps(spec: CaseSpec, ring: Ring):
    """Presets then substitutions, each RHS resolved through earlier steps."""
    assigned: dict[int, FracPoly] = {}
    unit_ring = [u.map_ring(ring) for u in spec.units]
    steps = [(i, FracPoly.from_poly(p)) for i, p in spec.presets] + list(spec.substitutions)
    for idx, rhs in steps:
        rhs = rhs.map_ring(ring)
        for v in sorted(set(rhs.num.vars_used()) & set(assigned)):
            rhs = rhs.substitute(v, assigned[v])
        if rhs.contains_var(idx):
            raise MalformedChainError(
                f"{spec.case_id}: circular definition of {var_name(idx)}"
            )
        for u in unit_ring:
            if u.contains_var(idx):
                raise MalformedChainError(
                    f"{spec.case_id}: substituted variable {var_name(idx)} occurs in unit {u}"
                )
        assigned[idx] = rhs
        yield idx, rhs


def substitute_chain(f: Poly, spec: CaseSpec) -> FracPoly:
    """Apply a case's presets and chain to one polynomial; exact fraction out."""
    acc = FracPoly.from_poly(f)
    for idx, rhs in _resolved_steps(spec, f.ring):
        acc = acc.substitute(idx, rhs)
    return acc


@lru_cache(maxsize=64)
def final_assignments(spec: CaseSpec) -> tuple[tuple[int, FracPoly], ...]:
    """Composed effect of the whole chain: each assigned variable expressed
    in free variables only (over Z), suitable for numeric replay."""
    done: list[tuple[int, FracPoly]] = []
    for idx, rhs in _resolved_steps(spec, ZZ):
        done = [
            (i, e.substitute(idx, rhs) if e.num.contains_var(idx) else e) for i, e in done
        ]
        done.append((idx, rhs))
    return tuple(done)


@dataclass(frozen=True)
class CertificateReport:
    case_id: str
    ring: str
    passed: bool
    residue: Poly | None

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{self.case_id} [{self.ring}] {status}"
        if not self.passed:
            line += f"  residue: {self.residue}"
        return line


def verify_case(spec: CaseSpec, ring: Ring | None = None) -> CertificateReport:
    """Check Q = target identically after the case's presets and chain."""
    ring = spec.ring if ring is None else ring
    delta = FracPoly.from_poly(condition_poly(ConditionId("Q"), ring)) - spec.target.map_ring(ring)
    for idx, rhs in _resolved_steps(spec, ring):
        delta = delta.substitute(idx, rhs)
    passed = delta.is_zero()
    return CertificateReport(spec.case_id, ring.name, passed, None if passed else delta.num)


def instantiate_case(spec: CaseSpec, field, params: dict) -> list:
    """Numeric replay of a chain: raw values for all 32 entry variables.

    ``params`` must cover every free variable by name.  The Z-faithful
    expressions are evaluated regardless of the case's verification ring, so
    the replay works in any characteristic; declared units (and every
    denominator met along the chain) must evaluate nonzero.
    """
    assignments = final_assignments(spec)  # also validates the chain
    env: list = [None] * NVARS
    assigned = spec.assigned_variables()
    for i in range(NVARS):
        if i not in assigned:
            name = var_name(i)
            if name not in params:
                raise MissingParameterError(f"{spec.case_id}: missing {name}")
            env[i] = params[name]
    for u in spec.units:
        if field.is_zero(u.evaluate(field, env)):
            raise UnitVanishesError(f"{spec.case_id}: unit {u} vanishes")
    for idx, rhs in assignments:
        if not rhs.den_evaluate_nonzero(field, env):
            raise UnitVanishesError(f"{spec.case_id}: denominator vanishes for {var_name(idx)}")
        env[idx] = rhs.evaluate(field, env)
    return env


def corpus_dir():
    override = os.environ.get("MATINV2_CORPUS")
    if override:
        return override
    return resources.files("matinv2").joinpath("corpus")


def load_case(case_id: str) -> CaseSpec:
    base = corpus_dir()
    if isinstance(base, str):
        with open(os.path.join(base, case_id + ".case"), encoding="utf-8") as fh:
            return parse_case_text(fh.read(), case_id)
    return parse_case_text(base.joinpath(case_id + ".case").read_text("utf-8"), case_id)


def builtin_case_suite() -> list[CaseSpec]:
    """Every shipped case, sorted by id."""
    base = corpus_dir()
    if isinstance(base, str):
        names = sorted(n for n in os.listdir(base) if n.endswith(".case"))
    else:
        names = sorted(p.name for p in base.iterdir() if p.name.endswith(".case"))
    return [load_case(n[:-5]) for n in names]
