"""Sparse multivariate polynomials over Z or F_p, plus lazy unit-fractions.

The variable universe is fixed at 32 names: a1..a16 are the entries of four
generic 2x2 matrices A1..A4 (row-major, so A1 = [[a1,a2],[a3,a4]]), b1..b16
the same for B1..B4.  Terms map exponent vectors (length-32 tuples) to
nonzero coefficients; the representation is canonical, so ``==`` is
structural identity of polynomials.

``FracPoly`` keeps a polynomial numerator over a lazily-uncancelled
denominator that is always a product of declared unit polynomials; equality
would be decided by cross-multiplication, and the zero test needs only the
numerator.  This sidesteps polynomial GCD entirely.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IndexOutOfRangeError, MalformedChainError, ParseError, RingMismatchError

NVARS = 32
_ZERO_EXP = (0,) * NVARS

VAR_NAMES = tuple(f"a{i}" for i in range(1, 17)) + tuple(f"b{i}" for i in range(1, 17))
_VAR_INDEX = {name: i for i, name in enumerate(VAR_NAMES)}


def var_index(name: str) -> int:
    try:
        return _VAR_INDEX[name]
    except KeyError:
        raise ParseError(f"unknown variable {name!r}") from None


def var_name(idx: int) -> str:
    return VAR_NAMES[idx]


@dataclass(frozen=True)
class Ring:
    """Coefficient ring: Z (p=None) or F_p."""

    p: int | None = None

    def normalize(self, c: int) -> int:
        return c if self.p is None else c % self.p

    @property
    def name(self) -> str:
        return "Z" if self.p is None else f"F{self.p}"


ZZ = Ring(None)
F2 = Ring(2)


def ring_by_name(name: str) -> Ring:
    if name == "Z":
        return ZZ
    if name == "F2":
        return F2
    raise ParseError(f"unknown ring {name!r}; expected Z or F2")


class Poly:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: dict) -> None:
        self.ring = ring
        self.terms = terms
        self._hash = None

    @classmethod
    def _make(cls, ring: Ring, raw: dict) -> "Poly":
        terms = {}
        for exp, c in raw.items():
            c = ring.normalize(c)
            if c:
                terms[exp] = c
        return cls(ring, terms)

    @classmethod
    def zero(cls, ring: Ring) -> "Poly":
        return cls(ring, {})

    @classmethod
    def const(cls, ring: Ring, c: int) -> "Poly":
        return cls._make(ring, {_ZERO_EXP: c})

    @classmethod
    def variable(cls, ring: Ring, idx: int) -> "Poly":
        if not 0 <= idx < NVARS:
            raise IndexOutOfRangeError(f"variable index {idx}")
        exp = list(_ZERO_EXP)
        exp[idx] = 1
        return cls(ring, {tuple(exp): ring.normalize(1)})

    def _check(self, other: "Poly") -> None:
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring.name} vs {other.ring.name}")

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZERO_EXP in self.terms)

    def const_value(self) -> int:
        return self.terms.get(_ZERO_EXP, 0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def sort_key(self):
        return tuple(sorted(self.terms.items()))

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, 0) + c
        return Poly._make(self.ring, out)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, 0) - c
        return Poly._make(self.ring, out)

    def __neg__(self) -> "Poly":
        return Poly._make(self.ring, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e3 = tuple(x + y for x, y in zip(e1, e2))
                out[e3] = out.get(e3, 0) + c1 * c2
        return Poly._make(self.ring, out)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        acc = Poly.const(self.ring, 1)
        for _ in range(n):
            acc = acc * self
        return acc

    def scaled(self, c: int) -> "Poly":
        return Poly._make(self.ring, {e: c * v for e, v in self.terms.items()})

    def map_ring(self, ring: Ring) -> "Poly":
        return Poly._make(ring, dict(self.terms))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def contains_var(self, idx: int) -> bool:
        return any(e[idx] for e in self.terms)

    def vars_used(self) -> set[int]:
        used: set[int] = set()
        for e in self.terms:
            for i, v in enumerate(e):
                if v:
                    used.add(i)
        return used

    def max_exponent(self, idx: int) -> int:
        return max((e[idx] for e in self.terms), default=0)

    def coefficient_slices(self, idx: int) -> dict[int, "Poly"]:
        """Split as sum_e slice_e * var^e with var removed from the slices."""
        slices: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[idx]
            rest = list(e)
            rest[idx] = 0
            slices.setdefault(k, {})[tuple(rest)] = c
        return {k: Poly(self.ring, t) for k, t in slices.items()}

    def substitute(self, idx: int, value: "FracPoly") -> "FracPoly":
        """Replace a variable by a fraction; result over value.den^max_exp."""
        e_max = self.max_exponent(idx)
        if e_max == 0:
            return FracPoly(self, ())
        slices = self.coefficient_slices(idx)
        den_poly = value.den_expanded()
        num = Poly.zero(self.ring)
        for e in range(e_max + 1):
            part = slices.get(e)
            if part is None:
                continue
            num = num + part * value.num**e * den_poly ** (e_max - e)
        return FracPoly(num, _den_pow(value.den, e_max))

    def evaluate(self, field, env):
        """Value in a field; env maps variable index -> raw field value."""
        total = field.zero
        for e, c in self.terms.items():
            acc = field.from_integer(c)
            for i, k in enumerate(e):
                if k:
                    acc = field.mul(acc, field.pow(env[i], k))
            total = field.add(total, acc)
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)
        parts = []
        for e, c in items:
            names = [
                var_name(i) if k == 1 else f"{var_name(i)}^{k}"
                for i, k in enumerate(e)
                if k
            ]
            if not names:
                body = str(abs(c))
            else:
                mag = abs(c)
                body = "*".join(([] if mag == 1 else [str(mag)]) + names)
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    __repr__ = __str__


def _den_mul(d1: tuple, d2: tuple) -> tuple:
    acc: dict = {}
    for u, e in d1 + d2:
        acc[u] = acc.get(u, 0) + e
    return _den_canon(acc)


def _den_lcm(d1: tuple, d2: tuple) -> tuple:
    acc: dict = {u: e for u, e in d1}
    for u, e in d2:
        acc[u] = max(acc.get(u, 0), e)
    return _den_canon(acc)


def _den_pow(d: tuple, n: int) -> tuple:
    return _den_canon({u: e * n for u, e in d})


def _den_canon(acc: dict) -> tuple:
    items = [(u, e) for u, e in acc.items() if e]
    items.sort(key=lambda t: t[0].sort_key())
    return tuple(items)


def _den_quotient(whole: tuple, part: tuple) -> tuple:
    """Factor list of whole/part, assuming part divides whole exponentwise."""
    acc = {u: e for u, e in whole}
    for u, e in part:
        acc[u] = acc.get(u, 0) - e
    return _den_canon(acc)


class FracPoly:
    """num / product-of-units, with lazy (no) cancellation."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: tuple = ()) -> None:
        self.num = num
        self.den = den if not num.is_zero() else ()

    @classmethod
    def from_poly(cls, p: Poly) -> "FracPoly":
        return cls(p, ())

    def ring(self) -> Ring:
        return self.num.ring

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def den_expanded(self) -> Poly:
        acc = Poly.const(self.num.ring, 1)
        for u, e in self.den:
            acc = acc * u**e
        return acc

    def _scale_to(self, target_den: tuple) -> Poly:
        extra = _den_quotient(target_den, self.den)
        acc = self.num
        for u, e in extra:
            acc = acc * u**e
        return acc

    def __add__(self, other: "FracPoly") -> "FracPoly":
        den = _den_lcm(self.den, other.den)
        return FracPoly(self._scale_to(den) + other._scale_to(den), den)

    def __sub__(self, other: "FracPoly") -> "FracPoly":
        den = _den_lcm(self.den, other.den)
        return FracPoly(self._scale_to(den) - other._scale_to(den), den)

    def __neg__(self) -> "FracPoly":
        return FracPoly(-self.num, self.den)

    def __mul__(self, other: "FracPoly") -> "FracPoly":
        return FracPoly(self.num * other.num, _den_mul(self.den, other.den))

    def over_units(self, units: tuple) -> "FracPoly":
        """Divide by an extra unit-product denominator."""
        return FracPoly(self.num, _den_mul(self.den, units))

    def equals(self, other: "FracPoly") -> bool:
        return (self - other).is_zero()

    def contains_var(self, idx: int) -> bool:
        return self.num.contains_var(idx) or any(u.contains_var(idx) for u, _ in self.den)

    def substitute(self, idx: int, value: "FracPoly") -> "FracPoly":
        for u, _ in self.den:
            if u.contains_var(idx):
                raise MalformedChainError(
                    f"substituted variable {var_name(idx)} occurs in a denominator unit {u}"
                )
        sub = self.num.substitute(idx, value)
        return FracPoly(sub.num, _den_mul(sub.den, self.den))

    def map_ring(self, ring: Ring) -> "FracPoly":
        return FracPoly(self.num.map_ring(ring), _den_canon({u.map_ring(ring): e for u, e in self.den}))

    def evaluate(self, field, env):
        num = self.num.evaluate(field, env)
        den = field.one
        for u, e in self.den:
            den = field.mul(den, field.pow(u.evaluate(field, env), e))
        return field.div(num, den)

    def den_evaluate_nonzero(self, field, env) -> bool:
        for u, _ in self.den:
            if field.is_zero(u.evaluate(field, env)):
                return False
        return True

    def __str__(self) -> str:
        if not self.den:
            return str(self.num)
        den = " * ".join(f"({u})^{e}" if e > 1 else f"({u})" for u, e in self.den)
        return f"({self.num}) / ({den})"

    __repr__ = __str__


@dataclass(frozen=True)
class ConditionId:
    """Tag of one hypothesis equality: T(word), D(i), or the 4-cycle Q."""

    kind: str  # "T" | "D" | "Q"
    indices: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind == "T":
            if not 1 <= len(self.indices) <= 3 or any(
                b <= a for a, b in zip(self.indices, self.indices[1:])
            ):
                raise ParseError(f"bad T indices {self.indices}")
        elif self.kind == "D":
            if len(self.indices) != 1:
                raise ParseError("D takes one index")
        elif self.kind == "Q":
            if self.indices:
                raise ParseError("Q takes no indices")
        else:
            raise ParseError(f"unknown condition kind {self.kind!r}")
        if any(not 1 <= i <= 4 for i in self.indices):
            raise IndexOutOfRangeError(f"condition index outside [1,4]: {self.indices}")

    def __str__(self) -> str:
        if self.kind == "Q":
            return "Q"
        return f"{self.kind}({','.join(map(str, self.indices))})"


def generic_entries(side: str, k: int, ring: Ring = ZZ) -> tuple[Poly, Poly, Poly, Poly]:
    """The four entry variables of generic matrix k (1..4) on side A or B."""
    if side not in ("A", "B"):
        raise ParseError(f"side must be A or B, got {side!r}")
    if not 1 <= k <= 4:
        raise IndexOutOfRangeError(f"matrix index {k} outside [1,4]")
    base = (k - 1) * 4 + (0 if side == "A" else 16)
    return tuple(Poly.variable(ring, base + j) for j in range(4))


def generic_trace_word(word, side: str, ring: Ring = ZZ) -> Poly:
    """Trace of the product of generic matrices named by a 1-based word."""
    a, b, c, d = generic_entries(side, word[0], ring)
    for k in word[1:]:
        e, f, g, h = generic_entries(side, k, ring)
        a, b, c, d = (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    return a + d


def generic_det(side: str, k: int, ring: Ring = ZZ) -> Poly:
    a, b, c, d = generic_entries(side, k, ring)
    return a * d - b * c


def condition_poly(cond: ConditionId, ring: Ring = ZZ) -> Poly:
    """Difference polynomial, A-side minus B-side."""
    if cond.kind == "T":
        return generic_trace_word(cond.indices, "A", ring) - generic_trace_word(
            cond.indices, "B", ring
        )
    if cond.kind == "D":
        return generic_det("A", cond.indices[0], ring) - generic_det("B", cond.indices[0], ring)
    return generic_trace_word((1, 2, 3, 4), "A", ring) - generic_trace_word(
        (1, 2, 3, 4), "B", ring
    )


def poly_arith(f: Poly, g: Poly) -> dict:
    """Sum, difference, and product in one call."""
    return {"sum": f + g, "difference": f - g, "product": f * g}


def exact_divide(f: Poly, g: Poly) -> Poly | None:
    """f / g when g divides f exactly, else None (graded-lex reduction)."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    ring = f.ring
    key = lambda e: (sum(e), e)
    g_items = sorted(g.terms.items(), key=lambda t: key(t[0]), reverse=True)
    ge, gc = g_items[0]
    rem = dict(f.terms)
    quo: dict = {}
    while rem:
        e = max(rem, key=key)
        c = rem[e]
        qe = tuple(x - y for x, y in zip(e, ge))
        if any(x < 0 for x in qe):
            return None
        if ring.p is None:
            if c % gc:
                return None
            qc = c // gc
        else:
            qc = ring.normalize(c * pow(gc, -1, ring.p))
        quo[qe] = quo.get(qe, 0) + qc
        for e2, c2 in g.terms.items():
            e3 = tuple(x + y for x, y in zip(qe, e2))
            nc = rem.get(e3, 0) - qc * c2
            nc = ring.normalize(nc)
            if nc:
                rem[e3] = nc
            else:
                rem.pop(e3, None)
    return Poly._make(ring, quo)
