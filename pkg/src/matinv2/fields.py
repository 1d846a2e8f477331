"""Exact scalar arithmetic over Q, F_p, and GF(2^k).

Elements are plain canonical values interpreted by a field handle:

* rational   -- ``fractions.Fraction`` (auto-reduced, positive denominator)
* prime p    -- ``int`` residue in ``[0, p)``
* GF(2^k)    -- ``int`` whose bits are the coefficients of the polynomial
                representative of degree < k

All arithmetic is exact; there is no floating point anywhere.  The finite
fields exist as a randomized-testing proxy: the identities this package
verifies symbolically hold over every commutative ring of the matching
characteristic, so exercising them over F_p (p >= 101) or GF(2^k) (k >= 8)
is evidence about all fields of that characteristic, while the headline
separation statements concern infinite fields.

GF(2^k) moduli are a fixed published table (Conway-style primitive
polynomials), one per supported k, so results are bit-exact across runs:

    k=1  : x + 1                      0x3
    k=2  : x^2 + x + 1                0x7
    k=4  : x^4 + x + 1                0x13
    k=8  : x^8 + x^4 + x^3 + x^2 + 1  0x11d
    k=16 : x^16 + x^5 + x^3 + x^2 + 1 0x1002d

``x`` (bit value 2) generates the multiplicative group for every entry,
which the log/antilog multiplication tables rely on.
"""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    FieldMismatchError,
    NonPrimeModulusError,
    ParseError,
    UnsupportedExtensionDegreeError,
)

GF2K_MODULI = {
    1: 0x3,
    2: 0x7,
    4: 0x13,
    8: 0x11D,
    16: 0x1002D,
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin, valid far beyond any modulus used here
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Declarative description of a field: kind plus p or k."""

    kind: str  # "rational" | "prime" | "gf2k"
    p: int | None = None
    k: int | None = None

    def characteristic(self) -> int:
        if self.kind == "rational":
            return 0
        if self.kind == "prime":
            return self.p
        return 2

    def __str__(self) -> str:
        if self.kind == "rational":
            return "rational"
        if self.kind == "prime":
            return f"prime:{self.p}"
        return f"gf2k:{self.k}"


def parse_field_spec(text: str) -> FieldSpec:
    """Parse ``rational`` / ``prime:P`` / ``gf2k:K`` (as printed by str())."""
    text = text.strip()
    if text in ("rational", "Q", "q"):
        return FieldSpec("rational")
    head, sep, arg = text.partition(":")
    if sep and head in ("prime", "gf2k"):
        try:
            n = int(arg)
        except ValueError:
            raise ParseError(f"bad field spec argument: {text!r}") from None
        return FieldSpec("prime", p=n) if head == "prime" else FieldSpec("gf2k", k=n)
    raise ParseError(f"bad field spec: {text!r}")


class Field:
    """Common interface of the three field handles.

    Methods operate on raw canonical values.  Handles are immutable and
    hashable by their spec; elements of equal value in the same field have
    equal representations, so ``==`` on values is field equality.
    """

    spec: FieldSpec

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def __repr__(self) -> str:
        return f"Field({self.spec})"

    @property
    def characteristic(self) -> int:
        return self.spec.characteristic()

    def check_same(self, other: "Field") -> None:
        if self.spec != other.spec:
            raise FieldMismatchError(f"{self.spec} vs {other.spec}")

    # subclasses provide: zero, one, add, sub, neg, mul, inv, from_integer,
    # sqrt, parse, to_str, random_element, sort_key

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        acc, base = self.one, a
        while n:
            if n & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            n >>= 1
        return acc

    def solve_quadratic(self, a, b, c) -> list:
        """Roots in the field of a*t^2 + b*t + c = 0 with a != 0.

        Deterministic order: char != 2 gives [(-b + r)/2a, (-b - r)/2a] with
        the canonical square root r; char 2 orders the Artin-Schreier pair by
        sort_key.  A double root appears once.
        """
        if self.is_zero(a):
            raise ZeroDivisionError("leading coefficient is zero")
        if self.characteristic == 2:
            return self._solve_quadratic_char2(a, b, c)
        disc = self.sub(self.mul(b, b), self.mul(self.from_integer(4), self.mul(a, c)))
        r = self.sqrt(disc)
        if r is None:
            return []
        two_a = self.mul(self.from_integer(2), a)
        first = self.div(self.add(self.neg(b), r), two_a)
        if self.is_zero(disc):
            return [first]
        return [first, self.div(self.sub(self.neg(b), r), two_a)]

    def _solve_quadratic_char2(self, a, b, c) -> list:
        # normalize to t^2 + (b/a) t + (c/a)
        b = self.div(b, a)
        c = self.div(c, a)
        if self.is_zero(b):
            r = self.sqrt(c)  # Frobenius: always exists, double root
            return [r]
        # substitute t = b*s: s^2 + s = c / b^2  (Artin-Schreier form)
        rhs = self.div(c, self.mul(b, b))
        sols = self._artin_schreier(rhs)
        roots = sorted((self.mul(b, s) for s in sols), key=self.sort_key)
        return roots

    def _artin_schreier(self, u) -> list:
        raise NotImplementedError


class RationalField(Field):
    """Q with arbitrary-precision Fraction values."""

    def __init__(self) -> None:
        self.spec = FieldSpec("rational")
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def from_integer(self, n: int) -> Fraction:
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def sqrt(self, a):
        """Non-negative square root when one exists in Q, else None."""
        if a < 0:
            return None
        n, d = a.numerator, a.denominator
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn != n or rd * rd != d:
            return None
        return Fraction(rn, rd)

    def sort_key(self, a):
        return a

    def parse(self, text: str) -> Fraction:
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {text!r}: {exc}") from None

    def to_str(self, a) -> str:
        return str(a)

    def random_element(self, rng, bound: int = 3) -> Fraction:
        return Fraction(rng.randint(-bound, bound))


class PrimeField(Field):
    """F_p with int residues in [0, p)."""

    def __init__(self, p: int) -> None:
        if not is_prime(p):
            raise NonPrimeModulusError(f"{p} is not prime")
        self.p = p
        self.spec = FieldSpec("prime", p=p)
        self.zero = 0
        self.one = 1 % p

    def from_integer(self, n: int) -> int:
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def is_square(self, a) -> bool:
        return a == 0 or pow(a, (self.p - 1) // 2, self.p) == 1

    def sqrt(self, a):
        """Canonical square root in F_p, or None for a non-residue.

        Of the two roots the quadratic-residue one is returned when exactly
        one root is a residue (always the case for p = 3 mod 4, where that
        root is the even power of any generator); otherwise the smaller
        residue breaks the tie.
        """
        p = self.p
        if a == 0:
            return 0
        if p == 2:
            return a
        if not self.is_square(a):
            return None
        r = self._tonelli_shanks(a)
        s = p - r
        r_sq, s_sq = self.is_square(r), self.is_square(s)
        if r_sq != s_sq:
            return r if r_sq else s
        return min(r, s)

    def _tonelli_shanks(self, a: int) -> int:
        p = self.p
        if p % 4 == 3:
            return pow(a, (p + 1) // 4, p)
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while self.is_square(z):
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            t2, i = t * t % p, 1
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return r

    def _artin_schreier(self, u):
        # char 2 only hits this for p == 2: s^2 + s = s + s = 0 over F_2,
        # so solutions exist iff u == 0 and then both field elements solve it.
        return [0, 1] if u == 0 else []

    def sort_key(self, a):
        return a

    def parse(self, text: str) -> int:
        try:
            return int(text.strip()) % self.p
        except ValueError:
            raise ParseError(f"bad residue {text!r}") from None

    def to_str(self, a) -> str:
        return str(a)

    def random_element(self, rng, bound: int | None = None) -> int:
        return rng.randrange(self.p)


class GF2kField(Field):
    """GF(2^k) under the shipped modulus table, with log/antilog tables."""

    def __init__(self, k: int) -> None:
        if k not in GF2K_MODULI:
            raise UnsupportedExtensionDegreeError(
                f"k={k} not in shipped table {sorted(GF2K_MODULI)}"
            )
        self.k = k
        self.modulus = GF2K_MODULI[k]
        self.order = 1 << k
        self.spec = FieldSpec("gf2k", k=k)
        self.zero = 0
        self.one = 1
        self._build_tables()

    def _mul_raw(self, a: int, b: int) -> int:
        p = 0
        while b:
            if b & 1:
                p ^= a
            b >>= 1
            a <<= 1
            if a >> self.k & 1:
                a ^= self.modulus
        return p

    def _build_tables(self) -> None:
        n = self.order - 1
        exp = array("q", [0] * max(2 * n, 2))
        log = array("q", [0] * self.order)
        k, mod = self.k, self.modulus
        v = 1
        for i in range(n):
            exp[i] = v
            log[v] = i
            v <<= 1
            if v >> k & 1:
                v ^= mod
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        self._exp = exp
        self._log = log

    def from_integer(self, n: int) -> int:
        return n & 1

    def add(self, a, b):
        return a ^ b

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return 1
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return 1
        return self._exp[(self.order - 1) - self._log[a]]

    def sqrt(self, a):
        # Frobenius is bijective in characteristic 2: unique root a^(2^(k-1))
        r = a
        for _ in range(self.k - 1):
            r = self.mul(r, r)
        return r

    def trace_to_gf2(self, a) -> int:
        t, v = 0, a
        for _ in range(self.k):
            t ^= v
            v = self.mul(v, v)
        return t & 1 if self.k > 1 else a & 1

    def _artin_schreier(self, u) -> list:
        """Solutions of s^2 + s = u, found by GF(2)-linear algebra.

        The map s -> s^2 + s is GF(2)-linear on the bit representation, so
        one Gaussian elimination over the k x k bit matrix settles existence
        and produces both solutions (they differ by 1).
        """
        k = self.k
        if k == 1:
            return [0, 1] if u == 0 else []
        cols = [self.mul(1 << j, 1 << j) ^ (1 << j) for j in range(k)]
        # reduced row echelon over the bit matrix, tracking preimage combos
        basis: dict[int, tuple[int, int]] = {}  # pivot bit -> (value, combo)
        for j in range(k):
            v, combo = cols[j], 1 << j
            while v:
                pb = v.bit_length() - 1
                if pb in basis:
                    bv, bc = basis[pb]
                    v ^= bv
                    combo ^= bc
                else:
                    for opb, (ov, oc) in list(basis.items()):
                        if ov >> pb & 1:
                            basis[opb] = (ov ^ v, oc ^ combo)
                    basis[pb] = (v, combo)
                    break
        sol, rhs = 0, u
        while rhs:
            pb = rhs.bit_length() - 1
            if pb not in basis:
                return []
            bv, bc = basis[pb]
            rhs ^= bv
            sol ^= bc
        return sorted((sol, sol ^ 1))

    def sort_key(self, a):
        return a

    def parse(self, text: str) -> int:
        text = text.strip()
        try:
            v = int(text, 16) if text.lower().startswith("0x") else int(text, 0)
        except ValueError:
            raise ParseError(f"bad GF(2^{self.k}) element {text!r}") from None
        if not 0 <= v < self.order:
            raise ParseError(f"{text!r} out of range for GF(2^{self.k})")
        return v

    def to_str(self, a) -> str:
        return format(a, "#x")

    def random_element(self, rng, bound: int | None = None) -> int:
        return rng.randrange(self.order)


_CACHE: dict[FieldSpec, Field] = {}


def field_create(spec: FieldSpec) -> Field:
    """Return the (cached) field handle for a spec."""
    f = _CACHE.get(spec)
    if f is None:
        if spec.kind == "rational":
            f = RationalField()
        elif spec.kind == "prime":
            f = PrimeField(spec.p)
        elif spec.kind == "gf2k":
            f = GF2kField(spec.k)
        else:
            raise ParseError(f"unknown field kind {spec.kind!r}")
        _CACHE[spec] = f
    return f


def rationals() -> RationalField:
    return field_create(FieldSpec("rational"))


def prime_field(p: int) -> PrimeField:
    return field_create(FieldSpec("prime", p=p))


def gf2k(k: int) -> GF2kField:
    return field_create(FieldSpec("gf2k", k=k))


def sqrt_in_field(field: Field, x):
    """Canonical square root of x, or None when no root exists."""
    return field.sqrt(x)
