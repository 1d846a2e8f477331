"""2x2 matrix algebra over an exact field: words, conjugation, normal forms.

A ``Mat2`` stores raw field values row-major; a ``MatrixTuple`` is an ordered
d-tuple of matrices over one common field.  Word indices are 1-based
throughout, matching the descriptor text forms used elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import (
    FieldMismatchError,
    IndexOutOfRangeError,
    PreconditionViolatedError,
    SingularConjugatorError,
)
from .fields import Field


class Mat2:
    __slots__ = ("field", "e11", "e12", "e21", "e22")

    def __init__(self, field: Field, e11, e12, e21, e22) -> None:
        self.field = field
        self.e11 = e11
        self.e12 = e12
        self.e21 = e21
        self.e22 = e22

    @classmethod
    def from_rows(cls, field: Field, rows) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(field, a, b, c, d)

    @classmethod
    def zero(cls, field: Field) -> "Mat2":
        z = field.zero
        return cls(field, z, z, z, z)

    @classmethod
    def identity(cls, field: Field) -> "Mat2":
        return cls(field, field.one, field.zero, field.zero, field.one)

    @classmethod
    def diag(cls, field: Field, a, b) -> "Mat2":
        return cls(field, a, field.zero, field.zero, b)

    @classmethod
    def unit(cls, field: Field, i: int, j: int) -> "Mat2":
        """Matrix unit E_ij (1-based positions)."""
        vals = [field.zero] * 4
        vals[(i - 1) * 2 + (j - 1)] = field.one
        return cls(field, *vals)

    @classmethod
    def from_integers(cls, field: Field, rows) -> "Mat2":
        (a, b), (c, d) = rows
        fi = field.from_integer
        return cls(field, fi(a), fi(b), fi(c), fi(d))

    def entries(self):
        return (self.e11, self.e12, self.e21, self.e22)

    def rows(self):
        return ((self.e11, self.e12), (self.e21, self.e22))

    def _check(self, other: "Mat2") -> None:
        if self.field.spec != other.field.spec:
            raise FieldMismatchError(f"{self.field.spec} vs {other.field.spec}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat2)
            and self.field.spec == other.field.spec
            and self.entries() == other.entries()
        )

    def __hash__(self) -> int:
        return hash((self.field.spec, self.entries()))

    def __repr__(self) -> str:
        ts = self.field.to_str
        return f"[[{ts(self.e11)}, {ts(self.e12)}], [{ts(self.e21)}, {ts(self.e22)}]]"

    def __add__(self, other: "Mat2") -> "Mat2":
        self._check(other)
        f = self.field
        return Mat2(
            f,
            f.add(self.e11, other.e11),
            f.add(self.e12, other.e12),
            f.add(self.e21, other.e21),
            f.add(self.e22, other.e22),
        )

    def __sub__(self, other: "Mat2") -> "Mat2":
        return self + (-other)

    def __neg__(self) -> "Mat2":
        f = self.field
        return Mat2(f, f.neg(self.e11), f.neg(self.e12), f.neg(self.e21), f.neg(self.e22))

    def __mul__(self, other: "Mat2") -> "Mat2":
        self._check(other)
        f = self.field
        a, b, c, d = self.entries()
        e, g, h, i = other.entries()
        return Mat2(
            f,
            f.add(f.mul(a, e), f.mul(b, h)),
            f.add(f.mul(a, g), f.mul(b, i)),
            f.add(f.mul(c, e), f.mul(d, h)),
            f.add(f.mul(c, g), f.mul(d, i)),
        )

    def scaled(self, s) -> "Mat2":
        f = self.field
        return Mat2(f, f.mul(s, self.e11), f.mul(s, self.e12), f.mul(s, self.e21), f.mul(s, self.e22))

    def trace(self):
        return self.field.add(self.e11, self.e22)

    def det(self):
        f = self.field
        return f.sub(f.mul(self.e11, self.e22), f.mul(self.e12, self.e21))

    def sigma(self):
        """Coefficients (sigma_1, sigma_2) = (trace, det) of the characteristic polynomial."""
        return (self.trace(), self.det())

    def is_zero(self) -> bool:
        f = self.field
        return all(f.is_zero(e) for e in self.entries())

    def is_scalar(self) -> bool:
        f = self.field
        return f.is_zero(self.e12) and f.is_zero(self.e21) and self.e11 == self.e22

    def inverse(self) -> "Mat2":
        f = self.field
        d = self.det()
        if f.is_zero(d):
            raise SingularConjugatorError("matrix is singular")
        di = f.inv(d)
        return Mat2(
            f,
            f.mul(di, self.e22),
            f.mul(di, f.neg(self.e12)),
            f.mul(di, f.neg(self.e21)),
            f.mul(di, self.e11),
        )


def mat2_algebra(a: Mat2, b: Mat2) -> dict:
    """Product, trace, det, and sigma of a in one call."""
    return {"product": a * b, "trace": a.trace(), "det": a.det(), "sigma": a.sigma()}


def conjugate(g: Mat2, a: Mat2) -> Mat2:
    """g a g^-1; raises SingularConjugatorError when det(g) = 0."""
    return g * a * g.inverse()


class MatrixTuple:
    __slots__ = ("field", "mats")

    def __init__(self, mats: Sequence[Mat2]) -> None:
        mats = tuple(mats)
        if not mats:
            raise PreconditionViolatedError("d must be >= 1")
        field = mats[0].field
        for m in mats[1:]:
            if m.field.spec != field.spec:
                raise FieldMismatchError("mixed fields in tuple")
        self.field = field
        self.mats = mats

    @classmethod
    def zero(cls, field: Field, d: int) -> "MatrixTuple":
        return cls([Mat2.zero(field) for _ in range(d)])

    @property
    def d(self) -> int:
        return len(self.mats)

    def __getitem__(self, i: int) -> Mat2:
        """1-based component access."""
        if not 1 <= i <= self.d:
            raise IndexOutOfRangeError(f"index {i} outside [1, {self.d}]")
        return self.mats[i - 1]

    def __iter__(self):
        return iter(self.mats)

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixTuple) and self.mats == other.mats

    def __repr__(self) -> str:
        return f"MatrixTuple({list(self.mats)!r})"

    def conjugated_by(self, g: Mat2) -> "MatrixTuple":
        gi = g.inverse()
        return MatrixTuple([g * m * gi for m in self.mats])

    def with_component(self, i: int, m: Mat2) -> "MatrixTuple":
        mats = list(self.mats)
        mats[i - 1] = m
        return MatrixTuple(mats)


def word_degree(word: Sequence[int]) -> int:
    return len(word)


def word_multidegree(word: Sequence[int], d: int) -> tuple[int, ...]:
    counts = [0] * d
    for i in word:
        counts[i - 1] += 1
    return tuple(counts)


def eval_word(u: MatrixTuple, word: Sequence[int]) -> Mat2:
    """Left-to-right product u_{i1} ... u_{is} for a 1-based index word."""
    if not word:
        raise PreconditionViolatedError("empty word")
    for i in word:
        if not 1 <= i <= u.d:
            raise IndexOutOfRangeError(f"index {i} outside [1, {u.d}]")
    acc = u.mats[word[0] - 1]
    for i in word[1:]:
        acc = acc * u.mats[i - 1]
    return acc


def swap_conjugator(field: Field) -> Mat2:
    """The involution [[0,1],[1,0]]: conjugation swaps diagonal entries and
    transposes the off-diagonal pair."""
    return Mat2(field, field.zero, field.one, field.one, field.zero)


def clear_conjugator(a1: Mat2, a2: Mat2) -> Mat2 | None:
    """Unipotent g = [[1,t],[0,1]] with g a1 g^-1 = a1 and (g a2 g^-1)_12 = 0.

    a1 must be the Jordan block [[x,1],[0,x]]; a2 must have a nonzero (2,1)
    entry or unequal diagonal.  t solves c*t^2 - (d-a)*t - b = 0 for
    a2 = [[a,b],[c,d]]; over a non-closed field the quadratic may have no
    root, reported as None.
    """
    f = a1.field
    if not (a1.e12 == f.one and f.is_zero(a1.e21) and a1.e11 == a1.e22):
        raise PreconditionViolatedError("leading matrix is not [[x,1],[0,x]]")
    alpha, beta, gamma, delta = a2.entries()
    if f.is_zero(gamma) and alpha == delta:
        raise PreconditionViolatedError("second matrix has zero (2,1) entry and equal diagonal")
    if f.is_zero(gamma):
        t = f.div(beta, f.sub(alpha, delta))
    else:
        roots = f.solve_quadratic(gamma, f.sub(alpha, delta), f.neg(beta))
        if not roots:
            return None
        t = roots[0]
    return Mat2(f, f.one, t, f.zero, f.one)


class NormalForm(Enum):
    DIAGONAL = "diagonal"
    JORDAN = "jordan"
    NEEDS_EXTENSION = "needs-extension"


@dataclass
class NormalizeResult:
    g: Mat2
    v: MatrixTuple
    form: NormalForm


def _eigenvector(a: Mat2, lam) -> tuple:
    f = a.field
    if not f.is_zero(a.e12):
        return (a.e12, f.sub(lam, a.e11))
    if not f.is_zero(a.e21):
        return (f.sub(lam, a.e22), a.e21)
    # diagonal matrix: standard basis vectors
    return (f.one, f.zero) if a.e11 == lam else (f.zero, f.one)


def normalize_leading(u: MatrixTuple) -> NormalizeResult:
    """Conjugate the whole tuple so its first matrix is diagonal or a Jordan
    block [[x,1],[0,x]]; NEEDS_EXTENSION when the characteristic polynomial
    does not split over the field."""
    f = u.field
    a = u.mats[0]
    ident = Mat2.identity(f)
    if f.is_zero(a.e12) and f.is_zero(a.e21):
        return NormalizeResult(ident, u, NormalForm.DIAGONAL)
    if a.e12 == f.one and f.is_zero(a.e21) and a.e11 == a.e22:
        return NormalizeResult(ident, u, NormalForm.JORDAN)
    roots = f.solve_quadratic(f.one, f.neg(a.trace()), a.det())
    if not roots:
        return NormalizeResult(ident, u, NormalForm.NEEDS_EXTENSION)
    if len(roots) == 2:
        v1 = _eigenvector(a, roots[0])
        v2 = _eigenvector(a, roots[1])
        p = Mat2(f, v1[0], v2[0], v1[1], v2[1])
        g = p.inverse()
        return NormalizeResult(g, u.conjugated_by(g), NormalForm.DIAGONAL)
    # repeated eigenvalue, non-scalar: nilpotent part n = a - lam has n^2 = 0
    lam = roots[0]
    n = a - Mat2.diag(f, lam, lam)
    w = (f.one, f.zero)
    nw = (n.e11, n.e21)
    if f.is_zero(nw[0]) and f.is_zero(nw[1]):
        w = (f.zero, f.one)
        nw = (n.e12, n.e22)
    p = Mat2(f, nw[0], w[0], nw[1], w[1])
    g = p.inverse()
    return NormalizeResult(g, u.conjugated_by(g), NormalForm.JORDAN)
