"""Catalogs of conjugation invariants and separation decision procedures.

Three catalogs are exposed for d-tuples of 2x2 matrices:

* ``separating_set(d)``       -- traces and dets of single matrices, traces
                                 of increasing pairs and triples
* ``generating_set(d, char)`` -- same set for characteristic != 2; for
                                 characteristic 2 all increasing trace words
                                 up to length d plus the dets
* ``zero_separating_set(d)``  -- traces/dets plus the antidiagonal pair sums

Catalog order is deterministic: per-index blocks tr(i), det(i) for
i = 1..d, then longer trace words sorted by (length, indices), then pair
sums by k.  Separation witnesses are reported as the first differing
descriptor in this order.

Caveat: over the finite testing fields "separated by the full invariant
ring" is operationalized as disagreement on the generating catalog; the
generating property itself is a statement about infinite fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from . import kernel
from .errors import (
    CatalogTooLargeError,
    DimensionMismatchError,
    FieldMismatchError,
    IndexOutOfRangeError,
    ParseError,
)
from .matrices import MatrixTuple

GENERATING_CHAR2_MAX_D = 12


@dataclass(frozen=True)
class InvariantDescriptor:
    """Symbolic name of one invariant: tr(word) / det(i) / pairsum(k)."""

    kind: str  # "tr" | "det" | "pairsum"
    data: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind == "tr":
            if not self.data or any(b <= a for a, b in zip(self.data, self.data[1:])):
                raise ParseError(f"trace word must be strictly increasing: {self.data}")
        elif self.kind in ("det", "pairsum"):
            if len(self.data) != 1:
                raise ParseError(f"{self.kind} takes one index")
        else:
            raise ParseError(f"unknown descriptor kind {self.kind!r}")

    def degree(self) -> int:
        return len(self.data) if self.kind == "tr" else 2

    def multidegree(self, d: int) -> tuple[int, ...]:
        counts = [0] * d
        if self.kind == "tr":
            for i in self.data:
                counts[i - 1] += 1
        elif self.kind == "det":
            counts[self.data[0] - 1] = 2
        else:
            # sum of mixed pair traces: report the common total degree slotwise
            for i, j in _pairsum_pairs(self.data[0], d):
                counts[i - 1] += 1
                counts[j - 1] += 1
        return tuple(counts)

    def __str__(self) -> str:
        return f"{self.kind}({','.join(map(str, self.data))})"


def tr_word(*indices: int) -> InvariantDescriptor:
    return InvariantDescriptor("tr", tuple(indices))


def det(i: int) -> InvariantDescriptor:
    return InvariantDescriptor("det", (i,))


def pairsum(k: int) -> InvariantDescriptor:
    return InvariantDescriptor("pairsum", (k,))


def parse_descriptor(text: str) -> InvariantDescriptor:
    text = text.strip()
    if not text.endswith(")") or "(" not in text:
        raise ParseError(f"bad descriptor {text!r}")
    kind, _, inner = text[:-1].partition("(")
    try:
        data = tuple(int(s) for s in inner.split(","))
    except ValueError:
        raise ParseError(f"bad descriptor indices in {text!r}") from None
    return InvariantDescriptor(kind.strip(), data)


def _pairsum_pairs(k: int, d: int) -> list[tuple[int, int]]:
    return [(i, k - i) for i in range(max(1, k - d), (k + 1) // 2) if k - i <= d]


@lru_cache(maxsize=None)
def separating_set(d: int) -> tuple[InvariantDescriptor, ...]:
    """tr/det of each slot plus increasing pair and triple trace words;
    size 2d + C(d,2) + C(d,3)."""
    if d < 1:
        raise IndexOutOfRangeError("d must be >= 1")
    out: list[InvariantDescriptor] = []
    for i in range(1, d + 1):
        out.append(tr_word(i))
        out.append(det(i))
    for length in (2, 3):
        for idx in combinations(range(1, d + 1), length):
            out.append(tr_word(*idx))
    return tuple(out)


@lru_cache(maxsize=None)
def generating_set(d: int, characteristic: int) -> tuple[InvariantDescriptor, ...]:
    """Generating catalog; equal to separating_set(d) as a set unless the
    characteristic is 2, where all increasing words up to length d enter."""
    if d < 1:
        raise IndexOutOfRangeError("d must be >= 1")
    if characteristic != 2:
        return separating_set(d)
    if d > GENERATING_CHAR2_MAX_D:
        raise CatalogTooLargeError(
            f"characteristic-2 generating catalog grows as 2^d; d={d} exceeds "
            f"the supported bound {GENERATING_CHAR2_MAX_D}"
        )
    out: list[InvariantDescriptor] = []
    for i in range(1, d + 1):
        out.append(tr_word(i))
        out.append(det(i))
    for length in range(2, d + 1):
        for idx in combinations(range(1, d + 1), length):
            out.append(tr_word(*idx))
    return tuple(out)


@lru_cache(maxsize=None)
def zero_separating_set(d: int) -> tuple[InvariantDescriptor, ...]:
    """tr/det of each slot plus pairsum(k) for 3 <= k <= 2d-1."""
    if d < 1:
        raise IndexOutOfRangeError("d must be >= 1")
    out: list[InvariantDescriptor] = []
    for i in range(1, d + 1):
        out.append(tr_word(i))
        out.append(det(i))
    for k in range(3, 2 * d):
        out.append(pairsum(k))
    return tuple(out)


def catalog(name: str, d: int, characteristic: int = 0) -> tuple[InvariantDescriptor, ...]:
    """Catalog by letter: S, G, or Z."""
    if name == "S":
        return separating_set(d)
    if name == "G":
        return generating_set(d, characteristic)
    if name == "Z":
        return zero_separating_set(d)
    raise ParseError(f"unknown catalog {name!r}; expected S, G, or Z")


@dataclass(frozen=True)
class Fingerprint:
    descriptors: tuple[InvariantDescriptor, ...]
    values: tuple


def fingerprint(u: MatrixTuple, descriptors) -> Fingerprint:
    descriptors = tuple(descriptors)
    prog = kernel.descriptor_program(descriptors, u.d)
    values = kernel.evaluate(u.field, kernel.flatten(u), prog)
    return Fingerprint(descriptors, tuple(values))


def eval_invariant(desc: InvariantDescriptor, u: MatrixTuple):
    return fingerprint(u, (desc,)).values[0]


@dataclass(frozen=True)
class SeparationResult:
    separated: bool
    witness: InvariantDescriptor | None


def _check_pair(u: MatrixTuple, v: MatrixTuple) -> None:
    if u.d != v.d:
        raise DimensionMismatchError(f"d={u.d} vs d={v.d}")
    if u.field.spec != v.field.spec:
        raise FieldMismatchError(f"{u.field.spec} vs {v.field.spec}")


def separated_by(u: MatrixTuple, v: MatrixTuple, descriptors) -> SeparationResult:
    """Do the catalogs' values differ?  The witness is the first differing
    descriptor in catalog order."""
    _check_pair(u, v)
    descriptors = tuple(descriptors)
    fu = fingerprint(u, descriptors)
    fv = fingerprint(v, descriptors)
    for desc, a, b in zip(descriptors, fu.values, fv.values):
        if a != b:
            return SeparationResult(True, desc)
    return SeparationResult(False, None)


def oracle_separated(u: MatrixTuple, v: MatrixTuple) -> SeparationResult:
    """Disagreement on the generating catalog of the tuples' characteristic."""
    _check_pair(u, v)
    return separated_by(u, v, generating_set(u.d, u.field.characteristic))


@dataclass(frozen=True)
class Prop4Result:
    hypothesis_holds: bool
    conclusion_holds: bool


_WORD_1234 = None


def prop4_check(u: MatrixTuple, v: MatrixTuple) -> Prop4Result:
    """For d=4: does agreement on the separating catalog come with agreement
    on the full 4-cycle trace tr(X1 X2 X3 X4)?"""
    _check_pair(u, v)
    if u.d != 4:
        raise DimensionMismatchError(f"requires d=4, got d={u.d}")
    hyp = not separated_by(u, v, separating_set(4)).separated
    global _WORD_1234
    if _WORD_1234 is None:
        _WORD_1234 = kernel.compile_words([(1, 2, 3, 4)], 4)
    qu = kernel.evaluate(u.field, kernel.flatten(u), _WORD_1234)[0]
    qv = kernel.evaluate(v.field, kernel.flatten(v), _WORD_1234)[0]
    return Prop4Result(hyp, qu == qv)
