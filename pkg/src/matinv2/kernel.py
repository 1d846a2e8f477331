"""Kernel backend selection and program compilation.

The compiled Cython kernel is preferred when importable; the pure-Python
twin in ``_kernel_py`` is the fallback.  ``MATINV2_KERNEL=python`` in the
environment forces the fallback (used by tests and the benchmark).

Rationals always run on Python paths: tuples with integer entries take a
plain-int program (compiled when products provably fit in 63 bits), general
fractions take the object path.  Finite fields run on the compiled kernel
whenever it is available.
"""

from __future__ import annotations

import os
from array import array
from fractions import Fraction
from functools import lru_cache

from . import _kernel_py
from .errors import IndexOutOfRangeError
from .fields import Field

try:  # pragma: no cover - depends on the build environment
    from . import _kernel as _compiled
except ImportError:  # pragma: no cover
    _compiled = None

if os.environ.get("MATINV2_KERNEL", "") == "python":
    _compiled = None

OP_TR, OP_DET, OP_PAIRSUM = 0, 1, 2


def backend_name() -> str:
    return "compiled" if _compiled is not None else "python"


def compile_words(words, d: int) -> tuple:
    """Program computing the trace of each word (1-based index tuples)."""
    prog: list[int] = []
    max_len = 1
    for w in words:
        for i in w:
            if not 1 <= i <= d:
                raise IndexOutOfRangeError(f"index {i} outside [1, {d}]")
        prog.append(OP_TR)
        prog.append(len(w))
        prog.extend(i - 1 for i in w)
        max_len = max(max_len, len(w))
    return _freeze(prog, max_len)


def compile_descriptors(descriptors, d: int) -> tuple:
    """Program evaluating a descriptor catalog in order."""
    prog: list[int] = []
    max_len = 1
    for desc in descriptors:
        if desc.kind == "tr":
            for i in desc.data:
                if not 1 <= i <= d:
                    raise IndexOutOfRangeError(f"index {i} outside [1, {d}]")
            prog.append(OP_TR)
            prog.append(len(desc.data))
            prog.extend(i - 1 for i in desc.data)
            max_len = max(max_len, len(desc.data))
        elif desc.kind == "det":
            (i,) = desc.data
            if not 1 <= i <= d:
                raise IndexOutOfRangeError(f"index {i} outside [1, {d}]")
            prog.append(OP_DET)
            prog.append(i - 1)
            max_len = max(max_len, 2)
        else:
            (k,) = desc.data
            pairs = [(i, k - i) for i in range(max(1, k - d), k // 2 + (k % 2)) if k - i <= d]
            pairs = [(i, j) for i, j in pairs if i < j]
            prog.append(OP_PAIRSUM)
            prog.append(len(pairs))
            for i, j in pairs:
                prog.append(i - 1)
                prog.append(j - 1)
            max_len = max(max_len, 2)
    return _freeze(prog, max_len)


def _freeze(prog: list[int], max_len: int):
    return (tuple(prog), array("l", prog), max_len)


@lru_cache(maxsize=None)
def descriptor_program(descriptors: tuple, d: int):
    return compile_descriptors(descriptors, d)


def flatten(u) -> list:
    out = []
    for m in u.mats:
        out.extend(m.entries())
    return out


def _int_bound_ok(entries, max_len: int) -> bool:
    m = max((abs(e) for e in entries), default=0)
    if m == 0:
        return True
    # entry growth: products of s matrices stay below 2^(s-1) * m^s;
    # pairsums add at most 2*d of the length-2 bounds
    bound = (2 ** (max_len - 1)) * (m**max_len) * 4 * (len(entries) // 4 + 1)
    return bound < 2**62


def evaluate(field: Field, entries, program) -> list:
    """Run a compiled program over flattened raw entries; returns raw values."""
    prog_tuple, prog_arr, max_len = program
    kind = field.spec.kind
    if kind == "prime":
        p = field.p
        if _compiled is not None and p < 2**31:
            return _compiled.eval_program_prime(prog_arr, array("q", entries), p)
        return _kernel_py.eval_program_prime(prog_tuple, entries, p)
    if kind == "gf2k":
        if _compiled is not None:
            return _compiled.eval_program_gf2k(
                prog_arr, array("q", entries), field._exp, field._log
            )
        return _kernel_py.eval_program_gf2k(
            prog_tuple, entries, field._exp, field._log, field.order - 1
        )
    # rationals: integer fast path when exact
    if all(e.denominator == 1 for e in entries):
        ints = [e.numerator for e in entries]
        if _compiled is not None and _int_bound_ok(ints, max_len):
            vals = _compiled.eval_program_int(prog_arr, array("q", ints))
        else:
            vals = _kernel_py.eval_program_int(prog_tuple, ints)
        return [Fraction(v) for v in vals]
    return _kernel_py.eval_program_generic(prog_tuple, entries, field)
