"""Pure-Python fingerprint kernel.

Mirrors the compiled extension in ``_kernel.pyx``: the same flat integer
program format, the same results.  Programs are sequences of ops over a
flattened tuple of d row-major 2x2 matrices:

    0, s, i1..is   -> trace of the word product M_{i1} ... M_{is}
    1, i           -> det of M_i
    2, m, i1,j1,.. -> sum over m pairs of trace(M_i M_j)

Matrix indices inside programs are 0-based.
"""

from __future__ import annotations


def eval_program_prime(prog, entries, p):
    out = []
    pos, n = 0, len(prog)
    while pos < n:
        op = prog[pos]
        if op == 0:
            s = prog[pos + 1]
            base = prog[pos + 2] * 4
            a, b, c, d = entries[base : base + 4]
            for t in range(pos + 3, pos + 2 + s):
                base = prog[t] * 4
                e, f, g, h = entries[base : base + 4]
                a, b, c, d = (
                    (a * e + b * g) % p,
                    (a * f + b * h) % p,
                    (c * e + d * g) % p,
                    (c * f + d * h) % p,
                )
            out.append((a + d) % p)
            pos += 2 + s
        elif op == 1:
            base = prog[pos + 1] * 4
            a, b, c, d = entries[base : base + 4]
            out.append((a * d - b * c) % p)
            pos += 2
        else:
            m = prog[pos + 1]
            acc = 0
            for t in range(m):
                i = prog[pos + 2 + 2 * t] * 4
                j = prog[pos + 3 + 2 * t] * 4
                a, b, c, d = entries[i : i + 4]
                e, f, g, h = entries[j : j + 4]
                acc += a * e + b * g + c * f + d * h
            out.append(acc % p)
            pos += 2 + 2 * m
    return out


def eval_program_int(prog, entries):
    out = []
    pos, n = 0, len(prog)
    while pos < n:
        op = prog[pos]
        if op == 0:
            s = prog[pos + 1]
            base = prog[pos + 2] * 4
            a, b, c, d = entries[base : base + 4]
            for t in range(pos + 3, pos + 2 + s):
                base = prog[t] * 4
                e, f, g, h = entries[base : base + 4]
                a, b, c, d = (
                    a * e + b * g,
                    a * f + b * h,
                    c * e + d * g,
                    c * f + d * h,
                )
            out.append(a + d)
            pos += 2 + s
        elif op == 1:
            base = prog[pos + 1] * 4
            a, b, c, d = entries[base : base + 4]
            out.append(a * d - b * c)
            pos += 2
        else:
            m = prog[pos + 1]
            acc = 0
            for t in range(m):
                i = prog[pos + 2 + 2 * t] * 4
                j = prog[pos + 3 + 2 * t] * 4
                a, b, c, d = entries[i : i + 4]
                e, f, g, h = entries[j : j + 4]
                acc += a * e + b * g + c * f + d * h
            out.append(acc)
            pos += 2 + 2 * m
    return out


def eval_program_gf2k(prog, entries, exp, log, n1):
    """n1 = 2^k - 1; exp/log are the shared discrete-log tables."""

    def mul(x, y):
        if x == 0 or y == 0:
            return 0
        return exp[log[x] + log[y]]

    out = []
    pos, n = 0, len(prog)
    while pos < n:
        op = prog[pos]
        if op == 0:
            s = prog[pos + 1]
            base = prog[pos + 2] * 4
            a, b, c, d = entries[base : base + 4]
            for t in range(pos + 3, pos + 2 + s):
                base = prog[t] * 4
                e, f, g, h = entries[base : base + 4]
                a, b, c, d = (
                    mul(a, e) ^ mul(b, g),
                    mul(a, f) ^ mul(b, h),
                    mul(c, e) ^ mul(d, g),
                    mul(c, f) ^ mul(d, h),
                )
            out.append(a ^ d)
            pos += 2 + s
        elif op == 1:
            base = prog[pos + 1] * 4
            a, b, c, d = entries[base : base + 4]
            out.append(mul(a, d) ^ mul(b, c))
            pos += 2
        else:
            m = prog[pos + 1]
            acc = 0
            for t in range(m):
                i = prog[pos + 2 + 2 * t] * 4
                j = prog[pos + 3 + 2 * t] * 4
                a, b, c, d = entries[i : i + 4]
                e, f, g, h = entries[j : j + 4]
                acc ^= mul(a, e) ^ mul(b, g) ^ mul(c, f) ^ mul(d, h)
            out.append(acc)
            pos += 2 + 2 * m
    return out


def eval_program_generic(prog, entries, field):
    add, mul, sub = field.add, field.mul, field.sub
    out = []
    pos, n = 0, len(prog)
    while pos < n:
        op = prog[pos]
        if op == 0:
            s = prog[pos + 1]
            base = prog[pos + 2] * 4
            a, b, c, d = entries[base : base + 4]
            for t in range(pos + 3, pos + 2 + s):
                base = prog[t] * 4
                e, f, g, h = entries[base : base + 4]
                a, b, c, d = (
                    add(mul(a, e), mul(b, g)),
                    add(mul(a, f), mul(b, h)),
                    add(mul(c, e), mul(d, g)),
                    add(mul(c, f), mul(d, h)),
                )
            out.append(add(a, d))
            pos += 2 + s
        elif op == 1:
            base = prog[pos + 1] * 4
            a, b, c, d = entries[base : base + 4]
            out.append(sub(mul(a, d), mul(b, c)))
            pos += 2
        else:
            m = prog[pos + 1]
            acc = field.zero
            for t in range(m):
                i = prog[pos + 2 + 2 * t] * 4
                j = prog[pos + 3 + 2 * t] * 4
                a, b, c, d = entries[i : i + 4]
                e, f, g, h = entries[j : j + 4]
                acc = add(acc, add(add(mul(a, e), mul(b, g)), add(mul(c, f), mul(d, h))))
            out.append(acc)
            pos += 2 + 2 * m
    return out
