# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled fingerprint kernel; mirrors ``_kernel_py`` exactly.

Programs are flat int arrays over flattened row-major 2x2 matrices:
op 0 = trace of a word product, op 1 = det, op 2 = a sum of pair traces.
The prime path requires p < 2^31 (products stay below 2^62); the int path
requires the caller to have bounded the inputs so no product overflows.
"""


cdef inline unsigned long long gmul(long long[:] exp, long long[:] log,
                                    unsigned long long x, unsigned long long y) nogil:
    if x == 0 or y == 0:
        return 0
    return <unsigned long long> exp[log[x] + log[y]]


def eval_program_prime(long[:] prog, long long[:] entries, long long p_in):
    cdef unsigned long long p = <unsigned long long> p_in
    cdef Py_ssize_t pos = 0, n = prog.shape[0], base
    cdef long op, s, m, t
    cdef unsigned long long a, b, c, d, e, f, g, h, na, nb, nc, nd, acc
    out = []
    while pos < n:
        op = prog[pos]
        if op == 0:
            s = prog[pos + 1]
            base = prog[pos + 2] * 4
            a = entries[base]; b = entries[base + 1]
            c = entries[base + 2]; d = entries[base + 3]
            for t in range(3, 2 + s):
                base = prog[pos + t] * 4
                e = entries[base]; f = entries[base + 1]
                g = entries[base + 2]; h = entries[base + 3]
                na = (a * e + b * g) % p
                nb = (a * f + b * h) % p
                nc = (c * e + d * g) % p
                nd = (c * f + d * h) % p
                a = na; b = nb; c = nc; d = nd
            out.append((a + d) % p)
            pos += 2 + s
        elif op == 1:
            base = prog[pos + 1] * 4
            a = entries[base]; b = entries[base + 1]
            c = entries[base + 2]; d = entries[base + 3]
            out.append((a * d % p + p - b * c % p) % p)
            pos += 2
        else:
            m = prog[pos + 1]
            acc = 0
            for t in range(m):
                base = prog[pos + 2 + 2 * t] * 4
                a = entries[base]; b = entries[base + 1]
                c = entries[base + 2]; d = entries[base + 3]
                base = prog[pos + 3 + 2 * t] * 4
                e = entries[base]; f = entries[base + 1]
                g = entries[base + 2]; h = entries[base + 3]
                acc = (acc + a * e + b * g) % p
                acc = (acc + c * f + d * h) % p
            out.append(acc)
            pos += 2 + 2 * m
    return out


def eval_program_int(long[:] prog, long long[:] entries):
    cdef Py_ssize_t pos = 0, n = prog.shape[0], base
    cdef long op, s, m, t
    cdef long long a, b, c, d, e, f, g, h, na, nb, nc, nd, acc
    out = []
    while pos < n:
        op = prog[pos]
        if op == 0:
            s = prog[pos + 1]
            base = prog[pos + 2] * 4
            a = entries[base]; b = entries[base + 1]
            c = entries[base + 2]; d = entries[base + 3]
            for t in range(3, 2 + s):
                base = prog[pos + t] * 4
                e = entries[base]; f = entries[base + 1]
                g = entries[base + 2]; h = entries[base + 3]
                na = a * e + b * g
                nb = a * f + b * h
                nc = c * e + d * g
                nd = c * f + d * h
                a = na; b = nb; c = nc; d = nd
            out.append(a + d)
            pos += 2 + s
        elif op == 1:
            base = prog[pos + 1] * 4
            a = entries[base]; b = entries[base + 1]
            c = entries[base + 2]; d = entries[base + 3]
            out.append(a * d - b * c)
            pos += 2
        else:
            m = prog[pos + 1]
            acc = 0
            for t in range(m):
                base = prog[pos + 2 + 2 * t] * 4
                a = entries[base]; b = entries[base + 1]
                c = entries[base + 2]; d = entries[base + 3]
                base = prog[pos + 3 + 2 * t] * 4
                e = entries[base]; f = entries[base + 1]
                g = entries[base + 2]; h = entries[base + 3]
                acc += a * e + b * g + c * f + d * h
            out.append(acc)
            pos += 2 + 2 * m
    return out


def eval_program_gf2k(long[:] prog, long long[:] entries, long long[:] exp, long long[:] log):
    cdef Py_ssize_t pos = 0, n = prog.shape[0], base
    cdef long op, s, m, t
    cdef unsigned long long a, b, c, d, e, f, g, h, na, nb, nc, nd, acc
    out = []
    while pos < n:
        op = prog[pos]
        if op == 0:
            s = prog[pos + 1]
            base = prog[pos + 2] * 4
            a = entries[base]; b = entries[base + 1]
            c = entries[base + 2]; d = entries[base + 3]
            for t in range(3, 2 + s):
                base = prog[pos + t] * 4
                e = entries[base]; f = entries[base + 1]
                g = entries[base + 2]; h = entries[base + 3]
                na = gmul(exp, log, a, e) ^ gmul(exp, log, b, g)
                nb = gmul(exp, log, a, f) ^ gmul(exp, log, b, h)
                nc = gmul(exp, log, c, e) ^ gmul(exp, log, d, g)
                nd = gmul(exp, log, c, f) ^ gmul(exp, log, d, h)
                a = na; b = nb; c = nc; d = nd
            out.append(a ^ d)
            pos += 2 + s
        elif op == 1:
            base = prog[pos + 1] * 4
            a = entries[base]; b = entries[base + 1]
            c = entries[base + 2]; d = entries[base + 3]
            out.append(gmul(exp, log, a, d) ^ gmul(exp, log, b, c))
            pos += 2
        else:
            m = prog[pos + 1]
            acc = 0
            for t in range(m):
                base = prog[pos + 2 + 2 * t] * 4
                a = entries[base]; b = entries[base + 1]
                c = entries[base + 2]; d = entries[base + 3]
                base = prog[pos + 3 + 2 * t] * 4
                e = entries[base]; f = entries[base + 1]
                g = entries[base + 2]; h = entries[base + 3]
                acc ^= gmul(exp, log, a, e) ^ gmul(exp, log, b, g)
                acc ^= gmul(exp, log, c, f) ^ gmul(exp, log, d, h)
            out.append(acc)
            pos += 2 + 2 * m
    return out
