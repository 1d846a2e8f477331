#!/usr/bin/env python3
"""Benchmark the compiled fingerprint kernel against the pure-Python twin.

Workloads mirror the heavy acceptance configuration: full separating plus
generating catalogs on random d=6 tuples, per field kind.

    python benchmarks/bench_kernel.py [--iters N]
"""

import argparse
import random
import time
from array import array

from matinv2 import _kernel_py, kernel
from matinv2.fields import gf2k, prime_field, rationals
from matinv2.invariants import generating_set, separating_set

try:
    from matinv2 import _kernel as compiled
except ImportError:
    compiled = None


def workload(field, d, iters, rng):
    cat = separating_set(d) + generating_set(d, field.characteristic)
    prog_t, prog_a, _ = kernel.descriptor_program(cat, d)
    batches = []
    for _ in range(iters):
        entries = [field.random_element(rng) for _ in range(4 * d)]
        batches.append((entries, array("q", entries) if field.spec.kind != "rational" else None))
    return prog_t, prog_a, batches


def run_python(field, prog_t, batches):
    kind = field.spec.kind
    t0 = time.perf_counter()
    if kind == "prime":
        for entries, _ in batches:
            _kernel_py.eval_program_prime(prog_t, entries, field.p)
    elif kind == "gf2k":
        for entries, _ in batches:
            _kernel_py.eval_program_gf2k(prog_t, entries, field._exp, field._log, field.order - 1)
    else:
        for entries, _ in batches:
            _kernel_py.eval_program_int(prog_t, entries)
    return time.perf_counter() - t0


def run_compiled(field, prog_a, batches):
    kind = field.spec.kind
    t0 = time.perf_counter()
    if kind == "prime":
        for _, ea in batches:
            compiled.eval_program_prime(prog_a, ea, field.p)
    elif kind == "gf2k":
        for _, ea in batches:
            compiled.eval_program_gf2k(prog_a, ea, field._exp, field._log)
    else:
        for entries, _ in batches:
            compiled.eval_program_int(prog_a, array("q", entries))
    return time.perf_counter() - t0


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--iters", type=int, default=5000)
    parser.add_argument("--d", type=int, default=6)
    args = parser.parse_args()

    rng = random.Random(0)
    configs = [
        ("prime:101", prime_field(101)),
        ("gf2k:16", gf2k(16)),
        ("rational(ints)", rationals()),
    ]
    print(f"active backend: {kernel.backend_name()}; iters={args.iters}, d={args.d}")
    print(f"{'field':16s} {'python':>12s} {'compiled':>12s} {'speedup':>9s}")
    for label, field in configs:
        if field.spec.kind == "rational":
            batches_src = [[rng.randint(-3, 3) for _ in range(4 * args.d)] for _ in range(args.iters)]
            prog_t, prog_a, _ = kernel.descriptor_program(
                separating_set(args.d) + generating_set(args.d, 0), args.d
            )
            batches = [(b, None) for b in batches_src]
        else:
            prog_t, prog_a, batches = workload(field, args.d, args.iters, rng)
        t_py = run_python(field, prog_t, batches)
        if compiled is None:
            print(f"{label:16s} {t_py/args.iters*1e6:10.1f}us {'n/a':>12s} {'n/a':>9s}")
            continue
        t_c = run_compiled(field, prog_a, batches)
        print(
            f"{label:16s} {t_py/args.iters*1e6:10.1f}us {t_c/args.iters*1e6:10.1f}us "
            f"{t_py/t_c:8.1f}x"
        )


if __name__ == "__main__":
    main()
