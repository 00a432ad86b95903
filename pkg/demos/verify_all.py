"""Run every verification sweep up to rank 5 and count failures.

The question sweep is expected to report the non-minuscule misses."""

import time

from cocharpairs.sweeps import VERIFIERS

for name, fn in VERIFIERS.items():
    t = time.perf_counter()
    bad = fn(max_rank=5)
    print(f"{name:10s} {'ok' if not bad else f'{len(bad)} failures'}  {time.perf_counter() - t:.2f}s")
