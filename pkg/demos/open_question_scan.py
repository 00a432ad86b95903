"""Scan the sweep for groups where every class is hit by a strictly
decreasing pair. Minuscule mu always works; larger weights do not."""

from cocharpairs import test_open_question
from cocharpairs.sweeps import sweep_cases

fails = 0
for case in sweep_cases(5):
    ok, uncovered, _ = test_open_question(case.rd, case.mu)
    if not ok:
        fails += 1
        print(case, "misses", [tuple(str(x) for x in b.newton) for b in uncovered])
print(f"{fails} of {len(sweep_cases(5))} cases have uncovered classes")
