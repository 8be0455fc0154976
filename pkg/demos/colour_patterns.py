"""Colour patterns of nilpotent orbits in gl_n.

Each box of the staircase tableau stands for a shifted invariant.  White
boxes vanish on the orbit, red boxes have differentials in the centraliser,
and green boxes form a complete commuting family.  This script prints a few
patterns and confirms the counting rules on every partition of n <= 8.
"""

from poissonlab.mf_gt import GREEN, RED, WHITE, closed_form_pattern, paint_pattern, s_values
from poissonlab.partitions import Partition, partitions


def show(parts):
    r = Partition(parts)
    pat = paint_pattern(r)
    print(f"partition {r}  (s-values {s_values(r)})")
    print(pat.to_ascii())
    print(f"  white {pat.count(WHITE)}, red {pat.count(RED)}, green {pat.count(GREEN)}"
          f" = dim O / 2 = {r.orbit_dim() // 2}\n")


if __name__ == "__main__":
    for parts in [(3, 2, 1), (4, 1), (2, 2, 2, 1), (5,), (1, 1, 1, 1)]:
        show(parts)
    total = 0
    for n in range(1, 9):
        for r in partitions(n):
            pat = paint_pattern(r)
            assert pat == closed_form_pattern(r)
            assert pat.count(RED) == n and pat.count(GREEN) == r.orbit_dim() // 2
            total += 1
    print(f"painting recipe agrees with the closed form on all {total} partitions of n <= 8")
