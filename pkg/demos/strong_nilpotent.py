"""Strongly nilpotent representatives.

For each partition r we build e in the nilpotent orbit O(r) of gl_n whose
south-east corners are all nilpotent.  The corner Jordan types follow the
collapse rule r -> (r_1 + r_2 - 1, r_3, ...), and the chain invariants have
exactly n + dim O / 2 independent differentials at e.
"""

from poissonlab.mf_gt import strongly_nilpotent
from poissonlab.partitions import partitions


def describe(r):
    cert = strongly_nilpotent(r)
    print(f"partition {r}:")
    for row in cert.e.to_strings():
        print("   " + " ".join(f"{v:>3}" for v in row))
    print("   corner types: " + " -> ".join(str(p) for p in cert.corner_partitions))
    print(f"   span {cert.dim_span} = n + dim O / 2, "
          f"meets the centraliser in {cert.dim_intersection_with_centralizer} = n\n")


if __name__ == "__main__":
    for r in [(2, 1), (3, 2), (2, 2, 1)]:
        describe(r)
    count = sum(1 for n in range(1, 6) for r in partitions(n) if strongly_nilpotent(r))
    print(f"all {count} partitions of n <= 5 certified")
