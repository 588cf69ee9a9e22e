"""
Which partitions can a non-polynomial multiplicity detect?
==========================================================

For each rank n, only some partitions (n0, n1) admit a delta whose
multiplicity fails to be polynomial.  The qualifying n1 satisfy a
strict inequality between integer squares, so the cutoff is computed
exactly, with no floating point.
"""

from chainatlas import detection_partitions

print("rank  qualifying n1")
for n in range(2, 13):
    hits = detection_partitions(n)
    print(f"{n:>4}  {hits if hits else '(none)'}")

print()

# the rank-4 cutoff, done by hand: n1 qualifies when (n - n1)^2 < n^2 - 10
n = 4
bound = n * n - (2 * (n // 2) ** 2 + n // 2)
print(f"rank {n}: compare (n - n1)^2 against {bound}")
for n1 in (1, 2):
    lhs = (n - n1) ** 2
    verdict = "qualifies" if lhs < bound else "does not qualify"
    print(f"  n1 = {n1}: {lhs} vs {bound} -> {verdict}")
print("the threshold sits strictly between 1 and 2, matching the table")
