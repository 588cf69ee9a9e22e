"""
Enumerating the components of one moduli space
==============================================

Fix the rank, degree and genus of the ambient moduli space and list
every length-two fixed-point component inside it, with labels.
"""

from chainatlas import classify, enumerate_components

N, D, G = 4, 1, 2

print(f"components of type (n0,n1) inside rank {N}, degree {D}, genus {G}:")
print()
print(f"{'(n0,n1)':>8} {'(d0,d1)':>10} {'delta':>6} {'tau':>8}  status")

for c in enumerate_components(N, D, G):
    record = classify(c)
    status = type(record.wobbly_status).__name__
    detail = getattr(record.wobbly_status, "case", "")
    if detail:
        status += f"({detail})"
    print(
        f"({c.n0},{c.n1})".rjust(8),
        f"({c.d0},{c.d1})".rjust(10),
        str(c.delta).rjust(6),
        str(c.tau).rjust(8),
        "", status,
    )

print()
print("dual orientations (n0 < n1) describe the same geometry with the")
print("two summands swapped; delta and tau are shared with the standard")
print("representative.")
