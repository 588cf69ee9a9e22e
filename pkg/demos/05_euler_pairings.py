"""
Pairing full-flag chains against a component
============================================

A full-flag chain F is recorded by the degrees m_i of its defining
divisors.  Restricting the associated brane to a length-two component E
produces a pairing m_FE(t): a monomial prefix times a product of small
branch polynomials, one factor per divisor point.
"""

import json

from chainatlas import (
    ChainPoint,
    branch_polynomial,
    component_with_delta,
    epsilon,
    expand,
    fiber_weight,
    format_factored,
    m_FE,
    rank4_consistency,
)

E = component_with_delta(3, 1, 3, 2)
n = E.n

# the circle acts on the fiber of the flag at a divisor point with these
# weights; everything above slot zero is nonpositive
print("fiber weights for (3,1):", [str(fiber_weight(i, n, 3)) for i in range(n)])

# one divisor point in slot 1
F = ChainPoint(n, E.g, (0, 1, 0, 0))
pairing = m_FE(E, F)
print("chain m =", F.m)
print("epsilon =", epsilon(E, F))
print("m_FE    =", format_factored(pairing))

# the body always evaluates at t = 1 to a product of binomials
body = expand(pairing).body
print("body(1) =", body.value_at_one(), "= C(4,3)")

# each slot contributes its own branch polynomial
print("branch polynomials:", [str(branch_polynomial(i, 3, 1)) for i in range(n)])

# rank 4 cross-check: inferring the chain-side multiplicity from the two
# partitions must be delta-independent; comparing across partitions
# records a deterministic verdict either way
report = rank4_consistency(g_values=(2,), m_entries=(0, 1))
print()
print("rank-4 cross-check:")
print(json.dumps(report, indent=2, sort_keys=True))
