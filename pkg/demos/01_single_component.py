"""
A single fixed-point component, end to end
==========================================

Build one length-two component, read off its invariants, and see how
the classification labels it.
"""

from chainatlas import (
    classify,
    dim_fixed,
    dim_z,
    generic_h0,
    make_component,
    weight_table,
    wobbly_divisor_range,
)

# ranks (2,1), degrees (0,1), genus 2: the smallest wobbly example
c = make_component(2, 1, 0, 1, 2)

print("component:", c)
print("total rank n =", c.n, " total degree d =", c.d)
print("delta =", c.delta, " tau =", c.tau)

# dimensions of the fixed locus and its downward flow
print("dim fixed locus      =", dim_fixed(c))
print("dim downward flow    =", dim_z(c))
print("generic h^0          =", generic_h0(c))

# where the wobbly divisors live
print("wobbly divisor range =", wobbly_divisor_range(2, 1, c.g))

# the circle action weights on the upward directions and on the base
wt = weight_table(c)
print("upward weights (weight, dim):", wt.t_plus)
print("base weights   (weight, dim):", wt.base)
print("both columns sum to n^2(g-1)+1 =", wt.t_plus_total)

# rank three: wobbliness is equivalent to a non-polynomial multiplicity,
# and for this component the multiplicity indeed fails to be polynomial
record = classify(c)
print("status:", record.wobbly_status)
print("note:  ", record.provenance)
