"""
Two routes to the equivariant multiplicity
==========================================

The multiplicity of a component admits a short closed form in q-integer
brackets, and an independent weight-table route as a quotient of
cyclotomic-style products.  Both are exact; they must agree factor by
factor after expansion.
"""

from chainatlas import (
    admissible_deltas,
    component_with_delta,
    expand,
    format_factored,
    is_polynomial,
    m_E_closed,
    m_from_weights,
    weight_table,
)

# one partition, every admissible delta, genus 2
N0, N1, G = 2, 1, 2

print(f"partition ({N0},{N1}), genus {G}")
print()

for delta in admissible_deltas(N0, N1, G):
    c = component_with_delta(N0, N1, delta, G)

    closed = m_E_closed(c)
    oracle = m_from_weights(weight_table(c))

    # the two factored forms look nothing alike...
    print(f"delta = {delta}")
    print("  closed form :", format_factored(closed))
    print("  weight route:", format_factored(oracle))

    # ...but expand to the same Laurent polynomial, or fail identically
    ec, eo = expand(closed), expand(oracle)
    if ec.ok:
        same = ec.body.shift(ec.prefix) == eo.body.shift(eo.prefix)
        print("  expansions agree:", same)
        print("  expanded:", ec.body)
    else:
        print("  not a polynomial: a factor of (1+t) survives in the")
        print("  denominator, which flags the component as wobbly")
    print("  polynomial:", is_polynomial(closed))
    print()
