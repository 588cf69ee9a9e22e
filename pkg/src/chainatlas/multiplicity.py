"""Virtual equivariant multiplicities of length-two components.

The multiplicity of a component E is the ratio of equivariant characters

    m_E(t) = chi(Sym (T_E^+)*) / chi(Sym B*),

computable in two independent ways.  ``m_from_weights`` evaluates the
defining ratio straight from a weight table, as a product of factors
(1 - t^w)^dim.  ``m_E_closed`` uses the closed form

    m_E(t) = (1 + t)^e * p(t),
    e = (g-1) * (-3*n0*n1 + 2*floor(n/2)^2 + floor(n/2)) + delta,

with p(t) a delta-independent product of q-integer factors.  The two
routes must agree and are kept separate so that one can check the other.

Since p(-1) != 0, the multiplicity is a polynomial exactly when e >= 0,
an inequality in delta alone; components violating it are wobbly, which
is what makes the multiplicity a practical detector in low rank.
"""

from __future__ import annotations

from typing import Optional

from .components import (
    ComponentDescriptor,
    WeightTable,
    descriptor_to_json,
    is_valid,
)
from .exactpoly import (
    FactoredExpression,
    SparseLaurent,
    eval_at_one,
    format_factored,
    is_polynomial,
    q_int,
)


def _half_term(n: int) -> int:
    """2*floor(n/2)^2 + floor(n/2), the recurring half-rank constant."""
    h = n // 2
    return 2 * h * h + h


def e_exponent(c: ComponentDescriptor) -> int:
    """The exponent of (1 + t) in the closed form of m_E."""
    s = c.standard()
    if not is_valid(s):
        raise ValueError(f"invalid component {c}")
    return (s.g - 1) * (-3 * s.n0 * s.n1 + _half_term(s.n)) + s.delta


def p_poly(n: int, g: int) -> FactoredExpression:
    """The delta-independent factor p(t) of the closed form.

    p(t) = prod_{odd m <= n} [m]^((2m-1)(g-1))
         * prod_{even m <= n} ([m] / (1+t))^((2m-1)(g-1)),

    where [m] is the q-integer; the m = 1, 2 factors are trivial and
    dropped.  p(-1) != 0, so p never cancels a (1 + t) pole.
    """
    if n < 2:
        raise ValueError(f"rank must be at least 2, got {n}")
    if g < 2:
        raise ValueError(f"genus must be at least 2, got {g}")
    factors: list[tuple[SparseLaurent, int]] = []
    one_plus_t = q_int(2)
    for m in range(3, n + 1):
        k = (2 * m - 1) * (g - 1)
        factors.append((q_int(m), k))
        if m % 2 == 0:
            factors.append((one_plus_t, -k))
    return FactoredExpression(0, tuple(factors))


def m_E_closed(c: ComponentDescriptor) -> FactoredExpression:
    """Closed form (1 + t)^e * p(t) of the multiplicity of a valid component."""
    s = c.standard()
    e = e_exponent(s)
    out = p_poly(s.n, s.g)
    if e:
        out = out * FactoredExpression(0, ((q_int(2), e),))
    return out


def m_from_weights(w: WeightTable) -> FactoredExpression:
    """The defining character ratio evaluated from a weight table.

    chi(Sym V*) for a space with weight table {(w_i, dim_i)} is
    prod (1 - t^{w_i})^{-dim_i}, so the multiplicity ratio becomes
    prod_base (1 - t^i)^{dim} * prod_{T+} (1 - t^k)^{-dim}.
    """
    factors: list[tuple[SparseLaurent, int]] = []
    for wt, dim in w.base:
        if dim:
            factors.append((SparseLaurent([(0, 1), (wt, -1)]), dim))
    for wt, dim in w.t_plus:
        if dim:
            factors.append((SparseLaurent([(0, 1), (wt, -1)]), -dim))
    return FactoredExpression(0, tuple(factors))


def is_mult_polynomial_analytic(c: ComponentDescriptor) -> bool:
    """Polynomiality of m_E decided by the delta inequality alone.

    m_E is a polynomial iff delta >= (3*n0*n1 - 2*floor(n/2)^2
    - floor(n/2)) * (g-1), i.e. iff the (1 + t) exponent e is >= 0.
    """
    s = c.standard()
    if not is_valid(s):
        raise ValueError(f"invalid component {c}")
    return s.delta >= (3 * s.n0 * s.n1 - _half_term(s.n)) * (s.g - 1)


def detection_partitions(n: int) -> list[int]:
    """The n1 <= n/2 whose components can have non-polynomial multiplicity.

    The non-polynomial window in delta is nonempty for some genus exactly
    when n0^2 < n^2 - 2*floor(n/2)^2 - floor(n/2) with n0 = n - n1, an
    exact integer-square comparison (no radicals needed).

    >>> detection_partitions(3)
    [1]
    >>> detection_partitions(4)
    [2]
    >>> detection_partitions(2)
    []
    """
    if n < 2:
        raise ValueError(f"rank must be at least 2, got {n}")
    bound = n * n - _half_term(n)
    return [n1 for n1 in range(1, n // 2 + 1) if (n - n1) ** 2 < bound]


def mult_report_row(c: ComponentDescriptor) -> dict:
    """One report row: exponent, factored form, polynomiality, value at 1.

    ``m_E_at_1`` is the multiplicity of the component in the nilpotent
    cone when m_E is a polynomial, and None otherwise (the value at 1
    then has no such reading).
    """
    m = m_E_closed(c)
    poly = is_polynomial(m)
    at_one: Optional[str] = None
    if poly:
        v = eval_at_one(m)
        assert v is not None and v.denominator == 1
        at_one = str(v.numerator)
    return {
        "component": descriptor_to_json(c),
        "e_exponent": e_exponent(c),
        "m_E": format_factored(m),
        "polynomial": poly,
        "m_E_at_1": at_one,
    }
