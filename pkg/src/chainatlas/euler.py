"""Equivariant Euler pairings against chain points of type (1, ..., 1).

A chain point F on the nilpotent cone is a fixed point whose successive
quotients all have rank one; it is determined by the genus and a vector
m = (m_0, ..., m_{n-1}) of nonnegative divisor degrees.  Pairing a
length-two component E against the hyperholomorphic brane supported on F
produces the equivariant multiplicity

    m_{F,E}(t) = t^{epsilon(E, F)} * prod_i b_i(t)^{m_i},

with explicit branch polynomials b_i depending only on (n0, n1, i), and
the reverse pairing m_{E,F} = m_E * m_{F,E} / m_F once the multiplicity
m_F of the chain point itself is known.  m_F is not derivable from the
data here; callers supply it (for rank four, transcribed literature
values are available through ``infer_mF_rank4`` and tested for internal
consistency rather than trusted).

Weights.  The normalised fixed-part weight of slot i is

    w(i) = C(n-i, 2) - C(n, 2) * C(n-1, n-i-1)

and the fiber weight w_i solves
w(i) = -n0*C(n-1, n-1-i) + (n-i)*C(n, n-i)*w_i.  Solving the defining
equation at i = 0 gives w_0 = n0/n; the literature computation instead
proceeds as if w_0 = 0.  Both conventions are implemented behind the
``w0_mode`` switch ("equation", the default and normative choice, or
"zero"), and every result records which one produced it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb
from typing import Optional, Sequence

from .components import (
    ComponentDescriptor,
    admissible_deltas,
    component_with_delta,
    is_valid,
)
from .exactpoly import (
    FactoredExpression,
    SparseLaurent,
    format_factored,
    q_int,
)
from .multiplicity import m_E_closed

W0_MODES = ("equation", "zero")


def _check_w0_mode(w0_mode: str) -> None:
    if w0_mode not in W0_MODES:
        raise ValueError(f"w0_mode must be one of {W0_MODES}, got {w0_mode!r}")


@dataclass(frozen=True)
class ChainPoint:
    """A type (1, ..., 1) fixed point: rank n, genus g, degrees m."""

    n: int
    g: int
    m: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"rank must be an integer >= 2, got {self.n}")
        if not isinstance(self.g, int) or self.g < 2:
            raise ValueError(f"genus must be an integer >= 2, got {self.g}")
        m = tuple(self.m)
        object.__setattr__(self, "m", m)
        if len(m) != self.n:
            raise ValueError(f"m must have length n = {self.n}, got {len(m)}")
        for v in m:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ValueError(f"entries of m must be nonnegative integers, got {v!r}")


def chainpoint_to_json(f: ChainPoint) -> dict:
    return {"n": f.n, "g": f.g, "m": list(f.m)}


def chainpoint_from_json(doc: dict) -> ChainPoint:
    return ChainPoint(int(doc["n"]), int(doc["g"]), tuple(int(v) for v in doc["m"]))


# ---- weights -------------------------------------------------------------


def weight_normalized(i: int, n: int) -> int:
    """w(i) = C(n-i, 2) - C(n, 2) * C(n-1, n-i-1) for 0 <= i <= n-1."""
    if not 0 <= i <= n - 1:
        raise ValueError(f"slot index must satisfy 0 <= i <= n-1, got i={i}, n={n}")
    return comb(n - i, 2) - comb(n, 2) * comb(n - 1, n - i - 1)


def fiber_weight(i: int, n: int, n0: int, w0_mode: str = "equation") -> Fraction:
    """The weight w_i of the fiber direction at slot i.

    Solves w(i) = -n0*C(n-1, n-1-i) + (n-i)*C(n, n-i)*w_i.  At i = 0 the
    equation gives n0/n; under ``w0_mode="zero"`` that value is replaced
    by 0, reproducing the literature computation.
    """
    _check_w0_mode(w0_mode)
    if not 0 <= i <= n - 1:
        raise ValueError(f"slot index must satisfy 0 <= i <= n-1, got i={i}, n={n}")
    if not 1 <= n0 <= n - 1:
        raise ValueError(f"summand rank must satisfy 1 <= n0 <= n-1, got n0={n0}")
    if i == 0 and w0_mode == "zero":
        return Fraction(0)
    return Fraction(
        weight_normalized(i, n) + n0 * comb(n - 1, n - 1 - i), (n - i) * comb(n, n - i)
    )


def nonpositivity_check(n: int, n0: int) -> bool:
    """Whether every fiber weight w_i with i >= 1 is <= 0.

    Nonpositivity away from slot 0 is what keeps the pairing exponents
    one-signed; this check makes the expectation testable instead of
    assumed.
    """
    return all(fiber_weight(i, n, n0) <= 0 for i in range(1, n))


# ---- the pairing ---------------------------------------------------------


def _standard_pair(E: ComponentDescriptor, F: ChainPoint) -> ComponentDescriptor:
    if not is_valid(E):
        raise ValueError(f"invalid component {E}")
    s = E.standard()
    if s.n != F.n:
        raise ValueError(f"rank mismatch: component has n={s.n}, chain point n={F.n}")
    if s.g != F.g:
        raise ValueError(f"genus mismatch: component has g={s.g}, chain point g={F.g}")
    return s


def epsilon(E: ComponentDescriptor, F: ChainPoint, w0_mode: str = "equation") -> Fraction:
    """The monomial exponent epsilon(E, F) of the pairing.

    epsilon = sum_{i < n0} m_i*(n0 - i) - sum_i m_i*(n - i)*w_i, with the
    fiber weights w_i in the chosen convention.
    """
    s = _standard_pair(E, F)
    n, n0 = s.n, s.n0
    total = Fraction(0)
    for i, mi in enumerate(F.m):
        if not mi:
            continue
        if i < n0:
            total += mi * (n0 - i)
        total -= mi * (n - i) * fiber_weight(i, n, n0, w0_mode)
    return total


def branch_polynomial(i: int, n0: int, n1: int) -> SparseLaurent:
    """The slot-i factor of the pairing for a component of type (n0, n1).

    Three ranges of i (standard orientation n0 >= n1):

        0 <= i < n1:   sum_{l=0}^{i}   C(n0, l+n0-i) C(n1, n1-l) t^l
        n1 <= i < n0:  sum_{l=0}^{n1}  C(n0, l+n0-i) C(n1, n1-l) t^l
        n0 <= i <= n-1: sum_{l=0}^{n-i} C(n0, l) C(n1, n-i-l) t^l

    The slot-0 polynomial is the constant 1.
    """
    if n0 < n1:
        raise ValueError("branch_polynomial expects the standard orientation n0 >= n1")
    n = n0 + n1
    if not 0 <= i <= n - 1:
        raise ValueError(f"slot index must satisfy 0 <= i <= n-1, got {i}")
    if i < n1:
        terms = [(l, comb(n0, l + n0 - i) * comb(n1, n1 - l)) for l in range(i + 1)]
    elif i < n0:
        terms = [(l, comb(n0, l + n0 - i) * comb(n1, n1 - l)) for l in range(n1 + 1)]
    else:
        terms = [(l, comb(n0, l) * comb(n1, n - i - l)) for l in range(n - i + 1)]
    return SparseLaurent(tuple(terms))


def m_FE(E: ComponentDescriptor, F: ChainPoint, w0_mode: str = "equation") -> FactoredExpression:
    """The pairing m_{F,E}(t) = t^epsilon * prod_i b_i(t)^{m_i}.

    The body is a product of branch polynomials with nonnegative integer
    coefficients; only the prefix can be fractional.
    """
    s = _standard_pair(E, F)
    factors = tuple(
        (branch_polynomial(i, s.n0, s.n1), mi) for i, mi in enumerate(F.m) if mi
    )
    return FactoredExpression(epsilon(E, F, w0_mode), factors)


def m_EF(
    E: ComponentDescriptor,
    F: ChainPoint,
    m_F: FactoredExpression,
    w0_mode: str = "equation",
) -> FactoredExpression:
    """The reverse pairing m_{E,F} = m_E * m_{F,E} / m_F.

    ``m_F`` is the multiplicity of the chain point itself and must be
    supplied by the caller; nothing here fabricates it.
    """
    if not isinstance(m_F, FactoredExpression):
        raise TypeError("m_F must be a FactoredExpression")
    return m_E_closed(E) * m_FE(E, F, w0_mode) * m_F.inverse()


# ---- rank-four transcriptions -------------------------------------------
#
# Printed bracket exponents of m_{E,F} for rank four, as published: each
# [k] carries an exponent  a*delta + b*(g-1) + sum_i c_i*m_i.  The sign
# slots below are the (bracket, i) positions whose printed sign the
# consistency solver is allowed to flip; the (2, 1) coefficient appears
# only in the (2,2) table and keeps its printed sign.

_PRINTED_RANK4: dict[tuple[int, int], dict[int, tuple[int, int, tuple[int, int, int, int]]]] = {
    (2, 2): {
        2: (1, -2, (0, 1, 1, 1)),
        3: (0, 5, (0, 0, -1, 0)),
        4: (0, 7, (0, -1, 1, 1)),
    },
    (3, 1): {
        2: (1, -1, (0, 0, 1, 1)),
        3: (0, 5, (0, 0, -1, 0)),
        4: (0, 7, (0, -1, 1, 1)),
    },
}

SIGN_SLOTS: tuple[tuple[int, int], ...] = ((2, 2), (2, 3), (3, 2), (4, 1), (4, 2), (4, 3))


def printed_m_EF_rank4(
    partition: tuple[int, int],
    delta: int,
    g: int,
    m: Sequence[int],
    signs: Optional[dict[tuple[int, int], int]] = None,
) -> FactoredExpression:
    """The published rank-four m_{E,F} with optional sign flips applied."""
    if tuple(partition) not in _PRINTED_RANK4:
        raise ValueError(f"partition must be (2,2) or (3,1), got {partition}")
    if len(m) != 4:
        raise ValueError(f"m must have length 4, got {len(m)}")
    table = _PRINTED_RANK4[tuple(partition)]
    factors = []
    for k, (a, b, coeffs) in table.items():
        exp = a * delta + b * (g - 1)
        for i, ci in enumerate(coeffs):
            if ci and signs and (k, i) in signs:
                ci *= signs[(k, i)]
            exp += ci * m[i]
        if exp:
            factors.append((q_int(k), exp))
    return FactoredExpression(0, tuple(factors))


def infer_mF_rank4(
    partition: tuple[int, int],
    delta: int,
    g: int,
    m: Sequence[int],
    w0_mode: str = "equation",
    signs: Optional[dict[tuple[int, int], int]] = None,
) -> FactoredExpression:
    """Solve the published rank-four m_{E,F} for the chain multiplicity m_F.

    m_F = m_E * m_{F,E} / m_{E,F}; with the printed right-hand side this
    should not depend on delta, and both partitions should produce the
    same m_F for the same chain point.  Neither property is assumed, both
    are checked by :func:`rank4_consistency`.
    """
    n0, n1 = partition
    if (n0, n1) not in _PRINTED_RANK4:
        raise ValueError(f"partition must be (2,2) or (3,1), got {partition}")
    m = tuple(m)
    if len(m) == 3:
        m = (0,) + m
    E = component_with_delta(n0, n1, delta, g)
    F = ChainPoint(4, g, m)
    printed = printed_m_EF_rank4((n0, n1), delta, g, m, signs)
    return m_E_closed(E) * m_FE(E, F, w0_mode) * printed.inverse()


def _first_delta(partition: tuple[int, int], g: int) -> int:
    return admissible_deltas(partition[0], partition[1], g)[0]


def rank4_consistency(
    g_values: Sequence[int] = (2, 3),
    m_entries: Sequence[int] = (0, 1, 2),
    w0_mode: str = "equation",
) -> dict:
    """Cross-examine the published rank-four pairings.

    For each genus and each chain vector (0, m1, m2, m3) the inferred
    m_F is computed for every admissible delta of both partitions.
    Delta-independence within a partition is a hard requirement; the
    cross-partition comparison is recorded as evidence, and on a
    mismatch the solver searches the 2^6 sign variants of the printed
    m-coefficients (applied to both tables at once) for one restoring
    agreement.
    """
    _check_w0_mode(w0_mode)
    delta_independent = {"2,2": True, "3,1": True}
    witness: Optional[dict] = None
    baseline: dict[tuple[int, tuple[int, ...]], dict[tuple[int, int], FactoredExpression]] = {}
    for g in g_values:
        for mvec in product(m_entries, repeat=3):
            m = (0,) + mvec
            per_partition: dict[tuple[int, int], FactoredExpression] = {}
            for partition in ((2, 2), (3, 1)):
                key = f"{partition[0]},{partition[1]}"
                deltas = admissible_deltas(partition[0], partition[1], g)
                first = infer_mF_rank4(partition, deltas[0], g, m, w0_mode)
                for delta in deltas[1:]:
                    if infer_mF_rank4(partition, delta, g, m, w0_mode) != first:
                        delta_independent[key] = False
                per_partition[partition] = first
            baseline[(g, m)] = per_partition
            if witness is None and per_partition[(2, 2)] != per_partition[(3, 1)]:
                witness = {
                    "g": g,
                    "m": list(m),
                    "inferred_from_22": format_factored(per_partition[(2, 2)]),
                    "inferred_from_31": format_factored(per_partition[(3, 1)]),
                }
    report: dict = {
        "w0_mode": w0_mode,
        "delta_independent": delta_independent,
        "status": "consistent" if witness is None else "discrepancy",
        "witness": witness,
        "variant_found": None,
    }
    if witness is None:
        return report
    # sign-variant search: one pattern applied to both printed tables
    for bits in range(1 << len(SIGN_SLOTS)):
        signs = {
            slot: (-1 if bits >> j & 1 else 1) for j, slot in enumerate(SIGN_SLOTS)
        }
        ok = True
        for (g, m), per_partition in baseline.items():
            d22 = _first_delta((2, 2), g)
            d31 = _first_delta((3, 1), g)
            a = infer_mF_rank4((2, 2), d22, g, m, w0_mode, signs)
            b = infer_mF_rank4((3, 1), d31, g, m, w0_mode, signs)
            if a != b:
                ok = False
                break
        if ok:
            report["variant_found"] = {
                str(slot): signs[slot] for slot in SIGN_SLOTS if signs[slot] == -1
            }
            break
    return report
