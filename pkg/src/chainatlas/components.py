"""Fixed-point components of type (n0, n1) and their discrete invariants.

A length-two component is described by the ranks and degrees (n0, d0),
(n1, d1) of the two summands together with the genus g >= 2 of the curve.
Everything downstream is controlled by the single integer

    delta = d0*n1 - d1*n0 + 2*n0*n1*(g - 1),

which pins down the component inside the locus of fixed rank n = n0 + n1
and degree d = d0 + d1, and by the Toledo invariant

    tau = 2*(n1*d0 - n0*d1) / (n0 + n1).

Components with n0 >= n1 are taken as the standard orientation; a
descriptor with n0 < n1 is the dual of a standard one under the
involution (n0, n1, d0, d1) -> (n1, n0, -d1, -d0), which preserves delta
and tau.  All dimension formulas and the classification are evaluated on
the standard representative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union


@dataclass(frozen=True)
class ComponentDescriptor:
    """Ranks, degrees and genus of a length-two fixed-point component."""

    n0: int
    n1: int
    d0: int
    d1: int
    g: int

    def __post_init__(self) -> None:
        for name in ("n0", "n1", "d0", "d1", "g"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError(f"{name} must be an integer, got {v!r}")
        if self.n0 <= 0 or self.n1 <= 0:
            raise ValueError("ranks n0, n1 must be positive")
        if self.g < 2:
            raise ValueError(f"genus must be at least 2, got {self.g}")

    # ---- derived invariants -------------------------------------------

    @property
    def n(self) -> int:
        return self.n0 + self.n1

    @property
    def d(self) -> int:
        return self.d0 + self.d1

    @property
    def delta(self) -> int:
        return self.d0 * self.n1 - self.d1 * self.n0 + 2 * self.n0 * self.n1 * (self.g - 1)

    @property
    def tau(self) -> Fraction:
        return Fraction(2 * (self.n1 * self.d0 - self.n0 * self.d1), self.n)

    @property
    def orientation(self) -> str:
        return "standard" if self.n0 >= self.n1 else "dual"

    def dual(self) -> "ComponentDescriptor":
        """The image under (n0, n1, d0, d1) -> (n1, n0, -d1, -d0)."""
        return ComponentDescriptor(self.n1, self.n0, -self.d1, -self.d0, self.g)

    def standard(self) -> "ComponentDescriptor":
        """The standard-orientation representative (self when n0 >= n1)."""
        return self if self.n0 >= self.n1 else self.dual()


def make_component(n0: int, n1: int, d0: int, d1: int, g: int) -> ComponentDescriptor:
    """Build a descriptor, rejecting nonpositive ranks and g < 2."""
    return ComponentDescriptor(n0, n1, d0, d1, g)


def toledo_bound_check(c: ComponentDescriptor) -> bool:
    """Whether |tau| <= 2*min(n0, n1)*(g - 1)."""
    return abs(c.tau) <= 2 * min(c.n0, c.n1) * (c.g - 1)


def delta_bounds(n0: int, n1: int, g: int) -> tuple[int, int]:
    """Smallest and largest admissible delta for a standard pair n0 >= n1.

    The window is n1*(n0-n1)*(g-1) <= delta < 2*n0*n1*(g-1), with the
    lower bound strict when n0 > n1.  Returned as an inclusive pair.
    """
    if n0 < n1:
        raise ValueError("delta_bounds expects the standard orientation n0 >= n1")
    lower = n1 * (n0 - n1) * (g - 1)
    if n0 > n1:
        lower += 1
    return lower, 2 * n0 * n1 * (g - 1) - 1


def is_valid(c: ComponentDescriptor) -> bool:
    """Whether the component is nonempty.

    Checks the delta window together with the congruence
    delta = -n0*d + 2*n0*n1*(g-1) mod n, both on the standard
    representative; a descriptor and its dual always agree.
    """
    s = c.standard()
    lo, hi = delta_bounds(s.n0, s.n1, s.g)
    delta = s.delta
    if not lo <= delta <= hi:
        return False
    return (delta + s.n0 * s.d - 2 * s.n0 * s.n1 * (s.g - 1)) % s.n == 0


def admissible_deltas(n0: int, n1: int, g: int) -> list[int]:
    """All delta realised by some degree pair, for a standard pair n0 >= n1.

    Varying d sweeps the residue of delta through the multiples of
    gcd(n0, n1) mod n, so delta is realisable exactly when gcd(n0, n1)
    divides it.
    """
    lo, hi = delta_bounds(n0, n1, g)
    h = math.gcd(n0, n1)
    return [delta for delta in range(lo, hi + 1) if delta % h == 0]


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def component_with_delta(n0: int, n1: int, delta: int, g: int) -> ComponentDescriptor:
    """Some valid component with the given standard pair and delta.

    Solves d0*n1 - d1*n0 = delta - 2*n0*n1*(g-1) for a degree pair and
    raises ValueError when delta is out of range or not realisable.
    """
    r = delta - 2 * n0 * n1 * (g - 1)
    h, u, v = _egcd(n1, n0)
    if r % h:
        raise ValueError(f"delta={delta} is not realisable for ranks ({n0},{n1})")
    c = ComponentDescriptor(n0, n1, u * (r // h), -v * (r // h), g)
    if not is_valid(c):
        raise ValueError(f"delta={delta} is outside the valid window for ({n0},{n1},g={g})")
    return c


def enumerate_components(n: int, d: int, g: int) -> list[ComponentDescriptor]:
    """All valid components of total rank n and degree d, all orientations.

    For each ordered split (n0, n1) the congruence picks out the
    admissible delta, and the degree pair is recovered from
    d0 = (delta + n0*d - 2*n0*n1*(g-1)) / n.  Dual splits are enumerated
    through their standard representative and dualised back.  The result
    is duplicate-free and sorted by (n0, delta).
    """
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"total rank must be an integer >= 2, got {n}")
    if g < 2:
        raise ValueError(f"genus must be at least 2, got {g}")
    out: list[ComponentDescriptor] = []
    for n0 in range(1, n):
        n1 = n - n0
        dualise = n0 < n1
        if dualise:
            s0, s1, sd = n1, n0, -d
        else:
            s0, s1, sd = n0, n1, d
        lo, hi = delta_bounds(s0, s1, g)
        base = 2 * s0 * s1 * (g - 1)
        for delta in range(lo, hi + 1):
            if (delta + s0 * sd - base) % n:
                continue
            sd0 = (delta + s0 * sd - base) // n
            sd1 = sd - sd0
            c = ComponentDescriptor(s0, s1, sd0, sd1, g)
            if dualise:
                c = c.dual()
            assert is_valid(c)
            out.append(c)
    out.sort(key=lambda c: (c.n0, c.delta))
    assert len(set(out)) == len(out)
    return out


# ---- dimension formulas --------------------------------------------------


def _standard_valid(c: ComponentDescriptor) -> ComponentDescriptor:
    if not is_valid(c):
        raise ValueError(f"invalid component {c}")
    return c.standard()


def dim_fixed(c: ComponentDescriptor) -> int:
    """Dimension of the fixed-point component."""
    s = _standard_valid(c)
    return (s.n0**2 + s.n1**2 - s.n0 * s.n1) * (s.g - 1) + s.delta + 1


def dim_z(c: ComponentDescriptor) -> int:
    """Dimension of the closure of the attracting set.

    Above delta = n0*n1*(g-1) the attracting set has full dimension
    (n0^2 + n1^2)*(g-1) + 2; at or below it the generic fibre is a point
    and the dimension equals dim_fixed.
    """
    s = _standard_valid(c)
    if s.delta > s.n0 * s.n1 * (s.g - 1):
        return (s.n0**2 + s.n1**2) * (s.g - 1) + 2
    return dim_fixed(s)


def generic_h0(c: ComponentDescriptor) -> int:
    """Generic fibre dimension count h^0 for the attracting flow."""
    s = _standard_valid(c)
    excess = s.delta - s.n0 * s.n1 * (s.g - 1)
    return excess if excess > 0 else 1


def wobbly_divisor_range(n0: int, n1: int, g: int) -> tuple[int, int]:
    """Inclusive delta window in which the component can lie on a divisor.

    The window is n1*(n0-n1)*(g-1) <= delta <= n0*n1*(g-1) + 1, with the
    lower bound strict when n0 > n1.  Lying in the window is necessary
    for the downward flow to stay divisorial, not sufficient.
    """
    if n0 < n1:
        raise ValueError("wobbly_divisor_range expects the standard orientation")
    lower = n1 * (n0 - n1) * (g - 1)
    if n0 > n1:
        lower += 1
    return lower, n0 * n1 * (g - 1) + 1


def in_wobbly_divisor_range(c: ComponentDescriptor) -> bool:
    s = _standard_valid(c)
    lo, hi = wobbly_divisor_range(s.n0, s.n1, s.g)
    return lo <= s.delta <= hi


# ---- weight tables -------------------------------------------------------


@dataclass(frozen=True)
class WeightTable:
    """Weights and dimensions of the positive tangent spaces and the base.

    ``t_plus`` lists (weight, dimension) for the upward tangent weights,
    ``base`` the same for the weights on the invariant base directions.
    Both columns sum to n^2*(g-1) + 1 for a valid length-two component,
    a Lagrangian-type balance used as a cross-check downstream.
    """

    t_plus: tuple[tuple[int, int], ...]
    base: tuple[tuple[int, int], ...]

    @property
    def t_plus_total(self) -> int:
        return sum(dim for _, dim in self.t_plus)

    @property
    def base_total(self) -> int:
        return sum(dim for _, dim in self.base)


def weight_table(c: ComponentDescriptor) -> WeightTable:
    """The (weight, dimension) table of a valid length-two component.

    The upward part has weight 1 in dimension
    (n0^2 + n1^2 - n0*n1)*(g-1) + 1 + delta and weight 2 in dimension
    3*n0*n1*(g-1) - delta; the base carries weight i in dimension
    (2i-1)*(g-1) for i = 2..n and weight 1 in dimension g.
    """
    s = _standard_valid(c)
    g1 = s.g - 1
    w1 = (s.n0**2 + s.n1**2 - s.n0 * s.n1) * g1 + 1 + s.delta
    w2 = 3 * s.n0 * s.n1 * g1 - s.delta
    base = [(1, s.g)] + [(i, (2 * i - 1) * g1) for i in range(2, s.n + 1)]
    return WeightTable(t_plus=((1, w1), (2, w2)), base=tuple(base))


# ---- classification ------------------------------------------------------


@dataclass(frozen=True)
class Wobbly:
    """Definitely wobbly; ``case`` records which downward limit forces it."""

    case: str  # "I" or "II"

    def __post_init__(self) -> None:
        if self.case not in ("I", "II"):
            raise ValueError(f"case must be 'I' or 'II', got {self.case!r}")


@dataclass(frozen=True)
class WobblyIffNonPolynomial:
    """Rank three: wobbliness is equivalent to a non-polynomial multiplicity.

    ``resolved`` is the actual verdict: True when the multiplicity is not
    a polynomial, i.e. the component is wobbly.
    """

    resolved: bool


@dataclass(frozen=True)
class OutOfScope:
    """No verdict; ``reason`` says which hypothesis fails."""

    reason: str


WobblyStatus = Union[Wobbly, WobblyIffNonPolynomial, OutOfScope]


@dataclass(frozen=True)
class ClassificationRecord:
    component: ComponentDescriptor
    dim_fixed: int
    dim_z: int
    generic_h0: int
    in_wobbly_divisor_range: bool
    wobbly_status: WobblyStatus
    wobbly_type_hint: Optional[tuple[int, int, int, int]]
    provenance: str


def classify(c: ComponentDescriptor) -> ClassificationRecord:
    """Wobbliness verdict and numeric invariants of a valid component.

    Rank n > 3 components are always wobbly: case I when
    delta < 3*n1*(n0-n1)*(g-1) (the downward flow reaches a lower-delta
    length-two limit), case II otherwise (the limit is a length-four
    fixed point of type (n0-1, n1-1, 1, 1), recorded as the hint).  The
    (2,2) components need g > 2 for the case II argument.  Rank three
    reduces to polynomiality of the equivariant multiplicity and rank
    two is not classified here.
    """
    s = _standard_valid(c)
    n = s.n
    status: WobblyStatus
    hint: Optional[tuple[int, int, int, int]] = None
    if n == 2:
        status = OutOfScope("rank-two (1,1) components are not classified here")
        provenance = "no length-two classification in rank two"
    elif n == 3:
        from . import multiplicity  # deferred, multiplicity builds on this module

        status = WobblyIffNonPolynomial(resolved=not multiplicity.is_mult_polynomial_analytic(s))
        provenance = "rank three: wobbly exactly when the multiplicity is not a polynomial"
    elif s.n0 == 2 and s.n1 == 2 and s.g == 2:
        status = OutOfScope("the (2,2) wobbliness argument requires g > 2")
        provenance = "(2,2) at g = 2 is not covered"
    else:
        threshold = 3 * s.n1 * (s.n0 - s.n1) * (s.g - 1)
        if s.delta < threshold:
            status = Wobbly("I")
            provenance = "rank > 3 is wobbly, case I: flows to a lower-delta length-two limit"
        else:
            status = Wobbly("II")
            hint = (s.n0 - 1, s.n1 - 1, 1, 1)
            provenance = "rank > 3 is wobbly, case II: flows to a length-four limit"
    return ClassificationRecord(
        component=c,
        dim_fixed=dim_fixed(s),
        dim_z=dim_z(s),
        generic_h0=generic_h0(s),
        in_wobbly_divisor_range=in_wobbly_divisor_range(s),
        wobbly_status=status,
        wobbly_type_hint=hint,
        provenance=provenance,
    )


# ---- serialization -------------------------------------------------------


def descriptor_to_json(c: ComponentDescriptor) -> dict:
    doc = {
        "n0": c.n0,
        "n1": c.n1,
        "d0": c.d0,
        "d1": c.d1,
        "g": c.g,
        "n": c.n,
        "d": c.d,
        "delta": c.delta,
        "tau": str(c.tau),
        "orientation": c.orientation,
    }
    if c.orientation == "dual":
        s = c.standard()
        doc.update(
            n0_star=s.n0, n1_star=s.n1, d0_star=s.d0, d1_star=s.d1, delta_star=s.delta
        )
    return doc


def descriptor_from_json(doc: dict) -> ComponentDescriptor:
    return ComponentDescriptor(
        int(doc["n0"]), int(doc["n1"]), int(doc["d0"]), int(doc["d1"]), int(doc["g"])
    )


def status_to_json(status: WobblyStatus) -> dict:
    if isinstance(status, Wobbly):
        return {"kind": "wobbly", "case": status.case}
    if isinstance(status, WobblyIffNonPolynomial):
        return {"kind": "wobbly_iff_non_polynomial", "resolved": status.resolved}
    return {"kind": "out_of_scope", "reason": status.reason}


def classification_to_json(rec: ClassificationRecord) -> dict:
    return {
        "component": descriptor_to_json(rec.component),
        "dim_fixed": rec.dim_fixed,
        "dim_z": rec.dim_z,
        "generic_h0": rec.generic_h0,
        "in_wobbly_divisor_range": rec.in_wobbly_divisor_range,
        "wobbly_status": status_to_json(rec.wobbly_status),
        "wobbly_type_hint": list(rec.wobbly_type_hint) if rec.wobbly_type_hint else None,
        "provenance": rec.provenance,
    }
