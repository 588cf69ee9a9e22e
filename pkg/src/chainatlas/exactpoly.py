"""Exact arithmetic for sparse Laurent polynomials in one variable t.

Coefficients are arbitrary-precision integers and exponents are exact
rationals, so every identity that holds here holds on the nose, not up to
rounding.  Two layers are provided.

``SparseLaurent``
    An immutable Laurent polynomial: a finite set of terms ``c * t^e`` with
    ``c`` a nonzero integer and ``e`` an integer or ``Fraction``.  Supports
    ring operations, exact division (``exact_div``) and substitution
    ``t -> t^k``.

``FactoredExpression``
    A formal product ``t^q * prod_i base_i^{k_i}`` with rational ``q`` and
    integer (possibly negative) ``k_i``.  This is the shape in which
    equivariant multiplicities arrive: a monomial prefix times powers of
    q-integers and small polynomials.  Negative powers make it a rational
    function; ``expand`` multiplies the positive part out and performs the
    exact divisions, and equality is decided by cross multiplication, so
    two factorisations of the same function always compare equal.

The q-integer ``[m] = 1 + t + ... + t^{m-1}`` is the basic building block
and gets its own constructor ``q_int``.

>>> q_int(3)
SparseLaurent('1 + t + t^2')
>>> exact_div(q_int(2) * q_int(3), q_int(3))
SparseLaurent('1 + t')
>>> exact_div(q_int(3), q_int(2)) is None
True
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from operator import add, sub
from typing import Iterable, Iterator, Mapping, Optional, Union

Exponent = Union[int, Fraction]

# Dense coefficient lists are used for products and quotients whenever the
# exponent span (after clearing denominators) stays below this bound;
# beyond it we fall back to term-by-term arithmetic.
_DENSE_SPAN = 1 << 20


def _as_exponent(e: object) -> Exponent:
    """Normalise an exponent: integers stay ``int``, non-integers ``Fraction``."""
    if isinstance(e, bool):
        raise TypeError("exponent must be an integer or Fraction, not bool")
    if isinstance(e, int):
        return e
    if isinstance(e, Fraction):
        return int(e) if e.denominator == 1 else e
    raise TypeError(f"exponent must be an integer or Fraction, got {type(e).__name__}")


def _exponent_str(e: Exponent) -> str:
    if isinstance(e, Fraction):
        return f"({e})"
    return str(e) if e >= 0 else f"({e})"


@dataclass(frozen=True)
class SparseLaurent:
    """An immutable sparse Laurent polynomial with integer coefficients.

    ``terms`` is a tuple of ``(exponent, coefficient)`` pairs in strictly
    increasing exponent order with no zero coefficients; the zero
    polynomial is the empty tuple.  The constructor accepts any iterable
    of pairs and normalises (merging duplicate exponents).

    >>> SparseLaurent([(0, 1), (1, 2), (2, 1)])
    SparseLaurent('1 + 2*t + t^2')
    >>> SparseLaurent([(Fraction(1, 2), 3), (0, -1)])
    SparseLaurent('-1 + 3*t^(1/2)')
    >>> SparseLaurent([(1, 1), (1, -1)])
    SparseLaurent('0')
    """

    terms: tuple[tuple[Exponent, int], ...] = ()

    def __post_init__(self) -> None:
        merged: dict[Exponent, int] = {}
        for e, c in self.terms:
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"coefficient must be an integer, got {c!r}")
            e = _as_exponent(e)
            acc = merged.get(e, 0) + c
            if acc:
                merged[e] = acc
            elif e in merged:
                del merged[e]
        object.__setattr__(self, "terms", tuple(sorted(merged.items())))

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "SparseLaurent":
        return cls(())

    @classmethod
    def one(cls) -> "SparseLaurent":
        return cls(((0, 1),))

    @classmethod
    def t(cls) -> "SparseLaurent":
        return cls(((1, 1),))

    @classmethod
    def monomial(cls, coeff: int, exponent: Exponent = 0) -> "SparseLaurent":
        return cls(((exponent, coeff),))

    @classmethod
    def from_dict(cls, d: Mapping[Exponent, int]) -> "SparseLaurent":
        return cls(tuple(d.items()))

    # ---- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == ((0, 1),)

    def as_monomial(self) -> Optional[tuple[int, Exponent]]:
        """Return ``(coeff, exponent)`` when this is a single term, else None."""
        if len(self.terms) == 1:
            e, c = self.terms[0]
            return (c, e)
        return None

    def valuation(self) -> Exponent:
        """Smallest exponent.  Raises on the zero polynomial."""
        if not self.terms:
            raise ValueError("the zero polynomial has no valuation")
        return self.terms[0][0]

    def degree(self) -> Exponent:
        """Largest exponent.  Raises on the zero polynomial."""
        if not self.terms:
            raise ValueError("the zero polynomial has no degree")
        return self.terms[-1][0]

    def coefficient(self, e: Exponent) -> int:
        e = _as_exponent(e)
        for ee, c in self.terms:
            if ee == e:
                return c
        return 0

    def value_at_one(self) -> int:
        """The integer value at t = 1, i.e. the sum of the coefficients."""
        return sum(c for _, c in self.terms)

    def exponent_denominator(self) -> int:
        """Least common denominator of all exponents (1 for honest polynomials)."""
        den = 1
        for e, _ in self.terms:
            if isinstance(e, Fraction):
                den = den * e.denominator // math.gcd(den, e.denominator)
        return den

    def is_integral_polynomial(self) -> bool:
        """True when every exponent is a nonnegative integer."""
        return all(isinstance(e, int) and e >= 0 for e, _ in self.terms)

    # ---- ring operations ----------------------------------------------

    def __add__(self, other: "SparseLaurent") -> "SparseLaurent":
        if not isinstance(other, SparseLaurent):
            return NotImplemented
        d = dict(self.terms)
        for e, c in other.terms:
            acc = d.get(e, 0) + c
            if acc:
                d[e] = acc
            elif e in d:
                del d[e]
        return SparseLaurent(tuple(d.items()))

    def __neg__(self) -> "SparseLaurent":
        return SparseLaurent(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "SparseLaurent") -> "SparseLaurent":
        if not isinstance(other, SparseLaurent):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: object) -> "SparseLaurent":
        if isinstance(other, int) and not isinstance(other, bool):
            if other == 0:
                return SparseLaurent.zero()
            return SparseLaurent(tuple((e, c * other) for e, c in self.terms))
        if not isinstance(other, SparseLaurent):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return SparseLaurent.zero()
        dense = _dense_pair(self, other)
        if dense is not None:
            den, (oa, ca), (ob, cb) = dense
            return _from_dense(_dense_mul(ca, cb), oa + ob, den)
        d: dict[Exponent, int] = {}
        for ea, a in self.terms:
            for eb, b in other.terms:
                e = _as_exponent(ea + eb)
                acc = d.get(e, 0) + a * b
                if acc:
                    d[e] = acc
                elif e in d:
                    del d[e]
        return SparseLaurent(tuple(d.items()))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SparseLaurent":
        if not isinstance(k, int) or isinstance(k, bool):
            raise TypeError("exponent of ** must be an integer")
        if k < 0:
            raise ValueError("negative powers are FactoredExpression territory")
        if k == 0:
            return SparseLaurent.one()
        mono = self.as_monomial()
        if mono is not None:
            c, e = mono
            return SparseLaurent.monomial(c**k, _as_exponent(e * k))
        if len(self.terms) == 2:
            # binomial theorem, one term per summand
            (e0, c0), (e1, c1) = self.terms
            terms = []
            for j in range(k + 1):
                terms.append(
                    (_as_exponent(e0 * (k - j) + e1 * j), math.comb(k, j) * c0 ** (k - j) * c1**j)
                )
            return SparseLaurent(tuple(terms))
        result = SparseLaurent.one()
        square = self
        while k:
            if k & 1:
                result = result * square
            k >>= 1
            if k:
                square = square * square
        return result

    def shift(self, e: Exponent) -> "SparseLaurent":
        """Multiply by the monomial t^e."""
        e = _as_exponent(e)
        return SparseLaurent(tuple((_as_exponent(ee + e), c) for ee, c in self.terms))

    def compose_power(self, k: Exponent) -> "SparseLaurent":
        """Substitute t -> t^k for a nonzero rational k.

        >>> q_int(2).compose_power(3)
        SparseLaurent('1 + t^3')
        >>> q_int(2).compose_power(3).compose_power(Fraction(1, 3))
        SparseLaurent('1 + t')
        """
        k = Fraction(k)
        if k == 0:
            raise ValueError("substitution t -> t^0 is not invertible")
        return SparseLaurent(tuple((_as_exponent(e * k), c) for e, c in self.terms))

    # ---- rendering -----------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for e, c in self.terms:
            if e == 0:
                body = str(abs(c))
            else:
                tpow = "t" if e == 1 else f"t^{_exponent_str(e)}"
                body = tpow if abs(c) == 1 else f"{abs(c)}*{tpow}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"SparseLaurent('{self}')"


def q_int(m: int) -> SparseLaurent:
    """The q-integer [m] = 1 + t + ... + t^(m-1).

    >>> q_int(1)
    SparseLaurent('1')
    >>> q_int(4)
    SparseLaurent('1 + t + t^2 + t^3')
    >>> q_int(0)
    Traceback (most recent call last):
        ...
    ValueError: q_int is defined for m >= 1, got 0
    """
    if not isinstance(m, int) or isinstance(m, bool):
        raise TypeError("q_int expects an integer")
    if m <= 0:
        raise ValueError(f"q_int is defined for m >= 1, got {m}")
    return SparseLaurent(tuple((i, 1) for i in range(m)))


def q_int_span(p: SparseLaurent) -> Optional[int]:
    """Return m when p equals the q-integer [m], else None."""
    if not p.terms:
        return None
    m = len(p.terms)
    return m if p.terms == tuple((i, 1) for i in range(m)) else None


# ---- dense helpers ------------------------------------------------------
#
# Products and exact quotients run over plain coefficient lists: exponents
# are cleared to a common denominator ``den`` and shifted so the list
# starts at the valuation.  All hot paths (powers of 1 +- t^k and of
# q-integers) reduce to linear passes over these lists.


def _common_denominator(*polys: SparseLaurent) -> int:
    den = 1
    for p in polys:
        d = p.exponent_denominator()
        den = den * d // math.gcd(den, d)
    return den


def _to_dense(p: SparseLaurent, den: int) -> tuple[int, list[int]]:
    """Return ``(offset, coeffs)`` with p = sum coeffs[i] * t^((offset+i)/den)."""
    exps = []
    for e, _ in p.terms:
        scaled = e * den
        f = Fraction(scaled)
        if f.denominator != 1:
            raise ValueError("denominator does not clear all exponents")
        exps.append(int(f))
    off = exps[0]
    coeffs = [0] * (exps[-1] - off + 1)
    for idx, (_, c) in zip(exps, p.terms):
        coeffs[idx - off] = c
    return off, coeffs


def _from_dense(coeffs: list[int], off: int, den: int) -> SparseLaurent:
    if den == 1:
        return SparseLaurent(tuple((off + i, c) for i, c in enumerate(coeffs) if c))
    return SparseLaurent(
        tuple((_as_exponent(Fraction(off + i, den)), c) for i, c in enumerate(coeffs) if c)
    )


def _dense_pair(a: SparseLaurent, b: SparseLaurent):
    """Dense views of a and b over a shared denominator, or None when too wide."""
    den = _common_denominator(a, b)
    span_a = (a.degree() - a.valuation()) * den
    span_b = (b.degree() - b.valuation()) * den
    if span_a + span_b > _DENSE_SPAN:
        return None
    return den, _to_dense(a, den), _to_dense(b, den)


def _dense_mul(ca: list[int], cb: list[int]) -> list[int]:
    if len(ca) < len(cb):
        ca, cb = cb, ca
    out = [0] * (len(ca) + len(cb) - 1)
    nz_b = [(j, y) for j, y in enumerate(cb) if y]
    if len(nz_b) == 2 and nz_b[0][0] == 0:
        # two-term multiplier c0 + ck t^k: two C-speed passes
        (_, c0), (k, ck) = nz_b
        if c0 == 1:
            out[: len(ca)] = ca
        else:
            out[: len(ca)] = [c0 * x for x in ca]
        if ck == -1:
            out[k:] = list(map(sub, out[k:], ca))
        else:
            tail = out[k:]
            out[k:] = [u + ck * v for u, v in zip(tail, ca)]
        return out
    for i, x in enumerate(ca):
        if x:
            for j, y in nz_b:
                out[i + j] += x * y
    return out


def _dense_div(ca: list[int], cb: list[int]) -> Optional[list[int]]:
    """Exact quotient of coefficient lists, or None.

    Requires cb[0] != 0 and cb[-1] != 0 (monomial content already stripped).
    The quotient must have integer coefficients and zero remainder.
    """
    la, lb = len(ca), len(cb)
    if lb == 1:
        c = cb[0]
        out = []
        for x in ca:
            q, r = divmod(x, c)
            if r:
                return None
            out.append(q)
        return out
    if la < lb:
        return None
    qlen = la - lb + 1
    nz = [(j, y) for j, y in enumerate(cb) if y]
    if len(nz) == 2 and abs(cb[0]) == 1:
        return _div_two_term(ca, cb[0], nz[1][1], nz[1][0], qlen)
    if abs(cb[0]) == 1:
        return _div_synthetic_low(ca, nz, qlen)
    if abs(cb[-1]) == 1:
        rq = _div_synthetic_low(
            ca[::-1], [(lb - 1 - j, y) for j, y in reversed(nz)], qlen
        )
        return None if rq is None else rq[::-1]
    return _div_fractions(ca, cb, qlen)


def _div_two_term(ca: list[int], b0: int, bk: int, k: int, qlen: int) -> Optional[list[int]]:
    # q_j = (a_j - bk q_{j-k}) / b0 with b0 = +-1: one accumulate per residue class
    n = len(ca)
    q = [0] * n
    s = bk * b0
    for r in range(min(k, n)):
        seg = ca[r::k]
        if b0 == -1:
            seg = [-x for x in seg]
        if s == -1:
            q[r::k] = accumulate(seg)
        elif s == 1:
            # q_j = a_j - q_{j-k} is an alternating prefix sum: flip the odd
            # entries, accumulate, flip back
            seg[1::2] = [-x for x in seg[1::2]]
            acc = list(accumulate(seg))
            acc[1::2] = [-x for x in acc[1::2]]
            q[r::k] = acc
        else:
            q[r::k] = accumulate(seg, lambda p, x: x - s * p)
    if any(q[qlen:]):
        return None
    del q[qlen:]
    return q


def _div_synthetic_low(ca: list[int], nz: list[tuple[int, int]], qlen: int) -> Optional[list[int]]:
    # low-end synthetic division; nz lists (index, coeff) of the divisor, nz[0] = (0, +-1)
    b0 = nz[0][1]
    tail = nz[1:]
    r = list(ca)
    q = [0] * qlen
    for j in range(qlen):
        c = r[j]
        if c:
            if b0 == -1:
                c = -c
            q[j] = c
            for i, bv in tail:
                r[j + i] -= c * bv
    if any(r[qlen:]):
        return None
    return q


def _div_fractions(ca: list[int], cb: list[int], qlen: int) -> Optional[list[int]]:
    r = [Fraction(x) for x in ca]
    blead = cb[-1]
    lb = len(cb)
    q: list[Fraction] = [Fraction(0)] * qlen
    for j in range(qlen - 1, -1, -1):
        c = r[j + lb - 1] / blead
        if c:
            q[j] = c
            for i, bv in enumerate(cb):
                if bv:
                    r[j + i] -= c * bv
    if any(r[: lb - 1]):
        return None
    out = []
    for c in q:
        if c.denominator != 1:
            return None
        out.append(int(c))
    return out


def exact_div(a: SparseLaurent, b: SparseLaurent) -> Optional[SparseLaurent]:
    """Exact quotient a / b, or None when b does not divide a.

    Division is exact when a = q * b for a Laurent polynomial q with
    integer coefficients; rational exponents are handled by clearing the
    common exponent denominator first.  Monomials are units, so any
    monomial factor of b only shifts the quotient.

    >>> exact_div(q_int(6), q_int(3))
    SparseLaurent('1 + t^3')
    >>> exact_div(q_int(3), q_int(2)) is None
    True
    >>> exact_div(SparseLaurent.t(), SparseLaurent([(Fraction(1, 2), 1)]))
    SparseLaurent('t^(1/2)')
    """
    if not isinstance(a, SparseLaurent) or not isinstance(b, SparseLaurent):
        raise TypeError("exact_div expects SparseLaurent operands")
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return SparseLaurent.zero()
    dense = _dense_pair(a, b)
    if dense is None:
        raise ValueError("exponent span too wide for exact division")
    den, (oa, ca), (ob, cb) = dense
    q = _dense_div(ca, cb)
    if q is None:
        return None
    return _from_dense(q, oa - ob, den)


# ---- factored expressions ----------------------------------------------


@dataclass(frozen=True, eq=False)
class FactoredExpression:
    """A formal product ``t^prefix_exponent * prod base^power``.

    Bases are nonzero, non-monomial Laurent polynomials and powers are
    nonzero integers; monomial factors of the shape t^e are absorbed into
    the prefix on construction, and integer constants of magnitude > 1
    stay as degree-zero factors since the prefix only carries powers of t.
    Factors with equal bases are merged and the list is kept in a
    canonical order, so construction order never matters.

    Equality is meant in the ring of Laurent polynomials with rational
    exponents: two expressions are equal exactly when their expansions
    agree, which is decided by cross multiplication and therefore works
    even when a negative power does not divide out.

    Instances are immutable but unhashable: hashing would have to agree
    with expansion equality, which is not worth the cost.
    """

    prefix_exponent: Exponent = 0
    factors: tuple[tuple[SparseLaurent, int], ...] = ()

    __hash__ = None  # equality is by expansion; do not use as a dict key

    def __post_init__(self) -> None:
        prefix = _as_exponent(self.prefix_exponent)
        merged: dict[tuple, list] = {}
        scalar = 1
        for base, power in self.factors:
            if not isinstance(base, SparseLaurent):
                raise TypeError("factor bases must be SparseLaurent")
            if not isinstance(power, int) or isinstance(power, bool):
                raise TypeError("factor powers must be integers")
            if base.is_zero():
                raise ValueError("zero polynomial cannot be a factor base")
            if power == 0:
                continue
            mono = base.as_monomial()
            if mono is not None:
                c, e = mono
                prefix = _as_exponent(prefix + e * power)
                if c == 1:
                    continue
                if c == -1:
                    scalar *= (-1) ** (power & 1)
                    continue
                base = SparseLaurent.monomial(c)
            key = base.terms
            slot = merged.setdefault(key, [base, 0])
            slot[1] += power
        if scalar != 1:
            key = SparseLaurent.monomial(scalar).terms
            slot = merged.setdefault(key, [SparseLaurent.monomial(scalar), 0])
            slot[1] += 1
        factors = tuple(
            (base, power) for _, (base, power) in sorted(merged.items()) if power != 0
        )
        object.__setattr__(self, "prefix_exponent", prefix)
        object.__setattr__(self, "factors", factors)

    # ---- constructors -------------------------------------------------

    @classmethod
    def one(cls) -> "FactoredExpression":
        return cls(0, ())

    @classmethod
    def from_poly(cls, p: SparseLaurent, power: int = 1) -> "FactoredExpression":
        return cls(0, ((p, power),))

    # ---- algebra -------------------------------------------------------

    def __mul__(self, other: "FactoredExpression") -> "FactoredExpression":
        if not isinstance(other, FactoredExpression):
            return NotImplemented
        return FactoredExpression(
            _as_exponent(self.prefix_exponent + other.prefix_exponent),
            self.factors + other.factors,
        )

    def inverse(self) -> "FactoredExpression":
        return FactoredExpression(
            _as_exponent(-self.prefix_exponent),
            tuple((b, -k) for b, k in self.factors),
        )

    def __pow__(self, k: int) -> "FactoredExpression":
        if not isinstance(k, int) or isinstance(k, bool):
            raise TypeError("exponent of ** must be an integer")
        return FactoredExpression(
            _as_exponent(self.prefix_exponent * k),
            tuple((b, p * k) for b, p in self.factors),
        )

    def times_prefix(self, e: Exponent) -> "FactoredExpression":
        """Multiply by the monomial t^e."""
        return FactoredExpression(_as_exponent(self.prefix_exponent + e), self.factors)

    def numerator_denominator(self) -> tuple[SparseLaurent, SparseLaurent]:
        """Expanded positive part (without the prefix) and expanded negative part."""
        num = _positive_product([(b, k) for b, k in self.factors if k > 0])
        den = _positive_product([(b, -k) for b, k in self.factors if k < 0])
        return num, den

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FactoredExpression):
            return NotImplemented
        num_s, den_s = self.numerator_denominator()
        num_o, den_o = other.numerator_denominator()
        left = (num_s * den_o).shift(self.prefix_exponent)
        right = (num_o * den_s).shift(other.prefix_exponent)
        return left == right

    # ---- rendering ------------------------------------------------------

    def __str__(self) -> str:
        return format_factored(self)

    def __repr__(self) -> str:
        return f"FactoredExpression('{format_factored(self)}')"


@dataclass(frozen=True)
class Expansion:
    """Result of :func:`expand`.

    ``body`` is the expanded polynomial when every negative power divides
    out, in which case ``failed_factor`` is None; otherwise ``body`` is
    None and ``failed_factor`` is the first factor whose division failed.
    """

    prefix: Exponent
    body: Optional[SparseLaurent]
    failed_factor: Optional[tuple[SparseLaurent, int]] = None

    @property
    def ok(self) -> bool:
        return self.body is not None


# Cache for expanded products of non-binomial positive factors.  Keyed by
# the canonical factor tuple; bounded to keep long sweeps from hoarding.
_PRODUCT_CACHE: dict[tuple, SparseLaurent] = {}
_PRODUCT_CACHE_LIMIT = 512


def _two_term_pass(ca: list[int], c0: int, ck: int, k: int) -> list[int]:
    """One multiplication of a dense list by ``c0 + ck t^k`` (k > 0)."""
    out = ca + [0] * k if c0 == 1 else [c0 * x for x in ca] + [0] * k
    if ck == -1:
        out[k:] = map(sub, out[k:], ca)
    elif ck == 1:
        out[k:] = map(add, out[k:], ca)
    else:
        out[k:] = map(add, out[k:], [ck * x for x in ca])
    return out


def _positive_product(factors: Iterable[tuple[SparseLaurent, int]]) -> SparseLaurent:
    """Expand ``prod base^power`` for positive powers.

    The product over the multi-term bases is cached on their canonical
    factor tuple; one- and two-term bases fold in afterwards as scalar
    multiples and linear passes, so repeated powers of binomials such as
    1 - t^k or 1 + t cost one pass each.
    """
    scalar = 1
    binomial: list[tuple[SparseLaurent, int]] = []
    rest_list: list[tuple[tuple, int]] = []
    for b, k in factors:
        nterms = len(b.terms)
        if nterms == 1:
            c, e = b.terms[0][1], b.terms[0][0]
            if e != 0:
                raise ValueError("monomial factor with nonzero exponent in product")
            scalar *= c**k
        elif nterms == 2:
            binomial.append((b, k))
        else:
            rest_list.append((b.terms, k))
    rest = tuple(sorted(rest_list))
    if rest:
        cached = _PRODUCT_CACHE.get(rest)
        if cached is None:
            cached = SparseLaurent.one()
            for terms, k in rest:
                cached = cached * (SparseLaurent(terms) ** k)
            if len(_PRODUCT_CACHE) >= _PRODUCT_CACHE_LIMIT:
                _PRODUCT_CACHE.clear()
            _PRODUCT_CACHE[rest] = cached
        out = cached
    else:
        out = SparseLaurent.one()
    if binomial:
        den = _common_denominator(out, *[b for b, _ in binomial])
        off, coeffs = _to_dense(out, den)
        for b, k in binomial:
            (e0, c0), (e1, c1) = b.terms
            step_f = Fraction((e1 - e0) * den)
            lead_f = Fraction(e0 * den)
            step, lead = int(step_f), int(lead_f)
            off += lead * k
            for _ in range(k):
                coeffs = _two_term_pass(coeffs, c0, c1, step)
        out = _from_dense(coeffs, off, den)
    if scalar != 1:
        out = out * scalar
    return out


def expand(f: FactoredExpression) -> Expansion:
    """Multiply the positive factors out and divide by the negative ones.

    Factors are processed in the canonical order fixed by the
    constructor; since divisibility of the full product does not depend
    on the order, the outcome is order-independent, only the reported
    failing factor can differ.

    >>> f = FactoredExpression(2, ((q_int(2), 1), (q_int(3), 1)))
    >>> (expand(f).prefix, str(expand(f).body))
    (2, '1 + 2*t + 2*t^2 + t^3')
    >>> g = FactoredExpression(0, ((q_int(3), 1), (q_int(2), -1)))
    >>> expand(g).ok
    False
    """
    positives = [(b, k) for b, k in f.factors if k > 0]
    negatives = [(b, -k) for b, k in f.factors if k < 0]
    body = _positive_product(positives)
    if not negatives:
        return Expansion(f.prefix_exponent, body)
    den = _common_denominator(body, *[b for b, _ in negatives])
    off, coeffs = _to_dense(body, den)
    for b, reps in negatives:
        ob, cb = _to_dense(b, den)
        for _ in range(reps):
            q = _dense_div(coeffs, cb)
            if q is None:
                return Expansion(f.prefix_exponent, None, (b, -reps))
            coeffs = q
            off -= ob
    return Expansion(f.prefix_exponent, _from_dense(coeffs, off, den))


def is_polynomial(f: FactoredExpression) -> bool:
    """True when f is an honest polynomial in t.

    Requires the negative powers to divide out, the prefix to be a
    nonnegative integer, and every exponent of the expanded body to be a
    nonnegative integer.

    >>> is_polynomial(FactoredExpression(0, ((q_int(2), 3),)))
    True
    >>> is_polynomial(FactoredExpression(-1, ((q_int(2), 3),)))
    False
    >>> is_polynomial(FactoredExpression(0, ((q_int(3), 1), (q_int(2), -1))))
    False
    """
    ex = expand(f)
    if not ex.ok:
        return False
    if not (isinstance(ex.prefix, int) and ex.prefix >= 0):
        return False
    assert ex.body is not None
    return ex.body.is_integral_polynomial()


def eval_at_one(f: FactoredExpression) -> Optional[Fraction]:
    """Exact value of f at t = 1, or None when a pole at 1 survives.

    Each base is written as (1 - u)^v * reduced with u the appropriate
    root of t (u = t^(1/den) when fractional exponents occur) and
    reduced(1) != 0; the (1 - u) exponents are summed against the factor
    powers.  A negative total is a genuine pole, a positive total gives 0,
    and a zero total gives the finite product of the reduced values.

    >>> eval_at_one(FactoredExpression(0, ((q_int(3), 5),)))
    Fraction(243, 1)
    >>> eval_at_one(FactoredExpression(0, ((q_int(2), -1), (q_int(4), 1))))
    Fraction(2, 1)
    >>> eval_at_one(FactoredExpression(0, ((SparseLaurent([(0, 1), (1, -1)]), -1),))) is None
    True
    """
    den = 1
    for b, _ in f.factors:
        d = b.exponent_denominator()
        den = den * d // math.gcd(den, d)
    unit = SparseLaurent([(0, 1), (Fraction(1, den) if den > 1 else 1, -1)])
    vanishing_order = 0
    finite = Fraction(1)
    for b, k in f.factors:
        v = 0
        reduced = b
        while reduced.value_at_one() == 0:
            nxt = exact_div(reduced, unit)
            assert nxt is not None  # value 0 at t=1 means (1 - u) divides
            reduced = nxt
            v += 1
        vanishing_order += v * k
        val = reduced.value_at_one()
        finite *= Fraction(val) ** k
    if vanishing_order < 0:
        return None
    if vanishing_order > 0:
        return Fraction(0)
    return finite


# ---- rendering -----------------------------------------------------------


def format_factored(f: FactoredExpression) -> str:
    """Render a factored expression, naming q-integer bases in brackets.

    Bases equal to [m] for m >= 3 print as ``[m]``; the binomial 1 + t
    keeps its literal spelling.

    >>> format_factored(FactoredExpression(2, ((q_int(3), 5), (q_int(2), -1))))
    't^2·[3]^5·(1+t)^-1'
    >>> format_factored(FactoredExpression.one())
    '1'
    """
    parts: list[str] = []
    if f.prefix_exponent != 0:
        e = f.prefix_exponent
        parts.append("t" if e == 1 else f"t^{_exponent_str(e)}")
    brackets: list[str] = []
    others: list[str] = []
    for base, power in f.factors:
        m = q_int_span(base)
        if m is not None and m >= 3:
            brackets.append(f"[{m}]" if power == 1 else f"[{m}]^{power}")
        else:
            name = "(" + str(base).replace(" ", "") + ")"
            others.append(name if power == 1 else f"{name}^{power}")
    parts.extend(brackets)
    parts.extend(others)
    return "·".join(parts) if parts else "1"


def format_poly(p: SparseLaurent) -> str:
    """Plain-text rendering of an expanded polynomial."""
    return str(p)


# ---- serialization -------------------------------------------------------


def poly_to_json(p: SparseLaurent) -> list[dict[str, str]]:
    """Terms as ``{"num", "den", "coeff"}`` records with decimal strings."""
    out = []
    for e, c in p.terms:
        e = Fraction(e)
        out.append({"num": str(e.numerator), "den": str(e.denominator), "coeff": str(c)})
    return out


def poly_from_json(doc: Iterable[Mapping[str, str]]) -> SparseLaurent:
    terms = []
    for rec in doc:
        e = Fraction(int(rec["num"]), int(rec["den"]))
        terms.append((_as_exponent(e), int(rec["coeff"])))
    return SparseLaurent(tuple(terms))


def factored_to_json(f: FactoredExpression) -> dict:
    return {
        "prefix": str(Fraction(f.prefix_exponent)),
        "factors": [[poly_to_json(b), k] for b, k in f.factors],
    }


def factored_from_json(doc: Mapping) -> FactoredExpression:
    prefix = _as_exponent(Fraction(doc["prefix"]))
    factors = tuple((poly_from_json(b), int(k)) for b, k in doc["factors"])
    return FactoredExpression(prefix, factors)


def _doctest_iterdoc() -> Iterator[str]:  # pragma: no cover - doctest hook
    yield __doc__ or ""
