"""Laurent polynomials in one variable ``t`` over an exact coefficient ring.

Values are immutable.  Unit-class comparison (multiplication by
``eps * t**l``) is provided by :func:`normalize_unit`, :func:`poly_equiv`
and :func:`unit_between`.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Any, Iterable, Mapping

from .rings import ZZ, CoeffRing, IntegerRing, PrimeField, RingElem

__all__ = [
    "LaurentPoly",
    "RationalLaurent",
    "UnitMode",
    "normalize_unit",
    "poly_equiv",
    "unit_between",
    "substitute_scaled",
    "poly_gcd",
]


class UnitMode(Enum):
    SIGN_ONLY = "sign"
    FULL_UNITS = "full"

    @classmethod
    def default_for(cls, ring: CoeffRing) -> "UnitMode":
        return cls.FULL_UNITS if ring.is_field else cls.SIGN_ONLY


class LaurentPoly:
    """Finite sum ``sum c_e t^e`` with no stored zero coefficients."""

    __slots__ = ("ring", "_c", "_hash")

    def __init__(self, ring: CoeffRing, coeffs: Mapping[int, Any] | None = None, *,
                 _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self._c = coeffs
        else:
            c = {}
            for e, v in (coeffs or {}).items():
                v = ring.coerce(v)
                if not ring.is_zero(v):
                    c[int(e)] = v
            self._c = c
        self._hash = None

    # construction -----------------------------------------------------------
    @classmethod
    def from_list(cls, ring: CoeffRing, coeffs: Iterable[Any], shift: int = 0) -> "LaurentPoly":
        return cls(ring, {shift + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def zero(cls, ring: CoeffRing) -> "LaurentPoly":
        return cls(ring, {}, _trusted=True)

    @classmethod
    def constant(cls, ring: CoeffRing, c: Any = 1) -> "LaurentPoly":
        return cls(ring, {0: c})

    @classmethod
    def monomial(cls, ring: CoeffRing, e: int, c: Any = 1) -> "LaurentPoly":
        return cls(ring, {e: c})

    @classmethod
    def t(cls, ring: CoeffRing = ZZ) -> "LaurentPoly":
        return cls(ring, {1: 1})

    @classmethod
    def _raw(cls, ring, c: dict) -> "LaurentPoly":
        return cls(ring, c, _trusted=True)

    # basic queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def terms(self) -> dict[int, Any]:
        """Exponent -> raw payload (a copy)."""
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    @property
    def degree(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return max(self._c)

    @property
    def low(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no lowest exponent")
        return min(self._c)

    @property
    def span(self) -> int:
        return self.degree - self.low if self._c else -1

    @property
    def lead(self) -> Any:
        return self._c[self.degree]

    @property
    def trailing(self) -> Any:
        return self._c[self.low]

    def coefficient(self, e: int) -> RingElem:
        return RingElem(self.ring, self._c.get(e, self.ring.zero))

    def dense(self) -> tuple[int, list]:
        """(lowest exponent, coefficient list) with explicit zeros."""
        if not self._c:
            return 0, []
        lo, hi = self.low, self.degree
        z = self.ring.zero
        return lo, [self._c.get(e, z) for e in range(lo, hi + 1)]

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return LaurentPoly(self.ring, {0: self.ring.coerce(other)})

    def __add__(self, other):
        other = self._coerce(other)
        R = self.ring
        c = dict(self._c)
        for e, v in other._c.items():
            if e in c:
                s = R.add(c[e], v)
                if R.is_zero(s):
                    del c[e]
                else:
                    c[e] = s
            else:
                c[e] = v
        return LaurentPoly._raw(R, c)

    __radd__ = __add__

    def __neg__(self):
        R = self.ring
        return LaurentPoly._raw(R, {e: R.neg(v) for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, RingElem)):
            return self.scale(self.ring.coerce(other))
        other = self._coerce(other)
        R = self.ring
        if not self._c or not other._c:
            return LaurentPoly.zero(R)
        c: dict[int, Any] = {}
        add, mul, zero = R.add, R.mul, R.zero
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = add(c.get(e, zero), mul(v1, v2))
        return LaurentPoly._raw(R, {e: v for e, v in c.items() if not R.is_zero(v)})

    __rmul__ = __mul__

    def scale(self, u: Any) -> "LaurentPoly":
        R = self.ring
        if R.is_zero(u):
            return LaurentPoly.zero(R)
        c = {e: R.mul(v, u) for e, v in self._c.items()}
        return LaurentPoly._raw(R, {e: v for e, v in c.items() if not R.is_zero(v)})

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly._raw(self.ring, {e + k: v for e, v in self._c.items()})

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, v), = self._c.items()
            return LaurentPoly._raw(self.ring, {e * n: self.ring.pow(v, n)})
        result = LaurentPoly.constant(self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.ring == other.ring and self._c == other._c
        if isinstance(other, (int, RingElem)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._c.items())))
        return self._hash

    # maps -------------------------------------------------------------------
    def map_coeffs(self, fn, ring: CoeffRing | None = None) -> "LaurentPoly":
        ring = ring or self.ring
        return LaurentPoly(ring, {e: fn(v) for e, v in self._c.items()})

    def change_ring(self, ring: CoeffRing) -> "LaurentPoly":
        """Reduce (Z -> F_p) or embed (Z/F_p -> extension) coefficients."""
        src = self.ring
        if ring == src:
            return self
        if isinstance(src, (IntegerRing, PrimeField)):
            return LaurentPoly(ring, {e: ring.from_int(v) for e, v in self._c.items()})
        if ring == src.prime_ring:
            return LaurentPoly(ring, {e: ring.coerce(src.to_prime_ring(v)) for e, v in self._c.items()})
        raise TypeError(f"cannot map {src} to {ring}")

    def substitute_scaled(self, u: Any) -> "LaurentPoly":
        return substitute_scaled(self, u)

    def compose_power(self, k: int) -> "LaurentPoly":
        """p(t^k)."""
        return LaurentPoly._raw(self.ring, {e * k: v for e, v in self._c.items()})

    def frobenius(self, n: int = 1) -> "LaurentPoly":
        """Coefficients raised to p^n, variable replaced by t^{p^n}."""
        p = self.ring.characteristic
        if p == 0:
            raise ValueError("Frobenius needs positive characteristic")
        q = p ** n
        R = self.ring
        return LaurentPoly._raw(R, {e * q: R.pow(v, q) for e, v in self._c.items()})

    def evaluate(self, x: Any) -> Any:
        R = self.ring
        x = R.coerce(x)
        total = R.zero
        for e, v in self._c.items():
            total = R.add(total, R.mul(v, R.pow(x, e)))
        return total

    def __call__(self, x: Any) -> RingElem:
        return RingElem(self.ring, self.evaluate(x))

    def reversed(self) -> "LaurentPoly":
        """p(t^{-1})."""
        return self.compose_power(-1)

    # division ---------------------------------------------------------------
    def divmod(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Polynomial division of the t^0-normalized parts.

        Both operands are treated as ordinary polynomials (lowest exponent
        shifted to zero are *not* applied; negative exponents are rejected).
        Over Z the divisor's leading coefficient must divide each step.
        """
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        R = self.ring
        if self.is_zero():
            return self, self
        if self.low < 0 or other.low < 0:
            raise ValueError("divmod needs ordinary polynomials")
        rem = dict(self._c)
        dq, lead = other.degree, other.lead
        inv = None if isinstance(R, IntegerRing) else R.inv(lead)
        q: dict[int, Any] = {}
        ocs = list(other._c.items())
        while rem:
            top = max(rem)
            if top < dq:
                break
            c = R.exact_div(rem[top], lead) if inv is None else R.mul(rem[top], inv)
            s = top - dq
            q[s] = c
            for e, v in ocs:
                k = e + s
                nv = R.sub(rem.get(k, R.zero), R.mul(c, v))
                if R.is_zero(nv):
                    rem.pop(k, None)
                else:
                    rem[k] = nv
        return LaurentPoly._raw(R, q), LaurentPoly._raw(R, rem)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division in R[t^{+-1}] (raises if not exact)."""
        other = self._coerce(other)
        if self.is_zero():
            return self
        a = self.shift(-self.low)
        b = other.shift(-other.low)
        q, r = a.divmod(b)
        if not r.is_zero():
            raise ArithmeticError("inexact Laurent division")
        return q.shift(self.low - other.low)

    def content(self) -> int:
        if not isinstance(self.ring, IntegerRing):
            raise TypeError("content is defined over ZZ only")
        g = 0
        for v in self._c.values():
            g = math.gcd(g, v)
        return g

    # text -------------------------------------------------------------------
    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly[{self.ring!r}]({format_poly(self)})"


def _mono(e: int, var: str = "t") -> str:
    if e == 1:
        return var
    return f"{var}^{e}"


def format_poly(p: LaurentPoly, var: str = "t") -> str:
    """Terms in increasing exponent, e.g. ``1 - t + t^2``."""
    if p.is_zero():
        return "0"
    R = p.ring
    signed = isinstance(R, IntegerRing)
    parts: list[str] = []
    for e, v in p.items():
        if signed:
            neg = v < 0
            a = -v if neg else v
            body = str(a) if e == 0 else (_mono(e, var) if a == 1 else f"{a}*{_mono(e, var)}")
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        else:
            one = v == R.one
            cs = R.fmt(v)
            body = cs if e == 0 else (_mono(e, var) if one else f"{cs}*{_mono(e, var)}")
            parts.append(body if not parts else " + " + body)
    return "".join(parts)


def normalize_unit(p: LaurentPoly) -> LaurentPoly:
    """Canonical representative of the unit class of ``p``.

    Lowest exponent moved to 0; over ZZ the leading coefficient made
    positive, over a field the polynomial made monic.
    """
    if p.is_zero():
        return p
    q = p.shift(-p.low)
    R = p.ring
    if isinstance(R, IntegerRing):
        return -q if q.lead < 0 else q
    return q.scale(R.inv(q.lead))


def _allowed(R: CoeffRing, eps: Any, mode: UnitMode) -> bool:
    if mode is UnitMode.FULL_UNITS:
        return R.is_unit(eps)
    return eps == R.one or eps == R.neg(R.one)


def unit_between(p, q, unit_mode: UnitMode | None = None):
    """Return ``(eps, l)`` with ``q == eps * t^l * p``, or None.

    Works for :class:`LaurentPoly` and :class:`RationalLaurent` operands.
    """
    if isinstance(p, RationalLaurent) or isinstance(q, RationalLaurent):
        p = RationalLaurent.coerce(p)
        q = RationalLaurent.coerce(q)
        if p.ring != q.ring:
            raise ValueError(f"ring mismatch: {p.ring} vs {q.ring}")
        # q.num/q.den = u * p.num/p.den  <=>  q.num*p.den = u * p.num*q.den
        return unit_between(p.num * q.den, q.num * p.den, unit_mode)
    if p.ring != q.ring:
        raise ValueError(f"ring mismatch: {p.ring} vs {q.ring}")
    R = p.ring
    mode = unit_mode or UnitMode.default_for(R)
    if p.is_zero() or q.is_zero():
        return (R.one, 0) if p.is_zero() and q.is_zero() else None
    l = q.low - p.low
    if isinstance(R, IntegerRing):
        if q.lead == p.lead:
            eps = 1
        elif q.lead == -p.lead:
            eps = -1
        else:
            return None
    else:
        eps = R.div(q.lead, p.lead)
    if not _allowed(R, eps, mode):
        return None
    if p.shift(l).scale(eps) != q:
        return None
    return eps, l


def poly_equiv(p, q, unit_mode: UnitMode | None = None) -> bool:
    """True iff q = eps t^l p for an allowed unit eps and some integer l."""
    return unit_between(p, q, unit_mode) is not None


def substitute_scaled(p, u: Any):
    """p(u t): coefficient at exponent e multiplied by u^e."""
    if isinstance(p, RationalLaurent):
        return RationalLaurent(substitute_scaled(p.num, u), substitute_scaled(p.den, u))
    R = p.ring
    u = R.coerce(u)
    if not R.is_unit(u):
        raise ValueError(f"{R.fmt(u)} is not invertible in {R}")
    c = {e: R.mul(v, R.pow(u, e)) for e, v in p.terms.items()}
    return LaurentPoly(R, c)


# -- gcd ----------------------------------------------------------------------

def _primitive(p: LaurentPoly) -> LaurentPoly:
    c = p.content()
    if p.lead < 0:
        c = -c
    return LaurentPoly._raw(p.ring, {e: v // c for e, v in p.terms.items()})


def _zz_prem(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Primitive part of the pseudo-remainder of a by b (ordinary polys)."""
    lc = b.lead
    db = b.degree
    r = a
    while not r.is_zero() and r.degree >= db:
        s = r.degree - db
        r = r.scale(lc) - b.shift(s).scale(r.lead)
    return r if r.is_zero() else _primitive(r)


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Gcd in R[t^{+-1}], returned in unit-normalized form.

    Over fields: Euclid.  Over ZZ: primitive remainder sequence, which is the
    Q[t] gcd scaled to a primitive integer polynomial, times the content gcd.
    """
    if a.ring != b.ring:
        raise ValueError("ring mismatch")
    R = a.ring
    if a.is_zero():
        return normalize_unit(b)
    if b.is_zero():
        return normalize_unit(a)
    a = a.shift(-a.low)
    b = b.shift(-b.low)
    if isinstance(R, IntegerRing):
        cont = math.gcd(a.content(), b.content())
        a, b = _primitive(a), _primitive(b)
        if a.degree < b.degree:
            a, b = b, a
        while not b.is_zero():
            a, b = b, _zz_prem(a, b)
        return normalize_unit(_primitive(a).scale(cont))
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r
    return normalize_unit(a)


class RationalLaurent:
    """Exact quotient ``num / den`` of Laurent polynomials, kept reduced.

    The value is exact (not just up to units): on reduction any unit is
    moved into the numerator and the denominator is stored normalized.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None, *, reduce: bool = True):
        if den is None:
            den = LaurentPoly.constant(num.ring, 1)
        if num.ring != den.ring:
            raise ValueError(f"ring mismatch: {num.ring} vs {den.ring}")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            num, den = _reduce_fraction(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def coerce(x) -> "RationalLaurent":
        if isinstance(x, RationalLaurent):
            return x
        return RationalLaurent(x)

    @property
    def ring(self) -> CoeffRing:
        return self.num.ring

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return len(self.den.terms) == 1

    def __mul__(self, other):
        other = RationalLaurent.coerce(other)
        return RationalLaurent(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RationalLaurent.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalLaurent(self.num * other.den, self.den * other.num)

    def __add__(self, other):
        other = RationalLaurent.coerce(other)
        return RationalLaurent(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RationalLaurent(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-RationalLaurent.coerce(other))

    def __pow__(self, n: int) -> "RationalLaurent":
        if n < 0:
            return RationalLaurent(self.den ** (-n), self.num ** (-n))
        # num and den stay coprime under powers
        return RationalLaurent(self.num ** n, self.den ** n, reduce=False)

    def __eq__(self, other) -> bool:
        if isinstance(other, (RationalLaurent, LaurentPoly)):
            other = RationalLaurent.coerce(other)
            return self.ring == other.ring and self.num * other.den == other.num * self.den
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def change_ring(self, ring: CoeffRing) -> "RationalLaurent":
        return RationalLaurent(self.num.change_ring(ring), self.den.change_ring(ring))

    def substitute_scaled(self, u) -> "RationalLaurent":
        return substitute_scaled(self, u)

    def frobenius(self, n: int = 1) -> "RationalLaurent":
        return RationalLaurent(self.num.frobenius(n), self.den.frobenius(n))

    def normalized(self) -> "RationalLaurent":
        """Canonical representative of the unit class."""
        return RationalLaurent(normalize_unit(self.num), normalize_unit(self.den), reduce=False)

    def __str__(self) -> str:
        if self.is_polynomial() and self.den == LaurentPoly.constant(self.ring, 1):
            return format_poly(self.num)
        return f"({format_poly(self.num)}) / ({format_poly(self.den)})"

    def __repr__(self) -> str:
        return f"RationalLaurent[{self.ring!r}]({self})"


def _reduce_fraction(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    R = num.ring
    if num.is_zero():
        return num, LaurentPoly.constant(R, 1)
    g = poly_gcd(num, den)
    if g.degree > 0 or (isinstance(R, IntegerRing) and g.lead != 1):
        num = num.exact_div(g)
        den = den.exact_div(g)
    # move the unit part of den into num
    k = den.low
    num, den = num.shift(-k), den.shift(-k)
    if isinstance(R, IntegerRing):
        if den.lead < 0:
            num, den = -num, -den
    else:
        inv = R.inv(den.lead)
        num, den = num.scale(inv), den.scale(inv)
    return num, den
