"""Exact coefficient rings: Z, F_p, F_{p^d} and Q(zeta_m).

Rings operate on raw payloads (``int``, or tuples of ints / Fractions) so
that polynomial code can do arithmetic without wrapper overhead.
:class:`RingElem` is the user-facing wrapper with operator overloading.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Iterator

__all__ = [
    "CoeffRing",
    "IntegerRing",
    "PrimeField",
    "ExtField",
    "CyclotomicField",
    "RingElem",
    "ZZ",
    "is_prime",
    "multiplicative_order",
    "cyclotomic_polynomial",
    "build_ext_field",
    "parse_ring",
]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for all n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def multiplicative_order(a: int, n: int) -> int:
    """Smallest d >= 1 with a^d = 1 mod n."""
    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit modulo {n}")
    if n == 1:
        return 1
    d, x = 1, a % n
    while x != 1:
        x = x * a % n
        d += 1
    return d


def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


# -- dense integer polynomial helpers (lists, lowest degree first) ----------

def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _int_poly_divexact(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c, r = divmod(a[i + len(b) - 1], b[-1])
        if r:
            raise ArithmeticError("inexact integer polynomial division")
        q[i] = c
        if c:
            for k, bk in enumerate(b):
                a[i + k] -= c * bk
    if any(a[: len(b) - 1]):
        raise ArithmeticError("inexact integer polynomial division")
    return q


def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first.

    Computed by dividing x^m - 1 by Phi_d for every proper divisor d of m.
    """
    if m < 1:
        raise ValueError("m must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _int_poly_divexact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _fp_poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = [x % p for x in a]
    inv_lead = pow(m[-1], -1, p)
    while len(_trim(a)) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for k, mk in enumerate(m):
            a[shift + k] = (a[shift + k] - c * mk) % p
    return a


def _fp_poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _fp_poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([x % p for x in a]), _trim([x % p for x in b])
    while b:
        a, b = b, _trim(_fp_poly_mod(a, b, p))
    return a


def _fp_poly_powmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _trim(_fp_poly_mod(base, m, p))
    while e:
        if e & 1:
            result = _trim(_fp_poly_mod(_fp_poly_mul(result, base, p), m, p))
        base = _trim(_fp_poly_mod(_fp_poly_mul(base, base, p), m, p))
        e >>= 1
    return result


def _is_irreducible_fp(f: list[int], p: int) -> bool:
    """Ben-Or test: gcd(f, x^{p^i} - x) = 1 for i <= deg/2."""
    d = len(f) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    xp = [0, 1]
    for _ in range(d // 2):
        xp = _fp_poly_powmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        if len(_fp_poly_gcd(f, _trim(diff), p)) > 1:
            return False
    return True


def _smallest_irreducible(p: int, d: int) -> tuple[int, ...]:
    # Order: compare c_{d-1}, ..., c_0 as a base-p numeral (smallest first).
    for code in range(p ** d):
        low = [(code // p ** i) % p for i in range(d)]
        f = low + [1]
        if f[0] == 0 and d > 1:
            continue
        if _is_irreducible_fp(f, p):
            return tuple(f)
    raise ValueError(f"no irreducible polynomial of degree {d} over F_{p}")


# -- rings -------------------------------------------------------------------

class CoeffRing:
    """Base class; subclasses implement payload arithmetic."""

    is_field: bool = True
    characteristic: int = 0

    def __call__(self, x: Any) -> "RingElem":
        return RingElem(self, self.coerce(x))

    # payload protocol --------------------------------------------------------
    def coerce(self, x: Any) -> Any:
        if isinstance(x, RingElem):
            if x.ring != self:
                return self.embed(x)
            return x.value
        if isinstance(x, int):
            return self.from_int(x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def embed(self, x: "RingElem") -> Any:
        if isinstance(x.ring, IntegerRing):
            return self.from_int(x.value)
        if isinstance(x.ring, PrimeField) and self.characteristic == x.ring.p:
            return self.from_int(x.value)
        raise TypeError(f"no embedding of {x.ring} into {self}")

    @property
    def zero(self) -> Any:
        return self.from_int(0)

    @property
    def one(self) -> Any:
        return self.from_int(1)

    def sub(self, a: Any, b: Any) -> Any:
        return self.add(a, self.neg(b))

    def is_zero(self, a: Any) -> bool:
        return a == self.zero

    def is_unit(self, a: Any) -> bool:
        return not self.is_zero(a)

    def pow(self, a: Any, e: int) -> Any:
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def div(self, a: Any, b: Any) -> Any:
        return self.mul(a, self.inv(b))

    def is_prime_subfield(self, a: Any) -> bool:
        return True

    @property
    def prime_ring(self) -> "CoeffRing":
        return ZZ if self.characteristic == 0 else PrimeField(self.characteristic)

    def to_prime_ring(self, a: Any) -> Any:
        raise NotImplementedError

    def fmt(self, a: Any) -> str:
        return str(a)

    def spec(self) -> str:
        raise NotImplementedError


class IntegerRing(CoeffRing):
    is_field = False
    characteristic = 0

    def __repr__(self) -> str:
        return "ZZ"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntegerRing)

    def __hash__(self) -> int:
        return hash("ZZ")

    def spec(self) -> str:
        return "Z"

    def from_int(self, n: int) -> int:
        return int(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def is_zero(self, a) -> bool:
        return a == 0

    def is_unit(self, a) -> bool:
        return a in (1, -1)

    def inv(self, a):
        if a in (1, -1):
            return a
        raise ZeroDivisionError(f"{a} is not a unit in ZZ")

    def exact_div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{b} does not divide {a}")
        return q

    def to_prime_ring(self, a):
        return a

    def random(self, rng, bound: int = 5):
        return rng.randint(-bound, bound)


ZZ = IntegerRing()


class PrimeField(CoeffRing):
    characteristic: int

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = self.characteristic = int(p)

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def spec(self) -> str:
        return f"Fp:{self.p}"

    def from_int(self, n: int) -> int:
        return int(n) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return -a % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def is_zero(self, a) -> bool:
        return a == 0

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return pow(a, -1, self.p)

    def exact_div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_prime_ring(self, a):
        return a

    @property
    def size(self) -> int:
        return self.p

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def random(self, rng, bound: int | None = None):
        return rng.randrange(self.p)


class ExtField(CoeffRing):
    """F_{p^d} = F_p[z]/(modulus); payload is a d-tuple of residues."""

    def __init__(self, p: int, d: int, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if d < 1:
            raise ValueError("degree must be positive")
        self.p = self.characteristic = int(p)
        self.d = int(d)
        if modulus is None:
            modulus = _smallest_irreducible(p, d)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree d")
        if not _is_irreducible_fp(list(modulus), p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.modulus = modulus

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.d})"

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, ExtField) and other.p == self.p
                and other.modulus == self.modulus)

    def __hash__(self) -> int:
        return hash(("GFq", self.p, self.modulus))

    def spec(self) -> str:
        return f"Fq:{self.p},{self.d}"

    @property
    def size(self) -> int:
        return self.p ** self.d

    def from_int(self, n: int):
        return (int(n) % self.p,) + (0,) * (self.d - 1)

    def coerce(self, x: Any):
        if isinstance(x, (tuple, list)):
            return self.from_coeffs(x)
        return super().coerce(x)

    def from_coeffs(self, coeffs) -> tuple[int, ...]:
        red = _fp_poly_mod(list(coeffs), list(self.modulus), self.p)
        red = red[: self.d] + [0] * (self.d - len(red))
        return tuple(red)

    @property
    def gen(self) -> tuple[int, ...]:
        return self.from_coeffs([0, 1])

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def mul(self, a, b):
        return self.from_coeffs(_fp_poly_mul(list(a), list(b), self.p))

    def is_zero(self, a) -> bool:
        return not any(a)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("division by zero in GF(q)")
        return self.pow(a, self.size - 2)

    def exact_div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self) -> Iterator[tuple[int, ...]]:
        for code in range(self.size):
            yield tuple((code // self.p ** i) % self.p for i in range(self.d))

    def is_prime_subfield(self, a) -> bool:
        return not any(a[1:])

    def to_prime_ring(self, a):
        if not self.is_prime_subfield(a):
            raise ValueError(f"{self.fmt(a)} is not in the prime field")
        return a[0]

    def frobenius(self, a, n: int = 1):
        return self.pow(a, self.p ** n)

    def fmt(self, a) -> str:
        return _fmt_zpoly(a)

    def random(self, rng, bound: int | None = None):
        return tuple(rng.randrange(self.p) for _ in range(self.d))


class CyclotomicField(CoeffRing):
    """Q(zeta_m) = Q[z]/(Phi_m); payload is a phi(m)-tuple of Fractions."""

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("m must be positive")
        self.m = int(m)
        self.modulus = cyclotomic_polynomial(self.m)
        self.d = len(self.modulus) - 1

    def __repr__(self) -> str:
        return f"QQ(zeta_{self.m})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CyclotomicField) and other.m == self.m

    def __hash__(self) -> int:
        return hash(("cyc", self.m))

    def spec(self) -> str:
        return f"cyc:{self.m}"

    def from_int(self, n: int):
        return (Fraction(n),) + (Fraction(0),) * (self.d - 1)

    def from_coeffs(self, coeffs) -> tuple[Fraction, ...]:
        a = [Fraction(c) for c in coeffs]
        mod = self.modulus
        dm = self.d
        for i in range(len(a) - 1, dm - 1, -1):
            c = a[i]
            if c:
                shift = i - dm
                for k in range(dm + 1):
                    if mod[k]:
                        a[shift + k] -= c * mod[k]
        a = a[:dm] + [Fraction(0)] * (dm - len(a))
        return tuple(a)

    def coerce(self, x: Any):
        if isinstance(x, Fraction):
            return self.from_coeffs([x])
        if isinstance(x, (tuple, list)):
            return self.from_coeffs(x)
        return super().coerce(x)

    @property
    def zeta(self) -> tuple[Fraction, ...]:
        return self.from_coeffs([0, 1])

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def mul(self, a, b):
        if self.d == 1:
            return (a[0] * b[0],)
        prod = [Fraction(0)] * (2 * self.d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self.from_coeffs(prod)

    def is_zero(self, a) -> bool:
        return not any(a)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.d == 1:
            return (1 / a[0],)
        # extended Euclid in Q[z] against Phi_m
        r0 = [Fraction(c) for c in self.modulus]
        r1 = _trim(list(a))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _q_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _q_sub(s0, _q_mul(q, s1))
        c = r1[0]
        return self.from_coeffs([x / c for x in s1])

    def exact_div(self, a, b):
        return self.mul(a, self.inv(b))

    def root_of_unity(self, j: int):
        """zeta_m ** j as a payload."""
        return self.pow(self.zeta, j % self.m)

    def is_prime_subfield(self, a) -> bool:
        return not any(a[1:])

    def to_prime_ring(self, a):
        if any(a[1:]) or a[0].denominator != 1:
            raise ValueError(f"{self.fmt(a)} is not an integer")
        return a[0].numerator

    def fmt(self, a) -> str:
        return _fmt_zpoly(a)

    def random(self, rng, bound: int = 3):
        return tuple(Fraction(rng.randint(-bound, bound)) for _ in range(self.d))


def _q_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _q_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _q_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(_trim(a)) >= len(b):
        c = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = c
        for k, bk in enumerate(b):
            a[shift + k] -= c * bk
        a.pop()
    return _trim(q), _trim(a)


def _fmt_zpoly(a) -> str:
    terms = []
    for i, c in enumerate(a):
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mon = "z" if i == 1 else f"z^{i}"
            terms.append(mon if c == 1 else f"{c}*{mon}")
    return "(" + (" + ".join(terms) if terms else "0") + ")"


class RingElem:
    """Immutable element of a :class:`CoeffRing`."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: CoeffRing, value: Any):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("RingElem is immutable")

    def _other(self, other) -> Any:
        if isinstance(other, RingElem):
            if other.ring != self.ring:
                return self.ring.embed(other)
            return other.value
        return self.ring.coerce(other)

    def __add__(self, other):
        return RingElem(self.ring, self.ring.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RingElem(self.ring, self.ring.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return RingElem(self.ring, self.ring.sub(self._other(other), self.value))

    def __mul__(self, other):
        if hasattr(other, "terms") and not isinstance(other, RingElem):
            return NotImplemented
        return RingElem(self.ring, self.ring.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return RingElem(self.ring, self.ring.div(self.value, self._other(other)))

    def __neg__(self):
        return RingElem(self.ring, self.ring.neg(self.value))

    def __pow__(self, e: int):
        return RingElem(self.ring, self.ring.pow(self.value, e))

    def inverse(self) -> "RingElem":
        return RingElem(self.ring, self.ring.inv(self.value))

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.value)

    def __eq__(self, other) -> bool:
        try:
            return self.value == self._other(other)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, self.value))

    def __str__(self) -> str:
        return self.ring.fmt(self.value)

    def __repr__(self) -> str:
        return f"{self.ring!r}({self.ring.fmt(self.value)})"


def build_ext_field(p: int, l: int) -> tuple[CoeffRing, RingElem]:
    """Smallest field F_{p^d} holding a primitive l-th root of unity.

    Returns the field (a :class:`PrimeField` when d = 1) and the root
    ``g^((q-1)/l)`` for the first multiplicative generator g in element order.
    """
    if math.gcd(p, l) != 1:
        raise ValueError(f"gcd({p}, {l}) != 1")
    d = multiplicative_order(p, l) if l > 1 else 1
    field: CoeffRing = PrimeField(p) if d == 1 else ExtField(p, d)
    q = p ** d
    cofactors = [(q - 1) // r for r in _prime_factors(q - 1)]
    gen = None
    for x in field.elements():
        if field.is_zero(x):
            continue
        if all(field.pow(x, c) != field.one for c in cofactors):
            gen = x
            break
    assert gen is not None
    zeta = field.pow(gen, (q - 1) // l)
    assert field.pow(zeta, l) == field.one
    assert all(field.pow(zeta, l // r) != field.one for r in _prime_factors(l))
    return field, RingElem(field, zeta)


def parse_ring(text: str) -> CoeffRing:
    """Parse ``Z``, ``Fp:p``, ``Fq:p,d`` or ``cyc:m``."""
    text = text.strip()
    if text in ("Z", "ZZ"):
        return ZZ
    kind, _, arg = text.partition(":")
    try:
        if kind == "Fp":
            return PrimeField(int(arg))
        if kind == "Fq":
            p, d = (int(x) for x in arg.split(","))
            return PrimeField(p) if d == 1 else ExtField(p, d)
        if kind == "cyc":
            return CyclotomicField(int(arg))
    except ValueError as exc:
        raise ValueError(f"bad ring spec {text!r}: {exc}") from None
    raise ValueError(f"unknown ring spec {text!r}")
