import itertools
import random

import pytest

from tavkit.rings import (ZZ, CyclotomicField, ExtField, PrimeField, build_ext_field,
                          cyclotomic_polynomial, is_prime, multiplicative_order, parse_ring)


def test_is_prime_small_table():
    primes = [n for n in range(60) if is_prime(n)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]


def test_multiplicative_order():
    assert multiplicative_order(2, 3) == 2
    assert multiplicative_order(3, 4) == 2
    assert multiplicative_order(2, 7) == 3
    assert multiplicative_order(3, 2) == 1


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("text,kind", [("Z", "ZZ"), ("Fp:7", "F7"), ("Fq:2,2", "F4"),
                                       ("cyc:6", "cyc")])
def test_parse_ring_round_trip(text, kind):
    R = parse_ring(text)
    assert R.spec() == text
    assert parse_ring(R.spec()) == R


@pytest.mark.parametrize("bad", ["Q", "Fp:4", "Fq:4,2", "cyc:0", "Fp:x"])
def test_parse_ring_rejects(bad):
    with pytest.raises(ValueError):
        parse_ring(bad)


def test_prime_field_inverse_and_division():
    F = PrimeField(7)
    for a in range(1, 7):
        assert F.mul(a, F.inv(a)) == 1
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_ext_field_is_a_field():
    F = ExtField(2, 2)
    elems = list(F.elements())
    assert len(elems) == 4
    nonzero = [a for a in elems if not F.is_zero(a)]
    for a in nonzero:
        assert F.mul(a, F.inv(a)) == F.one
    for a, b, c in itertools.product(elems, repeat=3):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_ext_field_frobenius_fixes_prime_field():
    F = ExtField(3, 2)
    for a in F.elements():
        fa = F.frobenius(a)
        assert (fa == a) == F.is_prime_subfield(a)
        assert F.frobenius(fa) == a


@pytest.mark.parametrize("p,l", [(2, 3), (3, 2), (3, 4), (2, 1), (7, 3), (2, 5)])
def test_build_ext_field_root_is_primitive(p, l):
    F, z = build_ext_field(p, l)
    zeta = z.value
    powers = [F.pow(zeta, j) for j in range(1, l + 1)]
    assert powers[-1] == F.one
    assert all(x != F.one for x in powers[:-1])


def test_build_ext_field_f3_root_is_two():
    F, z = build_ext_field(3, 2)
    assert isinstance(F, PrimeField) and z.value == 2


def test_cyclotomic_field_roots():
    R = CyclotomicField(6)
    z = R.root_of_unity(1)
    assert R.pow(z, 6) == R.one
    assert R.pow(z, 3) == R.from_int(-1)
    # z^2 - z + 1 = 0
    assert R.is_zero(R.add(R.sub(R.mul(z, z), z), R.one))


def test_cyclotomic_inverse_random():
    rng = random.Random(1)
    R = CyclotomicField(12)
    for _ in range(30):
        a = R.random(rng)
        if R.is_zero(a):
            continue
        assert R.mul(a, R.inv(a)) == R.one


def test_ring_elem_wrapper_arithmetic():
    F = PrimeField(5)
    a, b = F(3), F(4)
    assert (a * b).value == 2
    assert (a + b).value == 2
    assert (a - b).value == 4
    assert ZZ(3).value == 3
