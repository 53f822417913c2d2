import pytest

from oracles import cyclic_product, normalize_coeffs, wada_oracle
from tavkit import groups as g
from tavkit.epi import Epimorphism, find_epimorphisms
from tavkit.groupspec import build_group
from tavkit.knots import alexander_polynomial, builtin_knot
from tavkit.laurent import LaurentPoly, RationalLaurent, UnitMode, poly_equiv
from tavkit.reps import coset_rep, regular_rep, tensor_rep, trivial_rep
from tavkit.rings import ZZ, PrimeField, parse_ring
from tavkit.wada import WadaError, audit_columns, is_vanishing, twisted_alexander, wada_matrix
from tavkit.polymat import poly_det


def coeff_list(p: LaurentPoly, p_mod=None):
    c = p.dense()[1]
    if p_mod is None:
        return normalize_coeffs([int(v) for v in c])
    c = [int(v) % p_mod for v in c]
    inv = pow(c[-1], -1, p_mod)
    return [v * inv % p_mod for v in c]


def normalized_pair(T, p_mod=None):
    v = T.value.normalized()
    return coeff_list(v.num, p_mod), coeff_list(v.den, p_mod)


# frozen from wada_oracle (sympy, independent Fox calculus and determinants)
FROZEN = [
    ("3_1", "dihedral:3", None, ([-1, 0, 0, 0, 0, 0, 1], [1])),
    ("3_1", "dihedral:3", 3, ([2, 0, 0, 0, 0, 0, 1], [1])),
    ("3_1", "alternating:4", None, ([1, 0, 0, 0, 0, 0, -2, 0, 0, 0, 0, 0, 1], [1])),
    ("4_1", "dihedral:5", None, ([-1, 0, 10, 0, -25, 0, 25, 0, -10, 0, 1], [1])),
    ("3_1", "dicyclic:3", None, ([-1] + [0] * 11 + [1], [1])),
    ("4_1", "alternating:4", 2, ([1] + [0] * 11 + [1], [1])),
]


@pytest.mark.parametrize("knot,spec,p,want", FROZEN)
def test_regular_rep_frozen_values(knot, spec, p, want):
    K, G = builtin_knot(knot), build_group(spec)
    f = find_epimorphisms(K, G)[0]
    R = ZZ if p is None else PrimeField(p)
    T = twisted_alexander(K, f, regular_rep(G, R))
    assert normalized_pair(T, p) == want


@pytest.mark.parametrize("knot,spec,p", [("5_1", "dihedral:5", 5), ("3_1", "dihedral:3", None),
                                         ("4_1", "dihedral:5", None)])
def test_regular_rep_against_live_oracle(knot, spec, p):
    K, G = builtin_knot(knot), build_group(spec)
    f = find_epimorphisms(K, G)[0]
    R = ZZ if p is None else PrimeField(p)
    T = twisted_alexander(K, f, regular_rep(G, R))
    want = wada_oracle([r.tokens() for r in K.relators], K.n, f.images, G._m, modulus=p)
    assert normalized_pair(T, p) == want


@pytest.mark.parametrize("knot", ["3_1", "4_1", "5_2", "6_2"])
@pytest.mark.parametrize("m", [2, 3, 5])
def test_cyclic_regular_rep_against_resultant(knot, m):
    K = builtin_knot(knot)
    C = g.cyclic_group(m)
    f = Epimorphism(K, C, (1,) * K.n)
    T = twisted_alexander(K, f, regular_rep(C))
    alex = alexander_polynomial(K)
    alex_c = alex.dense()[1]
    # the product of the shifted factors (t - zeta^j) is t^m - 1
    full = T.value * RationalLaurent(LaurentPoly.monomial(ZZ, m, 1) - LaurentPoly.constant(ZZ, 1))
    assert full.is_polynomial()
    assert coeff_list(full.normalized().num) == cyclic_product(alex_c, m)


def test_trivial_rep_gives_alexander_over_t_minus_one():
    K = builtin_knot("5_2")
    C = g.cyclic_group(1)
    f = Epimorphism(K, C, (0,) * K.n)
    T = twisted_alexander(K, f, trivial_rep(C))
    expect = RationalLaurent(alexander_polynomial(K), LaurentPoly.from_list(ZZ, [-1, 1]))
    assert poly_equiv(T.value, expect, UnitMode.SIGN_ONLY)


@pytest.mark.parametrize("knot,spec,rep", [("3_1", "dihedral:3", "coset"),
                                           ("4_1", "alternating:4", "regular"),
                                           ("5_2", "dihedral:7", "regular")])
def test_every_deleted_column_agrees(knot, spec, rep):
    K, G = builtin_knot(knot), build_group(spec)
    f = find_epimorphisms(K, G)[0]
    if rep == "coset":
        rho = coset_rep(G, G.subgroup(G.generated([G.index("s")])))
    else:
        rho = regular_rep(G, PrimeField(3))
    ok, vals = audit_columns(K, f, rho, UnitMode.FULL_UNITS)
    assert ok and len(vals) == K.n


def test_bareiss_path_agrees_with_multimodular():
    K, G = builtin_knot("3_1"), build_group("dihedral:3")
    f = find_epimorphisms(K, G)[0]
    a = twisted_alexander(K, f, regular_rep(G))
    b = twisted_alexander(K, f, regular_rep(G), method="bareiss")
    assert a.value == b.value


def test_explicit_matrix_determinant_matches_engine():
    K, G = builtin_knot("3_1"), build_group("dihedral:3")
    f = find_epimorphisms(K, G)[0]
    rho = regular_rep(G, PrimeField(3))
    M = wada_matrix(K, f, rho)
    assert len(M) == (K.n - 1) * 6
    assert poly_equiv(poly_det(M), twisted_alexander(K, f, rho).numerator, UnitMode.FULL_UNITS)


def test_cyclotomic_tensor_rep():
    K, D3 = builtin_knot("3_1"), build_group("dihedral:3")
    R = parse_ring("cyc:4")
    f = find_epimorphisms(K, D3)[0]
    rho = tensor_rep(regular_rep(D3, R), trivial_rep(D3, R))
    T = twisted_alexander(K, f, rho)
    base = twisted_alexander(K, f, regular_rep(D3)).value.change_ring(R)
    assert poly_equiv(T.value, base, UnitMode.SIGN_ONLY)


def test_nonvanishing_and_json():
    K, G = builtin_knot("3_1"), build_group("dihedral:3")
    f = find_epimorphisms(K, G)[0]
    T = twisted_alexander(K, f, regular_rep(G))
    assert not is_vanishing(T) and not T.is_vanishing()
    data = T.to_json()
    assert {"numerator", "denominator", "normalized", "ring", "timings"} <= set(data)
    assert data["column"] == K.n


def test_mismatched_group_rejected():
    K = builtin_knot("3_1")
    f = find_epimorphisms(K, build_group("dihedral:3"))[0]
    with pytest.raises(WadaError):
        twisted_alexander(K, f, regular_rep(build_group("dihedral:3")))
    with pytest.raises(WadaError):
        twisted_alexander(K, f, regular_rep(f.target), column=K.n)
