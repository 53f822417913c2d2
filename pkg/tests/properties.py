"""Property checks shared by the hypothesis suite and the acceptance run."""

from __future__ import annotations

import random

import numpy as np
import sympy as sp

from oracles import det_cofactor, t as T_SYM
from tavkit.epi import find_epimorphisms
from tavkit.groupspec import build_group
from tavkit.knots import FoxElement, FreeWord, builtin_knot, fox_derivative
from tavkit.laurent import LaurentPoly, UnitMode, poly_equiv
from tavkit.polymat import bareiss_det, det_from_coeff_array, interpolation_det
from tavkit.reps import (Representation, coset_rep, direct_sum, mat_inv, mat_mul, regular_rep,
                         trivial_rep)
from tavkit.rings import ZZ, ExtField, PrimeField
from tavkit.wada import audit_columns, twisted_alexander

# (knot, group) pairs with an epimorphism, small enough for quick audits
PAIRS = [("3_1", "dihedral:3"), ("3_1", "alternating:4"), ("3_1", "dicyclic:3"),
         ("4_1", "dihedral:5"), ("4_1", "alternating:4"), ("5_1", "dihedral:5"),
         ("5_2", "dihedral:7"), ("3_1", "cyclic:4"), ("4_1", "cyclic:3")]


def fox_identity_holds(letters, n_gens: int) -> bool:
    """w - 1 = sum_j (dw/ds_j)(s_j - 1) in the integral free group ring."""
    w = FreeWord(tuple(letters))
    lhs = FoxElement.word(w) - FoxElement.one()
    rhs = FoxElement()
    for j in range(n_gens):
        rhs = rhs + fox_derivative(w, j) * (FoxElement.word(FreeWord.gen(j)) - FoxElement.one())
    return lhs == rhs


def random_word(rng: random.Random, n_gens: int, max_len: int = 12):
    return [(rng.randrange(n_gens), rng.choice((1, -1))) for _ in range(rng.randint(0, max_len))]


def _epi(knot, spec):
    K, G = builtin_knot(knot), build_group(spec)
    return K, G, find_epimorphisms(K, G)[0]


def random_rep(rng: random.Random, G, ring):
    kind = rng.choice(["regular", "coset", "trivial", "sum"])
    if kind == "regular":
        return regular_rep(G, ring)
    if kind == "trivial":
        return trivial_rep(G, ring)
    if kind == "coset":
        gens = [rng.randrange(G.order)]
        H = G.subgroup(G.generated(gens))
        return coset_rep(G, H, ring)
    return direct_sum([trivial_rep(G, ring), coset_rep(G, G.subgroup(G.generated([1 % G.order])), ring)])


def columns_agree(rng: random.Random) -> bool:
    knot, spec = rng.choice(PAIRS)
    K, G, f = _epi(knot, spec)
    ring = rng.choice([ZZ, PrimeField(2), PrimeField(3), PrimeField(5)])
    rho = random_rep(rng, G, ring)
    ok, _ = audit_columns(K, f, rho, UnitMode.SIGN_ONLY)
    return ok


def _random_invertible_block(rng, F, n1, n2):
    return [[rng.randrange(F.p) for _ in range(n2)] for _ in range(n1)]


def block_triangular_factorizes(rng: random.Random) -> bool:
    """rho = B (rho1 + rho2) B^-1 with B unipotent block upper triangular."""
    knot, spec = rng.choice(PAIRS[:7])
    K, G, f = _epi(knot, spec)
    p = rng.choice([2, 3, 5, 7])
    F = PrimeField(p)
    pool = [lambda: trivial_rep(G, F),
            lambda: coset_rep(G, G.subgroup(G.generated([rng.randrange(G.order)])), F)]
    if G.order <= 12:
        pool.append(lambda: regular_rep(G, F))
    r1, r2 = rng.choice(pool)(), rng.choice(pool)()
    n1, n2 = r1.dim, r2.dim
    X = _random_invertible_block(rng, F, n1, n2)
    n = n1 + n2
    B = [[(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for i in range(n1):
        for j in range(n2):
            B[i][n1 + j] = X[i][j]
    Binv = mat_inv(F, B)
    S = direct_sum([r1, r2])
    mats = [mat_mul(F, mat_mul(F, B, S.matrix(g)), Binv) for g in range(G.order)]
    rho = Representation(G, F, n, matrices=mats, name="blocks", verify=True)
    whole = twisted_alexander(K, f, rho).value
    split = twisted_alexander(K, f, r1).value * twisted_alexander(K, f, r2).value
    return poly_equiv(whole, split, UnitMode.FULL_UNITS)


def _sym(p: LaurentPoly):
    return sum(int(c) * T_SYM ** e for e, c in p.terms.items()) if not p.is_zero() else sp.Integer(0)


def determinant_engines_agree(rng: random.Random) -> bool:
    n = rng.randint(1, 6)
    K = rng.randint(1, 4)
    lo = rng.randint(-2, 1)
    field = rng.random() < 0.5
    p = rng.choice([2, 3, 5, 7, 101]) if field else None
    R = PrimeField(p) if field else ZZ
    coef = np.array([[[rng.randint(-4, 4) if rng.random() < 0.7 else 0 for _ in range(n)]
                      for _ in range(n)] for _ in range(K)], dtype=np.int64)
    M = [[LaurentPoly(ZZ, {lo + k: int(coef[k, i, j]) for k in range(K)}).change_ring(R)
          if field else LaurentPoly(ZZ, {lo + k: int(coef[k, i, j]) for k in range(K)})
          for j in range(n)] for i in range(n)]
    a = bareiss_det(M)
    b = interpolation_det(M)
    c = det_from_coeff_array(coef, lo, R)
    if not (a == b == c):
        return False
    if n <= 4:
        Mz = [[LaurentPoly(ZZ, {lo + k: int(coef[k, i, j]) for k in range(K)}) for j in range(n)]
              for i in range(n)]
        ref = sp.expand(det_cofactor([[_sym(x) for x in row] for row in Mz]))
        if field:
            ref_poly = sp.Poly(sp.expand(ref * T_SYM ** (-lo * n)), T_SYM, modulus=p) if ref != 0 else None
            got = a.shift(-lo * n)
            want = {} if ref_poly is None else {
                e: int(c) % p for (e,), c in ref_poly.terms() if int(c) % p}
            return {e: int(v) % p for e, v in got.terms.items()} == want
        return sp.expand(_sym(a) - ref) == 0
    return True


def frobenius_identity(rng: random.Random) -> bool:
    p = rng.choice([2, 3, 5, 7])
    if rng.random() < 0.3:
        F = ExtField(p, 2)
        coeffs = [F.random(rng) for _ in range(rng.randint(1, 6))]
    else:
        F = PrimeField(p)
        coeffs = [rng.randrange(p) for _ in range(rng.randint(1, 8))]
    f = LaurentPoly.from_list(F, coeffs, rng.randint(-3, 3))
    return f ** p == f.frobenius() and f ** (p * p) == f.frobenius(2)
