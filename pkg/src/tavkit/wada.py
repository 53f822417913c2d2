"""Wada's twisted Alexander invariant.

For a Wirtinger presentation with generators s_1..s_n, an epimorphism f
onto a finite group and a representation rho, the ring homomorphism
Phi sends a word w to t^(exponent sum of w) * rho(f(w)).  The invariant is
det M_j / det Phi(s_j - 1), where M is the block matrix of the Fox
derivatives under Phi and M_j drops the j-th block column.  Values are
only defined up to units eps * t^l.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .epi import Epimorphism, evaluate_word
from .knots import FoxElement, WirtingerPresentation, fox_derivative
from .laurent import LaurentPoly, RationalLaurent, UnitMode, poly_equiv
from .polymat import det_from_coeff_array, poly_det
from .reps import Representation
from .rings import ZZ, CoeffRing, IntegerRing, PrimeField

__all__ = [
    "phi",
    "wada_blocks",
    "wada_matrix",
    "twisted_alexander",
    "audit_columns",
    "is_vanishing",
    "TwistedAlexander",
    "WadaError",
]


class WadaError(ValueError):
    pass


def _check(K: WirtingerPresentation, f: Epimorphism, rep: Representation) -> None:
    if f.source is not K and f.source != K:
        raise WadaError("epimorphism source is not this knot")
    if rep.group is not f.target:
        raise WadaError("representation group differs from the epimorphism target")


def _collect(w: FoxElement, f: Epimorphism) -> dict[tuple[int, int], int]:
    """Group the terms of a Fox element by (t-exponent, group element)."""
    out: dict[tuple[int, int], int] = {}
    G = f.target
    for word, c in w.items():
        key = (word.exponent_sum(), evaluate_word(G, f.images, word))
        out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def phi(w: FoxElement, f: Epimorphism, rep: Representation) -> list[list[LaurentPoly]]:
    """Matrix image of a group-ring element under Phi."""
    R = rep.ring
    d = rep.dim
    acc: list[list[dict[int, Any]]] = [[{} for _ in range(d)] for _ in range(d)]
    for (e, g), c in _collect(w, f).items():
        cc = R.coerce(c)
        M = rep.matrix(g)
        for x in range(d):
            for y in range(d):
                v = M[x][y]
                if R.is_zero(v):
                    continue
                cell = acc[x][y]
                cell[e] = R.add(cell.get(e, R.zero), R.mul(cc, v))
    return [[LaurentPoly(R, cell) for cell in row] for row in acc]


def wada_blocks(K: WirtingerPresentation, f: Epimorphism) -> list[list[dict[tuple[int, int], int]]]:
    """(n-1) x n grid of {(exponent, element): coefficient} Fox data."""
    return [[_collect(fox_derivative(r, j), f) for j in range(K.n)] for r in K.relators]


def wada_matrix(K: WirtingerPresentation, f: Epimorphism, rep: Representation,
                column: int | None = None) -> list[list[LaurentPoly]]:
    """M_j as an explicit Laurent-polynomial matrix (mainly for tests)."""
    _check(K, f, rep)
    j = K.n - 1 if column is None else column
    d = rep.dim
    rows: list[list[LaurentPoly]] = []
    for r in K.relators:
        blocks = [phi(fox_derivative(r, c), f, rep) for c in range(K.n) if c != j]
        for x in range(d):
            rows.append([b[x][y] for b in blocks for y in range(d)])
    return rows


def _integer_images(rep: Representation) -> tuple[CoeffRing, list[np.ndarray]] | None:
    """Integer matrices for every element when the rep is defined over the prime ring."""
    R = rep.ring
    base = R.prime_ring
    if rep.is_permutation:
        return base, [rep.int_matrix(g) for g in range(rep.group.order)]
    mats = []
    for g in range(rep.group.order):
        M = rep.matrix(g)
        if isinstance(R, (IntegerRing, PrimeField)):
            vals = M
        else:
            if not all(R.is_prime_subfield(v) for row in M for v in row):
                return None
            vals = [[R.to_prime_ring(v) for v in row] for row in M]
            if not all(isinstance(v, int) for row in vals for v in row):
                return None
        mats.append(np.array(vals, dtype=np.int64).reshape(rep.dim, rep.dim))
    return base, mats


def _int_numerator(K, f, rep, j, base, mats) -> LaurentPoly:
    d = rep.dim
    n = K.n
    N = (n - 1) * d
    if N == 0:
        return LaurentPoly.constant(base, 1)
    terms = []  # (exponent, row block, col block, element, coeff)
    for i, r in enumerate(K.relators):
        cb = 0
        for c in range(n):
            if c == j:
                continue
            for (e, g), coef in _collect(fox_derivative(r, c), f).items():
                terms.append((e, i, cb, g, coef))
            cb += 1
    if not terms:
        return LaurentPoly.zero(base)
    lo = min(t[0] for t in terms)
    hi = max(t[0] for t in terms)
    arr = np.zeros((hi - lo + 1, N, N), dtype=np.int64)
    if rep.is_permutation:
        xs = np.arange(d)
        for e, i, cb, g, coef in terms:
            np.add.at(arr, (e - lo, i * d + xs, cb * d + rep.perm[g]), coef)
    else:
        for e, i, cb, g, coef in terms:
            arr[e - lo, i * d:(i + 1) * d, cb * d:(cb + 1) * d] += coef * mats[g]
    return det_from_coeff_array(arr, lo, base)


def _perm_charpoly_denominator(perm: np.ndarray, base: CoeffRing) -> LaurentPoly:
    """det(t P - I) for a permutation matrix P: sign(P) * prod (t^c - 1)."""
    d = len(perm)
    seen = np.zeros(d, dtype=bool)
    result = LaurentPoly.constant(ZZ, 1)
    transpositions = 0
    for x in range(d):
        if seen[x]:
            continue
        c = 0
        y = x
        while not seen[y]:
            seen[y] = True
            y = int(perm[y])
            c += 1
        transpositions += c - 1
        result = result * LaurentPoly(ZZ, {c: 1, 0: -1})
    if transpositions % 2:
        result = -result
    return result.change_ring(base) if base is not ZZ else result


def _denominator(f, rep, j, base, mats) -> LaurentPoly:
    g = f.images[j]
    if rep.is_permutation:
        return _perm_charpoly_denominator(rep.perm[g], base)
    if mats is not None:
        d = rep.dim
        arr = np.zeros((2, d, d), dtype=np.int64)
        arr[0] = -np.eye(d, dtype=np.int64)
        arr[1] = mats[g]
        return det_from_coeff_array(arr, 0, base)
    R = rep.ring
    M = rep.matrix(g)
    t = LaurentPoly.t(R)
    one = LaurentPoly.constant(R, 1)
    mat = [[t.scale(M[x][y]) - (one if x == y else LaurentPoly.zero(R)) for y in range(rep.dim)]
           for x in range(rep.dim)]
    return poly_det(mat)


@dataclass
class TwistedAlexander:
    """det M_j / det Phi(s_j - 1) with provenance."""

    value: RationalLaurent
    numerator: LaurentPoly
    denominator: LaurentPoly
    ring: CoeffRing
    knot: str
    rep: str
    column: int
    images: tuple[int, ...] = ()
    seconds: float = 0.0
    timings: dict = field(default_factory=dict)

    @property
    def normalized(self) -> RationalLaurent:
        return self.value.normalized()

    def is_vanishing(self) -> bool:
        return self.numerator.is_zero()

    def to_json(self) -> dict:
        return {
            "knot": self.knot,
            "rep": self.rep,
            "column": self.column + 1,
            "ring": self.ring.spec(),
            "numerator": str(self.numerator),
            "denominator": str(self.denominator),
            "normalized": str(self.normalized),
            "normalization": "unit class representative (convention: lowest exponent 0, "
                             "positive or monic leading coefficient)",
            "timings": {k: round(v, 6) for k, v in self.timings.items()},
        }


def twisted_alexander(K: WirtingerPresentation, f: Epimorphism, rep: Representation,
                      column: int | None = None, *, method: str = "auto") -> TwistedAlexander:
    """Wada invariant for the composite rep o f, deleting block column ``column`` (0-based).

    The default column is the last one.  ``method`` selects the determinant
    engine for non-integral representations (``auto``, ``bareiss`` or
    ``interpolate``); integral ones always use the multimodular engine
    unless ``method='bareiss'``.
    """
    _check(K, f, rep)
    n = K.n
    j = n - 1 if column is None else column
    if not 0 <= j < n:
        raise WadaError(f"column {j} out of range")
    R = rep.ring
    t0 = time.perf_counter()
    ints = _integer_images(rep)
    if ints is not None:
        base, mats = ints
        if method == "bareiss":
            M = wada_matrix(K, f, rep.change_ring(base) if rep.is_permutation else rep, j)
            num = poly_det(M, "bareiss") if M else LaurentPoly.constant(base, 1)
            num = num.change_ring(base) if num.ring != base else num
        else:
            num = _int_numerator(K, f, rep, j, base, mats)
        t1 = time.perf_counter()
        den = _denominator(f, rep, j, base, mats)
        if base != R:
            num, den = num.change_ring(R), den.change_ring(R)
    else:
        M = wada_matrix(K, f, rep, j)
        num = poly_det(M, method) if M else LaurentPoly.constant(R, 1)
        t1 = time.perf_counter()
        den = _denominator(f, rep, j, R, None)
    if num.ring != R:
        num = num.change_ring(R)
    t2 = time.perf_counter()
    value = RationalLaurent(num, den)
    t3 = time.perf_counter()
    return TwistedAlexander(value, num, den, R, K.name, rep.name, j, f.images, t3 - t0,
                            {"numerator": t1 - t0, "denominator": t2 - t1, "reduce": t3 - t2})


def audit_columns(K: WirtingerPresentation, f: Epimorphism, rep: Representation,
                  unit_mode: UnitMode | None = None) -> tuple[bool, list[TwistedAlexander]]:
    """Compute the invariant for every deleted column and compare unit classes."""
    vals = [twisted_alexander(K, f, rep, j) for j in range(K.n)]
    ok = all(poly_equiv(vals[0].value, v.value, unit_mode) for v in vals[1:])
    return ok, vals


def is_vanishing(T: TwistedAlexander) -> bool:
    return T.numerator.is_zero()
