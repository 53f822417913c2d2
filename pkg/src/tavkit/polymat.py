"""Exact determinants of square Laurent-polynomial matrices.

Two engines:

* ``bareiss`` -- fraction-free elimination over R[t] after clearing the
  negative powers of t row by row.  Works for every coefficient ring.
* ``interpolate`` -- evaluation at D+1 points and interpolation, where D is
  the sum of the row degree spans.  Over ZZ this runs modulo several
  31-bit primes (vectorized with numpy) and recombines by CRT against a
  Hadamard-style coefficient bound.  Over F_p with p small the entries are
  lifted to ZZ and the integer determinant is reduced, which is exact
  because the determinant is a polynomial in the entries.  Other fields
  evaluate at field elements directly, falling back to Bareiss when the
  field has too few elements.
"""

from __future__ import annotations

from typing import Any, Sequence

import numpy as np

from .laurent import LaurentPoly
from .rings import ZZ, CoeffRing, ExtField, IntegerRing, PrimeField, is_prime

__all__ = ["poly_det", "det_from_coeff_array", "bareiss_det", "interpolation_det"]

_PRIME_CACHE: list[int] = []


def _large_primes():
    """Primes below 2^31 in decreasing order (products fit in int64)."""
    i = 0
    while True:
        if i == len(_PRIME_CACHE):
            q = _PRIME_CACHE[-1] - 2 if _PRIME_CACHE else 2**31 - 1
            while not is_prime(q):
                q -= 2
            _PRIME_CACHE.append(q)
        yield _PRIME_CACHE[i]
        i += 1


# -- numpy kernels ------------------------------------------------------------

def _vec_powmod(x: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.ones_like(x)
    base = x % p
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def _batched_det_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Determinants mod p of a stack of matrices (shape (P, n, n), int64)."""
    P, n, _ = A.shape
    A = A.copy()
    det = np.ones(P, dtype=np.int64)
    alive = np.ones(P, dtype=bool)
    rows = np.arange(P)
    for k in range(n):
        nz = A[:, k:, k] != 0
        has = nz.any(axis=1)
        alive &= has
        piv = nz.argmax(axis=1) + k
        swap = np.nonzero((piv != k) & has)[0]
        if swap.size:
            tmp = A[swap, k, :].copy()
            A[swap, k, :] = A[swap, piv[swap], :]
            A[swap, piv[swap], :] = tmp
            det[swap] = (p - det[swap]) % p
        pivots = A[rows, k, k].copy()
        pivots[~alive] = 1
        det = det * pivots % p
        if k == n - 1:
            break
        inv = _vec_powmod(pivots, p - 2, p)
        factors = A[:, k + 1:, k] * inv[:, None] % p
        A[:, k + 1:, k + 1:] = (A[:, k + 1:, k + 1:]
                                - factors[:, :, None] * A[:, k, None, k + 1:]) % p
    det[~alive] = 0
    return det


def _interpolate_consecutive(values: np.ndarray, p: int) -> np.ndarray:
    """Coefficients (low first) of the polynomial taking values[i] at x = i."""
    c = values.astype(np.int64) % p
    D = len(c) - 1
    for j in range(1, D + 1):
        inv_j = pow(j, p - 2, p)
        c[j:] = (c[j:] - c[j - 1:D]) % p * inv_j % p
    poly = np.array([c[D]], dtype=np.int64)
    for j in range(D - 1, -1, -1):
        new = np.zeros(len(poly) + 1, dtype=np.int64)
        new[1:] = poly
        new[:-1] = (new[:-1] - j * poly) % p
        new[0] = (new[0] + c[j]) % p
        poly = new
    return poly


def _det_poly_mod(coef: np.ndarray, D: int, p: int) -> np.ndarray:
    """det of sum_k coef[k] t^k modulo p, as a coefficient vector of length D+1."""
    cm = np.asarray(coef % p, dtype=np.int64)
    xs = np.arange(D + 1, dtype=np.int64)
    V = np.broadcast_to(cm[-1], (D + 1,) + cm.shape[1:]).copy()
    for k in range(cm.shape[0] - 2, -1, -1):
        V = (V * xs[:, None, None] + cm[k]) % p
    vals = _batched_det_mod(V, p)
    return _interpolate_consecutive(vals, p)


def _shift_rows(coef: np.ndarray) -> tuple[np.ndarray, int, int] | None:
    """Shift each row so its lowest nonzero power is t^0.

    Returns (shifted array, total shift, degree bound), or None when some row
    is identically zero.
    """
    K, n, _ = coef.shape
    nonzero = coef != 0
    row_any = nonzero.any(axis=2)  # (K, n)
    if not row_any.any(axis=0).all():
        return None
    lows = row_any.argmax(axis=0)
    highs = K - 1 - row_any[::-1].argmax(axis=0)
    spans = highs - lows
    depth = int(spans.max()) + 1
    out = np.zeros((depth, n, n), dtype=coef.dtype)
    for i in range(n):
        out[: spans[i] + 1, i, :] = coef[lows[i]: highs[i] + 1, i, :]
    return out, int(lows.sum()), int(spans.sum())


def _det_zz_coeffs(coef: np.ndarray, D: int) -> list[int]:
    n = coef.shape[1]
    absval = np.abs(coef).astype(object)
    bound = 1
    for i in range(n):
        bound *= int(absval[:, i, :].sum())
    target = 2 * bound + 1
    moduli: list[int] = []
    residues: list[np.ndarray] = []
    M = 1
    for p in _large_primes():
        if M > target:
            break
        residues.append(_det_poly_mod(coef, D, p))
        moduli.append(p)
        M *= p
    # Garner-style incremental CRT on Python ints
    x = [int(v) for v in residues[0]]
    m = moduli[0]
    for r, p in zip(residues[1:], moduli[1:]):
        inv = pow(m % p, p - 2, p)
        for i in range(len(x)):
            delta = (int(r[i]) - x[i]) * inv % p
            x[i] += m * delta
        m *= p
    half = m // 2
    return [v - m if v > half else v for v in x]


def det_from_coeff_array(coef: np.ndarray, lo: int, ring: CoeffRing,
                         method: str = "interpolate") -> LaurentPoly:
    """Determinant of ``sum_k coef[k] t^(lo+k)`` over ZZ or a prime field.

    ``coef`` has shape (K, n, n) with integer entries (int64 or object).
    """
    if not isinstance(ring, (IntegerRing, PrimeField)):
        raise TypeError("coefficient arrays are supported over ZZ and F_p")
    K, n, _ = coef.shape
    if n == 0:
        return LaurentPoly.constant(ring, 1)
    if isinstance(ring, PrimeField):
        p = ring.p
        coef = coef % p
        coef = np.where(coef > p // 2, coef - p, coef)
    shifted = _shift_rows(coef)
    if shifted is None:
        return LaurentPoly.zero(ring)
    arr, total_shift, D = shifted
    if method == "bareiss":
        mat = [[LaurentPoly.from_list(ZZ, [int(v) for v in arr[:, i, j]]) for j in range(n)]
               for i in range(n)]
        d = bareiss_det(mat)
        return d.change_ring(ring).shift(lo * n + total_shift)
    if isinstance(ring, PrimeField) and D + 1 < ring.p < 2**31:
        coeffs = [int(v) for v in _det_poly_mod(arr % ring.p, D, ring.p)]
    else:
        coeffs = _det_zz_coeffs(arr, D)
    return LaurentPoly.from_list(ring, coeffs, shift=lo * n + total_shift)


# -- generic engines ------------------------------------------------------------

def _clear_denominators(matrix: Sequence[Sequence[LaurentPoly]]):
    """Row-shift into R[t]; returns (rows, total shift) or None for a zero row."""
    rows = []
    total = 0
    for row in matrix:
        nz = [e for e in row if not e.is_zero()]
        if not nz:
            return None
        low = min(e.low for e in nz)
        rows.append([e.shift(-low) for e in row])
        total += low
    return rows, total


def bareiss_det(matrix: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Fraction-free Bareiss elimination (exact divisions in R[t])."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix: ring unknown")
    ring = matrix[0][0].ring
    cleared = _clear_denominators(matrix)
    if cleared is None:
        return LaurentPoly.zero(ring)
    M, total = cleared
    M = [list(r) for r in M]
    sign = 1
    prev = LaurentPoly.constant(ring, 1)
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly.zero(ring)
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            for j in range(k + 1, n):
                val = pivot * M[i][j]
                if not mik.is_zero() and not M[k][j].is_zero():
                    val = val - mik * M[k][j]
                M[i][j] = val.exact_div(prev) if not val.is_zero() else val
            M[i][k] = LaurentPoly.zero(ring)
        prev = pivot
    det = M[n - 1][n - 1]
    if sign < 0:
        det = -det
    return det.shift(total)


def _field_det(A: list[list[Any]], R: CoeffRing) -> Any:
    A = [list(r) for r in A]
    n = len(A)
    det = R.one
    for k in range(n):
        piv = next((i for i in range(k, n) if not R.is_zero(A[i][k])), None)
        if piv is None:
            return R.zero
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            det = R.neg(det)
        det = R.mul(det, A[k][k])
        inv = R.inv(A[k][k])
        for i in range(k + 1, n):
            if R.is_zero(A[i][k]):
                continue
            f = R.mul(A[i][k], inv)
            row_k, row_i = A[k], A[i]
            for j in range(k + 1, n):
                if not R.is_zero(row_k[j]):
                    row_i[j] = R.sub(row_i[j], R.mul(f, row_k[j]))
    return det


def _newton_interpolate(xs: list[Any], ys: list[Any], R: CoeffRing) -> list[Any]:
    n = len(xs)
    c = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            c[i] = R.div(R.sub(c[i], c[i - 1]), R.sub(xs[i], xs[i - j]))
    poly = [c[-1]]
    for j in range(n - 2, -1, -1):
        new = [R.zero] * (len(poly) + 1)
        for i, v in enumerate(poly):
            new[i + 1] = R.add(new[i + 1], v)
            new[i] = R.sub(new[i], R.mul(xs[j], v))
        new[0] = R.add(new[0], c[j])
        poly = new
    return poly


def interpolation_det(matrix: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Evaluation/interpolation determinant."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix: ring unknown")
    ring = matrix[0][0].ring
    if isinstance(ring, (IntegerRing, PrimeField)):
        coef, lo = _to_coeff_array(matrix, ring)
        return det_from_coeff_array(coef, lo, ring, method="interpolate")
    if not ring.is_field:
        raise TypeError(f"interpolation needs a field, got {ring}")
    cleared = _clear_denominators(matrix)
    if cleared is None:
        return LaurentPoly.zero(ring)
    M, total = cleared
    D = sum(max((e.degree for e in row if not e.is_zero()), default=0) for row in M)
    if isinstance(ring, ExtField):
        if ring.size < D + 1:
            return bareiss_det(matrix)
        pts = [x for _, x in zip(range(D + 1), ring.elements())]
    else:
        pts = [ring.from_int(i) for i in range(D + 1)]
    vals = []
    for x in pts:
        A = [[e.evaluate(x) for e in row] for row in M]
        vals.append(_field_det(A, ring))
    coeffs = _newton_interpolate(pts, vals, ring)
    return LaurentPoly.from_list(ring, coeffs, shift=total)


def _to_coeff_array(matrix, ring) -> tuple[np.ndarray, int]:
    n = len(matrix)
    nz = [e for row in matrix for e in row if not e.is_zero()]
    if not nz:
        return np.zeros((1, n, n), dtype=np.int64), 0
    lo = min(e.low for e in nz)
    hi = max(e.degree for e in nz)
    big = any(abs(v) >= 2**40 for e in nz for v in e.terms.values())
    coef = np.zeros((hi - lo + 1, n, n), dtype=object if big else np.int64)
    for i, row in enumerate(matrix):
        for j, e in enumerate(row):
            for k, v in e.terms.items():
                coef[k - lo, i, j] = v
    return coef, lo


def poly_det(matrix: Sequence[Sequence[LaurentPoly]], method: str = "auto") -> LaurentPoly:
    """Exact determinant of a square matrix of :class:`LaurentPoly` entries.

    ``method`` is ``"auto"``, ``"bareiss"`` or ``"interpolate"``.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    if n == 0:
        return LaurentPoly.constant(ZZ, 1)
    if method == "bareiss":
        return bareiss_det(matrix)
    if method in ("auto", "interpolate"):
        ring = matrix[0][0].ring
        if method == "auto" and not isinstance(ring, (IntegerRing, PrimeField)) and n <= 6:
            return bareiss_det(matrix)
        return interpolation_det(matrix)
    raise ValueError(f"unknown determinant method {method!r}")
