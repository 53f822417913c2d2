"""Linear representations of Cayley-table groups.

Matrices act on row vectors from the right, so ``rep(a*b) = rep(a) @ rep(b)``.
Permutation representations are stored as index arrays: ``perm[g][x]`` is
the image of basis vector ``x`` under ``g``.  Dense matrices are
materialized only when asked for.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .groups import FiniteGroup, GroupHom, Subgroup, cyclic_group
from .rings import ZZ, CoeffRing, CyclotomicField

__all__ = [
    "Representation",
    "Character",
    "RepresentationError",
    "regular_rep",
    "coset_rep",
    "trivial_rep",
    "compose_rep",
    "character_rep",
    "one_dim_rep",
    "tensor_rep",
    "direct_sum",
    "conjugate_rep",
    "character",
    "mat_mul",
    "mat_inv",
    "identity_matrix",
]

Matrix = list[list[Any]]


class RepresentationError(ValueError):
    pass


def identity_matrix(R: CoeffRing, n: int) -> Matrix:
    z, o = R.zero, R.one
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def mat_mul(R: CoeffRing, A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    m = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [R.zero] * m
        for k, a in enumerate(row):
            if R.is_zero(a):
                continue
            for j, b in enumerate(B[k]):
                if not R.is_zero(b):
                    acc[j] = R.add(acc[j], R.mul(a, b))
        out.append(acc)
    return out


def mat_inv(R: CoeffRing, A: Matrix) -> Matrix:
    """Gauss-Jordan inverse over a field (or a unimodular integer matrix)."""
    n = len(A)
    M = [list(row) + e for row, e in zip(A, identity_matrix(R, n))]
    for c in range(n):
        piv = next((r for r in range(c, n) if R.is_unit(M[r][c])), None)
        if piv is None:
            raise RepresentationError("matrix is not invertible over the ring")
        M[c], M[piv] = M[piv], M[c]
        iv = R.inv(M[c][c])
        M[c] = [R.mul(iv, v) for v in M[c]]
        for r in range(n):
            if r != c and not R.is_zero(M[r][c]):
                f = M[r][c]
                M[r] = [R.sub(x, R.mul(f, y)) for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


class Representation:
    """A homomorphism from a finite group into invertible matrices.

    Exactly one of ``perm`` (shape ``(|G|, dim)``) or ``matrices`` (one
    ``dim x dim`` list of ring payloads per element) is given.
    """

    def __init__(self, group: FiniteGroup, ring: CoeffRing, dim: int, *,
                 perm: np.ndarray | None = None, matrices: Sequence[Matrix] | None = None,
                 name: str = "rep", verify: bool = True, seed: int = 0):
        if (perm is None) == (matrices is None):
            raise RepresentationError("give exactly one of perm or matrices")
        self.group = group
        self.ring = ring
        self.dim = dim
        self.name = name
        self.perm = None if perm is None else np.asarray(perm, dtype=np.int64)
        self._mats = None if matrices is None else [[list(r) for r in M] for M in matrices]
        if self.perm is not None and self.perm.shape != (group.order, dim):
            raise RepresentationError("permutation table has the wrong shape")
        if self._mats is not None and len(self._mats) != group.order:
            raise RepresentationError("need one matrix per group element")
        if verify:
            self.verify(seed=seed)

    @property
    def is_permutation(self) -> bool:
        return self.perm is not None

    def matrix(self, g: int) -> Matrix:
        if self._mats is not None:
            return self._mats[g]
        R = self.ring
        z, o = R.zero, R.one
        M = [[z] * self.dim for _ in range(self.dim)]
        for x, y in enumerate(self.perm[g]):
            M[x][int(y)] = o
        return M

    def matrices(self) -> list[Matrix]:
        if self._mats is None:
            self._mats = [self.matrix(g) for g in range(self.group.order)]
        return self._mats

    def int_matrix(self, g: int) -> np.ndarray | None:
        """Integer numpy image when all entries are integers (ZZ/F_p payloads)."""
        if self.perm is not None:
            M = np.zeros((self.dim, self.dim), dtype=np.int64)
            M[np.arange(self.dim), self.perm[g]] = 1
            return M
        R = self.ring
        if not all(isinstance(v, int) for row in self._mats[g] for v in row):
            return None
        return np.array(self._mats[g], dtype=object if R is ZZ else np.int64).reshape(self.dim, self.dim)

    def trace(self, g: int) -> Any:
        R = self.ring
        if self.perm is not None:
            fixed = int((self.perm[g] == np.arange(self.dim)).sum())
            return R.coerce(fixed)
        acc = R.zero
        for i in range(self.dim):
            acc = R.add(acc, self._mats[g][i][i])
        return acc

    def verify(self, samples: int = 100, seed: int = 0) -> None:
        """Check the homomorphism property on generator pairs and random triples."""
        G = self.group
        if self.perm is not None:
            if not (self.perm[0] == np.arange(self.dim)).all():
                raise RepresentationError("identity does not act trivially")
            srt = np.sort(self.perm, axis=1)
            if not (srt == np.arange(self.dim)).all():
                raise RepresentationError("images are not permutations")
            n = G.order
            if n * n * self.dim <= 4_000_000:
                lhs = self.perm[G.mul]  # (a, b, x)
                rhs = np.take_along_axis(self.perm[None, :, :].repeat(n, 0),
                                         self.perm[:, None, :].repeat(n, 1), axis=2)
                if not (lhs == rhs).all():
                    raise RepresentationError(f"{self.name} is not a homomorphism")
                return
        pairs = [(a, b) for a in G.generators for b in range(G.order)] if G.order <= 64 else \
            [(a, b) for a in G.generators for b in G.generators]
        rng = random.Random(seed)
        for _ in range(samples if G.order > 1 else 0):
            pairs.append((rng.randrange(G.order), rng.randrange(G.order)))
        R = self.ring
        if self._mats is not None and self._mats[0] != identity_matrix(R, self.dim):
            raise RepresentationError("identity does not map to the identity matrix")
        for a, b in pairs:
            if not self._hom_ok(a, b):
                raise RepresentationError(f"{self.name} is not a homomorphism at ({a}, {b})")

    def _hom_ok(self, a: int, b: int) -> bool:
        ab = self.group.m(a, b)
        if self.perm is not None:
            return bool((self.perm[b][self.perm[a]] == self.perm[ab]).all())
        return mat_mul(self.ring, self._mats[a], self._mats[b]) == self._mats[ab]

    def change_ring(self, ring: CoeffRing) -> "Representation":
        if self.perm is not None:
            return Representation(self.group, ring, self.dim, perm=self.perm, name=self.name, verify=False)
        mats = [[[ring.coerce(v) for v in row] for row in M] for M in self._mats]
        return Representation(self.group, ring, self.dim, matrices=mats, name=self.name)

    def __repr__(self) -> str:
        kind = "perm" if self.perm is not None else "dense"
        return f"<Representation {self.name} of {self.group.name}, dim {self.dim}, {kind}, {self.ring!r}>"


@dataclass(frozen=True)
class Character:
    group: FiniteGroup
    ring: CoeffRing
    values: tuple  # one entry per conjugacy class, in group.conjugacy_classes() order

    def __call__(self, g: int) -> Any:
        return self.values[self.group.class_index(g)]

    def __add__(self, other: "Character") -> "Character":
        R = self.ring
        return Character(self.group, R, tuple(R.add(a, b) for a, b in zip(self.values, other.values)))

    def __mul__(self, other: "Character") -> "Character":
        R = self.ring
        return Character(self.group, R, tuple(R.mul(a, b) for a, b in zip(self.values, other.values)))


def character(rep: Representation) -> Character:
    G = rep.group
    vals = []
    for cls in G.conjugacy_classes():
        v = rep.trace(cls[0])
        if any(rep.trace(g) != v for g in cls[1:4]):
            raise RepresentationError("trace is not a class function")
        vals.append(v)
    return Character(G, rep.ring, tuple(vals))


# -- constructions ----------------------------------------------------------------

def regular_rep(G: FiniteGroup, ring: CoeffRing = ZZ) -> Representation:
    """Right multiplication of G on itself."""
    return Representation(G, ring, G.order, perm=G.mul.T.copy(), name="regular", verify=False)


def coset_rep(G: FiniteGroup, H: Subgroup, ring: CoeffRing = ZZ) -> Representation:
    """Right action of G on the right cosets Hg."""
    cosets = H.right_cosets()
    where = np.empty(G.order, dtype=np.int64)
    for i, c in enumerate(cosets):
        where[list(c)] = i
    reps = np.array([c[0] for c in cosets], dtype=np.int64)
    perm = where[G.mul[reps, :]].T  # perm[g][i] = coset of rep_i * g
    return Representation(G, ring, len(cosets), perm=perm, name=f"coset[{len(cosets)}]")


def trivial_rep(G: FiniteGroup, ring: CoeffRing = ZZ) -> Representation:
    return Representation(G, ring, 1, perm=np.zeros((G.order, 1), dtype=np.int64),
                          name="trivial", verify=False)


def compose_rep(rep: Representation, hom: GroupHom) -> Representation:
    """g -> rep(hom(g))."""
    if hom.codomain is not rep.group:
        raise RepresentationError("homomorphism codomain is not the representation's group")
    idx = np.asarray(hom.images, dtype=np.int64)
    if rep.perm is not None:
        return Representation(hom.domain, rep.ring, rep.dim, perm=rep.perm[idx],
                              name=f"{rep.name}o{hom.codomain.name}", verify=False)
    mats = [rep.matrix(int(i)) for i in idx]
    return Representation(hom.domain, rep.ring, rep.dim, matrices=mats,
                          name=f"{rep.name}o{hom.codomain.name}", verify=False)


def one_dim_rep(G: FiniteGroup, ring: CoeffRing, values: Sequence[Any], name: str = "chi") -> Representation:
    """1-dim representation from a table of values (one per element)."""
    mats = [[[ring.coerce(v)]] for v in values]
    return Representation(G, ring, 1, matrices=mats, name=name)


def character_rep(kn: int, j: int, ring: CyclotomicField | None = None,
                  group: FiniteGroup | None = None) -> Representation:
    """x^l -> zeta_{kn}^{j l} on the cyclic group of order kn."""
    if not 0 <= j < kn:
        raise RepresentationError("need 0 <= j < kn")
    ring = ring or CyclotomicField(kn)
    C = group or cyclic_group(kn)
    if C.order != kn:
        raise RepresentationError("group is not cyclic of order kn")
    if not isinstance(ring, CyclotomicField) or ring.m % kn:
        raise RepresentationError(f"ring has no designated primitive {kn}-th root of unity")
    z = ring.root_of_unity(ring.m // kn)
    return one_dim_rep(C, ring, [ring.pow(z, j * l) for l in range(kn)], name=f"eta_{j}")


def tensor_rep(a: Representation, b: Representation) -> Representation:
    """Kronecker product; basis (x, y) -> x * dim(b) + y."""
    if a.group is not b.group or a.ring != b.ring:
        raise RepresentationError("tensor factors must share group and ring")
    if a.perm is not None and b.perm is not None:
        perm = a.perm[:, :, None] * b.dim + b.perm[:, None, :]
        return Representation(a.group, a.ring, a.dim * b.dim, perm=perm.reshape(a.group.order, -1),
                              name=f"({a.name}x{b.name})", verify=False)
    R = a.ring
    mats = []
    for g in range(a.group.order):
        A, B = a.matrix(g), b.matrix(g)
        M = [[R.mul(A[i][k], B[j][l]) for k in range(a.dim) for l in range(b.dim)]
             for i in range(a.dim) for j in range(b.dim)]
        mats.append(M)
    return Representation(a.group, R, a.dim * b.dim, matrices=mats, name=f"({a.name}x{b.name})",
                          verify=False)


def direct_sum(reps: Sequence[Representation]) -> Representation:
    if not reps:
        raise RepresentationError("empty direct sum")
    G, R = reps[0].group, reps[0].ring
    if any(r.group is not G or r.ring != R for r in reps):
        raise RepresentationError("summands must share group and ring")
    dim = sum(r.dim for r in reps)
    name = "+".join(r.name for r in reps)
    if all(r.perm is not None for r in reps):
        offs = np.cumsum([0] + [r.dim for r in reps[:-1]])
        perm = np.concatenate([r.perm + o for r, o in zip(reps, offs)], axis=1)
        return Representation(G, R, dim, perm=perm, name=name, verify=False)
    mats = []
    for g in range(G.order):
        M = [[R.zero] * dim for _ in range(dim)]
        off = 0
        for r in reps:
            B = r.matrix(g)
            for i in range(r.dim):
                M[off + i][off:off + r.dim] = B[i]
            off += r.dim
        mats.append(M)
    return Representation(G, R, dim, matrices=mats, name=name, verify=False)


def conjugate_rep(rep: Representation, B: Matrix, name: str | None = None) -> Representation:
    """g -> B rep(g) B^-1 (a change of basis)."""
    R = rep.ring
    Binv = mat_inv(R, B)
    mats = [mat_mul(R, mat_mul(R, B, rep.matrix(g)), Binv) for g in range(rep.group.order)]
    return Representation(rep.group, R, rep.dim, matrices=mats, name=name or f"conj({rep.name})",
                          verify=False)

