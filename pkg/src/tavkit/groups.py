"""Cayley-table finite groups, subgroups, homomorphisms and constructions."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

__all__ = [
    "FiniteGroup",
    "Subgroup",
    "GroupHom",
    "GroupError",
    "PullbackExtension",
    "MAX_ORDER",
    "cyclic_group",
    "dihedral_group",
    "dicyclic_group",
    "symmetric_group",
    "alternating_group",
    "direct_product",
    "semidirect_cyclic",
    "semidirect_product",
    "quotient",
    "commutator_subgroup",
    "center",
    "normal_closure",
    "weight_le_one",
    "is_p_group",
    "abelianization",
    "pullback_extension",
    "is_seed",
    "is_tav_group",
    "non_seed_witness",
]

MAX_ORDER = 2000


class GroupError(ValueError):
    """Invalid group construction or failed structural precondition."""


def _prime_power(n: int) -> int | None:
    if n < 2:
        return None
    for q in range(2, n + 1):
        if n % q == 0:
            while n % q == 0:
                n //= q
            return q if n == 1 else None
    return None


class FiniteGroup:
    """Group on elements ``0..N-1`` given by a multiplication table.

    Index 0 is the identity.  Construction verifies the group axioms:
    associativity exhaustively for N <= 64 and by Light's test on a
    generating set otherwise.
    """

    def __init__(self, table, labels: Sequence[str] | None = None, name: str = "G",
                 generators: Sequence[int] | None = None, verify: bool = True):
        mul = np.asarray(table, dtype=np.int32)
        n = mul.shape[0]
        if mul.shape != (n, n):
            raise GroupError("multiplication table must be square")
        self.order = n
        self.mul = mul
        self.name = name
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        self._m = mul.tolist()
        inv = [0] * n
        for a in range(n):
            row = self._m[a]
            b = row.index(0) if 0 in row else -1
            if b < 0:
                raise GroupError("identity not reachable: not a group")
            inv[a] = b
        self.inv = inv
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        self._gens = list(generators) if generators is not None else None
        self._cache: dict = {}
        if verify:
            self._verify()

    # -- axioms ---------------------------------------------------------------
    def _verify(self) -> None:
        n, mul = self.order, self.mul
        ar = np.arange(n)
        if not (mul[0] == ar).all() or not (mul[:, 0] == ar).all():
            raise GroupError("index 0 is not a two-sided identity")
        srt = np.sort(mul, axis=1)
        if not (srt == ar).all() or not (np.sort(mul, axis=0) == ar[:, None]).all():
            raise GroupError("rows/columns of the table are not permutations")
        if n <= 64:
            lhs = mul[mul, :]  # lhs[a, b, c] = (ab)c
            rhs = mul[:, mul]  # rhs[a, b, c] = a(bc)
            if not (lhs == rhs).all():
                raise GroupError("multiplication is not associative")
        else:
            for g in self.generators:
                # (x g) y == x (g y) for all x, y
                if not (mul[mul[:, g], :] == mul[:, mul[g, :]]).all():
                    raise GroupError("multiplication is not associative (Light's test)")

    # -- elementwise helpers ---------------------------------------------------
    def m(self, a: int, b: int) -> int:
        return self._m[a][b]

    def prod(self, elems: Iterable[int]) -> int:
        x = 0
        m = self._m
        for e in elems:
            x = m[x][e]
        return x

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv[a], -k
        x = 0
        for _ in range(k % self.element_order(a)):
            x = self._m[x][a]
        return x

    def conj(self, a: int, g: int) -> int:
        """g^-1 a g."""
        return self._m[self._m[self.inv[g]][a]][g]

    def commutator(self, a: int, b: int) -> int:
        """a^-1 b^-1 a b."""
        inv, m = self.inv, self._m
        return m[m[m[inv[a]][inv[b]]][a]][b]

    def element_order(self, a: int) -> int:
        orders = self._cache.get("orders")
        if orders is None:
            orders = []
            for x in range(self.order):
                k, y = 1, x
                while y != 0:
                    y = self._m[y][x]
                    k += 1
                orders.append(k)
            self._cache["orders"] = orders
        return orders[a]

    def index(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            key = label.replace(" ", "")
            for lab, i in self._label_index.items():
                if lab.replace(" ", "") == key:
                    return i
            raise GroupError(f"no element labelled {label!r} in {self.name}") from None

    def label(self, a: int) -> str:
        return self.labels[a]

    # -- structure --------------------------------------------------------------
    @property
    def generators(self) -> list[int]:
        if self._gens is None:
            self._gens = self._greedy_generators()
        return list(self._gens)

    def _greedy_generators(self) -> list[int]:
        gens: list[int] = []
        span = {0}
        # prefer high-order elements for short generating sets
        order = sorted(range(1, self.order), key=lambda x: (-self.element_order(x), x))
        for x in order:
            if x not in span:
                gens.append(x)
                span = self.generated(gens)
                if len(span) == self.order:
                    break
        return gens

    def generated(self, elems: Iterable[int]) -> set[int]:
        """Subgroup generated by ``elems`` (BFS closure)."""
        gens = [g for g in set(elems) if g != 0]
        seen = {0}
        frontier = [0]
        m = self._m
        while frontier:
            nxt = []
            for x in frontier:
                row = m[x]
                for g in gens:
                    y = row[g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def is_abelian(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    def conjugacy_classes(self) -> list[list[int]]:
        cls = self._cache.get("classes")
        if cls is None:
            seen = [False] * self.order
            cls = []
            gens = self.generators
            for a in range(self.order):
                if seen[a]:
                    continue
                orbit = [a]
                seen[a] = True
                i = 0
                while i < len(orbit):
                    x = orbit[i]
                    i += 1
                    for g in gens:
                        y = self.conj(x, g)
                        if not seen[y]:
                            seen[y] = True
                            orbit.append(y)
                cls.append(sorted(orbit))
            self._cache["classes"] = cls
        return cls

    def class_of(self, a: int) -> list[int]:
        idx = self._cache.get("class_index")
        if idx is None:
            idx = {}
            for k, c in enumerate(self.conjugacy_classes()):
                for x in c:
                    idx[x] = k
            self._cache["class_index"] = idx
        return self.conjugacy_classes()[idx[a]]

    def class_index(self, a: int) -> int:
        self.class_of(a)
        return self._cache["class_index"][a]

    def subgroup(self, members: Iterable[int]) -> "Subgroup":
        return Subgroup(self, members)

    def whole(self) -> "Subgroup":
        return Subgroup(self, range(self.order), _trusted=True)

    def trivial(self) -> "Subgroup":
        return Subgroup(self, [0], _trusted=True)

    def element_order_histogram(self) -> tuple:
        c: dict[int, int] = {}
        for a in range(self.order):
            o = self.element_order(a)
            c[o] = c.get(o, 0) + 1
        return tuple(sorted(c.items()))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def __len__(self) -> int:
        return self.order


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]

    def __init__(self, parent: FiniteGroup, members: Iterable[int], _trusted: bool = False):
        mem = tuple(sorted(set(members)))
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "members", mem)
        if not _trusted:
            s = set(mem)
            if 0 not in s:
                raise GroupError("subgroup must contain the identity")
            for a in mem:
                if parent.inv[a] not in s:
                    raise GroupError("subset not closed under inverses")
                row = parent._m[a]
                for b in mem:
                    if row[b] not in s:
                        raise GroupError("subset not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, a: int) -> bool:
        return a in self._set

    @property
    def _set(self) -> frozenset:
        s = self.__dict__.get("_s")
        if s is None:
            s = frozenset(self.members)
            object.__setattr__(self, "_s", s)
        return s

    def is_normal(self) -> bool:
        G = self.parent
        s = self._set
        return all(G.conj(h, g) in s for h in self.members for g in G.generators)

    def is_central(self) -> bool:
        G = self.parent
        return all(G.m(h, g) == G.m(g, h) for h in self.members for g in G.generators)

    def right_cosets(self) -> list[tuple[int, ...]]:
        """Cosets Hg, ordered by smallest element; each sorted."""
        G = self.parent
        seen: set[int] = set()
        out = []
        for g in range(G.order):
            if g in seen:
                continue
            coset = tuple(sorted(G.m(h, g) for h in self.members))
            seen.update(coset)
            out.append(coset)
        return out

    def as_group(self, name: str | None = None) -> tuple[FiniteGroup, "GroupHom"]:
        """The subgroup as a standalone group plus its inclusion."""
        G = self.parent
        mem = list(self.members)
        pos = {a: i for i, a in enumerate(mem)}
        table = [[pos[G.m(a, b)] for b in mem] for a in mem]
        H = FiniteGroup(table, [G.labels[a] for a in mem], name or f"sub({G.name})", verify=False)
        return H, GroupHom(H, G, mem)


class GroupHom:
    """Homomorphism given by the image of every element; verified on build."""

    def __init__(self, domain: FiniteGroup, codomain: FiniteGroup, images: Sequence[int],
                 verify: bool = True):
        self.domain = domain
        self.codomain = codomain
        self.images = tuple(int(x) for x in images)
        if len(self.images) != domain.order:
            raise GroupError("image list has wrong length")
        if verify and not self._is_hom():
            raise GroupError("map is not a homomorphism")

    def _is_hom(self) -> bool:
        im = np.asarray(self.images)
        lhs = im[self.domain.mul]
        rhs = self.codomain.mul[im[:, None], im[None, :]]
        return bool((lhs == rhs).all())

    def __call__(self, a: int) -> int:
        return self.images[a]

    def kernel(self) -> Subgroup:
        return Subgroup(self.domain, [a for a, b in enumerate(self.images) if b == 0], _trusted=True)

    def image(self) -> Subgroup:
        return Subgroup(self.codomain, set(self.images), _trusted=True)

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.codomain.order

    def is_injective(self) -> bool:
        return len(set(self.images)) == self.domain.order

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self o other."""
        if other.codomain is not self.domain:
            raise GroupError("homomorphisms do not compose")
        return GroupHom(other.domain, self.codomain, [self.images[x] for x in other.images], verify=False)

    @classmethod
    def identity(cls, G: FiniteGroup) -> "GroupHom":
        return cls(G, G, range(G.order), verify=False)


# -- tabulation ---------------------------------------------------------------

def _tabulate(elements: Sequence[Hashable], mul: Callable, label: Callable[[Hashable], str],
              name: str, generators: Sequence[Hashable] | None = None) -> FiniteGroup:
    n = len(elements)
    if n > MAX_ORDER:
        raise GroupError(f"group order {n} exceeds cap {MAX_ORDER}")
    pos = {e: i for i, e in enumerate(elements)}
    if len(pos) != n:
        raise GroupError("duplicate elements")
    try:
        table = [[pos[mul(a, b)] for b in elements] for a in elements]
    except KeyError:
        raise GroupError("set not closed under multiplication") from None
    gens = [pos[g] for g in generators] if generators is not None else None
    return FiniteGroup(table, [label(e) for e in elements], name, generators=gens)


def _pw(sym: str, k: int) -> str:
    return "" if k == 0 else (sym if k == 1 else f"{sym}^{k}")


def _join(*parts: str) -> str:
    s = " ".join(p for p in parts if p)
    return s or "e"


def _check_cap(n: int) -> None:
    if n > MAX_ORDER:
        raise GroupError(f"group order {n} exceeds cap {MAX_ORDER}")


def cyclic_group(m: int, sym: str = "x") -> FiniteGroup:
    if m < 1:
        raise GroupError("cyclic order must be positive")
    _check_cap(m)
    table = [[(a + b) % m for b in range(m)] for a in range(m)]
    labels = [_join(_pw(sym, a)) for a in range(m)]
    return FiniteGroup(table, labels, f"C{m}", generators=[1] if m > 1 else [])


def dihedral_group(n: int) -> FiniteGroup:
    """D_n of order 2n: elements r^i s^j, s r s = r^-1."""
    if n < 1:
        raise GroupError("dihedral degree must be positive")
    els = [(i, j) for j in range(2) for i in range(n)]

    def mul(a, b):
        return ((a[0] + (-1) ** a[1] * b[0]) % n, (a[1] + b[1]) % 2)

    return _tabulate(els, mul, lambda e: _join(_pw("r", e[0]), _pw("s", e[1])), f"D{n}",
                     generators=[(1, 0) if n > 1 else (0, 1), (0, 1)])


def dicyclic_group(n: int) -> FiniteGroup:
    """Dic_n of order 4n: <a, b | a^{2n}, b^2 a^{-n}, b a b^-1 a>."""
    if n < 1:
        raise GroupError("dicyclic parameter must be positive")
    N = 2 * n
    els = [(i, j) for j in range(2) for i in range(N)]

    def mul(x, y):
        i1, j1 = x
        i2, j2 = y
        if j1 == 0:
            return ((i1 + i2) % N, j2)
        if j2 == 0:
            return ((i1 - i2) % N, 1)
        return ((i1 - i2 + n) % N, 0)

    return _tabulate(els, mul, lambda e: _join(_pw("a", e[0]), _pw("b", e[1])), f"Dic{n}",
                     generators=[(1, 0), (0, 1)])


def _perm_label(p: tuple[int, ...]) -> str:
    seen, cycles = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        c, j = [], i
        while j not in seen:
            seen.add(j)
            c.append(j + 1)
            j = p[j]
        cycles.append("(" + " ".join(map(str, c)) + ")")
    return "".join(cycles) or "e"


def _perm_mul(a, b):
    # apply a first, then b
    return tuple(b[i] for i in a)


def _perm_parity(p) -> int:
    seen, par = set(), 0
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        par ^= (length - 1) & 1
    return par


def symmetric_group(n: int) -> FiniteGroup:
    if n < 1 or math.factorial(n) > MAX_ORDER:
        raise GroupError(f"symmetric degree {n} out of range")
    els = sorted(itertools.permutations(range(n)))
    gens = []
    if n > 1:
        gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return _tabulate(els, _perm_mul, _perm_label, f"S{n}", generators=gens)


def alternating_group(n: int) -> FiniteGroup:
    if n < 1 or math.factorial(n) // 2 > MAX_ORDER:
        raise GroupError(f"alternating degree {n} out of range")
    els = [p for p in sorted(itertools.permutations(range(n))) if _perm_parity(p) == 0]
    return _tabulate(els, _perm_mul, _perm_label, f"A{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    if G.order * H.order > MAX_ORDER:
        raise GroupError("product order exceeds cap")
    nH = H.order
    a = np.arange(G.order * nH)
    g, h = a // nH, a % nH
    table = G.mul[g[:, None], g[None, :]] * nH + H.mul[h[:, None], h[None, :]]
    labels = [_pair_label(G.labels[x], H.labels[y]) for x in range(G.order) for y in range(nH)]
    gens = [x * nH for x in G.generators] + list(H.generators)
    return FiniteGroup(table, labels, f"{G.name}x{H.name}", generators=gens)


def _pair_label(a: str, b: str) -> str:
    return f"({a}, {b})"


def semidirect_cyclic(p: int, m: int, r: int) -> FiniteGroup:
    """C_p x| C_m = <a, b | a^p, b^m, b a b^-1 = a^r>."""
    if p < 1 or m < 1:
        raise GroupError("orders must be positive")
    if math.gcd(r, p) != 1 or pow(r, m, p) != 1 % p:
        raise GroupError(f"r={r} does not have order dividing {m} modulo {p}")
    els = [(i, j) for j in range(m) for i in range(p)]

    def mul(x, y):
        return ((x[0] + pow(r, x[1], p) * y[0]) % p, (x[1] + y[1]) % m)

    return _tabulate(els, mul, lambda e: _join(_pw("a", e[0]), _pw("b", e[1])),
                     f"C{p}:C{m}[{r}]", generators=[(1 % p, 0), (0, 1 % m)])


def semidirect_product(N: FiniteGroup, m: int, auto: Sequence[int], name: str | None = None) -> FiniteGroup:
    """N x| C_m where the generator y of C_m acts by y n y^-1 = auto[n]."""
    auto = list(auto)
    phi = GroupHom(N, N, auto)
    if not phi.is_injective():
        raise GroupError("action is not an automorphism")
    powers = [list(range(N.order))]
    for _ in range(m):
        powers.append([auto[x] for x in powers[-1]])
    if powers[m] != powers[0]:
        raise GroupError(f"automorphism order does not divide {m}")
    els = [(x, j) for j in range(m) for x in range(N.order)]

    def mul(u, v):
        return (N.m(u[0], powers[u[1]][v[0]]), (u[1] + v[1]) % m)

    def label(e):
        return _join("" if e[0] == 0 else N.labels[e[0]], _pw("y", e[1]))

    return _tabulate(els, mul, label, name or f"{N.name}:C{m}")


# -- subgroup computations ----------------------------------------------------------

def normal_closure(G: FiniteGroup, S: Iterable[int]) -> Subgroup:
    """Smallest normal subgroup containing S."""
    S = list(S)
    if not S:
        raise GroupError("normal_closure needs a nonempty set")
    gens = set()
    for s in S:
        gens.update(G.class_of(s))
    return Subgroup(G, G.generated(gens), _trusted=True)


def commutator_subgroup(G: FiniteGroup) -> Subgroup:
    c = G._cache.get("derived")
    if c is None:
        gens = G.generators
        comms = {G.commutator(a, b) for a in gens for b in gens}
        c = normal_closure(G, comms | {0})
        G._cache["derived"] = c
    return c


def center(G: FiniteGroup) -> Subgroup:
    gens = G.generators
    return Subgroup(G, [z for z in range(G.order) if all(G.m(z, g) == G.m(g, z) for g in gens)],
                    _trusted=True)


def weight_le_one(G: FiniteGroup) -> tuple[bool, int | None]:
    """Whether G is the normal closure of one element; returns a witness."""
    if G.order == 1:
        return True, 0
    for cls in G.conjugacy_classes():
        g = cls[0]
        if g == 0:
            continue
        if len(normal_closure(G, [g])) == G.order:
            return True, g
    return False, None


def is_p_group(H) -> int | str | None:
    """Prime p when |H| = p^k (k >= 1), ``"trivial"`` for |H| = 1, else None."""
    n = H.order if not isinstance(H, int) else H
    if n == 1:
        return "trivial"
    return _prime_power(n)


def quotient(G: FiniteGroup, N: Subgroup, name: str | None = None) -> tuple[FiniteGroup, GroupHom]:
    """G/N with the canonical surjection; N must be normal."""
    if N.parent is not G:
        raise GroupError("subgroup belongs to another group")
    if not N.is_normal():
        raise GroupError("subgroup is not normal")
    cosets = N.right_cosets()
    which = [0] * G.order
    for i, c in enumerate(cosets):
        for x in c:
            which[x] = i
    reps = [c[0] for c in cosets]
    table = [[which[G.m(a, b)] for b in reps] for a in reps]
    labels = [G.labels[r] for r in reps]
    Q = FiniteGroup(table, labels, name or f"{G.name}/N{N.order}",
                    generators=sorted({which[g] for g in G.generators} - {0}) or None)
    return Q, GroupHom(G, Q, which, verify=False)


def abelianization(G: FiniteGroup) -> tuple[FiniteGroup, GroupHom]:
    Q, pi = quotient(G, commutator_subgroup(G), name=f"{G.name}ab")
    return Q, pi


def _cyclic_generator(Q: FiniteGroup) -> int | None:
    for x in range(Q.order):
        if Q.element_order(x) == Q.order:
            return x
    return None


@dataclass
class PullbackExtension:
    """G_{k,n} with its structure maps.

    ``group`` consists of pairs (z, x^l) with pi(z) = xbar^(l mod k).
    """

    group: FiniteGroup
    base: FiniteGroup
    k: int
    n: int
    pr: GroupHom
    pr2: GroupHom
    iota: GroupHom
    cyclic: FiniteGroup
    kernel_cyclic: FiniteGroup
    base_generator: int
    pairs: list[tuple[int, int]] = field(repr=False)
    index_of: dict[tuple[int, int], int] = field(repr=False)

    def element(self, z: int, l: int) -> int:
        return self.index_of[(z, l % (self.k * self.n))]


def pullback_extension(G1: FiniteGroup, k: int, n: int, generator: int | None = None,
                       name: str | None = None) -> PullbackExtension:
    """Fiber product of the abelianization G1 -> C_k with C_{kn} -> C_k.

    ``generator`` is an element of G1 whose abelianization image is the
    designated generator xbar of C_k; by default a weight-one witness.
    """
    if k < 1 or n < 1:
        raise GroupError("k and n must be positive")
    Q, pi = abelianization(G1)
    if Q.order != k or _cyclic_generator(Q) is None:
        raise GroupError(f"abelianization of {G1.name} is not cyclic of order {k}")
    if generator is None:
        ok, w = weight_le_one(G1)
        generator = w if ok and Q.element_order(pi(w)) == k else None
        if generator is None:
            generator = next(z for z in range(G1.order) if Q.element_order(pi(z)) == k)
    xbar = pi(generator)
    if Q.element_order(xbar) != k:
        raise GroupError("designated element does not generate the abelianization")
    # exponent of pi(z) in terms of xbar
    expo = {}
    y = 0
    for e in range(k):
        expo[y] = e
        y = Q.m(y, xbar)
    ab = [expo[pi(z)] for z in range(G1.order)]
    kn = k * n
    pairs = [(z, l) for z in range(G1.order) for l in range(ab[z], kn, k)]
    index_of = {pr: i for i, pr in enumerate(pairs)}
    if len(pairs) > MAX_ORDER:
        raise GroupError("extension order exceeds cap")
    table = [[index_of[(G1.m(a[0], b[0]), (a[1] + b[1]) % kn)] for b in pairs] for a in pairs]
    C_kn = cyclic_group(kn)
    labels = [_pair_label(G1.labels[z], C_kn.labels[l]) for z, l in pairs]
    Gkn = FiniteGroup(table, labels, name or f"pullback({G1.name},{k},{n})", generators=None)
    pr = GroupHom(Gkn, G1, [z for z, _ in pairs])
    pr2 = GroupHom(Gkn, C_kn, [l for _, l in pairs])
    C_n = cyclic_group(n, sym="y")
    iota = GroupHom(C_n, Gkn, [index_of[(0, (k * i) % kn)] for i in range(n)])
    return PullbackExtension(Gkn, G1, k, n, pr, pr2, iota, C_kn, C_n, generator, pairs, index_of)


def is_seed(G: FiniteGroup) -> bool:
    """False iff a nontrivial cyclic central C meets G' trivially."""
    ok, _ = weight_le_one(G)
    if not ok:
        raise GroupError(f"{G.name} has weight greater than one")
    Gp = commutator_subgroup(G)
    for z in center(G).members:
        if z == 0:
            continue
        C = G.generated([z])
        if C & Gp._set == {0}:
            return False
    return True


def non_seed_witness(G: FiniteGroup) -> int | None:
    """A central element z != e with <z> meeting G' trivially, if any."""
    Gp = commutator_subgroup(G)
    for z in center(G).members:
        if z and G.generated([z]) & Gp._set == {0}:
            return z
    return None


def is_tav_group(G: FiniteGroup) -> bool:
    """w(G) = 1 and G' is not a p-group (trivial G' counts as a p-group)."""
    if G.order == 1:
        return False
    ok, _ = weight_le_one(G)
    if not ok:
        return False
    return is_p_group(commutator_subgroup(G)) is None
