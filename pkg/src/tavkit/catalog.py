"""Construction-based catalog of the groups of order at most 23.

Candidates come from explicit constructions (cyclic products, dihedral,
dicyclic, metacyclic and a few special semidirect products / central
quotients); duplicates are removed by an invariant fingerprint followed by
an exhaustive isomorphism test.
"""

from __future__ import annotations

import math
import warnings
from itertools import product

from . import groups as g
from .groupspec import build_group
from .groups import FiniteGroup

__all__ = ["GroupCatalog", "catalog_groups", "are_isomorphic", "fingerprint", "CATALOG_MAX"]

CATALOG_MAX = 23


class GroupCatalog(list):
    """List of groups; ``complete`` is False past the verified range."""

    complete: bool = True


def fingerprint(G: FiniteGroup) -> tuple:
    classes = sorted((len(c), G.element_order(c[0])) for c in G.conjugacy_classes())
    return (
        G.order,
        G.is_abelian(),
        G.element_order_histogram(),
        len(g.center(G)),
        len(g.commutator_subgroup(G)),
        tuple(classes),
    )


def _extend(G: FiniteGroup, H: FiniteGroup, gens: list[int], imgs: tuple[int, ...]) -> list[int] | None:
    """Extend generator images to a map on all of G, or None if inconsistent."""
    phi = [-1] * G.order
    phi[0] = 0
    queue = [0]
    for x in queue:
        px = phi[x]
        for a, b in zip(gens, imgs):
            y = G.m(x, a)
            py = H.m(px, b)
            if phi[y] < 0:
                phi[y] = py
                queue.append(y)
            elif phi[y] != py:
                return None
    return phi


def are_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    """Exhaustive generator-mapping isomorphism test (small groups)."""
    if fingerprint(G) != fingerprint(H):
        return False
    gens = G.generators
    cands = []
    for a in gens:
        sig = (G.element_order(a), len(G.class_of(a)))
        cands.append([b for b in range(H.order)
                      if (H.element_order(b), len(H.class_of(b))) == sig])
    for imgs in product(*cands):
        if len(set(H.generated(imgs))) != H.order:
            continue
        phi = _extend(G, H, gens, imgs)
        if phi is not None and len(set(phi)) == H.order:
            return True
    return False


def _abelian_specs(n: int) -> list[str]:
    """Every abelian group of order n as a product of cyclic groups."""
    def partitions(k, maxpart=None):
        if k == 0:
            yield []
            return
        for part in range(min(k, maxpart or k), 0, -1):
            for rest in partitions(k - part, part):
                yield [part] + rest

    primes = []
    m, q = n, 2
    while m > 1:
        if m % q == 0:
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            primes.append((q, e))
        q += 1
    options = [[[q ** a for a in part] for part in partitions(e)] for q, e in primes]
    out = []
    for combo in product(*options):
        # invariant factors
        cols = [sorted(c, reverse=True) for c in combo]
        depth = max((len(c) for c in cols), default=0)
        factors = []
        for i in range(depth):
            f = 1
            for c in cols:
                if i < len(c):
                    f *= c[i]
            factors.append(f)
        factors = factors or [1]
        spec = f"cyclic:{factors[-1]}"
        for f in reversed(factors[:-1]):
            spec = f"product({spec},cyclic:{f})"
        out.append(spec)
    return out


def _specials() -> list[tuple[str, FiniteGroup]]:
    """Groups not reachable from the plain spec families."""
    out = []
    c2 = g.cyclic_group(2)
    v4 = g.direct_product(c2, c2)
    swap = [v4.index(f"({b}, {a})") for a, b in
            (lab.strip("()").split(", ") for lab in v4.labels)]
    G = g.semidirect_product(v4, 4, swap, name="C2^2:C4")
    out.append(("C2^2:C4", G))
    c3 = g.cyclic_group(3)
    c33 = g.direct_product(c3, c3)
    inv = [c33.inv[x] for x in range(c33.order)]
    out.append(("C3:D3", g.semidirect_product(c33, 2, inv, name="C3:D3")))
    pauli = build_group("quotient(product(cyclic:4,dihedral:4), (x^2, r^2))")
    pauli.name = "C4oD4"
    out.append(("C4oD4", pauli))
    return out


def _candidates(max_order: int):
    for n in range(1, max_order + 1):
        for s in _abelian_specs(n):
            yield s, None
    named = [
        ("dihedral:{n}", lambda n: 2 * n, range(3, 64)),
        ("dicyclic:{n}", lambda n: 4 * n, range(2, 64)),
    ]
    for fmt, order, rng in named:
        for n in rng:
            if order(n) <= max_order:
                yield fmt.format(n=n), None
    if max_order >= 12:
        yield "alternating:4", None
    small_nonabelian = [("dihedral:3", 6), ("dihedral:4", 8), ("dicyclic:2", 8), ("dihedral:5", 10)]
    for a, order in small_nonabelian:
        for c in range(2, max_order // order + 1):
            yield f"product({a},cyclic:{c})", None
    for name, G in _specials():
        if G.order <= max_order:
            yield name, G
    for p in range(3, max_order + 1):
        for m in range(2, max_order // p + 1):
            for r in range(2, p):
                if pow(r, m, p) == 1 and math.gcd(r, p) == 1:
                    yield f"semidirect({p},{m},{r})", None


def _pretty(spec: str, G: FiniteGroup) -> str:
    special = {
        "product(dihedral:3,cyclic:3)": "C3xD3",
        "product(dicyclic:2,cyclic:2)": "Q8xC2",
        "dicyclic:2": "Q8",
        "semidirect(4,4,3)": "C4:C4",
        "semidirect(8,2,3)": "SD16",
        "semidirect(8,2,5)": "M16",
        "semidirect(5,4,2)": "C5:C4",
        "semidirect(7,3,2)": "C7:C3",
    }
    return special.get(spec, G.name)


def catalog_groups(max_order: int = CATALOG_MAX) -> GroupCatalog:
    """All groups of order <= max_order up to isomorphism, sorted by order.

    Completeness is only guaranteed for max_order <= 23; beyond that the
    result is partial and ``complete`` is False.
    """
    result = GroupCatalog()
    if max_order > CATALOG_MAX:
        warnings.warn(f"catalog is complete only up to order {CATALOG_MAX}", stacklevel=2)
        result.complete = False
    by_fp: dict[tuple, list[FiniteGroup]] = {}
    for spec, G in _candidates(max_order):
        if G is None:
            try:
                G = build_group(spec)
            except g.GroupError:
                continue
            G.name = _pretty(spec, G)
        else:
            G.spec = spec
        if G.order > max_order:
            continue
        fp = fingerprint(G)
        bucket = by_fp.setdefault(fp, [])
        if any(are_isomorphic(H, G) for H in bucket):
            continue
        bucket.append(G)
        result.append(G)
    result.sort(key=lambda H: H.order)
    return result
