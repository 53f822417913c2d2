"""Backtracking search for epimorphisms from knot groups onto finite groups."""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .groups import FiniteGroup, PullbackExtension, normal_closure, pullback_extension
from .knots import FreeWord, WirtingerPresentation

__all__ = ["Epimorphism", "EpimorphismError", "find_epimorphisms", "count_epimorphisms",
           "lift_epimorphism", "evaluate_word"]


class EpimorphismError(ValueError):
    pass


def evaluate_word(G: FiniteGroup, images: tuple[int, ...], w: FreeWord) -> int:
    x = 0
    m, inv = G._m, G.inv
    for i, e in w.letters:
        g = images[i]
        x = m[x][g if e > 0 else inv[g]]
    return x


@dataclass(frozen=True)
class Epimorphism:
    source: WirtingerPresentation
    target: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(x) for x in self.images))

    def __call__(self, w: FreeWord) -> int:
        return evaluate_word(self.target, self.images, w)

    def verify(self) -> None:
        """Independent re-check: relators, surjectivity, conjugate meridians."""
        K, G = self.source, self.target
        if len(self.images) != K.n:
            raise EpimorphismError("wrong number of generator images")
        for r in K.relators:
            if self(r) != 0:
                raise EpimorphismError(f"relator {r} does not map to the identity")
        if len(G.generated(self.images)) != G.order:
            raise EpimorphismError("images do not generate the target")
        cls = set(G.class_of(self.images[0]))
        if any(x not in cls for x in self.images):
            raise EpimorphismError("meridian images are not conjugate")

    def labels(self) -> list[str]:
        return [self.target.labels[x] for x in self.images]

    def to_json(self) -> dict:
        return {"knot": self.source.name, "group": self.target.name,
                "images": {f"s{i + 1}": lab for i, lab in enumerate(self.labels())}}


# -- search ----------------------------------------------------------------------

class _Solver:
    """Assign generator images with relator propagation."""

    def __init__(self, K: WirtingerPresentation, G: FiniteGroup):
        self.K, self.G = K, G
        self.rels = [r.reduced().letters for r in K.relators]
        self.rels_of = [[] for _ in range(K.n)]
        for k, r in enumerate(self.rels):
            for g in {i for i, _ in r}:
                self.rels_of[g].append(k)

    def _solve_one(self, rel, img):
        """If exactly one letter of ``rel`` is unassigned, return (gen, value)."""
        G = self.G
        m, inv = G._m, G.inv
        missing = [p for p, (i, _) in enumerate(rel) if img[i] < 0]
        if len(missing) != 1:
            return None
        p = missing[0]
        gi, e = rel[p]
        u = 0
        for i, ee in rel[:p]:
            u = m[u][img[i] if ee > 0 else inv[img[i]]]
        v = 0
        for i, ee in rel[p + 1:]:
            v = m[v][img[i] if ee > 0 else inv[img[i]]]
        # u x v = 1  =>  x = u^-1 v^-1
        x = m[inv[u]][inv[v]]
        return gi, (x if e > 0 else inv[x])

    def _check(self, rel, img) -> bool:
        m, inv = self.G._m, self.G.inv
        x = 0
        for i, e in rel:
            x = m[x][img[i] if e > 0 else inv[img[i]]]
        return x == 0

    def propagate(self, img: list[int], start: int, allowed: set[int]) -> list[int] | None:
        """Assign forced values; return list of newly set generators or None on conflict."""
        changed = [start]
        stack = [start]
        while stack:
            g = stack.pop()
            for k in self.rels_of[g]:
                rel = self.rels[k]
                if all(img[i] >= 0 for i, _ in rel):
                    if not self._check(rel, img):
                        for c in changed[1:]:
                            img[c] = -1
                        return None
                    continue
                forced = self._solve_one(rel, img)
                if forced is None:
                    continue
                gi, val = forced
                if val not in allowed:
                    for c in changed[1:]:
                        img[c] = -1
                    return None
                img[gi] = val
                changed.append(gi)
                stack.append(gi)
        return changed

    def run(self, first: int, cls: list[int]) -> Iterator[tuple[int, ...]]:
        n = self.K.n
        img = [-1] * n
        allowed = set(cls)
        img[0] = first
        ch = self.propagate(img, 0, allowed)
        if ch is None:
            return
        order = list(range(n))
        G = self.G

        def rec():
            gi = next((i for i in order if img[i] < 0), None)
            if gi is None:
                imgs = tuple(img)
                if len(G.generated(imgs)) == G.order:
                    yield imgs
                return
            for val in cls:
                img[gi] = val
                changed = self.propagate(img, gi, allowed)
                if changed is None:
                    img[gi] = -1
                    continue
                yield from rec()
                for c in changed:
                    img[c] = -1

        yield from rec()


def _first_candidates(G: FiniteGroup) -> list[tuple[int, list[int]]]:
    out = []
    for cls in G.conjugacy_classes():
        if len(normal_closure(G, [cls[0]])) == G.order:
            out.append((cls[0], sorted(cls)))
    return out


def _inner_canonical(G: FiniteGroup, imgs: tuple[int, ...]) -> tuple[int, ...]:
    return min(tuple(G.conj(x, g) for x in imgs) for g in range(G.order))


def _threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("TAVKIT_THREADS", "1") or 1)
    return max(1, threads)


def find_epimorphisms(K: WirtingerPresentation, G: FiniteGroup, mode: str = "first", *,
                      modulo_inner: bool = False, seed: int | None = None,
                      threads: int | None = None):
    """Epimorphisms G(K) -> G.

    ``mode`` is ``"first"`` (list of at most one), ``"all"`` (sorted list)
    or ``"count"`` (an int).  The image of the first generator runs over
    class representatives whose normal closure is G; every other generator
    runs over the same class.
    """
    if mode not in ("first", "all", "count"):
        raise ValueError(f"unknown mode {mode!r}")
    solver = _Solver(K, G)
    cands = _first_candidates(G)
    if seed is not None:
        rng = random.Random(seed)
        cands = [(f, rng.sample(c, len(c))) for f, c in cands]

    if mode == "first":
        for first, cls in cands:
            for imgs in solver.run(first, cls):
                return [Epimorphism(K, G, imgs)]
        return []

    def branch(c):
        found = list(solver.run(*c))
        return found

    nthreads = _threads(threads)
    if nthreads > 1 and len(cands) > 1:
        with ThreadPoolExecutor(nthreads) as pool:
            results = [x for part in pool.map(branch, cands) for x in part]
    else:
        results = [x for c in cands for x in branch(c)]
    if modulo_inner:
        results = sorted({_inner_canonical(G, r) for r in results})
    else:
        results = sorted(results)
    if mode == "count":
        return len(results)
    return [Epimorphism(K, G, r) for r in results]


def count_epimorphisms(K: WirtingerPresentation, G: FiniteGroup, **kw) -> int:
    return find_epimorphisms(K, G, "count", **kw)


def lift_epimorphism(f1: Epimorphism, n: int, ext: PullbackExtension | None = None) -> Epimorphism:
    """Lift f1 : G(K) -> G_{k,1} to G(K) -> G_{k,n} sending s_i to (f1(s_i), x)."""
    G1 = f1.target
    if ext is None:
        from .groups import abelianization

        k = abelianization(G1)[0].order
        ext = pullback_extension(G1, k, n, generator=f1.images[0])
    if ext.base is not G1 or ext.n != n:
        raise EpimorphismError("extension was not built over this epimorphism's target")
    try:
        imgs = tuple(ext.element(z, 1) for z in f1.images)
    except KeyError:
        raise EpimorphismError("meridian image does not map to the designated generator of C_k") from None
    fn = Epimorphism(f1.source, ext.group, imgs)
    try:
        fn.verify()
    except EpimorphismError as exc:
        raise EpimorphismError(f"lift failed verification: {exc}") from None
    if tuple(ext.pr(x) for x in fn.images) != f1.images:
        raise EpimorphismError("pr o f_n differs from f_1")
    return fn
