"""Wirtinger presentations, free words, Fox calculus and Alexander polynomials."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .laurent import LaurentPoly, normalize_unit
from .polymat import det_from_coeff_array
from .rings import ZZ

__all__ = [
    "FreeWord",
    "FoxElement",
    "WirtingerPresentation",
    "PresentationError",
    "fox_derivative",
    "alexander_polynomial",
    "alexander_matrix",
    "builtin_knot",
    "knot_names",
    "load_knot",
    "DEFAULT_CORPUS",
]


class PresentationError(ValueError):
    pass


_TOKEN = re.compile(r"^s(\d+)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class FreeWord:
    """A word in the free group; letters are (generator index, +1 or -1)."""

    letters: tuple[tuple[int, int], ...] = ()

    @classmethod
    def identity(cls) -> "FreeWord":
        return cls(())

    @classmethod
    def gen(cls, i: int, e: int = 1) -> "FreeWord":
        return cls(((i, 1 if e > 0 else -1),) * abs(e))

    @classmethod
    def parse(cls, tokens: Iterable[str] | str) -> "FreeWord":
        """Parse ``["s1", "s2^-1"]`` or ``"s1 s2^-1"`` (generators 1-based)."""
        if isinstance(tokens, str):
            tokens = tokens.replace("*", " ").split()
        letters = []
        for tok in tokens:
            m = _TOKEN.match(tok.strip())
            if not m:
                raise PresentationError(f"bad word token {tok!r}")
            i = int(m.group(1)) - 1
            e = int(m.group(2) or 1)
            if i < 0:
                raise PresentationError(f"generator index must be >= 1 in {tok!r}")
            letters.extend([(i, 1 if e > 0 else -1)] * abs(e))
        return cls(tuple(letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((i, -e) for i, e in reversed(self.letters)))

    def reduced(self) -> "FreeWord":
        out: list[tuple[int, int]] = []
        for i, e in self.letters:
            if out and out[-1][0] == i and out[-1][1] == -e:
                out.pop()
            else:
                out.append((i, e))
        return FreeWord(tuple(out))

    def exponent_sum(self, i: int | None = None) -> int:
        return sum(e for g, e in self.letters if i is None or g == i)

    def max_generator(self) -> int:
        return max((i for i, _ in self.letters), default=-1)

    def tokens(self) -> list[str]:
        return [f"s{i + 1}" if e > 0 else f"s{i + 1}^-1" for i, e in self.letters]

    def rotate(self, k: int) -> "FreeWord":
        k %= max(len(self.letters), 1)
        return FreeWord(self.letters[k:] + self.letters[:k])

    def __str__(self) -> str:
        return " ".join(self.tokens()) or "1"


class FoxElement:
    """Element of the integral group ring of a free group."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[FreeWord, int] | None = None):
        clean: dict[FreeWord, int] = {}
        for w, c in (terms or {}).items():
            w = w.reduced()
            clean[w] = clean.get(w, 0) + c
        self.terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def word(cls, w: FreeWord, c: int = 1) -> "FoxElement":
        return cls({w: c})

    @classmethod
    def one(cls) -> "FoxElement":
        return cls({FreeWord(): 1})

    def __add__(self, other: "FoxElement") -> "FoxElement":
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, 0) + c
        return FoxElement(t)

    def __neg__(self) -> "FoxElement":
        return FoxElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "FoxElement") -> "FoxElement":
        return self + (-other)

    def __mul__(self, other) -> "FoxElement":
        if isinstance(other, FreeWord):
            other = FoxElement.word(other)
        t: dict[FreeWord, int] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = (u * v).reduced()
                t[w] = t.get(w, 0) + a * b
        return FoxElement(t)

    def __rmul__(self, other) -> "FoxElement":
        if isinstance(other, FreeWord):
            return FoxElement.word(other) * self
        if isinstance(other, int):
            return FoxElement({w: other * c for w, c in self.terms.items()})
        return NotImplemented

    def __eq__(self, other) -> bool:
        return isinstance(other, FoxElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def abelianize(self, ring=ZZ) -> LaurentPoly:
        """Image under the map sending every generator to t."""
        out: dict[int, int] = {}
        for w, c in self.terms.items():
            e = w.exponent_sum()
            out[e] = out.get(e, 0) + c
        return LaurentPoly(ZZ, out).change_ring(ring) if ring is not ZZ else LaurentPoly(ZZ, out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0].letters)):
            body = str(w)
            if body == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def fox_derivative(w: FreeWord, j: int) -> FoxElement:
    """Free derivative of ``w`` with respect to generator ``j`` (0-based)."""
    w = w.reduced()
    terms: dict[FreeWord, int] = {}
    letters = w.letters
    for pos, (i, e) in enumerate(letters):
        if i != j:
            continue
        if e > 0:
            prefix = FreeWord(letters[:pos])
            terms[prefix] = terms.get(prefix, 0) + 1
        else:
            prefix = FreeWord(letters[: pos + 1])
            terms[prefix] = terms.get(prefix, 0) - 1
    return FoxElement(terms)


@dataclass(frozen=True)
class WirtingerPresentation:
    name: str
    n: int
    relators: tuple[FreeWord, ...]
    expected_alexander: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        rels = tuple(r if isinstance(r, FreeWord) else FreeWord.parse(r) for r in self.relators)
        if len(rels) == self.n and self.n > 0:
            # one Wirtinger relator is always a consequence of the others
            rels = rels[:-1]
        object.__setattr__(self, "relators", rels)
        self.validate()

    def validate(self) -> None:
        if self.n < 1:
            raise PresentationError("a knot group needs at least one generator")
        if len(self.relators) != self.n - 1:
            raise PresentationError(f"{self.name}: expected {self.n - 1} relators, got {len(self.relators)}")
        for k, r in enumerate(self.relators):
            if r.max_generator() >= self.n:
                raise PresentationError(f"{self.name}: relator {k + 1} uses an undefined generator")
            if r.exponent_sum() != 0:
                raise PresentationError(f"{self.name}: relator {k + 1} has nonzero exponent sum")

    def to_json(self) -> dict:
        return {"name": self.name, "generators": self.n,
                "relators": [r.tokens() for r in self.relators]}

    @classmethod
    def from_json(cls, data: dict) -> "WirtingerPresentation":
        try:
            return cls(str(data["name"]), int(data["generators"]),
                       tuple(FreeWord.parse(r) for r in data["relators"]))
        except KeyError as exc:
            raise PresentationError(f"knot file missing key {exc}") from None

    def __str__(self) -> str:
        rels = ", ".join(str(r) for r in self.relators)
        gens = ", ".join(f"s{i + 1}" for i in range(self.n))
        return f"{self.name}: <{gens} | {rels}>"


def alexander_matrix(K: WirtingerPresentation) -> list[list[LaurentPoly]]:
    """Abelianized Fox matrix, (n-1) x n over Z[t^{+-1}]."""
    return [[fox_derivative(r, j).abelianize() for j in range(K.n)] for r in K.relators]


def alexander_polynomial(K: WirtingerPresentation, column: int | None = None) -> LaurentPoly:
    """Classical Alexander polynomial, normalized with Delta(1) = +-1 checked."""
    n = K.n
    if n == 1:
        return LaurentPoly.constant(ZZ, 1)
    j = n - 1 if column is None else column
    A = alexander_matrix(K)
    minor = [[A[i][c] for c in range(n) if c != j] for i in range(n - 1)]
    lo = min((e.low for row in minor for e in row if not e.is_zero()), default=0)
    hi = max((e.degree for row in minor for e in row if not e.is_zero()), default=0)
    coef = np.zeros((hi - lo + 1, n - 1, n - 1), dtype=np.int64)
    for i, row in enumerate(minor):
        for c, e in enumerate(row):
            for k, v in e.terms.items():
                coef[k - lo, i, c] = v
    d = normalize_unit(det_from_coeff_array(coef, lo, ZZ))
    if abs(d.evaluate(1)) != 1:
        raise PresentationError(f"{K.name}: Alexander polynomial {d} has |Delta(1)| != 1")
    return d


# -- bundled table ----------------------------------------------------------------

def _wirtinger_from_braid(name: str, word: Sequence[int]) -> WirtingerPresentation:
    """Wirtinger presentation of a closed braid diagram (internal table builder)."""
    strands = max(abs(g) for g in word) + 1
    pos = list(range(strands))
    nxt = strands
    rels: list[tuple[int, int, int, int]] = []  # (a, eps, b, c): a^eps b a^-eps = c
    for g in word:
        i = abs(g) - 1
        a, b = pos[i], pos[i + 1]
        c = nxt
        nxt += 1
        if g > 0:
            rels.append((a, 1, b, c))
            pos[i], pos[i + 1] = c, a
        else:
            rels.append((b, -1, a, c))
            pos[i], pos[i + 1] = b, c
    parent = list(range(nxt))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for top in range(strands):
        parent[find(pos[top])] = find(top)
    roots = sorted({find(x) for x in range(nxt)})
    idx = {r: k for k, r in enumerate(roots)}
    words = []
    for a, eps, b, c in rels:
        a, b, c = idx[find(a)], idx[find(b)], idx[find(c)]
        words.append(FreeWord(((a, eps), (b, 1), (a, -eps), (c, -1))))
    return WirtingerPresentation(name, len(roots), tuple(words))


# name -> (braid word, Alexander coefficients from t^0 upward)
_TABLE: dict[str, tuple[list[int], tuple[int, ...]]] = {
    "3_1": ([1, 1, 1], (1, -1, 1)),
    "4_1": ([1, -2, 1, -2], (1, -3, 1)),
    "5_1": ([1] * 5, (1, -1, 1, -1, 1)),
    "5_2": ([1, 1, 1, 2, -1, 2], (2, -3, 2)),
    "6_1": ([1, 1, 2, -1, -3, 2, -3], (2, -5, 2)),
    "6_2": ([1, 1, 1, -2, 1, -2], (1, -3, 3, -3, 1)),
    "6_3": ([1, 1, -2, 1, -2, -2], (1, -3, 5, -3, 1)),
    "7_1": ([1] * 7, (1, -1, 1, -1, 1, -1, 1)),
    "7_2": ([1, 1, 1, 2, -1, 2, 3, -2, 3], (3, -5, 3)),
    "7_3": ([1] * 5 + [2, -1, 2], (2, -3, 3, -3, 2)),
    "7_4": ([1, 1, 2, -1, 2, 2, 3, -2, 3], (4, -7, 4)),
    "7_5": ([1, 1, 1, 1, 2, -1, 2, 2], (2, -4, 5, -4, 2)),
    "7_6": ([1, 1, -2, 1, 3, -2, 3], (1, -5, 7, -5, 1)),
    "7_7": ([1, -2, 1, -2, 3, -2, 3], (1, -5, 9, -5, 1)),
}

DEFAULT_CORPUS = ("3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3")


def knot_names() -> list[str]:
    return ["unknot", *_TABLE]


@lru_cache(maxsize=None)
def builtin_knot(name: str) -> WirtingerPresentation:
    """A bundled knot, checked against its Alexander polynomial on load."""
    if name == "unknot":
        return WirtingerPresentation("unknot", 1, (), expected_alexander=(1,))
    if name not in _TABLE:
        raise KeyError(f"unknown knot {name!r}; known: {', '.join(knot_names())}")
    braid, alex = _TABLE[name]
    K = _wirtinger_from_braid(name, braid)
    K = WirtingerPresentation(name, K.n, K.relators, expected_alexander=alex)
    got = alexander_polynomial(K)
    if got != LaurentPoly.from_list(ZZ, alex):
        raise PresentationError(f"{name}: self-check failed, got {got}")
    return K


def load_knot(spec: str) -> WirtingerPresentation:
    """Resolve a builtin name or a path to a knot JSON file."""
    if spec in _TABLE or spec == "unknot":
        return builtin_knot(spec)
    path = Path(spec)
    if not path.exists():
        raise KeyError(f"{spec!r} is neither a bundled knot nor a file")
    with path.open() as fh:
        return WirtingerPresentation.from_json(json.load(fh))
