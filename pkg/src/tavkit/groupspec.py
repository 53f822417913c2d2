"""Parser for the group-construction mini-language.

Grammar::

    spec := cyclic:m | dihedral:n | dicyclic:n | symmetric:n | alternating:n
          | product(spec, spec)
          | semidirect(p, m, r)
          | quotient(spec, <element label>)
          | pullback(spec, k, n)
"""

from __future__ import annotations

from . import groups as g
from .groups import FiniteGroup, GroupError

__all__ = ["build_group", "split_args"]

_ATOMS = {
    "cyclic": g.cyclic_group,
    "dihedral": g.dihedral_group,
    "dicyclic": g.dicyclic_group,
    "symmetric": g.symmetric_group,
    "alternating": g.alternating_group,
}

_ATOM_NAMES = {"cyclic": "C", "dihedral": "D", "dicyclic": "Dic", "symmetric": "S", "alternating": "A"}


def split_args(text: str) -> list[str]:
    """Split on commas at bracket depth zero."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise GroupError(f"unbalanced brackets in {text!r}")
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise GroupError(f"unbalanced brackets in {text!r}")
    out.append("".join(cur).strip())
    return out


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise GroupError(f"expected an integer for {what}, got {text!r}") from None


def build_group(spec: str) -> FiniteGroup:
    """Build the Cayley table described by a group spec string."""
    s = spec.strip()
    if not s:
        raise GroupError("empty group spec")
    head, colon, rest = s.partition(":")
    if colon and "(" not in head:
        kind = head.strip()
        if kind not in _ATOMS:
            raise GroupError(f"unknown group family {kind!r}")
        n = _int(rest.strip(), kind)
        G = _ATOMS[kind](n)
        G.name = f"{_ATOM_NAMES[kind]}{n}"
        G.spec = s
        return G
    if "(" not in s or not s.endswith(")"):
        raise GroupError(f"malformed group spec {spec!r}")
    fn, _, inner = s.partition("(")
    fn = fn.strip()
    args = split_args(inner[:-1])
    if fn == "product":
        if len(args) != 2:
            raise GroupError("product takes two group specs")
        A, B = build_group(args[0]), build_group(args[1])
        G = g.direct_product(A, B)
    elif fn == "semidirect":
        if len(args) != 3:
            raise GroupError("semidirect takes (p, m, r)")
        p, m, r = (_int(a, "semidirect") for a in args)
        G = g.semidirect_cyclic(p, m, r)
    elif fn == "quotient":
        if len(args) != 2:
            raise GroupError("quotient takes (spec, central element label)")
        A = build_group(args[0])
        z = A.index(args[1])
        N = A.subgroup(A.generated([z]))
        if not N.is_central():
            raise GroupError(f"element {args[1]!r} is not central in {A.name}")
        G, _ = g.quotient(A, N, name=f"{A.name}/<{args[1]}>")
    elif fn == "pullback":
        if len(args) != 3:
            raise GroupError("pullback takes (spec, k, n)")
        A = build_group(args[0])
        k, n = _int(args[1], "k"), _int(args[2], "n")
        G = g.pullback_extension(A, k, n).group
    else:
        raise GroupError(f"unknown group constructor {fn!r}")
    G.spec = s
    return G
