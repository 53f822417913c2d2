import itertools

import pytest

from tavkit import groups as g
from tavkit.epi import (Epimorphism, EpimorphismError, count_epimorphisms, evaluate_word,
                        find_epimorphisms, lift_epimorphism)
from tavkit.groupspec import build_group
from tavkit.knots import builtin_knot


def brute_all(K, G):
    """Every epimorphism, by exhaustive product over normally generating classes."""
    out = []
    for cls in G.conjugacy_classes():
        if len(g.normal_closure(G, [cls[0]])) != G.order:
            continue
        for imgs in itertools.product(cls, repeat=K.n):
            if all(evaluate_word(G, imgs, r) == 0 for r in K.relators) and \
                    len(G.generated(imgs)) == G.order:
                out.append(imgs)
    return out


def brute_count(K, G):
    """Raw assignments with s1 pinned to the first element of its class."""
    firsts = {cls[0] for cls in G.conjugacy_classes()}
    return sum(1 for imgs in brute_all(K, G) if imgs[0] in firsts)


def brute_inner_orbits(K, G):
    orbits = set()
    for imgs in brute_all(K, G):
        orbits.add(min(tuple(G.conj(x, h) for x in imgs) for h in range(G.order)))
    return len(orbits)


@pytest.mark.parametrize("knot,spec", [("3_1", "dihedral:3"), ("4_1", "dihedral:5"),
                                       ("3_1", "alternating:4"), ("4_1", "dihedral:3"),
                                       ("5_1", "dihedral:5"), ("4_1", "alternating:4")])
def test_count_matches_brute_force(knot, spec):
    K, G = builtin_knot(knot), build_group(spec)
    assert count_epimorphisms(K, G) == brute_count(K, G)
    assert count_epimorphisms(K, G, modulo_inner=True) == brute_inner_orbits(K, G)


def test_known_counts():
    assert count_epimorphisms(builtin_knot("3_1"), build_group("dihedral:3")) == 2
    assert count_epimorphisms(builtin_knot("3_1"), build_group("dihedral:3"), modulo_inner=True) == 1
    assert count_epimorphisms(builtin_knot("4_1"), build_group("dihedral:3")) == 0
    assert find_epimorphisms(builtin_knot("5_2"), build_group("dihedral:7"), "first")


def test_found_maps_verify():
    K, G = builtin_knot("6_1"), build_group("dihedral:9")
    fs = find_epimorphisms(K, G, "all", modulo_inner=True)
    assert fs
    for f in fs:
        f.verify()


def test_seeded_and_threaded_search_agree():
    K, G = builtin_knot("4_1"), build_group("alternating:4")
    a = find_epimorphisms(K, G, "all")
    b = find_epimorphisms(K, G, "all", seed=7, threads=3)
    assert a == b


def test_verify_rejects_non_surjection():
    K, G = builtin_knot("3_1"), build_group("dihedral:3")
    s = G.index("s")
    with pytest.raises(EpimorphismError):
        Epimorphism(K, G, (s, s, s)).verify()


def test_json_labels():
    K, G = builtin_knot("3_1"), build_group("dihedral:3")
    f = find_epimorphisms(K, G)[0]
    data = f.to_json()
    assert data["knot"] == "3_1" and set(data["images"]) == {"s1", "s2", "s3"}


@pytest.mark.parametrize("n", [2, 3])
def test_lift_to_central_extension(n):
    K, D3 = builtin_knot("3_1"), build_group("dihedral:3")
    f1 = find_epimorphisms(K, D3)[0]
    fn = lift_epimorphism(f1, n)
    assert fn.target.order == 6 * n
    fn.verify()
