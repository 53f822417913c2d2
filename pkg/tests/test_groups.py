import itertools

import pytest

from tavkit import groups as g
from tavkit.groups import GroupError
from tavkit.groupspec import build_group, split_args


def brute_commutator_order(G):
    comms = {G.commutator(a, b) for a in range(G.order) for b in range(G.order)}
    return len(G.generated(list(comms)))


@pytest.mark.parametrize("spec,order", [("cyclic:6", 6), ("dihedral:5", 10), ("dicyclic:3", 12),
                                        ("symmetric:4", 24), ("alternating:4", 12),
                                        ("product(cyclic:2,dihedral:3)", 12),
                                        ("semidirect(7,3,2)", 21), ("pullback(dihedral:3,2,2)", 12)])
def test_orders_and_associativity(spec, order):
    G = build_group(spec)
    assert G.order == order
    for a, b, c in itertools.product(range(G.order), repeat=3):
        if (a * 7 + b * 3 + c) % 5:
            continue
        assert G.m(G.m(a, b), c) == G.m(a, G.m(b, c))


@pytest.mark.parametrize("spec", ["dihedral:3", "dihedral:4", "dicyclic:2", "alternating:4",
                                  "symmetric:4", "semidirect(5,4,2)"])
def test_commutator_subgroup_matches_brute_force(spec):
    G = build_group(spec)
    assert len(g.commutator_subgroup(G)) == brute_commutator_order(G)


def test_center_and_quotient():
    Q8 = build_group("dicyclic:2")
    Z = g.center(Q8)
    assert len(Z) == 2
    Q, pi = g.quotient(Q8, Z)
    assert Q.order == 4 and Q.is_abelian()
    assert len(pi.kernel()) == 2


def test_dicyclic_mod_center_is_dihedral():
    G = build_group("quotient(dicyclic:3, a^3)")
    D3 = build_group("dihedral:3")
    assert G.element_order_histogram() == D3.element_order_histogram()


def test_weight_and_p_group_status():
    assert g.weight_le_one(build_group("dihedral:3"))[0]
    assert not g.weight_le_one(build_group("dihedral:4"))[0]
    assert g.is_p_group(g.commutator_subgroup(build_group("dihedral:9"))) == 3
    assert g.is_p_group(build_group("cyclic:6")) is None
    assert g.is_p_group(g.commutator_subgroup(build_group("cyclic:6"))) == "trivial"


@pytest.mark.parametrize("spec,tav", [("symmetric:4", True), ("dihedral:15", True),
                                      ("dihedral:3", False), ("alternating:4", False),
                                      ("dihedral:4", False), ("cyclic:6", False)])
def test_tav_group_criterion(spec, tav):
    assert g.is_tav_group(build_group(spec)) is tav


def test_pullback_extension_structure():
    D3 = build_group("dihedral:3")
    ext = g.pullback_extension(D3, 2, 3)
    assert ext.group.order == 18
    assert ext.pr.is_surjective() and ext.pr2.is_surjective()
    assert len(ext.pr.kernel()) == 3 and ext.pr.kernel().is_central()
    assert not g.is_seed(ext.group)
    assert g.is_seed(D3)


def test_right_cosets_partition():
    S4 = build_group("symmetric:4")
    H = S4.subgroup(S4.generated([S4.index("(1 2)")]))
    cos = H.right_cosets()
    assert len(cos) == 12
    assert sorted(x for c in cos for x in c) == list(range(24))


@pytest.mark.parametrize("bad", ["cyclic:0", "foo:3", "product(cyclic:2)", "semidirect(7,2,3)",
                                 "dihedral:x", "quotient(dihedral:3, r)", "product(cyclic:2"])
def test_bad_specs(bad):
    with pytest.raises(GroupError):
        build_group(bad)


def test_split_args_nested():
    assert split_args("product(a,b), c") == ["product(a,b)", "c"]


def test_order_cap():
    with pytest.raises(GroupError):
        build_group("cyclic:5000")
