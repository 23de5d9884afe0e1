from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surfclass.ends import (
    Automaton,
    ClopenExpr,
    Distinguished,
    NotDistinguished,
    binary_embed,
    cb_profile,
    clopen_algebra,
    count_ends,
    decide_finite_triple,
    distinguish,
    end_triple,
    triple_from_automaton,
)
from surfclass.errors import CountsNotCertified, NotNormalizable
from surfclass.exhaustion import builtin_recipes
from treegen import branch_in, branches, random_automaton_triple, random_finite_triple


def triple(name, depth=4):
    return end_triple(builtin_recipes(name), depth)


def counts(name, depth=4):
    return tuple(str(c) for c in count_ends(triple(name, depth)))


def test_plane_single_branch():
    t = triple("plane")
    assert counts("plane") == ("1", "0", "0")
    assert not t.nonplanar and not t.nonorientable
    assert all(len(n.children) <= 1 for n in t.tree.nodes.values())


def test_jacobs_ladder_marked_branches():
    t = triple("jacobs_ladder", 3)
    root = t.tree.nodes[0]
    assert len(root.children) == 2
    assert set(t.tree.nodes) == set(t.nonplanar)
    assert t.certainty["np"] == "Certified"


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_cantor_complete_binary(d):
    t = triple("cantor_complement", d)
    levels = [sum(1 for n in t.tree.nodes.values() if n.level == k) for k in range(d + 1)]
    assert levels == [2**k for k in range(d + 1)]
    assert not t.nonplanar


def test_count_examples():
    assert counts("cylinder") == ("2", "0", "0")
    assert counts("loch_ness") == ("1", "1", "0")
    assert counts("prong(3)") == ("3", "0", "0")
    assert counts("cantor_complement", 4) == (">=16", "0", "0")
    assert counts("crosscap_chain") == ("1", "1", "1")
    assert all(c.exact for c in count_ends(triple("cylinder")))


def test_binary_embed_addresses():
    auto = Automaton(("a", "a", "a"), {"a": ("a",)})
    b = binary_embed(triple_from_automaton(auto, 2))
    assert [b.tree.nodes[c].stats["original"] is not None for c in ("00", "01", "10")] == [True] * 3
    assert "11" not in b.tree.nodes
    assert "000" in b.tree.nodes  # single child hangs at address 0


def test_binary_embed_of_binary_tree_is_isomorphic():
    t = triple("cantor_complement", 3)
    b = binary_embed(t)
    assert len(b.tree.nodes) == len(t.tree.nodes)
    assert sorted(n.level for n in b.tree.nodes.values()) == sorted(n.level for n in t.tree.nodes.values())


def test_cb_profile_examples():
    ray = triple_from_automaton(Automaton(("a",), {"a": ("a",)}), 4)
    p = cb_profile(ray)
    assert p.rank == 1 and p.counts[0][1].value == 1
    binary = triple_from_automaton(Automaton(("a",), {"a": ("a", "a")}), 4)
    p = cb_profile(binary)
    assert p.perfect_kernel and p.rank is None
    spine = triple_from_automaton(Automaton(("s",), {"s": ("s", "r"), "r": ("r",)}), 5)
    p = cb_profile(spine)
    assert p.rank == 2
    assert [c.exact for _, c in p.counts] == [False, True, True]
    assert [c.value for _, c in p.counts][1:] == [1, 0]


def test_clopen_examples():
    cyl = triple("cylinder")
    A = clopen_algebra(cyl)
    assert A.in_F(A.top()) and A.in_G(A.top())
    one = A.cone(cyl.tree.nodes[0].children[0])
    assert A.in_F(one)
    jl = triple("jacobs_ladder")
    B = clopen_algebra(jl)
    one = B.cone(jl.tree.nodes[0].children[0])
    assert not B.in_F(one) and B.in_G(one)
    assert B.in_F(B.top())


def test_clopen_not_normalizable():
    t = triple("cylinder")
    A = clopen_algebra(t)
    a, b = t.tree.nodes[0].children
    with pytest.raises(NotNormalizable):
        A.normalize(ClopenExpr(frozenset([a]), frozenset([b])))
    with pytest.raises(NotNormalizable):
        A.normalize(ClopenExpr(frozenset([0, a])))


def test_clopen_subtraction():
    t = triple("cantor_complement", 3)
    A = clopen_algebra(t)
    a, b = t.tree.nodes[0].children
    e = ClopenExpr(frozenset([0]), frozenset([a]))
    assert A.eq(e, A.cone(b))
    assert A.normalize(e) == A.cone(b)


def test_distinguish_examples():
    r = distinguish(triple("jacobs_ladder"), triple("loch_ness"), 4)
    assert isinstance(r, Distinguished) and r.invariant == "end counts"
    assert r.values == ("(2,2,0)", "(1,1,0)")
    assert isinstance(distinguish(triple("plane"), triple("plane"), 4), NotDistinguished)
    r = distinguish(triple("cantor_complement"), triple("prong(3)"), 4)
    assert r.invariant == "cb_profile" and "perfect" in r.values[0] and "rank 1 with 3" in r.values[1]


NAMES = ["plane", "cylinder", "prong(3)", "loch_ness", "jacobs_ladder", "cantor_complement", "flute", "crosscap_chain"]


def test_distinguish_symmetric_and_irreflexive():
    ts = {n: triple(n) for n in NAMES}
    for a in NAMES:
        assert isinstance(distinguish(ts[a], ts[a]), NotDistinguished)
        for b in NAMES:
            x, y = distinguish(ts[a], ts[b]), distinguish(ts[b], ts[a])
            assert type(x) is type(y)
            if isinstance(x, Distinguished):
                assert x.invariant == y.invariant and x.values == y.values[::-1]


def test_decide_finite_triple():
    assert decide_finite_triple(triple("prong(3)"), triple("prong(3)"))
    assert not decide_finite_triple(triple("jacobs_ladder"), triple("cylinder"))
    with pytest.raises(CountsNotCertified):
        decide_finite_triple(triple("cantor_complement"), triple("plane"))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_binary_embed_preserves_finite_trees(seed):
    t = random_finite_triple(random.Random(seed), 120)
    b = binary_embed(t)
    assert max(len(n.children) for n in b.tree.nodes.values()) <= 2
    ob, eb = branches(t), branches(b)
    assert len(ob) == len(eb)
    addr = {n.stats["original"]: k for k, n in b.tree.nodes.items() if n.stats["original"] is not None}
    for p in ob:
        q = list(reversed(b.tree.ancestors(addr[p[-1]])))
        for which in ("np", "no"):
            assert branch_in(t, p, which) == branch_in(b, q, which)
    leaves = [addr[p[-1]] for p in ob]
    for x in leaves:
        for y in leaves:
            if x != y:
                assert not y.startswith(x)
    for which in ("T", "np", "no"):
        assert cb_profile(t, which=which).signature() == cb_profile(b, which=which).signature()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_binary_embed_preserves_regular_trees(seed):
    t = random_automaton_triple(random.Random(seed))
    b = binary_embed(t)
    for which in ("T", "np", "no"):
        assert cb_profile(t, which=which).signature() == cb_profile(b, which=which).signature()
    assert [(c.value if c.exact else None, c.infinite) for c in count_ends(t)] == [
        (c.value if c.exact else None, c.infinite) for c in count_ends(b)
    ]


def test_filters_on_regular_trees():
    rng = random.Random(5)
    for _ in range(20):
        t = random_automaton_triple(rng, 4)
        A = clopen_algebra(t)
        nodes = list(t.tree.nodes)
        for _ in range(30):
            a = A.normalize(ClopenExpr(frozenset([rng.choice(nodes)])))
            b = A.join(a, A.cone(rng.choice(nodes)))
            if A.in_F(a):
                assert A.in_F(b) and A.in_G(a)
            if A.in_G(a):
                assert A.in_G(b)
