"""Random labelled trees and automata for the end-space tests."""
from __future__ import annotations

import random

from surfclass.ends import Automaton, EndTriple, LabelledTree, TreeNode, triple_from_automaton


def random_finite_triple(rng: random.Random, max_nodes: int = 200) -> EndTriple:
    n = rng.randint(1, max_nodes)
    nodes = {0: TreeNode(0, None, 0)}
    for v in range(1, n):
        # bias towards recent nodes so that trees get some depth
        p = rng.choice(list(nodes)[-8:]) if rng.random() < 0.7 else rng.randrange(v)
        nodes[v] = TreeNode(v, p, nodes[p].level + 1)
        nodes[p].children.append(v)
    tree = LabelledTree(nodes, 0)
    leaves = tree.leaves()
    np_leaves = [v for v in leaves if rng.random() < 0.4]
    no_leaves = [v for v in np_leaves if rng.random() < 0.5]
    np_nodes = {a for v in np_leaves for a in tree.ancestors(v)}
    no_nodes = {a for v in no_leaves for a in tree.ancestors(v)}
    # a few interior marks that lead to no marked branch
    for v in rng.sample(list(nodes), min(3, len(nodes))):
        if rng.random() < 0.3:
            np_nodes.update(tree.ancestors(v))
    cert = {"T": "Certified", "np": "Certified", "no": "Certified"}
    return EndTriple(tree, frozenset(np_nodes), frozenset(no_nodes), tree.depth, cert)


def random_automaton(rng: random.Random, n_states: int = 5) -> Automaton:
    states = list(range(n_states))
    children = {s: tuple(rng.choice(states) for _ in range(rng.choice([0, 1, 1, 1, 2, 2, 3]))) for s in states}
    roots = tuple(rng.choice(states) for _ in range(rng.randint(1, 3)))
    np_s = frozenset(s for s in states if rng.random() < 0.3)
    no_s = frozenset(s for s in np_s if rng.random() < 0.5)
    return Automaton(roots, children, np_s, no_s)


def random_automaton_triple(rng: random.Random, depth: int = 5) -> EndTriple:
    while True:
        t = triple_from_automaton(random_automaton(rng), depth)
        if t.tree.automaton.root_children:
            return t


def branches(t: EndTriple):
    """Maximal root-to-leaf paths of a finite tree, as node lists."""
    tree = t.tree
    if not tree.nodes[tree.root].children:
        return []
    return [list(reversed(tree.ancestors(v))) for v in tree.leaves()]


def branch_in(t: EndTriple, path, which) -> bool:
    marks = t.marker(which)
    return marks is None or all(v in marks for v in path)
