"""Random subdivision choices for complexes."""
from __future__ import annotations

import random


def random_legal_edges(K, rng: random.Random, p: float = 0.3):
    """A random set of edges no two of which lie in a common triangle."""
    edges = sorted(K.edges)
    rng.shuffle(edges)
    chosen, used = [], set()
    et = K.edge_triangles()
    for e in edges:
        ts = {tuple(sorted((e[0], e[1], z))) for z in et.get(e, ())}
        if ts & used:
            continue
        if rng.random() < p:
            chosen.append(e)
            used |= ts
    return chosen
