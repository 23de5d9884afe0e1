"""Classification of compact surfaces and homeomorphism decisions for
finitely presented noncompact ones."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .complex import FiniteComplex2, invariants, surface_check
from .ends import (
    ROOT,
    Automaton,
    Count,
    Distinguished,
    EndTriple,
    count_ends,
    distinguish,
    end_triple,
)
from .errors import NotClosedSurface
from .exhaustion import INF, ORIENTABLE, LimitValue, SurfaceRecipe, limit_invariants


@dataclass(frozen=True)
class CompactClass:
    orientable: bool
    genus: int  # handles if orientable, crosscaps otherwise

    def __str__(self):
        return f"({'orientable' if self.orientable else 'nonorientable'}, {self.genus})"


def classify_compact(K: FiniteComplex2) -> CompactClass:
    kind = surface_check(K)
    if kind.kind != "Closed":
        raise NotClosedSurface(f"not a closed connected polyhedron: {kind.kind} {kind.witness or ''}".strip())
    inv = invariants(K)
    return CompactClass(inv.orientable, inv.genus if inv.orientable else inv.crosscaps)


@dataclass
class RichardsInvariant:
    genus: LimitValue
    oclass: LimitValue
    planar: LimitValue
    triple: EndTriple
    counts: tuple  # (n, n', n'') as Counts

    @property
    def certified(self) -> bool:
        return self.genus.certified and self.oclass.certified and self.triple.certified

    def summary(self) -> dict:
        g = self.genus.value
        return {
            "genus": "inf" if g == INF else g,
            "genus_certainty": self.genus.certainty,
            "oclass": self.oclass.value,
            "oclass_certainty": self.oclass.certainty,
            "planar": self.planar.value,
            "ends": [str(c) for c in self.counts],
            "ends_certainty": dict(self.triple.certainty),
        }

    def __str__(self):
        g = "inf" if self.genus.value == INF else self.genus.value
        return f"({g}, {self.oclass.value}, ({','.join(str(c) for c in self.counts)}))"


def classify_surface(r: SurfaceRecipe, depth: int) -> RichardsInvariant:
    li = limit_invariants(r, depth)
    t = end_triple(r, depth)
    return RichardsInvariant(li.genus, li.oclass, li.planar, t, count_ends(t))


# ---------------------------------------------------------------------------
# homeomorphism


@dataclass(frozen=True)
class Verdict:
    kind: str  # "Yes" | "No" | "Unknown"
    reason: str = ""
    depth: Optional[int] = None

    def __bool__(self):
        return self.kind == "Yes"

    def __str__(self):
        return f"{self.kind}({self.reason})" if self.reason else self.kind


def _labelled(auto: Automaton, side):
    """States tagged by side with (nonplanar, nonorientable) labels."""
    lab = {(side, s): (s in auto.nonplanar, s in auto.nonorientable) for s in auto.children}
    ch = {(side, s): tuple((side, c) for c in kids) for s, kids in auto.children.items()}
    return lab, ch


def bisimilar(a: EndTriple, b: EndTriple) -> bool:
    """Partition refinement on the union of two regular presentations.

    Equivalent roots mean the marked end trees are isomorphic, which is a
    sufficient (not necessary) condition for homeomorphic triples.
    """
    A, B = a.tree.automaton, b.tree.automaton
    if A is None or B is None:
        return False
    la, ca = _labelled(A, 0)
    lb, cb = _labelled(B, 1)
    labels = {**la, **lb}
    children = {**ca, **cb}
    roots = {(0, ROOT): tuple((0, c) for c in A.root_children), (1, ROOT): tuple((1, c) for c in B.root_children)}
    children.update(roots)
    labels[(0, ROOT)] = labels[(1, ROOT)] = ("root",)
    block = {s: labels[s] for s in children}
    while True:
        ids = {}
        sig = {}
        for s in children:
            key = (block[s], tuple(sorted(repr(block[c]) for c in children[s])))
            sig[s] = ids.setdefault(key, len(ids))
        if len(set(sig.values())) == len(set(map(repr, block.values()))):
            block = sig
            break
        block = sig
    return block[(0, ROOT)] == block[(1, ROOT)]


def _exact_counts(counts):
    return all(c.exact for c in counts)


def homeomorphic(a: SurfaceRecipe, b: SurfaceRecipe, depth: int = 4) -> Verdict:
    ia, ib = classify_surface(a, depth), classify_surface(b, depth)
    return compare_invariants(ia, ib, depth, identical=(a == b))


def compare_invariants(ia: RichardsInvariant, ib: RichardsInvariant, depth: int, identical: bool = False) -> Verdict:
    # the end-space battery is tried first so that witnesses name an end invariant
    d = distinguish(ia.triple, ib.triple, depth)
    if isinstance(d, Distinguished):
        return Verdict("No", str(d))
    if ia.genus.certified and ib.genus.certified and ia.genus.value != ib.genus.value:
        return Verdict("No", f"genus {_g(ia.genus.value)} vs {_g(ib.genus.value)}")
    if ia.oclass.certified and ib.oclass.certified and ia.oclass.value != ib.oclass.value:
        return Verdict("No", f"orientability class {ia.oclass.value} vs {ib.oclass.value}")
    core = ia.genus.certified and ib.genus.certified and ia.oclass.certified and ib.oclass.certified
    if core and ia.triple.certified and ib.triple.certified:
        if identical:
            return Verdict("Yes", "identical recipes")
        if _exact_counts(ia.counts + ib.counts):
            # finite discrete triples are homeomorphic iff the counts agree
            return Verdict("Yes", "finite end counts " + ",".join(str(c) for c in ia.counts))
        if bisimilar(ia.triple, ib.triple):
            return Verdict("Yes", "bisimulation")
    return Verdict("Unknown", "", depth)


def _g(v):
    return "inf" if v == INF else v


# ---------------------------------------------------------------------------
# collections


@dataclass
class Collection:
    invariants: list
    matrix: list  # matrix[i][j] verdict between component i and j


def classify_collection(rs, depth: int = 4) -> Collection:
    invs = [classify_surface(r, depth) for r in rs]
    matrix = [[compare_invariants(x, y, depth, identical=(ri == rj)) for y, rj in zip(invs, rs)] for x, ri in zip(invs, rs)]
    return Collection(invs, matrix)


def _perfect_matching(n, ok) -> bool:
    match = {}

    def augment(i, seen):
        for j in range(n):
            if ok(i, j) and j not in seen:
                seen.add(j)
                if j not in match or augment(match[j], seen):
                    match[j] = i
                    return True
        return False

    return all(augment(i, set()) for i in range(n))


def compare_collections(xs, ys, depth: int = 4) -> Verdict:
    """Equal iff some bijection pairs components with Yes verdicts."""
    if len(xs) != len(ys):
        return Verdict("No", f"{len(xs)} vs {len(ys)} components")
    ix = [classify_surface(r, depth) for r in xs]
    iy = [classify_surface(r, depth) for r in ys]
    v = [[compare_invariants(a, b, depth, identical=(ra == rb)) for b, rb in zip(iy, ys)] for a, ra in zip(ix, xs)]
    n = len(xs)
    if _perfect_matching(n, lambda i, j: v[i][j].kind == "Yes"):
        return Verdict("Yes", "component matching")
    if not _perfect_matching(n, lambda i, j: v[i][j].kind != "No"):
        return Verdict("No", "no matching of components")
    return Verdict("Unknown", "", depth)


__all__ = [
    "CompactClass",
    "Collection",
    "Count",
    "RichardsInvariant",
    "Verdict",
    "bisimilar",
    "classify_collection",
    "classify_compact",
    "classify_surface",
    "compare_collections",
    "compare_invariants",
    "homeomorphic",
    "ORIENTABLE",
]
