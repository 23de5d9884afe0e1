"""End trees, nested end triples, binary normalization, Cantor-Bendixson
profiles and the clopen algebra of the branch space."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .complex import FiniteComplex2, complement_span, invariants
from .errors import CountsNotCertified, NotNormalizable
from .exhaustion import (
    ExplicitRecipe,
    PeriodicRecipe,
    RecipeAnalysis,
    SurfaceRecipe,
    expand,
)

ROOT = "__root__"


# ---------------------------------------------------------------------------
# trees and automata


@dataclass
class TreeNode:
    id: object
    parent: object
    level: int
    children: list = field(default_factory=list)
    state: Optional[object] = None  # automaton state, when the tree is regular
    stats: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Automaton:
    """Regular presentation: the root's children and each state's ordered
    children. Every state listed is productive (has an infinite branch)."""

    root_children: tuple
    children: dict
    nonplanar: frozenset = frozenset()
    nonorientable: frozenset = frozenset()
    root_nonplanar: bool = False
    root_nonorientable: bool = False


@dataclass
class LabelledTree:
    nodes: dict  # id -> TreeNode; the root has parent None
    root: object = 0
    automaton: Optional[Automaton] = None

    @property
    def depth(self) -> int:
        return max((n.level for n in self.nodes.values()), default=0)

    def children(self, v):
        return self.nodes[v].children

    def leaves(self):
        return [v for v, n in self.nodes.items() if not n.children]

    def ancestors(self, v):
        out = []
        while v is not None:
            out.append(v)
            v = self.nodes[v].parent
        return out

    def is_ancestor(self, a, b) -> bool:
        """a is b or an ancestor of b."""
        while b is not None:
            if b == a:
                return True
            b = self.nodes[b].parent
        return False

    def preorder(self):
        out = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(reversed(self.nodes[v].children))
        return out


def tree_from_parents(parents: dict, root=0) -> LabelledTree:
    """Build a tree from child -> parent (children ordered by key order)."""
    nodes = {root: TreeNode(root, None, 0)}
    pending = dict(parents)
    while pending:
        progressed = False
        for v, p in list(pending.items()):
            if p in nodes:
                nodes[v] = TreeNode(v, p, nodes[p].level + 1)
                nodes[p].children.append(v)
                del pending[v]
                progressed = True
        if not progressed:
            raise ValueError("parents do not form a tree")
    return LabelledTree(nodes, root)


@dataclass(frozen=True)
class Count:
    value: int
    exact: bool
    infinite: bool = False  # certified infinitely many

    def __str__(self):
        return str(self.value) if self.exact else f">={self.value}"


@dataclass
class EndTriple:
    tree: LabelledTree
    nonplanar: frozenset  # Tnp node set
    nonorientable: frozenset  # Tno node set
    depth: int
    certainty: dict  # "T" / "np" / "no" -> "Certified" | "WitnessedUpTo(d)"

    @property
    def certified(self) -> bool:
        return all(v == "Certified" for v in self.certainty.values())

    def marker(self, which):
        return {"T": None, "np": self.nonplanar, "no": self.nonorientable}[which]


# ---------------------------------------------------------------------------
# construction from recipes


def _nonplanar_stats(s):
    return s.units > 0 or not s.orientable


def end_triple(r: SurfaceRecipe, depth: int) -> EndTriple:
    if isinstance(r, PeriodicRecipe):
        return _periodic_triple(r, depth)
    return _explicit_triple(r, depth)


def _periodic_triple(r: PeriodicRecipe, depth: int) -> EndTriple:
    an = RecipeAnalysis(r)
    view = expand(r, max(depth - 1, 0))
    prod = an.productive
    np_states = frozenset(c for c in prod if an.subtree_has(c, _nonplanar_stats))
    no_states = frozenset(c for c in prod if an.subtree_has(c, lambda s: not s.orientable))
    root_np = _nonplanar_stats(an.base) or any(an.subtree_has(c, _nonplanar_stats) for c in an.base.outputs)
    root_no = (not an.base.orientable) or any(an.subtree_has(c, lambda s: not s.orientable) for c in an.base.outputs)
    auto = Automaton(
        tuple(c for c in an.base.outputs if c in prod),
        {c: tuple(x for x in an.children[c] if x in prod) for c in prod},
        np_states,
        no_states,
        root_np,
        root_no,
    )
    nodes = {0: TreeNode(0, None, 0, state=ROOT)}
    np_nodes, no_nodes = set(), set()
    if root_np and np_states:
        np_nodes.add(0)
    if root_no and no_states:
        no_nodes.add(0)
    if depth > 0:
        for c in view.circles:
            if c.cls not in prod or c.parent not in nodes or c.stage > depth - 1:
                continue
            nodes[c.id] = TreeNode(c.id, c.parent, c.stage + 1, state=c.cls, stats={"circle": c.circle})
            nodes[c.parent].children.append(c.id)
            if c.cls in np_states:
                np_nodes.add(c.id)
            if c.cls in no_states:
                no_nodes.add(c.id)
    tree = LabelledTree(nodes, 0, auto)
    cert = {"T": "Certified", "np": "Certified", "no": "Certified"}
    return EndTriple(tree, frozenset(np_nodes), frozenset(no_nodes), depth, cert)


def _explicit_triple(r: ExplicitRecipe, depth: int) -> EndTriple:
    view = expand(r, depth)
    d = view.depth
    P = view.pieces
    last = P[-1]
    border = set(last.boundary_edges())
    nodes = {0: TreeNode(0, None, 0)}
    np_nodes, no_nodes = set(), set()
    inv = invariants(last) if last.triangles else None
    if inv is not None and not inv.planar:
        np_nodes.add(0)
    if inv is not None and not inv.orientable:
        no_nodes.add(0)
    prev_level = [(0, last.triangles)]
    nid = 1
    for k in range(1, d + 1):
        level = []
        for piece in complement_span(last, P[k - 1]):
            if not (piece.edges & border):
                continue
            parent = next(pid for pid, tris in prev_level if piece.triangles <= tris)
            nodes[nid] = TreeNode(nid, parent, k)
            nodes[parent].children.append(nid)
            pinv = invariants(FiniteComplex2(piece.vertices, piece.edges, piece.triangles))
            if not pinv.planar:
                np_nodes.add(nid)
            if not pinv.orientable:
                no_nodes.add(nid)
            level.append((nid, piece.triangles))
            nid += 1
        prev_level = level
    closed = not border
    auto = None
    if closed:
        auto = Automaton((), {})
    elif view.tail == "collar":
        # each boundary circle of the last stage bounds a half-open annulus
        from .complex.core import _boundary_cycle_count

        b = _boundary_cycle_count(sorted(border))
        auto = Automaton(("collar",) * b, {"collar": ("collar",)})
    if auto is not None:
        cert = {"T": "Certified", "np": "Certified", "no": "Certified"}
        np_nodes = set() if not auto.nonplanar else np_nodes
        no_nodes = set() if not auto.nonorientable else no_nodes
        for n in nodes.values():
            n.state = ROOT if n.id == 0 else None
    else:
        w = f"WitnessedUpTo({d})"
        cert = {"T": w, "np": w, "no": w}
    return EndTriple(LabelledTree(nodes, 0, auto), frozenset(np_nodes), frozenset(no_nodes), d, cert)


def triple_from_automaton(auto: Automaton, depth: int) -> EndTriple:
    """Unfold a regular presentation to ``depth`` levels.

    Unproductive states are dropped first; marker sets are closed so that a
    state is marked when some marked state lies below it.
    """
    productive, _, reach = _analyse(auto.root_children, auto.children)
    ch = {s: tuple(c for c in auto.children[s] if c in productive) for s in productive}
    roots = tuple(c for c in auto.root_children if c in productive)

    def close(marks):
        return frozenset(s for s in productive if s in marks or reach[s] & set(marks))

    np_s = close(auto.nonplanar)
    no_s = close(set(auto.nonorientable)) & np_s
    auto = Automaton(roots, ch, np_s, no_s, bool(np_s), bool(no_s))
    nodes = {0: TreeNode(0, None, 0, state=ROOT)}
    np_nodes, no_nodes = set(), set()
    frontier = [(0, roots)]
    nid = 1
    for level in range(1, depth + 1):
        nxt = []
        for parent, kids in frontier:
            for s in kids:
                nodes[nid] = TreeNode(nid, parent, level, state=s)
                nodes[parent].children.append(nid)
                if s in np_s:
                    np_nodes.add(nid)
                if s in no_s:
                    no_nodes.add(nid)
                nxt.append((nid, ch[s]))
                nid += 1
        frontier = nxt
    if np_nodes:
        np_nodes.add(0)
    if no_nodes:
        no_nodes.add(0)
    cert = {"T": "Certified", "np": "Certified", "no": "Certified"}
    return EndTriple(LabelledTree(nodes, 0, auto), frozenset(np_nodes), frozenset(no_nodes), depth, cert)


# ---------------------------------------------------------------------------
# counting branches on automata


def _restrict(auto: Automaton, allowed):
    ch = {s: tuple(c for c in auto.children[s] if c in allowed) for s in auto.children if s in allowed}
    roots = tuple(c for c in auto.root_children if c in allowed)
    return roots, ch


def _analyse(roots, ch):
    """(productive states, recurrent states) of a child map."""
    reach = {}
    for s in ch:
        seen, stack = set(), list(ch[s])
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(ch.get(x, ()))
        reach[s] = seen
    recurrent = {s for s in ch if s in reach[s]}
    productive = {s for s in ch if s in recurrent or reach[s] & recurrent}
    return productive, recurrent, reach


def branch_count(roots, ch):
    """(count, infinite) for the number of infinite branches below ``roots``."""
    productive, recurrent, reach = _analyse(roots, ch)
    live = set()
    stack = [r for r in roots if r in productive]
    while stack:
        s = stack.pop()
        if s in live:
            continue
        live.add(s)
        stack.extend(c for c in ch[s] if c in productive)
    for s in live & recurrent:
        if sum(1 for c in ch[s] if c in productive) >= 2:
            return math.inf, True
    memo = {}

    def count(s):
        if s in memo:
            return memo[s]
        if s in recurrent:
            memo[s] = 1
        else:
            memo[s] = sum(count(c) for c in ch[s] if c in productive)
        return memo[s]

    return sum(count(r) for r in roots if r in productive), False


def _infinite_states(roots, ch):
    """States with infinitely many branches below them."""
    productive, recurrent, reach = _analyse(roots, ch)
    splitters = {s for s in recurrent if sum(1 for c in ch[s] if c in productive) >= 2}
    return {s for s in ch if s in splitters or reach[s] & splitters}


def _marker_states(auto: Automaton, which):
    if which == "T":
        return set(auto.children)
    return set(auto.nonplanar if which == "np" else auto.nonorientable)


def _finite_branches(t: EndTriple, which):
    tree = t.tree
    marks = t.marker(which)
    leaves = [v for v in tree.leaves() if v != tree.root or not tree.nodes[v].children]
    if which != "T":
        leaves = [v for v in leaves if v in marks]
    if len(tree.nodes) == 1:
        return []
    return [v for v in leaves if v != tree.root]


def count_ends(t: EndTriple):
    """(n, n', n'') as Counts: exact when certified and finite."""
    out = []
    for which in ("T", "np", "no"):
        if t.tree.automaton is not None:
            auto = t.tree.automaton
            roots, ch = _restrict(auto, _marker_states(auto, which))
            n, inf = branch_count(roots, ch)
            if inf:
                out.append(Count(_level_count(t, which), False, True))
            else:
                out.append(Count(n, True))
        else:
            out.append(Count(len(_finite_branches(t, which)), False))
    return tuple(out)


def _level_count(t: EndTriple, which):
    tree = t.tree
    d = tree.depth
    marks = t.marker(which)
    return sum(1 for v, n in tree.nodes.items() if n.level == d and (which == "T" or v in marks))


# ---------------------------------------------------------------------------
# Cantor-Bendixson profile


@dataclass(frozen=True)
class CBProfile:
    counts: tuple  # ((iteration, Count), ...)
    rank: Optional[int]
    perfect_kernel: bool
    certified: bool

    def signature(self):
        return (tuple((i, c.value if c.exact else ("inf" if c.infinite else None)) for i, c in self.counts), self.rank, self.perfect_kernel)


def cb_profile(t, max_iter: int = 8, which: str = "T") -> CBProfile:
    """Iterated removal of isolated branches.

    A branch is isolated iff some node on it has exactly one branch below;
    the surviving branches are those all of whose nodes have infinitely many
    branches below. Finite trees (no automaton) have a finite discrete branch
    space: everything is isolated at the first step.
    """
    if isinstance(t, LabelledTree):
        t = EndTriple(t, frozenset(), frozenset(), t.depth, {"T": "Certified"})
    auto = t.tree.automaton
    if auto is None:
        n = len(_finite_branches(t, which))
        counts = ((0, Count(n, True)),) + (((1, Count(0, True)),) if n else ())
        return CBProfile(counts, 1 if n else 0, False, t.certainty.get(which, t.certainty.get("T")) == "Certified")
    allowed = _marker_states(auto, which)
    counts = []
    rank = None
    perfect = False
    for it in range(max_iter + 1):
        roots, ch = _restrict(auto, allowed)
        n, inf = branch_count(roots, ch)
        counts.append((it, Count(n, True) if not inf else Count(_level_count_states(t, allowed), False, True)))
        if not inf and n == 0:
            rank = it
            break
        nxt = _infinite_states(roots, ch)
        if nxt == allowed:
            perfect = True
            break
        allowed = nxt
    return CBProfile(tuple(counts), rank, perfect, True)


def _level_count_states(t, allowed):
    tree = t.tree
    d = tree.depth
    return sum(1 for n in tree.nodes.values() if n.level == d and n.state in allowed)


# ---------------------------------------------------------------------------
# binary embedding


def _address_suffix(i, k):
    if k == 1:
        return "0"
    h = math.ceil(math.log2(k))
    return format(i, f"0{h}b")


def binary_embed(t: EndTriple) -> EndTriple:
    """Re-hang every node's k children on the leaves of a complete binary
    tree of height ceil(log2 k) below the node's image (k = 1 uses "0")."""
    tree = t.tree
    addr = {tree.root: ""}
    for v in tree.preorder():
        kids = tree.nodes[v].children
        for i, c in enumerate(kids):
            addr[c] = addr[v] + _address_suffix(i, len(kids))
    orig_at = {a: v for v, a in addr.items()}
    prefixes = {""}
    for a in addr.values():
        for j in range(1, len(a) + 1):
            prefixes.add(a[:j])
    nodes = {}
    for p in sorted(prefixes, key=lambda s: (len(s), s)):
        parent = None if p == "" else p[:-1]
        v = orig_at.get(p)
        state = tree.nodes[v].state if v is not None else None
        nodes[p] = TreeNode(p, parent, len(p), state=state, stats={"original": v})
        if parent is not None:
            nodes[parent].children.append(p)
    for n in nodes.values():
        n.children.sort()

    def transport(marks):
        out = set()
        for v in marks:
            a = addr[v]
            for j in range(len(a) + 1):
                out.add(a[:j])
        return frozenset(out)

    auto = _embed_automaton(tree.automaton) if tree.automaton is not None else None
    if auto is not None:
        _assign_states(nodes, tree, addr, auto)
    return EndTriple(
        LabelledTree(nodes, "", auto),
        transport(t.nonplanar),
        transport(t.nonorientable),
        t.depth,
        dict(t.certainty),
    )


def _embed_automaton(auto: Automaton) -> Automaton:
    children = {}
    np_s, no_s = set(auto.nonplanar), set(auto.nonorientable)

    def hang(owner, kids):
        """Return the child tuple for ``owner`` after inserting binary states."""
        k = len(kids)
        if k == 0:
            return ()
        if k == 1:
            return (kids[0],)
        sufs = [_address_suffix(i, k) for i in range(k)]
        h = len(sufs[0])

        def build(prefix):
            if len(prefix) == h:
                return kids[sufs.index(prefix)]
            name = (owner, prefix)
            subs = [build(prefix + b) for b in "01" if any(s.startswith(prefix + b) for s in sufs)]
            children[name] = tuple(subs)
            under = [kids[i] for i, s in enumerate(sufs) if s.startswith(prefix)]
            if any(x in np_s for x in under):
                np_s.add(name)
            if any(x in no_s for x in under):
                no_s.add(name)
            return name

        return tuple(build(b) for b in "01" if any(s.startswith(b) for s in sufs))

    for s, kids in auto.children.items():
        children[s] = hang(s, kids)
    roots = hang(ROOT, auto.root_children)
    # marker closure for inserted states is already computed bottom-up; states
    # nested below inserted ones inherit marks through ``under``
    return Automaton(roots, children, frozenset(np_s), frozenset(no_s), auto.root_nonplanar, auto.root_nonorientable)


def _assign_states(nodes, tree, addr, auto):
    """Label the embedded tree's nodes with the embedded automaton's states."""
    nodes[""].state = ROOT

    def walk(p, state_children):
        n = nodes[p]
        kids = n.children
        for c, s in zip(kids, state_children):
            nodes[c].state = s
            walk(c, auto.children.get(s, ()))

    walk("", auto.root_children)


# ---------------------------------------------------------------------------
# clopen algebra


@dataclass(frozen=True)
class ClopenExpr:
    pos: frozenset
    neg: frozenset = frozenset()

    def __repr__(self):
        return f"ClopenExpr(pos={sorted(self.pos, key=str)}, neg={sorted(self.neg, key=str)})"


class ClopenAlgebra:
    """Boolean algebra of clopen sets of the branch space of a tree.

    Expressions are normalized to atoms: the nodes at a common resolution
    level plus shallower leaves. Every node must have a branch below it.
    """

    def __init__(self, t: EndTriple):
        self.t = t
        self.tree = t.tree
        tree = self.tree
        self._anc = {v: frozenset(tree.ancestors(v)) for v in tree.nodes}
        self._bottom_up = sorted(tree.nodes, key=lambda x: -tree.nodes[x].level)
        self._atoms = {}
        self._np_has = self._branch_marks("np")
        self._no_has = self._branch_marks("no")

    def _branch_marks(self, which):
        """Nodes whose cone contains a marked branch."""
        tree, t = self.tree, self.t
        auto = tree.automaton
        out = set()
        if auto is not None:
            roots, ch = _restrict(auto, _marker_states(auto, which))
            productive, _, _ = _analyse(roots, ch)
            for v, n in tree.nodes.items():
                if n.state == ROOT:
                    if any(r in productive for r in roots):
                        out.add(v)
                elif n.state in productive:
                    out.add(v)
            return out
        for leaf in _finite_branches(t, which):
            out.update(tree.ancestors(leaf))
        return out

    # -- normalization --------------------------------------------------
    def _check(self, e: ClopenExpr):
        for v in e.pos | e.neg:
            if v not in self.tree.nodes:
                raise NotNormalizable(f"unknown node {v!r}")
        for b in e.pos:
            hit = (self._anc[b] - {b}) & e.pos
            if hit:
                raise NotNormalizable(f"positive cones {next(iter(hit))!r} and {b!r} are nested")
        for v in e.neg:
            if not (self._anc[v] - {v}) & e.pos:
                raise NotNormalizable(f"subtracted cone {v!r} lies below no positive cone")

    def atoms(self, level):
        if level not in self._atoms:
            nodes = self.tree.nodes
            self._atoms[level] = tuple(v for v, n in nodes.items() if n.level == level or (n.level < level and not n.children))
        return self._atoms[level]

    def _level(self, *exprs):
        lv = [self.tree.nodes[v].level for e in exprs for v in e.pos | e.neg]
        return max(lv, default=0)

    def atom_set(self, e: ClopenExpr, level) -> frozenset:
        self._check(e)
        out = set()
        for a in self.atoms(level):
            anc = self._anc[a]
            if anc & e.pos and not anc & e.neg:
                out.add(a)
        return frozenset(out)

    def compress(self, atoms, level) -> ClopenExpr:
        """Smallest antichain of cones with the same union as ``atoms``."""
        tree = self.tree
        cur = set(atoms)
        full = set()
        for v in self._bottom_up:
            n = tree.nodes[v]
            if n.level >= level and v not in cur:
                continue
            if v in cur:
                full.add(v)
                continue
            if n.children and all(c in full for c in n.children):
                full.add(v)
        chosen = {v for v in full if tree.nodes[v].parent not in full}
        return ClopenExpr(frozenset(chosen))

    # -- operations -----------------------------------------------------
    def top(self) -> ClopenExpr:
        return ClopenExpr(frozenset([self.tree.root]))

    def bottom(self) -> ClopenExpr:
        return ClopenExpr(frozenset())

    def cone(self, v) -> ClopenExpr:
        return ClopenExpr(frozenset([v]))

    def _binary(self, a, b, op):
        L = self._level(a, b)
        return self.compress(op(self.atom_set(a, L), self.atom_set(b, L)), L)

    def meet(self, a, b):
        return self._binary(a, b, lambda x, y: x & y)

    def join(self, a, b):
        return self._binary(a, b, lambda x, y: x | y)

    def complement(self, a):
        L = self._level(a)
        return self.compress(frozenset(self.atoms(L)) - self.atom_set(a, L), L)

    def normalize(self, a):
        L = self._level(a)
        return self.compress(self.atom_set(a, L), L)

    def eq(self, a, b) -> bool:
        L = self._level(a, b)
        return self.atom_set(a, L) == self.atom_set(b, L)

    def leq(self, a, b) -> bool:
        L = self._level(a, b)
        return self.atom_set(a, L) <= self.atom_set(b, L)

    def _avoids_none(self, a, has):
        L = self._level(a)
        outside = frozenset(self.atoms(L)) - self.atom_set(a, L)
        return not any(v in has for v in outside)

    def in_F(self, a) -> bool:
        """No nonplanar branch avoids ``a``."""
        return self._avoids_none(a, self._np_has)

    def in_G(self, a) -> bool:
        """No nonorientable branch avoids ``a``."""
        return self._avoids_none(a, self._no_has)


def clopen_algebra(t: EndTriple) -> ClopenAlgebra:
    return ClopenAlgebra(t)


# ---------------------------------------------------------------------------
# distinguishing


@dataclass(frozen=True)
class Distinguished:
    invariant: str
    values: tuple

    def __str__(self):
        return f"{self.invariant}: {self.values[0]} vs {self.values[1]}"


@dataclass(frozen=True)
class NotDistinguished:
    depth: int
    level_vectors: tuple = ()


def _fmt_counts(c):
    return "(" + ",".join(str(x) for x in c) + ")"


def level_vectors(t: EndTriple):
    tree = t.tree
    d = tree.depth
    vec = []
    for k in range(d + 1):
        at = [v for v, n in tree.nodes.items() if n.level == k]
        vec.append((len(at), sum(1 for v in at if v in t.nonplanar), sum(1 for v in at if v in t.nonorientable)))
    return tuple(vec)


def distinguish(a: EndTriple, b: EndTriple, depth: int = 0):
    """First certified invariant that differs, else NotDistinguished.

    Order: end counts, nonplanar counts, nonorientable counts, then the
    Cantor-Bendixson profiles of T, Tnp and Tno. Per-level marker vectors
    depend on the chosen exhaustion, so they are reported but never fire.
    """
    ca, cb = count_ends(a), count_ends(b)
    if all(x.exact for x in ca + cb) and tuple(x.value for x in ca) != tuple(x.value for x in cb):
        return Distinguished("end counts", (_fmt_counts(ca), _fmt_counts(cb)))
    for k, name in ((1, "nonplanar counts"), (2, "nonorientable counts")):
        if ca[k].exact and cb[k].exact and ca[k].value != cb[k].value:
            return Distinguished(name, (str(ca[k]), str(cb[k])))
    for which, name in (("T", "cb_profile"), ("np", "cb_profile(nonplanar)"), ("no", "cb_profile(nonorientable)")):
        pa, pb = cb_profile(a, which=which), cb_profile(b, which=which)
        if pa.certified and pb.certified and (a.tree.automaton is not None) and (b.tree.automaton is not None):
            if pa.signature() != pb.signature():
                return Distinguished(name, (_fmt_profile(pa), _fmt_profile(pb)))
    return NotDistinguished(depth, (level_vectors(a), level_vectors(b)))


def _fmt_profile(p: CBProfile):
    if p.perfect_kernel:
        return "perfect kernel after " + str(len(p.counts) - 1)
    return f"rank {p.rank} with {p.counts[0][1]} branches"


def decide_finite_triple(a: EndTriple, b: EndTriple) -> bool:
    ca, cb = count_ends(a), count_ends(b)
    if not all(x.exact for x in ca + cb):
        raise CountsNotCertified("end counts are not all certified finite")
    return tuple(x.value for x in ca) == tuple(x.value for x in cb)
