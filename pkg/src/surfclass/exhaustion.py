"""Canonical exhaustions: explicit stage lists and periodic block recipes.

A periodic recipe starts from a base block and, at every stage, glues a copy
of the rule block for a circle's class onto each open boundary circle. Block
gluing is tree-like (every block meets the rest of the surface along its
input circle only), which is what makes the limit invariants computable from
the finite class graph.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .complex import FiniteComplex2, complement_span, invariants, surface_check
from .complex.core import _edge
from .complex.library import RP2_6, TORUS7, annulus, cone_disk
from .errors import GluingMismatch, RecipeError, UnknownName

INF = math.inf
ORIENTABLE = "orientable"
INF_NONORIENTABLE = "infinitely nonorientable"
ODD_NONORIENTABLE = "odd nonorientable"
EVEN_NONORIENTABLE = "even nonorientable"
OCLASSES = (ORIENTABLE, INF_NONORIENTABLE, ODD_NONORIENTABLE, EVEN_NONORIENTABLE)


@dataclass(frozen=True)
class LimitValue:
    """A value together with how far it is known to hold.

    ``depth`` is None for Certified values and the witnessing depth otherwise.
    """

    value: object
    depth: Optional[int] = None

    @property
    def certified(self) -> bool:
        return self.depth is None

    @property
    def certainty(self) -> str:
        return "Certified" if self.certified else f"WitnessedUpTo({self.depth})"

    def __str__(self):
        v = "inf" if self.value == INF else self.value
        return f"{self.certainty}({v})" if self.certified else f"{v} [{self.certainty}]"


def certified(value) -> LimitValue:
    return LimitValue(value, None)


def witnessed(value, depth) -> LimitValue:
    return LimitValue(value, depth)


# ---------------------------------------------------------------------------
# blocks and recipes


@dataclass(frozen=True)
class Block:
    """A bordered polyhedron with an optional input circle and ordered,
    class-labelled output circles. Circles are vertex cycles."""

    complex: FiniteComplex2
    inp: Optional[tuple]
    outputs: tuple = ()  # ((circle, class name), ...)

    def circles(self):
        out = [] if self.inp is None else [tuple(self.inp)]
        out.extend(tuple(c) for c, _ in self.outputs)
        return out


@dataclass(frozen=True)
class PeriodicRecipe:
    base: Block
    rules: tuple  # ((class name, Block), ...)
    name: str = ""

    @property
    def rule_map(self):
        return dict(self.rules)


@dataclass(frozen=True)
class CircleNode:
    id: int
    parent: int  # 0 is the root (the whole surface)
    cls: Optional[str]
    circle: tuple
    stage: int  # the circle lies on the frontier of P_stage


@dataclass(frozen=True)
class ExhaustionView:
    pieces: tuple
    circles: tuple = ()  # CircleNode bookkeeping, present for periodic expansions
    tail: Optional[str] = None  # "collar": every boundary circle of the last stage bounds a half-open annulus

    @property
    def depth(self) -> int:
        return len(self.pieces) - 1


@dataclass(frozen=True)
class ExplicitRecipe:
    view: ExhaustionView
    name: str = ""


SurfaceRecipe = Union[PeriodicRecipe, ExplicitRecipe]


def _cycle_edges(circle):
    n = len(circle)
    return {_edge(circle[i], circle[(i + 1) % n]) for i in range(n)}


def validate_block(block: Block, where: str = "block"):
    K = block.complex
    kind = surface_check(K)
    if not kind.is_surface:
        raise RecipeError(f"{where}: not a bordered polyhedron ({kind})")
    circles = block.circles()
    bedges = set(K.boundary_edges())
    declared = set()
    for c in circles:
        ce = _cycle_edges(c)
        if len(set(c)) != len(c) or len(c) < 3:
            raise RecipeError(f"{where}: circle {c} is not a simple cycle")
        if not ce <= bedges:
            raise RecipeError(f"{where}: circle {c} is not on the boundary")
        declared |= ce
    if declared != bedges or kind.boundary_circles != len(circles):
        raise RecipeError(f"{where}: boundary circles do not match the declared circles")
    verts = [v for c in circles for v in c]
    if len(set(verts)) != len(verts):
        raise RecipeError(f"{where}: circles share vertices")
    for c in circles:
        if len(c) == 3 and tuple(sorted(c)) in K.triangles:
            raise RecipeError(f"{where}: circle {c} bounds a triangle")


def validate_recipe(r: PeriodicRecipe):
    rules = r.rule_map
    if r.base.inp is not None:
        raise RecipeError("base block must not have an input circle")
    validate_block(r.base, "base")
    for name, b in r.rules:
        if b.inp is None:
            raise RecipeError(f"rule {name!r} has no input circle")
        validate_block(b, f"rule {name!r}")
    for owner, b in [("base", r.base)] + list(r.rules):
        for circle, cls in b.outputs:
            if cls not in rules:
                raise RecipeError(f"{owner}: no rule for circle class {cls!r}")
            if len(circle) != len(rules[cls].inp):
                raise GluingMismatch((tuple(circle), tuple(rules[cls].inp)))
    return r


def expand(r: SurfaceRecipe, depth: int) -> ExhaustionView:
    """Stages P_0 .. P_depth; fresh labels are assigned in rule order."""
    if isinstance(r, ExplicitRecipe):
        v = r.view
        if depth > v.depth:
            depth = v.depth
        return ExhaustionView(v.pieces[: depth + 1], (), v.tail if depth == v.depth else None)
    validate_recipe(r)
    rules = r.rule_map
    base = r.base.complex
    # relabel the base to 0..n-1 so that expansions are canonical
    order = {v: k for k, v in enumerate(sorted(base.vertices))}
    K = base.relabel(order)
    nxt = len(order)
    nodes = []
    open_nodes = []
    for circle, cls in r.base.outputs:
        node = CircleNode(len(nodes) + 1, 0, cls, tuple(order[v] for v in circle), 0)
        nodes.append(node)
        open_nodes.append(node)
    pieces = [K]
    for stage in range(1, depth + 1):
        new_open = []
        for node in open_nodes:
            block = rules[node.cls]
            if len(block.inp) != len(node.circle):
                raise GluingMismatch((node.circle, tuple(block.inp)))
            mapping = dict(zip(block.inp, node.circle))
            for v in sorted(block.complex.vertices):
                if v not in mapping:
                    mapping[v] = nxt
                    nxt += 1
            K = K.union(block.complex.relabel(mapping))
            for circle, cls in block.outputs:
                child = CircleNode(len(nodes) + 1, node.id, cls, tuple(mapping[v] for v in circle), stage)
                nodes.append(child)
                new_open.append(child)
        open_nodes = new_open
        pieces.append(K)
    return ExhaustionView(tuple(pieces), tuple(nodes))


@dataclass(frozen=True)
class CanonicalCheck:
    ok: bool
    condition: str = ""
    stage: int = -1
    detail: str = ""

    def __bool__(self):
        return self.ok


def validate_canonical(v: ExhaustionView) -> CanonicalCheck:
    """Check the exhaustion conditions stage by stage.

    polyhedron: each stage is a connected (bordered) polyhedron;
    nested: P_n is a subcomplex of P_{n+1};
    border: no border simplex of P_{n+1} lies in P_n;
    differences: P_{n+1} minus P_n splits into bordered polyhedra.
    """
    for n, P in enumerate(v.pieces):
        kind = surface_check(P)
        if not kind.is_surface:
            return CanonicalCheck(False, "polyhedron", n, str(kind))
    for n in range(len(v.pieces) - 1):
        P, Q = v.pieces[n], v.pieces[n + 1]
        if not P.is_subcomplex_of(Q):
            return CanonicalCheck(False, "nested", n + 1, "P_n is not a subcomplex of P_{n+1}")
        border = Q.boundary_edges()
        bad = [e for e in border if e in P.edges or e[0] in P.vertices or e[1] in P.vertices]
        if bad or (P.triangles == Q.triangles and border):
            return CanonicalCheck(False, "border", n + 1, f"border simplex {bad[0] if bad else border[0]} already in P_{n}")
        for piece in complement_span(Q, P):
            if not surface_check(FiniteComplex2(piece.vertices, piece.edges, piece.triangles)).is_surface:
                return CanonicalCheck(False, "differences", n + 1, "a stage difference is not a bordered polyhedron")
    return CanonicalCheck(True)


# ---------------------------------------------------------------------------
# class-graph analysis of periodic recipes


@dataclass(frozen=True)
class BlockStats:
    orientable: bool
    units: int  # 2*genus if orientable, crosscaps otherwise
    outputs: tuple


def block_stats(b: Block) -> BlockStats:
    inv = invariants(b.complex)
    units = 2 * inv.genus if inv.orientable else inv.crosscaps
    return BlockStats(inv.orientable, units, tuple(cls for _, cls in b.outputs))


class RecipeAnalysis:
    """Reachability facts about the class graph of a periodic recipe."""

    def __init__(self, r: PeriodicRecipe):
        validate_recipe(r)
        self.recipe = r
        self.stats = {name: block_stats(b) for name, b in r.rules}
        self.base = block_stats(r.base)
        self.children = {name: s.outputs for name, s in self.stats.items()}
        self.reach = {c: self._reach_from(self.children[c]) for c in self.children}
        self.recurrent = {c for c in self.children if c in self.reach[c]}
        self.reachable = self._reach_from(self.base.outputs)
        # classes whose blocks occur infinitely often in the expansion
        self.infinitely_often = set()
        for c in self.reachable & self.recurrent:
            self.infinitely_often |= {c} | self.reach[c]
        self.productive = {c for c in self.children if c in self.recurrent or self.reach[c] & self.recurrent}

    def _reach_from(self, starts):
        seen = set()
        stack = list(starts)
        while stack:
            c = stack.pop()
            if c in seen:
                continue
            seen.add(c)
            stack.extend(self.children[c])
        return seen

    def subtree_has(self, cls, pred) -> bool:
        """Does the block attached at ``cls`` or any descendant satisfy pred?"""
        return any(pred(self.stats[c]) for c in {cls} | self.reach[cls])

    @property
    def stabilization_depth(self) -> int:
        # beyond this many stages every new block is downstream of a cycle
        return len(self.children) + 1


@dataclass(frozen=True)
class LimitInvariants:
    genus: LimitValue
    oclass: LimitValue
    planar: LimitValue


def _oclass_of_piece(inv, units):
    if inv.orientable:
        return ORIENTABLE
    return ODD_NONORIENTABLE if units % 2 else EVEN_NONORIENTABLE


def _genus_value(inv):
    return inv.genus if inv.orientable else inv.crosscaps


def limit_invariants(r: SurfaceRecipe, depth: int) -> LimitInvariants:
    """Genus, orientability class and planarity of the limit surface.

    For nonorientable surfaces the genus is counted in crosscaps.
    """
    if isinstance(r, ExplicitRecipe):
        view = expand(r, depth)
        P = view.pieces[-1]
        inv = invariants(P)
        units = 2 * inv.genus if inv.orientable else inv.crosscaps
        compact = surface_check(P).kind == "Closed" or view.tail == "collar"
        mk = certified if compact else (lambda x: witnessed(x, view.depth))
        g = mk(_genus_value(inv))
        oc = mk(_oclass_of_piece(inv, units))
        return LimitInvariants(g, oc, mk(inv.orientable and inv.genus == 0))
    an = RecipeAnalysis(r)
    used = [an.base] + [an.stats[c] for c in an.reachable]
    infinite = [an.stats[c] for c in an.infinitely_often]
    all_orientable = all(s.orientable for s in used)
    if any(s.units > 0 for s in infinite):
        genus = certified(INF)
    else:
        P = expand(r, an.stabilization_depth).pieces[-1]
        genus = certified(_genus_value(invariants(P)))
    if all_orientable:
        oclass = certified(ORIENTABLE)
    elif any(not s.orientable for s in infinite):
        oclass = certified(INF_NONORIENTABLE)
    else:
        P = expand(r, an.stabilization_depth).pieces[-1]
        inv = invariants(P)
        oclass = certified(ODD_NONORIENTABLE if inv.crosscaps % 2 else EVEN_NONORIENTABLE)
    planar = certified(all_orientable and genus.value == 0)
    return LimitInvariants(genus, oclass, planar)


# ---------------------------------------------------------------------------
# standard blocks


def _sphere_minus(k: int) -> tuple:
    """Sphere minus k disks with triangular boundary circles.

    Returns (complex, circles); circle 0 is the outer triangle.
    """
    from .geometry2d import PolygonalRegion, pt, triangulate_polygon

    outer = [pt(0, 0), pt(4 * k, 0), pt(2 * k, 4 * k)]
    holes = []
    for j in range(k - 1):
        x = 2 * k - (k - 1) + 2 * j
        holes.append([pt(x, 1), pt(x + 1, 1), pt(x, 2)])
    tri = triangulate_polygon(PolygonalRegion.from_points(outer, holes))
    K = FiniteComplex2.from_triangles(tri.triangles)
    circles = [tuple(c) for c in tri.boundary]
    return K, circles


def disk_block(cls: str) -> Block:
    return Block(cone_disk((0, 1, 2), 3), None, (((0, 1, 2), cls),))


def sphere_block(output_classes, with_input: bool) -> Block:
    """Sphere minus disks; the first circle is the input when requested."""
    k = len(output_classes) + (1 if with_input else 0)
    if k == 1:
        blk = disk_block(output_classes[0]) if not with_input else None
        if blk is None:
            return Block(cone_disk((0, 1, 2), 3), (0, 1, 2), ())
        return blk
    if k == 2:
        K = annulus((0, 1, 2), (3, 4, 5))
        circles = [(0, 1, 2), (3, 4, 5)]
    else:
        K, circles = _sphere_minus(k)
    inp = circles[0] if with_input else None
    outs = circles[1:] if with_input else circles
    return Block(K, inp, tuple(zip(outs, output_classes)))


def handle_block(output_classes, with_input: bool = True) -> Block:
    """Torus minus disks (one input, one output, or two outputs as a base)."""
    tris = {tuple(sorted(t)) for t in TORUS7} - {(0, 1, 3), (2, 4, 5)}
    K = FiniteComplex2.from_triangles(tris)
    if with_input:
        return Block(K, (0, 1, 3), (((2, 4, 5), output_classes[0]),))
    return Block(K, None, (((0, 1, 3), output_classes[0]), ((2, 4, 5), output_classes[1])))


def glue(K1: FiniteComplex2, c1, K2: FiniteComplex2, c2):
    """Identify circle c2 of K2 with circle c1 of K1 (vertex i to vertex i).

    Returns (complex, relabelling applied to K2).
    """
    if len(c1) != len(c2):
        raise GluingMismatch((tuple(c1), tuple(c2)))
    mapping = dict(zip(c2, c1))
    nxt = K1.max_label() + 1
    for v in sorted(K2.vertices):
        if v not in mapping:
            mapping[v] = nxt
            nxt += 1
    return K1.union(K2.relabel(mapping)), mapping


def mobius_band() -> tuple:
    """Projective plane minus a triangle: (complex, boundary circle)."""
    K = FiniteComplex2.from_triangles(t for t in RP2_6 if t != (0, 1, 2))
    return K, (0, 1, 2)


def crosscap_block(output_class: str) -> Block:
    """Annulus with a crosscap: one input, one output, nonorientable."""
    Y = sphere_block(["_a", "_b"], True)
    (out_circle, _), (cap_circle, _) = Y.outputs
    M, mc = mobius_band()
    K, _ = glue(Y.complex, cap_circle, M, mc)
    return Block(K, Y.inp, ((out_circle, output_class),))


def _prong(n: int) -> PeriodicRecipe:
    if n < 1:
        raise UnknownName(f"prong({n}) needs n >= 1")
    base = sphere_block(["tube"] * n, False)
    return PeriodicRecipe(base, (("tube", sphere_block(["tube"], True)),), f"prong({n})")


def _builtins():
    tube = sphere_block(["tube"], True)
    return {
        "plane": lambda: PeriodicRecipe(disk_block("tube"), (("tube", tube),), "plane"),
        "cylinder": lambda: PeriodicRecipe(sphere_block(["tube", "tube"], False), (("tube", tube),), "cylinder"),
        "loch_ness": lambda: PeriodicRecipe(disk_block("handle"), (("handle", handle_block(["handle"])),), "loch_ness"),
        "jacobs_ladder": lambda: PeriodicRecipe(
            handle_block(["handle", "handle"], with_input=False), (("handle", handle_block(["handle"])),), "jacobs_ladder"
        ),
        "cantor_complement": lambda: PeriodicRecipe(
            sphere_block(["split", "split"], False), (("split", sphere_block(["split", "split"], True)),), "cantor_complement"
        ),
        "flute": lambda: PeriodicRecipe(
            disk_block("flute"),
            (("flute", sphere_block(["flute", "puncture"], True)), ("puncture", sphere_block(["puncture"], True))),
            "flute",
        ),
        "crosscap_chain": lambda: PeriodicRecipe(disk_block("cap"), (("cap", crosscap_block("cap")),), "crosscap_chain"),
    }


BUILTIN_NAMES = ("plane", "cylinder", "loch_ness", "jacobs_ladder", "cantor_complement", "flute", "prong(n)", "crosscap_chain")


def builtin_recipes(name: str) -> PeriodicRecipe:
    m = re.fullmatch(r"prong\((\d+)\)", name.strip())
    if m:
        return _prong(int(m.group(1)))
    table = _builtins()
    if name not in table:
        raise UnknownName(f"unknown recipe {name!r}; known: {', '.join(BUILTIN_NAMES)}")
    return table[name]()


def relabel_recipe(r: PeriodicRecipe, rename: dict, shift: int = 0) -> PeriodicRecipe:
    """Rename circle classes and shift vertex labels (same surface)."""

    def fix(b: Block) -> Block:
        m = {v: v + shift for v in b.complex.vertices}
        inp = None if b.inp is None else tuple(m[v] for v in b.inp)
        outs = tuple((tuple(m[v] for v in c), rename.get(cls, cls)) for c, cls in b.outputs)
        return Block(b.complex.relabel(m), inp, outs)

    rules = tuple((rename.get(name, name), fix(b)) for name, b in r.rules)
    return PeriodicRecipe(fix(r.base), rules, r.name)


def subdivide_recipe(r: PeriodicRecipe, seed: int = 0, fraction: Fraction = Fraction(1, 3)) -> PeriodicRecipe:
    """Subdivide a random legal set of non-circle edges in every block."""
    import random

    from .complex import subdivide

    rng = random.Random(seed)

    def fix(b: Block) -> Block:
        K = b.complex
        protected = set()
        for c in b.circles():
            protected |= _cycle_edges(c)
        et = K.edge_triangles()
        chosen, used = [], set()
        for e in sorted(K.edges):
            if e in protected:
                continue
            ts = {tuple(sorted((e[0], e[1], z))) for z in et.get(e, ())}
            if ts & used or rng.random() >= fraction:
                continue
            chosen.append(e)
            used |= ts
        return Block(subdivide(K, chosen), b.inp, b.outputs)

    return PeriodicRecipe(fix(r.base), tuple((n, fix(b)) for n, b in r.rules), r.name)
