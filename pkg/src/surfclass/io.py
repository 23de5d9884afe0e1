"""Line-oriented text formats for every value the command line reads or writes.

Each file starts with a header line naming its kind (``complex``, ``recipe``,
``atlas``, ``boundarymap``, ``moebius`` or ``plmap``). Blank lines and text
after ``#`` are ignored. Rationals are written ``p/q`` (or ``p``), vertex
labels are nonnegative integers and floats use ``repr`` so that a
serialize/parse round trip is exact. A complex file may omit its header.

    complex                 recipe                 atlas
    V 0                     name plane             name flat_torus
    E 0 1                   block base             chart 0
    F 0 1 2                 V 0 ...                outer 0 0 3/4 0 3/4 3/4 0 3/4
                            out tube 0 1 2         overlap 0 1
                            rule tube              outer 1/2 0 ...
                            in 0 1 2               transition 0 1
                            ...                    orientation 1
                                                   P x y x' y'
                                                   T 0 1 2
                                                   B 0 1 2 3
"""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .atlas import PLAtlas, builtin_atlases
from .complex import FiniteComplex2
from .complex import library
from .errors import KindMismatch, ParseError, UnknownName
from .exhaustion import Block, CircleNode, ExhaustionView, ExplicitRecipe, PeriodicRecipe, builtin_recipes
from .geometry2d import PLMap, Point2, PolygonalRegion, SimplePolygon, Triangulation2, rat
from .moebius import MoebiusElement
from .schoenflies import BoundaryMap

KINDS = ("complex", "recipe", "atlas", "boundarymap", "moebius", "plmap")
BUILTIN_COMPLEXES = ("triangle", "tetrahedron", "octahedron", "torus7", "rp2_6")


# ---------------------------------------------------------------------------
# tokens


def fmt_rat(q) -> str:
    q = rat(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rat(tok: str, line: int = 0):
    try:
        return rat(Fraction(tok))
    except (ValueError, ZeroDivisionError):
        raise ParseError(line, f"a rational p/q, got {tok!r}") from None


def _int(tok: str, line: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(line, f"an integer, got {tok!r}") from None
    return v


def _float(tok: str, line: int) -> float:
    try:
        return float(tok)
    except ValueError:
        raise ParseError(line, f"a decimal number, got {tok!r}") from None


def _points(toks, line):
    if len(toks) % 2:
        raise ParseError(line, "an even number of coordinates")
    return tuple(Point2(parse_rat(toks[k], line), parse_rat(toks[k + 1], line)) for k in range(0, len(toks), 2))


def _fmt_points(pts):
    return " ".join(f"{fmt_rat(p.x)} {fmt_rat(p.y)}" for p in pts)


def _lines(text: str):
    """(line number, tokens) for every nonblank line, comments stripped."""
    for n, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].split()
        if body:
            yield n, body


# ---------------------------------------------------------------------------
# serialization


def kind_of(value) -> str:
    if isinstance(value, FiniteComplex2):
        return "complex"
    if isinstance(value, (PeriodicRecipe, ExplicitRecipe)):
        return "recipe"
    if isinstance(value, PLAtlas):
        return "atlas"
    if isinstance(value, BoundaryMap):
        return "boundarymap"
    if isinstance(value, PLMap):
        return "plmap"
    if isinstance(value, (list, tuple)) and all(isinstance(g, MoebiusElement) for g in value):
        return "moebius"
    raise TypeError(f"no text format for {type(value).__name__}")


def _complex_lines(K: FiniteComplex2):
    out = [f"V {v}" for v in sorted(K.vertices)]
    out += [f"E {u} {v}" for u, v in sorted(K.edges)]
    out += ["F " + " ".join(map(str, t)) for t in sorted(K.triangles)]
    return out


def _block_lines(b: Block):
    out = _complex_lines(b.complex)
    if b.inp is not None:
        out.append("in " + " ".join(map(str, b.inp)))
    out += [f"out {cls} " + " ".join(map(str, c)) for c, cls in b.outputs]
    return out


def _region_lines(r: PolygonalRegion):
    out = ["outer " + _fmt_points(r.outer.vertices)]
    out += ["hole " + _fmt_points(h.vertices) for h in r.holes]
    return out


def _plmap_lines(f: PLMap):
    d = f.domain
    out = [f"orientation {f.orientation}"]
    out += [f"P {_fmt_points((p, q))}" for p, q in zip(d.points, f.images)]
    out += ["T " + " ".join(map(str, t)) for t in d.triangles]
    out += ["B " + " ".join(map(str, c)) for c in d.boundary]
    return out


def _name_line(name):
    return [f"name {name}"] if name else []


def serialize(value) -> str:
    kind = kind_of(value)
    if kind == "complex":
        lines = ["complex"] + _complex_lines(value)
    elif kind == "recipe" and isinstance(value, PeriodicRecipe):
        lines = ["recipe"] + _name_line(value.name) + ["block base"] + _block_lines(value.base)
        for cls, b in value.rules:
            lines += [f"rule {cls}"] + _block_lines(b)
    elif kind == "recipe":
        v = value.view
        lines = ["recipe explicit"] + _name_line(value.name)
        if v.tail:
            lines.append(f"tail {v.tail}")
        for k, P in enumerate(v.pieces):
            lines += [f"stage {k}"] + _complex_lines(P)
        for c in v.circles:
            cls = "-" if c.cls is None else c.cls
            lines.append(f"circle {c.id} {c.parent} {cls} {c.stage} " + " ".join(map(str, c.circle)))
    elif kind == "atlas":
        lines = ["atlas"] + _name_line(value.name)
        for i, ch in enumerate(value.charts):
            if isinstance(ch, PolygonalRegion):
                lines += [f"chart {i}"] + _region_lines(ch)
            else:
                lines.append(f"chart {i} pieces")
                for r in ch:
                    lines += _region_lines(r)
        for (i, j), pieces in sorted(value.overlaps.items()):
            lines.append(f"overlap {i} {j}")
            for r in pieces:
                lines += _region_lines(r)
        for (i, j), f in sorted(value.transitions.items()):
            lines += [f"transition {i} {j}"] + _plmap_lines(f)
    elif kind == "boundarymap":
        lines = ["boundarymap"]
        lines += [f"P {fmt_rat(t)} {_fmt_points((p,))}" for t, p in zip(value.params, value.target.vertices)]
    elif kind == "plmap":
        lines = ["plmap"] + _plmap_lines(value)
    else:
        lines = ["moebius"]
        for g in value:
            fields = []
            for z in g.entries():
                z = complex(z)
                fields += [repr(z.real), repr(z.imag)]
            lines.append("M " + " ".join(fields))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# parsing


class _Complex:
    def __init__(self):
        self.v, self.e, self.f = set(), set(), set()

    def take(self, n, toks) -> bool:
        tag = toks[0]
        if tag not in ("V", "E", "F"):
            return False
        want = {"V": 1, "E": 2, "F": 3}[tag]
        if len(toks) != want + 1:
            raise ParseError(n, f"{tag} followed by {want} vertex label(s)")
        ids = tuple(_int(t, n) for t in toks[1:])
        if any(i < 0 for i in ids):
            raise ParseError(n, "nonnegative vertex labels")
        if tag == "V":
            self.v.add(ids[0])
        elif tag == "E":
            self.e.add(tuple(sorted(ids)))
        else:
            self.f.add(tuple(sorted(ids)))
        return True

    def build(self) -> FiniteComplex2:
        return FiniteComplex2(frozenset(self.v), frozenset(self.e), frozenset(self.f))


def _parse_complex(body):
    c = _Complex()
    for n, toks in body:
        if not c.take(n, toks):
            raise ParseError(n, "a V, E or F line")
    return c.build()


def _parse_periodic(body):
    name, blocks, cur = "", [], None
    for n, toks in body:
        tag = toks[0]
        if tag == "name":
            name = " ".join(toks[1:])
        elif tag == "block" or tag == "rule":
            if len(toks) != 2 or (tag == "block" and toks[1] != "base"):
                raise ParseError(n, "'block base' or 'rule <class>'")
            cur = {"cls": toks[1] if tag == "rule" else None, "cx": _Complex(), "inp": None, "out": [], "line": n}
            blocks.append(cur)
        elif cur is None:
            raise ParseError(n, "a 'block base' section first")
        elif tag == "in":
            cur["inp"] = tuple(_int(t, n) for t in toks[1:])
        elif tag == "out":
            if len(toks) < 2:
                raise ParseError(n, "out <class> <vertices>")
            cur["out"].append((tuple(_int(t, n) for t in toks[2:]), toks[1]))
        elif not cur["cx"].take(n, toks):
            raise ParseError(n, "V, E, F, in or out inside a block")
    if not blocks or blocks[0]["cls"] is not None:
        raise ParseError(blocks[0]["line"] if blocks else 0, "a 'block base' section first")
    made = [(b["cls"], Block(b["cx"].build(), b["inp"], tuple(b["out"]))) for b in blocks]
    for b in blocks[1:]:
        if b["cls"] is None:
            raise ParseError(b["line"], "a single base block")
    return PeriodicRecipe(made[0][1], tuple(made[1:]), name)


def _parse_explicit(body):
    name, tail, stages, circles = "", None, [], []
    for n, toks in body:
        tag = toks[0]
        if tag == "name":
            name = " ".join(toks[1:])
        elif tag == "tail":
            tail = toks[1] if len(toks) > 1 else None
        elif tag == "stage":
            if len(toks) != 2 or _int(toks[1], n) != len(stages):
                raise ParseError(n, f"stage {len(stages)}")
            stages.append(_Complex())
        elif tag == "circle":
            if len(toks) < 5:
                raise ParseError(n, "circle <id> <parent> <class> <stage> <vertices>")
            cls = None if toks[3] == "-" else toks[3]
            circ = tuple(_int(t, n) for t in toks[5:])
            circles.append(CircleNode(_int(toks[1], n), _int(toks[2], n), cls, circ, _int(toks[4], n)))
        elif not stages:
            raise ParseError(n, "a 'stage 0' section first")
        elif not stages[-1].take(n, toks):
            raise ParseError(n, "V, E or F inside a stage")
    view = ExhaustionView(tuple(s.build() for s in stages), tuple(circles), tail)
    return ExplicitRecipe(view, name)


class _Regions:
    """Collects ``outer``/``hole`` lines into regions."""

    def __init__(self):
        self.items = []

    def take(self, n, toks) -> bool:
        if toks[0] == "outer":
            self.items.append([_points(toks[1:], n), []])
        elif toks[0] == "hole":
            if not self.items:
                raise ParseError(n, "an outer line before any hole")
            self.items[-1][1].append(_points(toks[1:], n))
        else:
            return False
        return True

    def build(self, n):
        out = []
        for outer, holes in self.items:
            if len(outer) < 3:
                raise ParseError(n, "at least three polygon vertices")
            out.append(PolygonalRegion(SimplePolygon(outer), tuple(SimplePolygon(h) for h in holes)))
        return tuple(out)


class _Map:
    def __init__(self):
        self.orientation, self.pts, self.imgs, self.tris, self.bd = 1, [], [], [], []

    def take(self, n, toks) -> bool:
        tag = toks[0]
        if tag == "orientation":
            self.orientation = _int(toks[1], n) if len(toks) == 2 else None
            if self.orientation not in (-1, 0, 1):
                raise ParseError(n, "orientation -1, 0 or 1")
        elif tag == "P":
            if len(toks) != 5:
                raise ParseError(n, "P x y x' y'")
            p, q = _points(toks[1:], n)
            self.pts.append(p)
            self.imgs.append(q)
        elif tag == "T":
            if len(toks) != 4:
                raise ParseError(n, "T i j k")
            self.tris.append(tuple(_int(t, n) for t in toks[1:]))
        elif tag == "B":
            self.bd.append(tuple(_int(t, n) for t in toks[1:]))
        else:
            return False
        return True

    def build(self, n) -> PLMap:
        m = len(self.pts)
        if any(not 0 <= i < m for t in self.tris + self.bd for i in t):
            raise ParseError(n, f"point indices below {m}")
        dom = Triangulation2(tuple(self.pts), tuple(self.tris), tuple(self.bd))
        return PLMap(dom, tuple(self.imgs), self.orientation)


def _parse_plmap(body):
    m = _Map()
    last = 0
    for n, toks in body:
        last = n
        if not m.take(n, toks):
            raise ParseError(n, "orientation, P, T or B")
    return m.build(last)


def _parse_atlas(body):
    name = ""
    charts, overlaps, transitions = {}, {}, {}
    cur = None  # (section, key, collector, line)

    def close():
        if cur is None:
            return
        sec, key, col, n = cur
        if sec == "chart":
            regions = col.build(n)
            if key[1]:
                charts[key[0]] = regions
            elif len(regions) != 1:
                raise ParseError(n, "exactly one outer line for a chart (use 'chart i pieces' for more)")
            else:
                charts[key[0]] = regions[0]
        elif sec == "overlap":
            overlaps[key] = col.build(n)
        else:
            transitions[key] = col.build(n)

    for n, toks in body:
        tag = toks[0]
        if tag == "name":
            name = " ".join(toks[1:])
        elif tag == "chart":
            close()
            if len(toks) not in (2, 3) or (len(toks) == 3 and toks[2] != "pieces"):
                raise ParseError(n, "chart <index> [pieces]")
            cur = ("chart", (_int(toks[1], n), len(toks) == 3), _Regions(), n)
        elif tag in ("overlap", "transition"):
            close()
            if len(toks) != 3:
                raise ParseError(n, f"{tag} <i> <j>")
            key = (_int(toks[1], n), _int(toks[2], n))
            cur = (tag, key, _Regions() if tag == "overlap" else _Map(), n)
        elif cur is None or not cur[2].take(n, toks):
            raise ParseError(n, "a line belonging to a chart, overlap or transition section")
    close()
    if sorted(charts) != list(range(len(charts))):
        raise ParseError(0, "charts numbered 0, 1, ... without gaps")
    for i, j in list(overlaps) + list(transitions):
        if not (0 <= i < len(charts) and 0 <= j < len(charts)):
            raise ParseError(0, f"chart indices below {len(charts)} in pair {(i, j)}")
    return PLAtlas(tuple(charts[i] for i in range(len(charts))), overlaps, transitions, name)


def _parse_boundarymap(body):
    params, verts = [], []
    for n, toks in body:
        if toks[0] != "P" or len(toks) != 4:
            raise ParseError(n, "P t x y")
        params.append(parse_rat(toks[1], n))
        verts.append(Point2(parse_rat(toks[2], n), parse_rat(toks[3], n)))
    return BoundaryMap(tuple(params), SimplePolygon(tuple(verts)))


def _parse_moebius(body):
    out = []
    for n, toks in body:
        if toks[0] != "M" or len(toks) != 9:
            raise ParseError(n, "M followed by 8 decimal fields")
        xs = [_float(t, n) for t in toks[1:]]
        out.append(MoebiusElement(*(complex(xs[k], xs[k + 1]) for k in range(0, 8, 2))))
    return out


def parse_text(text: str, kind: str = None):
    """Parse ``text``; if ``kind`` is given the header must agree with it.

    Returns the parsed value (use ``kind_of`` to recover its kind).
    """
    lines = list(_lines(text))
    if not lines:
        raise ParseError(0, "a header line")
    n, head = lines[0]
    if head[0] in KINDS:
        found, body = head[0], lines[1:]
        sub = head[1] if len(head) > 1 else None
    elif head[0] in ("V", "E", "F"):
        found, body, sub = "complex", lines, None
    else:
        raise ParseError(n, "a header naming one of " + ", ".join(KINDS))
    if kind is not None and kind != found:
        raise KindMismatch(f"expected kind {kind}, found a {found!r} header")
    if found == "complex":
        return _parse_complex(body)
    if found == "recipe":
        if sub not in (None, "explicit"):
            raise ParseError(n, "'recipe' or 'recipe explicit'")
        return _parse_explicit(body) if sub == "explicit" else _parse_periodic(body)
    return {
        "atlas": _parse_atlas,
        "boundarymap": _parse_boundarymap,
        "moebius": _parse_moebius,
        "plmap": _parse_plmap,
    }[found](body)


def builtin(name: str, kind: str = None):
    """Resolve a builtin name; without ``kind`` complexes, recipes and atlases are tried in turn."""
    if kind in (None, "complex") and name in BUILTIN_COMPLEXES:
        return getattr(library, name)()
    if kind in (None, "recipe"):
        try:
            return builtin_recipes(name)
        except UnknownName:
            if kind == "recipe":
                raise
    if kind in (None, "atlas"):
        return builtin_atlases(name)
    raise UnknownName(f"no builtin {kind or 'value'} named {name!r}")


def parse_inputs(path, kind: str = None):
    """Read a file (or a ``builtin:name`` reference) of the given kind."""
    s = str(path)
    if s.startswith("builtin:"):
        value = builtin(s[len("builtin:"):])
        if kind is not None and kind_of(value) != kind:
            raise KindMismatch(f"builtin {s[8:]!r} is a {kind_of(value)}, not a {kind}")
        return value
    return parse_text(Path(s).read_text(), kind)


def write_value(value, path):
    Path(path).write_text(serialize(value))


__all__ = [
    "BUILTIN_COMPLEXES",
    "KINDS",
    "builtin",
    "fmt_rat",
    "kind_of",
    "parse_inputs",
    "parse_rat",
    "parse_text",
    "serialize",
    "write_value",
]
