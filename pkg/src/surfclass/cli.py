"""Command-line front end.

    surfclass validate FILE
    surfclass classify FILE [--depth N]
    surfclass ends FILE [--depth N]
    surfclass compare FILE FILE [--depth N]
    surfclass schoenflies FILE [--out PATH]
    surfclass triangulate FILE [--depth N] [--out PATH]
    surfclass moebius FILE [--tol X]

FILE is a path or ``builtin:name``. Exit codes: 0 success or Yes, 1 No or a
violation (the report carries a witness), 2 Unknown or uncertified, 3 input
error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import io
from .atlas import PLAtlas, is_hausdorff, triangulate, validate_atlas
from .classify import classify_compact, classify_surface, compare_invariants
from .complex import FiniteComplex2, invariants, surface_check, validate_complex
from .ends import Distinguished, cb_profile, count_ends, distinguish, end_triple
from .errors import (
    ComplexError,
    CorrespondenceMismatch,
    Disconnected,
    FaceNotDisk,
    KindMismatch,
    MoebiusError,
    NotHausdorff,
    NotSimple,
    ParseError,
    RecipeError,
    SurfclassError,
)
from .exhaustion import ExplicitRecipe, PeriodicRecipe, expand, validate_canonical, validate_recipe
from .geometry2d import plmap_verify
from .moebius import classify_element, elementary_invariant, fixed_points, is_identity
from .schoenflies import extend_to_plane_homeo, inner_image_area, verify_homeo

EXIT = {"Yes": 0, "No": 1, "Unknown": 2, "Error": 3}
COMMANDS = ("validate", "classify", "ends", "compare", "schoenflies", "triangulate", "moebius")


@dataclass
class Command:
    name: str
    inputs: list
    depth: int = 4
    tol: float = 1e-9
    format: str = "text"
    out: str = None

    def __post_init__(self):
        if self.name not in COMMANDS:
            raise ValueError(f"unknown command {self.name!r}")
        if self.depth < 0:
            raise ValueError("depth must be >= 0")
        if not self.tol > 0:
            raise ValueError("tolerance must be > 0")


@dataclass
class Report:
    command: str
    verdict: str  # Yes | No | Unknown | Error
    headline: str = ""
    certainty: object = "exact"
    invariants: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT[self.verdict]

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "verdict": self.verdict,
            "certainty": self.certainty,
            "invariants": self.invariants,
            "witnesses": self.witnesses,
        }
        return json.dumps(doc, indent=2, default=str)

    def to_text(self) -> str:
        lines = [self.headline] if self.headline else []
        lines.append(f"verdict: {self.verdict}")
        if self.certainty != "exact":
            lines.append(f"certainty: {_flat(self.certainty)}")
        lines += [f"{k}: {_flat(v)}" for k, v in self.invariants.items()]
        lines += [f"witness: {_flat(w)}" for w in self.witnesses]
        return "\n".join(lines)


def _flat(v) -> str:
    if isinstance(v, dict):
        return ", ".join(f"{k}={_flat(x)}" for k, x in v.items())
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_flat(x) for x in v) + "]"
    return str(v)


# ---------------------------------------------------------------------------
# helpers


def _load(path, kind=None):
    return io.parse_inputs(path, kind)


def _checked_complex(K: FiniteComplex2) -> FiniteComplex2:
    return validate_complex(K.vertices, K.edges, K.triangles)


def _compact_headline(K: FiniteComplex2):
    kind = surface_check(K)
    if not kind.is_surface:
        return None, kind
    inv = invariants(K)
    side = "orientable" if inv.orientable else "nonorientable"
    g = inv.genus if inv.orientable else inv.crosscaps
    if kind.kind == "Closed":
        return f"closed, {side}, genus {g}", kind
    return f"bordered, {side}, genus {g}, {inv.boundary_circles} boundary circle(s)", kind


def _witness_point(sp):
    return {"chart": sp.chart, "point": [io.fmt_rat(sp.point.x), io.fmt_rat(sp.point.y)]}


def _as_surface(value, depth):
    """("compact", complex) or ("recipe", recipe) for complexes, recipes and atlases."""
    if isinstance(value, FiniteComplex2):
        return "compact", _checked_complex(value)
    if isinstance(value, (PeriodicRecipe, ExplicitRecipe)):
        return "recipe", value
    if isinstance(value, PLAtlas):
        t = triangulate(value, depth)
        if t.complex is not None:
            return "compact", t.complex
        return "recipe", t.recipe
    raise KindMismatch(f"expected a complex, recipe or atlas, got a {io.kind_of(value)}")


def _richards_fields(inv):
    s = inv.summary()
    certainty = {"genus": s["genus_certainty"], "oclass": s["oclass_certainty"], "ends": s["ends_certainty"]}
    fields = {"genus": s["genus"], "oclass": s["oclass"], "planar": s["planar"], "ends": s["ends"]}
    return fields, certainty


def _atlas_failure(cmd, exc):
    if isinstance(exc, NotHausdorff):
        p, q = exc.witness
        return Report(cmd, "No", "not Hausdorff", witnesses=[{"inseparable": [_witness_point(p), _witness_point(q)]}])
    return Report(cmd, "No", str(exc), witnesses=[str(exc)])


# ---------------------------------------------------------------------------
# commands


def cmd_validate(c: Command) -> Report:
    value = _load(c.inputs[0])
    kind = io.kind_of(value)
    inv = {"kind": kind}
    if kind == "complex":
        try:
            K = _checked_complex(value)
        except ComplexError as exc:
            return Report("validate", "No", "not a simplicial complex", invariants=inv, witnesses=[str(exc)])
        sk = surface_check(K)
        inv["surface"] = str(sk)
        if not sk.is_surface:
            return Report("validate", "No", "not a polyhedron", invariants=inv, witnesses=[list(sk.witness or ())])
        return Report("validate", "Yes", sk.kind.lower() + " polyhedron", invariants=inv)
    if kind == "recipe":
        if isinstance(value, PeriodicRecipe):
            try:
                validate_recipe(value)
            except RecipeError as exc:
                return Report("validate", "No", "invalid recipe", invariants=inv, witnesses=[str(exc)])
            view = expand(value, c.depth)
        else:
            view = value.view
        chk = validate_canonical(view)
        inv["stages"] = len(view.pieces)
        if not chk.ok:
            w = {"condition": chk.condition, "stage": chk.stage, "detail": chk.detail}
            return Report("validate", "No", "not a canonical exhaustion", invariants=inv, witnesses=[w])
        return Report("validate", "Yes", "canonical exhaustion", invariants=inv)
    if kind == "atlas":
        chk = validate_atlas(value)
        inv["charts"] = len(value.charts)
        if not chk.ok:
            w = {"condition": chk.condition, "indices": list(chk.indices), "detail": chk.detail}
            return Report("validate", "No", "atlas violates a gluing condition", invariants=inv, witnesses=[w])
        h = is_hausdorff(value)
        if not h.ok:
            p, q = h.witness
            w = {"inseparable": [_witness_point(p), _witness_point(q)]}
            return Report("validate", "No", "not Hausdorff", invariants=inv, witnesses=[w])
        return Report("validate", "Yes", "valid Hausdorff atlas", invariants=inv)
    if kind == "boundarymap":
        try:
            value.validate()
        except (NotSimple, CorrespondenceMismatch) as exc:
            return Report("validate", "No", "invalid boundary map", invariants=inv, witnesses=[str(exc)])
        return Report("validate", "Yes", "valid boundary map", invariants=inv)
    if kind == "plmap":
        rep = plmap_verify(value)
        if not rep.ok:
            w = list(rep.problems) + [f"overlap {o}" for o in rep.overlaps]
            return Report("validate", "No", "not an embedding", invariants=inv, witnesses=w)
        return Report("validate", "Yes", "PL embedding", invariants=inv)
    bad = [k for k, g in enumerate(value) if abs(g.det - 1) > c.tol]
    inv["elements"] = len(value)
    if bad:
        return Report("validate", "No", "determinant differs from 1", invariants=inv, witnesses=[{"element": k} for k in bad])
    return Report("validate", "Yes", "normalized matrices", invariants=inv)


def cmd_classify(c: Command) -> Report:
    value = _load(c.inputs[0])
    try:
        kind, s = _as_surface(value, c.depth)
    except (NotHausdorff, Disconnected, FaceNotDisk) as exc:
        return _atlas_failure("classify", exc)
    if kind == "compact":
        head, sk = _compact_headline(s)
        if head is None:
            return Report("classify", "No", "not a polyhedron", witnesses=[list(sk.witness or ())])
        inv = invariants(s)
        fields = {"euler": inv.euler, "orientable": inv.orientable, "boundary_circles": inv.boundary_circles}
        fields["genus" if inv.orientable else "crosscaps"] = inv.genus if inv.orientable else inv.crosscaps
        return Report("classify", "Yes", head, invariants=fields)
    ri = classify_surface(s, c.depth)
    fields, certainty = _richards_fields(ri)
    return Report("classify", "Yes" if ri.certified else "Unknown", str(ri), certainty, fields)


def cmd_ends(c: Command) -> Report:
    value = _load(c.inputs[0])
    try:
        kind, s = _as_surface(value, c.depth)
    except (NotHausdorff, Disconnected, FaceNotDisk) as exc:
        return _atlas_failure("ends", exc)
    if kind == "compact":
        return Report("ends", "Yes", "compact: no ends", invariants={"ends": ["0", "0", "0"]})
    t = end_triple(s, c.depth)
    counts = count_ends(t)
    fields = {"ends": [str(x) for x in counts]}
    for which in ("T", "np", "no"):
        p = cb_profile(t, which=which)
        fields[f"cb_profile_{which}"] = {"rank": p.rank, "perfect_kernel": p.perfect_kernel, "certified": p.certified}
    head = "end counts (" + ",".join(str(x) for x in counts) + ")"
    return Report("ends", "Yes" if t.certified else "Unknown", head, dict(t.certainty), fields)


def _compact_compare(a, b) -> Report:
    ca, cb = classify_compact(a), classify_compact(b)
    fields = {"first": str(ca), "second": str(cb)}
    if ca == cb:
        return Report("compare", "Yes", "homeomorphic", invariants=fields)
    name = "orientability" if ca.orientable != cb.orientable else "genus"
    va, vb = (ca.orientable, cb.orientable) if name == "orientability" else (ca.genus, cb.genus)
    w = {"invariant": name, "values": [va, vb]}
    return Report("compare", "No", f"Distinguished: {name} {va} vs {vb}", invariants=fields, witnesses=[w])


def cmd_compare(c: Command) -> Report:
    sides = []
    for path in c.inputs[:2]:
        try:
            sides.append(_as_surface(_load(path), c.depth))
        except (NotHausdorff, Disconnected, FaceNotDisk) as exc:
            return _atlas_failure("compare", exc)
    (ka, a), (kb, b) = sides
    if ka == kb == "compact":
        return _compact_compare(a, b)
    if ka != kb:
        r = b if ka == "compact" else a
        counts = count_ends(end_triple(r, c.depth))
        if counts[0].value >= 1:
            w = {"invariant": "compactness", "values": ["compact", "noncompact"]}
            return Report("compare", "No", "Distinguished: compact vs noncompact", witnesses=[w])
        return Report("compare", "Unknown", "compactness undetermined", certainty={"depth": c.depth})
    ia, ib = classify_surface(a, c.depth), classify_surface(b, c.depth)
    v = compare_invariants(ia, ib, c.depth, identical=(a == b))
    ca_, cb_ = _richards_fields(ia)[1], _richards_fields(ib)[1]
    fields = {"first": str(ia), "second": str(ib)}
    certainty = {"first": ca_, "second": cb_}
    if v.kind == "No":
        d = distinguish(ia.triple, ib.triple, c.depth)
        if isinstance(d, Distinguished):
            w = {"invariant": d.invariant, "values": list(d.values)}
            head = f"Distinguished: {d.invariant} {d.values[0]} vs {d.values[1]}"
        else:
            w = {"invariant": v.reason.split(" vs ")[0].rsplit(" ", 1)[0], "detail": v.reason}
            head = f"Distinguished: {v.reason}"
        return Report("compare", "No", head, certainty, fields, [w])
    if v.kind == "Yes":
        return Report("compare", "Yes", f"homeomorphic ({v.reason})", certainty, fields)
    return Report("compare", "Unknown", f"not decided at depth {c.depth}", certainty, fields)


def cmd_schoenflies(c: Command) -> Report:
    g = _load(c.inputs[0], "boundarymap")
    try:
        h = extend_to_plane_homeo(g)
    except (NotSimple, CorrespondenceMismatch) as exc:
        return Report("schoenflies", "No", "boundary map rejected", witnesses=[str(exc)])
    problems = verify_homeo(h)
    fields = {
        "triangles": len(h.forward.domain.triangles),
        "inner_image_area": io.fmt_rat(inner_image_area(h)),
    }
    if c.out:
        io.write_value(h.forward, c.out)
        fields["written"] = c.out
    if problems:
        return Report("schoenflies", "No", "extension failed verification", invariants=fields, witnesses=problems)
    return Report("schoenflies", "Yes", "extended to a PL homeomorphism of the box", invariants=fields)


def cmd_triangulate(c: Command) -> Report:
    a = _load(c.inputs[0], "atlas")
    try:
        t = triangulate(a, c.depth)
    except (NotHausdorff, Disconnected, FaceNotDisk) as exc:
        return _atlas_failure("triangulate", exc)
    fields = dict(t.stats)
    fields.update({"ideal_vertices": t.ideal_vertices, "ideal_edges": t.ideal_edges})
    result = t.complex if t.complex is not None else t.recipe
    fields["result"] = "closed complex" if t.complex is not None else f"exhaustion with {len(t.recipe.view.pieces)} stages"
    if c.out:
        io.write_value(result, c.out)
        fields["written"] = c.out
    return Report("triangulate", "Yes", fields["result"], invariants=fields)


def cmd_moebius(c: Command) -> Report:
    gens = _load(c.inputs[0], "moebius")
    elements = []
    for g in gens:
        cl = classify_element(g, c.tol)
        entry = {"class": str(cl)}
        if not is_identity(g, c.tol):
            entry["fixed_points"] = [str(z) for z in fixed_points(g, c.tol)]
        elements.append(entry)
    fields = {"elements": elements}
    try:
        inv = elementary_invariant(gens, c.tol)
    except MoebiusError as exc:
        return Report("moebius", "No", "not an elementary torsion-free group", invariants=fields,
                      witnesses=[{"reason": type(exc).__name__, "detail": str(exc)}])
    fields["invariant"] = {"type": inv.type, "lambda": [inv.lam.real, inv.lam.imag]}
    return Report("moebius", "Yes", f"elementary invariant {inv}", {"tolerance": c.tol}, fields)


HANDLERS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "ends": cmd_ends,
    "compare": cmd_compare,
    "schoenflies": cmd_schoenflies,
    "triangulate": cmd_triangulate,
    "moebius": cmd_moebius,
}


def run(c: Command) -> Report:
    """Dispatch one command; input problems become an Error report (exit 3)."""
    try:
        return HANDLERS[c.name](c)
    except (OSError, ParseError, KindMismatch) as exc:
        return Report(c.name, "Error", f"input error: {exc}", witnesses=[type(exc).__name__])
    except SurfclassError as exc:
        return Report(c.name, "Error", f"input error: {exc}", witnesses=[type(exc).__name__])


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # exit 2 is reserved for Unknown verdicts
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def _nonneg(s):
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("depth must be >= 0")
    return v


def _positive(s):
    v = float(s)
    if not v > 0:
        raise argparse.ArgumentTypeError("tolerance must be > 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="surfclass", description="Classify triangulated and noncompact surfaces.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--depth", type=_nonneg, default=4, help="exhaustion depth (default 4)")
    common.add_argument("--tol", type=_positive, default=1e-9, help="floating tolerance (default 1e-9)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", metavar="PATH", help="output file for produced values")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    nargs = {"compare": 2}
    helps = {
        "validate": "check a file of any kind",
        "classify": "classify a complex, recipe or atlas",
        "ends": "end counts and Cantor-Bendixson profiles",
        "compare": "decide whether two surfaces are homeomorphic",
        "schoenflies": "extend a boundary map to a PL homeomorphism",
        "triangulate": "triangulate a PL atlas",
        "moebius": "classify Moebius elements and their group",
    }
    for name in COMMANDS:
        s = sub.add_parser(name, parents=[common], help=helps[name])
        s.add_argument("inputs", nargs=nargs.get(name, 1), metavar="FILE")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    c = Command(args.command, list(args.inputs), args.depth, args.tol, args.format, args.out)
    rep = run(c)
    text = rep.to_json() if c.format == "json" else rep.to_text()
    print(text)
    if c.out and c.name not in ("schoenflies", "triangulate"):
        Path(c.out).write_text(text + "\n")
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
