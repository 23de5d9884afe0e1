from __future__ import annotations

import contextlib
import io as _io
import json
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cli_contract import CONTRACT, f
from surfclass.cli import Command, main, run
from surfclass.complex import library
from surfclass.errors import KindMismatch, ParseError
from surfclass.geometry2d import rat
from surfclass.io import parse_inputs, parse_rat, parse_text, serialize
from valuegen import KINDS, random_value, same


def _run(argv):
    out, err = _io.StringIO(), _io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            rc = main(argv)
        except SystemExit as exc:
            rc = exc.code
    return rc, out.getvalue()


# ---------------------------------------------------------------------------
# formats


def test_single_triangle():
    K = parse_text("V 0\nV 1\nV 2\nE 0 1\nE 1 2\nE 0 2\nF 0 1 2")
    assert K == library.triangle()


def test_rational_token():
    assert parse_rat("1/3") == rat(1, 3)
    assert parse_rat("-4") == rat(-4)


def test_kind_mismatch():
    with pytest.raises(KindMismatch):
        parse_text("atlas\nname x\n", "complex")


@pytest.mark.parametrize(
    "text, line",
    [
        ("complex\nV 0\nE 0\n", 3),
        ("complex\nV 0\nQ 1\n", 3),
        ("recipe\nV 0\n", 2),
        ("moebius\nM 1 0 0 0 0 0 1\n", 2),
        ("boundarymap\nP 1/0 0 0\n", 2),
        ("plmap\nP 0 0 0 0\nT 0 1 2\n", 3),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_text(text)
    assert info.value.line == line


def test_comments_and_builtins():
    K = parse_text("# a comment\ncomplex  # trailing\n\nV 0\nV 1\nE 0 1\n")
    assert K.edges == frozenset({(0, 1)})
    assert parse_inputs("builtin:tetrahedron") == library.tetrahedron()
    assert parse_inputs("builtin:plane", "recipe").name == "plane"
    with pytest.raises(KindMismatch):
        parse_inputs("builtin:flat_torus", "complex")


def test_fixtures_roundtrip():
    for name in ("tetrahedron.cx2", "jacobs_ladder.recipe", "torus.atlas", "triangle.bmap", "lattice.mat"):
        text = open(f(name)).read()
        assert serialize(parse_text(text)) == text


@pytest.mark.parametrize("kind", KINDS)
@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_roundtrip_property(kind, seed):
    v = random_value(kind, random.Random(seed))
    assert same(parse_text(serialize(v), kind), v)


# ---------------------------------------------------------------------------
# commands


@pytest.mark.parametrize("argv, code, fragment", CONTRACT, ids=lambda x: None)
def test_exit_contract(argv, code, fragment):
    rc, out = _run(argv)
    assert rc == code
    assert fragment in out


def test_json_report():
    rc, out = _run(["compare", "builtin:jacobs_ladder", "builtin:loch_ness", "--format", "json"])
    doc = json.loads(out)
    assert rc == 1 and set(doc) == {"command", "verdict", "certainty", "invariants", "witnesses"}
    assert doc["witnesses"][0] == {"invariant": "end counts", "values": ["(2,2,0)", "(1,1,0)"]}
    assert doc["certainty"]["first"]["genus"] == "Certified"


def test_out_files(tmp_path):
    target = tmp_path / "h.plmap"
    rc, _ = _run(["schoenflies", f("triangle.bmap"), "--out", str(target)])
    assert rc == 0
    rc, out = _run(["validate", str(target)])
    assert rc == 0 and "PL embedding" in out
    tri = tmp_path / "torus.cx2"
    assert _run(["triangulate", "builtin:flat_torus", "--out", str(tri)])[0] == 0
    rc, out = _run(["classify", str(tri)])
    assert rc == 0 and "closed, orientable, genus 1" in out
    rec = tmp_path / "square.recipe"
    assert _run(["triangulate", f("open_square.atlas"), "--out", str(rec), "--depth", "2"])[0] == 0
    assert _run(["validate", str(rec)])[0] == 0


def test_run_is_deterministic():
    c = Command("compare", [f("cantor.recipe"), f("prong3.recipe")])
    a, b = run(c), run(c)
    assert a == b and a.exit_code == 1


def test_command_invariants():
    with pytest.raises(ValueError):
        Command("classify", ["x"], depth=-1)
    with pytest.raises(ValueError):
        Command("moebius", ["x"], tol=0.0)


def test_console_module():
    p = subprocess.run([sys.executable, "-m", "surfclass.cli", "classify", f("tetrahedron.cx2")], capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout.startswith("closed, orientable, genus 0")
