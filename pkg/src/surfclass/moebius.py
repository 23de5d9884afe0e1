"""Moebius transformations: element types, fixed points and invariants of
elementary torsion-free groups.

Floating complex arithmetic with explicit tolerances. Points of the extended
plane are complex numbers or ``INFINITY``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

from .errors import IsIdentity, NotElementaryCompatible, TorsionDetected

EPS_DET = 1e-12
EPS = 1e-9
INFINITY = math.inf


@dataclass(frozen=True)
class MoebiusElement:
    a: complex
    b: complex
    c: complex
    d: complex

    @property
    def trace(self) -> complex:
        return self.a + self.d

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "MoebiusElement") -> "MoebiusElement":
        a, b, c, d = self.a, self.b, self.c, self.d
        p, q, r, s = other.a, other.b, other.c, other.d
        return moebius(a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s)

    def inverse(self) -> "MoebiusElement":
        return moebius(self.d, -self.b, -self.c, self.a)

    def __call__(self, z):
        a, b, c, d = self.a, self.b, self.c, self.d
        if z == INFINITY:
            return INFINITY if c == 0 else a / c
        den = c * z + d
        if den == 0:
            return INFINITY
        return (a * z + b) / den

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __str__(self):
        return "[[{}, {}], [{}, {}]]".format(*(_fmt(x) for x in self.entries()))


def _fmt(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return repr(z.real)
    return f"{z.real!r}{'+' if z.imag >= 0 else '-'}{abs(z.imag)!r}j"


def moebius(a, b, c, d) -> MoebiusElement:
    """Normalize to determinant 1 with the canonical sign."""
    a, b, c, d = (complex(x) for x in (a, b, c, d))
    det = a * d - b * c
    if det == 0:
        raise ValueError("singular matrix")
    s = cmath.sqrt(det)
    a, b, c, d = a / s, b / s, c / s, d / s
    scale = max(abs(a), abs(b), abs(c), abs(d))
    for x in (a, b, c, d):
        if abs(x) > EPS_DET * scale:
            ph = cmath.phase(x)
            if ph < 0 or ph >= math.pi:
                a, b, c, d = -a, -b, -c, -d
            break
    return MoebiusElement(a, b, c, d)


def translation(t) -> MoebiusElement:
    return moebius(1, t, 0, 1)


def dilation(lam) -> MoebiusElement:
    """z -> lam z."""
    return moebius(lam, 0, 0, 1)


def rotation(theta: float) -> MoebiusElement:
    return dilation(cmath.exp(1j * theta))


def identity() -> MoebiusElement:
    return moebius(1, 0, 0, 1)


# ---------------------------------------------------------------------------
# single elements


@dataclass(frozen=True)
class ElementClass:
    kind: str  # Identity | Parabolic | Elliptic | Loxodromic
    angle: Optional[float] = None
    multiplier: Optional[complex] = None
    boundary: bool = False  # trace squared within tolerance of 4 but not equal

    def __str__(self):
        if self.kind == "Elliptic":
            return f"Elliptic(angle={self.angle:.12g})"
        if self.kind == "Loxodromic":
            return f"Loxodromic(lambda={_fmt(self.multiplier)})"
        return self.kind + ("(boundary)" if self.boundary else "")


def is_identity(g: MoebiusElement, eps: float = EPS) -> bool:
    return abs(g.b) <= eps and abs(g.c) <= eps and abs(g.a - g.d) <= eps


def multiplier(g: MoebiusElement) -> complex:
    """lambda = mu**2 for the eigenvalue mu with |mu| >= 1."""
    if g.b == 0 or g.c == 0:
        # triangular: the eigenvalues are the diagonal entries, and their
        # ratio avoids the rounding of the quadratic formula
        lam = g.a / g.d
        return lam if abs(lam) >= 1 else g.d / g.a
    tr = g.trace
    root = cmath.sqrt(tr * tr - 4)
    mu = (tr + root) / 2
    if abs(mu) < 1:
        mu = (tr - root) / 2
    return mu * mu


def classify_element(g: MoebiusElement, eps: float = EPS) -> ElementClass:
    if is_identity(g, eps):
        return ElementClass("Identity")
    t2 = g.trace**2
    if abs(t2 - 4) <= eps:
        return ElementClass("Parabolic", boundary=(t2 != 4))
    if abs(t2.imag) <= eps and 0 <= t2.real < 4:
        # rotation by theta has trace 2 cos(theta / 2) up to sign
        c = min(1.0, math.sqrt(max(t2.real, 0.0)) / 2)
        return ElementClass("Elliptic", angle=2 * math.acos(c))
    return ElementClass("Loxodromic", multiplier=multiplier(g))


def _roots(g: MoebiusElement, eps: float):
    """Roots of c z^2 + (d - a) z - b on the extended plane."""
    a, b, c, d = g.entries()
    if abs(c) <= eps:
        if abs(d - a) <= eps:
            return [INFINITY]
        return [b / (d - a), INFINITY]
    disc = (a + d) ** 2 - 4
    if abs(disc) <= eps:
        return [(a - d) / (2 * c)]
    r = cmath.sqrt(disc)
    return [(a - d + r) / (2 * c), (a - d - r) / (2 * c)]


def _point_key(z):
    return (1, 0.0, 0.0) if z == INFINITY else (0, z.real, z.imag)


def fixed_points(g: MoebiusElement, eps: float = EPS) -> tuple:
    if is_identity(g, eps):
        raise IsIdentity("the identity fixes every point")
    pts = [z if z == INFINITY else complex(z.real + 0.0, z.imag + 0.0) for z in _roots(g, eps)]
    return tuple(sorted(pts, key=_point_key))


def chordal(z, w) -> float:
    """Chordal distance on the Riemann sphere."""
    if z == INFINITY and w == INFINITY:
        return 0.0
    if z == INFINITY:
        return 2 / math.sqrt(1 + abs(w) ** 2)
    if w == INFINITY:
        return 2 / math.sqrt(1 + abs(z) ** 2)
    return 2 * abs(z - w) / math.sqrt((1 + abs(z) ** 2) * (1 + abs(w) ** 2))


def conjugate(h: MoebiusElement, gens) -> list:
    hi = h.inverse()
    return [h @ g @ hi for g in gens]


# ---------------------------------------------------------------------------
# elementary groups


@dataclass(frozen=True)
class ElementaryInvariant:
    type: int  # 1 cyclic loxodromic, 2 cyclic parabolic, 3 rank-two parabolic
    lam: complex

    def close_to(self, other: "ElementaryInvariant", tol: float = 1e-6) -> bool:
        return self.type == other.type and abs(self.lam - other.lam) <= tol * max(1.0, abs(self.lam))

    def __str__(self):
        return f"({self.type}, {_fmt(self.lam)})"


def _same_set(xs, ys, tol) -> bool:
    if len(xs) != len(ys):
        return False
    return all(any(chordal(x, y) <= tol for y in ys) for x in xs)


def _to_infinity(p) -> MoebiusElement:
    """A map sending p to infinity."""
    if p == INFINITY:
        return identity()
    return moebius(0, 1, 1, -p)


def reduce_modular(lam: complex, eps: float = 1e-12) -> complex:
    """Move lam into the standard fundamental domain of the modular group:
    Im > 0, Re in (-1/2, 1/2], |lam| >= 1 (Re >= 0 on the unit circle)."""
    if lam.imag < 0:
        lam = -lam
    for _ in range(200):
        lam = complex(lam.real - math.floor(lam.real + 0.5), lam.imag)
        if lam.real <= -0.5 + eps:
            lam += 1
        if abs(lam) < 1 - eps:
            lam = -1 / lam
            continue
        break
    if abs(abs(lam) - 1) <= eps and lam.real < -eps:
        lam = -1 / lam
    if abs(abs(lam.real) - 0.5) <= eps:
        # both vertical edges are identified; keep the right one
        lam = complex(0.5, lam.imag)
    return lam


def _cross(u: complex, v: complex) -> float:
    return u.real * v.imag - u.imag * v.real


def lattice_basis(vectors, eps: float = 1e-9):
    """A reduced basis of the discrete subgroup of C generated by ``vectors``.

    Returns one vector for a rank-one group and two for rank two.
    """
    vs = [complex(v) for v in vectors if abs(v) > eps]
    if not vs:
        raise NotElementaryCompatible("no nontrivial translation")
    scale = max(abs(v) for v in vs)
    tol = eps * scale
    for _ in range(10000):
        vs.sort(key=abs)
        vs = [v for v in vs if abs(v) > tol]
        if len(vs) <= 1:
            break
        u = vs[0]
        indep = next((k for k in range(1, len(vs)) if abs(_cross(u, vs[k])) > tol * abs(vs[k])), None)
        if len(vs) == 2 and indep is not None:
            break
        changed = False
        for k in range(len(vs) - 1, 0, -1):
            v = vs[k]
            if indep is not None and k != indep:
                w = vs[indep]
                det = _cross(u, w)
                x = _cross(v, w) / det
                y = _cross(u, v) / det
                nv = v - round(x) * u - round(y) * w
            elif indep is None or k == indep:
                # reduce along u alone (rank one or Gauss step)
                t = (v * u.conjugate()).real / abs(u) ** 2
                nv = v - round(t) * u
            if abs(nv) < abs(v) - tol:
                vs[k] = nv
                changed = True
        if not changed:
            if indep is None:
                # all colinear: Euclid on real ratios has stalled, so the group is not discrete
                raise NotElementaryCompatible("translations are not commensurable")
            vs = [u, vs[indep]]
            break
    vs.sort(key=abs)
    if not vs or abs(vs[0]) < math.sqrt(eps) * scale:
        # Euclid ran down to rounding noise: the ratios look irrational
        raise NotElementaryCompatible("translations look incommensurable, the group would not be discrete")
    if len(vs) == 2:
        u, w = vs
        # Gauss reduction
        for _ in range(1000):
            if abs(w) < abs(u):
                u, w = w, u
            t = round((w * u.conjugate()).real / abs(u) ** 2)
            if t == 0:
                break
            w = w - t * u
    return vs


def elementary_invariant(gens, eps: float = EPS) -> ElementaryInvariant:
    els = [g for g in gens if not is_identity(g, eps)]
    if not els:
        raise NotElementaryCompatible("all generators are trivial")
    classes = [classify_element(g, eps) for g in els]
    for g, c in zip(els, classes):
        if c.kind == "Elliptic":
            raise TorsionDetected(f"elliptic generator with rotation angle {c.angle:.12g}")
    tol = math.sqrt(eps)
    fixed = [fixed_points(g, eps) for g in els]
    kinds = {c.kind for c in classes}
    if "Loxodromic" in kinds:
        if kinds != {"Loxodromic"}:
            raise NotElementaryCompatible("loxodromic and parabolic generators together")
        for f in fixed[1:]:
            if not _same_set(f, fixed[0], tol):
                raise NotElementaryCompatible("loxodromic generators with different fixed points")
        lams = [c.multiplier for c in classes]
        lam = min(lams, key=lambda z: (abs(math.log(abs(z))), -z.imag, z.real))
        return ElementaryInvariant(1, lam)
    p = fixed[0][0]
    for f in fixed[1:]:
        if chordal(f[0], p) > tol:
            raise NotElementaryCompatible("parabolic generators with different fixed points")
    h = _to_infinity(p)
    shifts = []
    for g in conjugate(h, els):
        shifts.append(g.b / g.d)
    basis = lattice_basis(shifts, eps)
    if len(basis) == 1:
        return ElementaryInvariant(2, 0j)
    u, w = basis
    return ElementaryInvariant(3, reduce_modular(w / u))


__all__ = [
    "EPS",
    "ElementClass",
    "ElementaryInvariant",
    "INFINITY",
    "MoebiusElement",
    "chordal",
    "classify_element",
    "conjugate",
    "dilation",
    "elementary_invariant",
    "fixed_points",
    "identity",
    "is_identity",
    "lattice_basis",
    "moebius",
    "multiplier",
    "reduce_modular",
    "rotation",
    "translation",
]
