"""Exact rational arithmetic for planar bodies.

Everything here works on tuples of :class:`fractions.Fraction` and shares no
code with the floating-point path, so it doubles as an oracle for it.  The
covolume is the shoelace area of the complement polygon bounded by the axes
and the boundary chain of the body.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import EmptyInput, Infeasible, NonPositiveNormal, NotCobounded, TOutOfRange


def rational(x) -> Fraction:
    """Parse ``"1/3"``, ints, floats or Fractions."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    return Fraction(x)


def _rows(points):
    rows = [tuple(rational(c) for c in p) for p in points]
    if any(len(r) != 2 for r in rows):
        raise ValueError("the exact path is planar only")
    return rows


def _intersect(c1, c2):
    (g1, h1), (g2, h2) = c1, c2
    det = g1[0] * g2[1] - g1[1] * g2[0]
    if det == 0:
        return None
    return ((h1 * g2[1] - h2 * g1[1]) / det, (g1[0] * h2 - g2[0] * h1) / det)


def vertices(normals):
    """Vertices of ``{a >= 0 : <a, b> >= 1}`` for nonnegative rows ``b``, sorted by ``a_1``."""
    cons = [(b, Fraction(1)) for b in _rows(normals)]
    cons += [((Fraction(1), Fraction(0)), Fraction(0)), ((Fraction(0), Fraction(1)), Fraction(0))]
    found = set()
    for c1, c2 in combinations(cons, 2):
        p = _intersect(c1, c2)
        if p is not None and all(g[0] * p[0] + g[1] * p[1] >= h for g, h in cons):
            found.add(p)
    return sorted(found)


def canonicalize(normals):
    """Irredundant normals: a normal survives iff its line carries an edge."""
    rows = sorted(set(_rows(normals)))
    if not rows:
        raise EmptyInput("at least one normal is required")
    for b in rows:
        if b[0] <= 0 or b[1] <= 0:
            raise NonPositiveNormal(f"normal {b} is not strictly positive", b)
    V = vertices(rows)
    return [b for b in rows if sum(1 for v in V if b[0] * v[0] + b[1] * v[1] == 1) >= 2]


def covolume(normals) -> Fraction:
    """Area of the complement of the body in the closed quadrant."""
    chain = sorted(vertices(canonicalize(normals)), reverse=True)
    poly = [(Fraction(0), Fraction(0))] + chain
    twice = sum(
        poly[i][0] * poly[(i + 1) % len(poly)][1] - poly[(i + 1) % len(poly)][0] * poly[i][1]
        for i in range(len(poly))
    )
    return abs(twice) / 2


def copolar_combination(normals0, normals1, t):
    t = rational(t)
    if not 0 <= t <= 1:
        raise TOutOfRange(f"t = {t} is outside [0, 1]")
    mix = [
        tuple((1 - t) * b[k] + t * c[k] for k in range(2))
        for b in _rows(normals0)
        for c in _rows(normals1)
    ]
    return canonicalize(mix)


def minkowski_vertices(normals0, normals1, t):
    """Vertices of ``(1-t) P0 + t P1``."""
    t = rational(t)
    V0 = vertices(canonicalize(normals0))
    V1 = vertices(canonicalize(normals1))
    cand = [tuple((1 - t) * v[k] + t * w[k] for k in range(2)) for v in V0 for w in V1]
    return vertices(hull_normals(cand))


def hull_normals(points):
    """Facet normals of ``conv(points) + R^2_+`` (exact, zero coordinates allowed)."""
    pts = _rows(points)
    if not pts:
        raise EmptyInput("at least one point is required")
    if any(p == (0, 0) for p in pts):
        raise Infeasible("the origin cannot be a hull point")
    W = vertices(pts)
    for w in W:
        if w[0] == 0 or w[1] == 0:
            raise NotCobounded(f"facet normal {w} has a zero coordinate", w)
    return canonicalize(W)
