"""Polyhedral calculus for cobounded complete convex sets in the positive orthant.

A cobounded body ``P`` is stored by its irredundant facet normals ``b_i > 0``::

    P = {a >= 0 : <a, b_i> >= 1 for all i}

and a set ``L = conv{p_i} + R^n_-`` in the negative orthant by its extreme
points ``p_i < 0``.  With facets normalized to right-hand side 1 the copolar
map between the two is a sign flip of the row data.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    DimensionOverflow,
    EmptyInput,
    Infeasible,
    NonPositiveNormal,
    NotCobounded,
    TOutOfRange,
)
from .lp import simplex_max
from .tolerance import ENUMERATION_BUDGET, EPS_P

__all__ = [
    "CopolarBody",
    "DualGenerators",
    "VertexSet",
    "canonicalize",
    "canonicalize_generators",
    "copolar_of_body",
    "copolar_of_dual",
    "vertex_enumeration",
    "hull_complete",
    "copolar_sum",
    "copolar_combination",
    "minkowski_combination",
    "multiplicative_combination",
    "covolume",
    "polytope_volume",
    "support_value",
    "body",
]


def _as_rows(points, dim=None) -> np.ndarray:
    X = np.array(points, dtype=float)
    if X.size == 0:
        return np.zeros((0, dim or 0))
    X = np.atleast_2d(X)
    if dim is not None and X.shape[1] != dim:
        raise DimensionMismatch(f"expected points of dimension {dim}, got {X.shape[1]}")
    return X


def _lexsorted(X: np.ndarray) -> np.ndarray:
    if len(X) == 0:
        return X
    return X[np.lexsort(X.T[::-1])]


def _rows_close(x, y, eps=EPS_P) -> bool:
    return bool(np.all(np.abs(x - y) <= eps * (1.0 + np.maximum(np.abs(x), np.abs(y)))))


def _dedupe(X: np.ndarray, eps=EPS_P) -> np.ndarray:
    """Drop rows close to an earlier kept row (first occurrence wins)."""
    if len(X) <= 1:
        return X
    A = np.abs(X)
    close = np.all(
        np.abs(X[:, None, :] - X[None, :, :]) <= eps * (1.0 + np.maximum(A[:, None, :], A[None, :, :])),
        axis=2,
    )
    keep = np.ones(len(X), dtype=bool)
    for i in range(1, len(X)):
        if np.any(close[i, :i] & keep[:i]):
            keep[i] = False
    return X[keep]


def _readonly(X: np.ndarray) -> np.ndarray:
    X = np.array(X, dtype=float)
    X.setflags(write=False)
    return X


@dataclass(frozen=True, eq=False)
class CopolarBody:
    """Canonical H-representation of a cobounded body.

    Instances are produced by :func:`canonicalize` (or the operations in this
    module); the constructor itself does not re-check irredundancy.  The full
    orthant is the body with no normals and ``full=True``.
    """

    dim: int
    normals: np.ndarray
    full: bool = False

    def __post_init__(self):
        object.__setattr__(self, "normals", _readonly(_as_rows(self.normals, self.dim)))

    @classmethod
    def full_orthant(cls, dim: int) -> CopolarBody:
        return cls(dim, np.zeros((0, dim)), full=True)

    @property
    def m(self) -> int:
        return len(self.normals)

    def contains(self, points, eps=EPS_P) -> np.ndarray:
        X = _as_rows(points, self.dim)
        inside = np.all(X >= -eps, axis=1)
        if self.m:
            inside &= np.all(X @ self.normals.T >= 1.0 - eps * (1.0 + np.abs(X).sum(1))[:, None], axis=1)
        return inside

    def scaled(self, lam: float) -> CopolarBody:
        """The body ``lam * P``."""
        if lam <= 0:
            raise ValueError("scale factor must be positive")
        if self.full:
            return self
        return CopolarBody(self.dim, _lexsorted(self.normals / lam))

    def allclose(self, other: CopolarBody, eps=EPS_P) -> bool:
        if self.dim != other.dim or self.full != other.full or self.m != other.m:
            return False
        return _rows_close(self.normals, other.normals, eps)

    def __repr__(self):
        if self.full:
            return f"CopolarBody(dim={self.dim}, full=True)"
        return f"CopolarBody(dim={self.dim}, normals={self.normals.tolist()})"


@dataclass(frozen=True, eq=False)
class DualGenerators:
    """V-representation ``L = conv(generators) + R^n_-`` of a set in UC_-.

    An empty generator list stands for the empty set, the copolar of the
    full orthant.
    """

    dim: int
    generators: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "generators", _readonly(_as_rows(self.generators, self.dim)))

    @property
    def empty(self) -> bool:
        return len(self.generators) == 0

    def contains(self, points, eps=EPS_P) -> np.ndarray:
        """Membership ``<v, s> <= -1`` for every vertex ``v`` of the copolar."""
        X = _as_rows(points, self.dim)
        if self.empty:
            return np.zeros(len(X), dtype=bool)
        normals = vertex_enumeration(copolar_of_dual(self)).vertices
        return np.all(X <= eps, axis=1) & np.all(
            X @ normals.T <= -1.0 + eps * (1.0 + np.abs(X).sum(1))[:, None], axis=1
        )

    def allclose(self, other: DualGenerators, eps=EPS_P) -> bool:
        if self.dim != other.dim or len(self.generators) != len(other.generators):
            return False
        return _rows_close(self.generators, other.generators, eps)

    def __repr__(self):
        return f"DualGenerators(dim={self.dim}, generators={self.generators.tolist()})"


@dataclass(frozen=True, eq=False)
class VertexSet:
    """Vertices of ``{x : G x >= h}`` with the indices of active constraints."""

    dim: int
    vertices: np.ndarray
    incidence: tuple
    G: np.ndarray = field(repr=False)
    h: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.vertices)


# ---------------------------------------------------------------------------
# canonical forms


def _is_redundant(i: int, B: np.ndarray, keep: list[int], eps: float) -> bool:
    others = [j for j in keep if j != i]
    if not others:
        return False
    # LP dual of  min <a, b_i>  s.t.  <a, b_j> >= 1, a >= 0
    value, _ = simplex_max(np.ones(len(others)), B[others].T, B[i])
    return value >= 1.0 - eps


def canonicalize(dim: int, raw_normals, eps=EPS_P) -> CopolarBody:
    """Irredundant, lexicographically sorted H-representation.

    Raises:
        EmptyInput: no normals given.
        NonPositiveNormal: a normal has a coordinate <= 0.
    """
    B = _as_rows(raw_normals, dim)
    if len(B) == 0:
        raise EmptyInput("at least one normal is required")
    for row in B:
        if np.any(row <= 0) or not np.all(np.isfinite(row)):
            raise NonPositiveNormal(
                f"normal {row.tolist()} is not strictly positive (infinite covolume)", row.tolist()
            )
    B = _dedupe(_lexsorted(B), eps)
    keep = list(range(len(B)))
    for i in range(len(B)):
        if _is_redundant(i, B, keep, eps):
            keep.remove(i)
    return CopolarBody(dim, B[keep])


def canonicalize_generators(dim: int, raw_generators, eps=EPS_P) -> DualGenerators:
    """Irredundant generators of ``conv(raw) + R^n_-``.

    A generator lies in the complete hull of the others exactly when the
    matching sign-flipped normal is redundant, so this reuses :func:`canonicalize`.
    """
    P = _as_rows(raw_generators, dim)
    if len(P) and np.any(P >= 0):
        bad = P[np.any(P >= 0, axis=1)][0]
        raise NotCobounded(f"generator {bad.tolist()} is not strictly negative", bad.tolist())
    return DualGenerators(dim, _lexsorted(-canonicalize(dim, -P, eps).normals))


def copolar_of_body(P: CopolarBody) -> DualGenerators:
    """``P° = conv{-b_i} + R^n_-``."""
    return DualGenerators(P.dim, _lexsorted(-P.normals))


def copolar_of_dual(L: DualGenerators) -> CopolarBody:
    """``L° = R^n_+ ∩ {<a, -p_i> >= 1}``; the empty set maps to the full orthant."""
    if L.empty:
        return CopolarBody.full_orthant(L.dim)
    return canonicalize(L.dim, -L.generators)


# ---------------------------------------------------------------------------
# vertex enumeration


def _enumerate(G: np.ndarray, h: np.ndarray, budget=ENUMERATION_BUDGET, eps=EPS_P):
    """Vertices of ``{x : G x >= h}`` by brute force over n-subsets of rows."""
    m, n = G.shape
    total = math.comb(m, n)
    if total > budget:
        raise DimensionOverflow(f"C({m}, {n}) = {total} subsets exceeds budget {budget}")
    if total == 0:
        return np.zeros((0, n)), ()
    combos = np.array(list(itertools.combinations(range(m), n)), dtype=np.intp)
    mats = G[combos]
    rhs = h[combos]
    row_norms = np.prod(np.linalg.norm(mats, axis=2), axis=1)
    ok = np.abs(np.linalg.det(mats)) > 1e-12 * row_norms
    if not np.any(ok):
        return np.zeros((0, n)), ()
    X = np.linalg.solve(mats[ok], rhs[ok][..., None])[..., 0]

    slack = X @ G.T - h
    scale = np.maximum(1.0, np.maximum(np.abs(h)[None, :], np.abs(X) @ np.abs(G).T))
    tol = eps * scale
    feasible = np.all(slack >= -tol, axis=1)
    X = X[feasible]

    verts = _lexsorted(_dedupe(X, eps)) if len(X) else np.zeros((0, n))
    slack = verts @ G.T - h
    scale = np.maximum(1.0, np.maximum(np.abs(h)[None, :], np.abs(verts) @ np.abs(G).T))
    active = np.abs(slack) <= eps * scale
    incidence = tuple(frozenset(np.flatnonzero(row).tolist()) for row in active)
    return verts, incidence


def _body_system(P: CopolarBody, extra_constraints=None):
    n = P.dim
    G = [P.normals, np.eye(n)]
    h = [np.ones(P.m), np.zeros(n)]
    if extra_constraints:
        for g, rhs in extra_constraints:
            G.append(np.asarray(g, dtype=float).reshape(1, n))
            h.append(np.array([float(rhs)]))
    return np.vstack(G), np.concatenate(h)


def vertex_enumeration(P: CopolarBody, extra_constraints=None, budget=ENUMERATION_BUDGET) -> VertexSet:
    """Vertices of ``P`` (optionally cut by extra halfspaces ``<g, x> >= rhs``).

    Constraint indices in the incidence sets are: normals first, then the
    coordinate constraints ``x_k >= 0``, then the extras in the given order.
    """
    G, h = _body_system(P, extra_constraints)
    verts, incidence = _enumerate(G, h, budget)
    return VertexSet(P.dim, verts, incidence, G, h)


# ---------------------------------------------------------------------------
# volumes


def _affine_dim(X: np.ndarray) -> int:
    if len(X) <= 1:
        return 0
    D = X[1:] - X[0]
    scale = max(1.0, float(np.abs(X).max()))
    return int(np.linalg.matrix_rank(D, tol=1e-9 * scale))


def _shoelace(V: np.ndarray) -> float:
    c = V.mean(axis=0)
    order = np.argsort(np.arctan2(V[:, 1] - c[1], V[:, 0] - c[0]))
    x, y = V[order, 0], V[order, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def _triangulate(V: np.ndarray, incidence, face: frozenset, d: int, memo: dict) -> list:
    """Simplices (as vertex-index tuples) covering the d-dimensional face."""
    key = face
    if key in memo:
        return memo[key]
    members = sorted(face)
    if d == 0:
        memo[key] = [(members[0],)]
        return memo[key]
    apex = members[0]
    constraints = set().union(*(incidence[v] for v in members))
    candidates = set()
    for c in constraints:
        sub = frozenset(v for v in members if c in incidence[v])
        if sub != face and apex not in sub and len(sub) >= d:
            candidates.add(sub)
    subfaces = [sub for sub in candidates if _affine_dim(V[sorted(sub)]) == d - 1]
    simplices = []
    for sub in subfaces:
        for s in _triangulate(V, incidence, sub, d - 1, memo):
            simplices.append((apex,) + s)
    memo[key] = simplices
    return simplices


def polytope_volume(vs: VertexSet) -> float:
    """Volume of the bounded polytope described by a :class:`VertexSet`.

    2D uses the shoelace formula; higher dimensions cone every facet from one
    vertex recursively and sum simplex determinants.
    """
    V = vs.vertices
    n = vs.dim
    if len(V) <= n or _affine_dim(V) < n:
        return 0.0
    if n == 1:
        return float(V.max() - V.min())
    if n == 2:
        return _shoelace(V)
    simplices = _triangulate(V, vs.incidence, frozenset(range(len(V))), n, {})
    S = np.array(simplices, dtype=np.intp)
    edges = V[S[:, 1:]] - V[S[:, :1]]
    return float(np.abs(np.linalg.det(edges)).sum() / math.factorial(n))


def covolume(P: CopolarBody) -> float:
    """``Vol(R^n_+ \\ P)``.

    The complement is star-shaped from the origin and bounded by the facets
    of ``P`` with positive normals, so it is the union of the cones from the
    origin over those facets.  Each facet is triangulated and every simplex
    contributes ``|det| / n!``.
    """
    if P.full:
        return 0.0
    n = P.dim
    if n == 1:
        return float(1.0 / P.normals[0, 0])
    vs = vertex_enumeration(P)
    V = vs.vertices
    memo: dict = {}
    total = 0.0
    for i in range(P.m):
        face = frozenset(k for k, inc in enumerate(vs.incidence) if i in inc)
        if len(face) < n or _affine_dim(V[sorted(face)]) < n - 1:
            continue
        S = np.array(_triangulate(V, vs.incidence, face, n - 1, memo), dtype=np.intp)
        total += float(np.abs(np.linalg.det(V[S])).sum())
    return total / math.factorial(n)


def _covolume_by_box(P: CopolarBody) -> float:
    """``M^n - Vol(P ∩ [0, M]^n)`` with ``M = max 1 / b_ik``; a cross-check."""
    if P.full:
        return 0.0
    n = P.dim
    M = float(np.max(1.0 / P.normals))
    box = [(-np.eye(n)[k], -M) for k in range(n)]
    inner = polytope_volume(vertex_enumeration(P, box))
    return max(M**n - inner, 0.0)


# ---------------------------------------------------------------------------
# support functions


def support_value(obj, x) -> float:
    """Support function ``h(x) = sup <x, y>`` over the body or dual set.

    Outside its effective domain (closed negative orthant for a body, closed
    positive orthant for a dual set) the value is ``+inf``.
    """
    x = np.asarray(x, dtype=float)
    if isinstance(obj, CopolarBody):
        if np.any(x > 0):
            return math.inf
        V = vertex_enumeration(obj).vertices
        return float(np.max(V @ x))
    if isinstance(obj, DualGenerators):
        if np.any(x < 0):
            return math.inf
        if obj.empty:
            return -math.inf
        return float(np.max(obj.generators @ x))
    raise TypeError(f"unsupported object {type(obj).__name__}")


# ---------------------------------------------------------------------------
# complete hulls


def _snap(X: np.ndarray, reference: np.ndarray, eps=EPS_P) -> np.ndarray:
    out = X.copy()
    for i, row in enumerate(X):
        for ref in reference:
            if _rows_close(row, ref, 1e3 * eps):
                out[i] = ref
                break
    return out


def _complete_hull_negative(dim: int, points: np.ndarray, need_generators: bool):
    """Facet normals and extreme points of ``conv(points) + R^n_-``.

    Step one enumerates the vertices of the copolar ``{a >= 0 : <a, -p> >= 1}``;
    these are the facet normals.  Step two enumerates the vertices of the
    mirrored set cut out by those normals, recovering the extreme points.
    """
    C = -points
    if np.any(np.all(np.abs(C) <= EPS_P, axis=1)):
        raise Infeasible("the origin cannot be a hull point")
    C = C[~_dominated_rows(C)]
    G = np.vstack([C, np.eye(dim)])
    h = np.concatenate([np.ones(len(C)), np.zeros(dim)])
    normals, _ = _enumerate(G, h)
    if not need_generators:
        return normals, None
    G2 = np.vstack([normals, np.eye(dim)])
    h2 = np.concatenate([np.ones(len(normals)), np.zeros(dim)])
    extremes, _ = _enumerate(G2, h2)
    return normals, -_snap(extremes, C)


def _dominated_rows(X: np.ndarray) -> np.ndarray:
    """Rows that are >= some other row coordinatewise (the first of equal rows survives)."""
    tol = EPS_P * (1.0 + np.abs(X))
    diff = X[:, None, :] - X[None, :, :]
    ge = np.all(diff >= -tol[None, :, :], axis=2)
    eq = np.all(np.abs(diff) <= tol[None, :, :], axis=2)
    earlier = np.tril(np.ones((len(X), len(X)), dtype=bool), -1)
    beats = ge & (~eq | earlier)
    np.fill_diagonal(beats, False)
    return beats.any(axis=1)


def hull_complete(dim: int, points, cone: str = "positive"):
    """Irredundant representation of ``conv(points) + cone``.

    ``cone="positive"`` returns a :class:`CopolarBody` for points in the
    closed positive orthant (points with zero coordinates are allowed);
    ``cone="negative"`` returns :class:`DualGenerators`.

    Raises:
        EmptyInput: no points.
        Infeasible: a point is the origin.
        NotCobounded: some facet normal (positive) or extreme point (negative)
            has a zero coordinate.
    """
    X = _as_rows(points, dim)
    if len(X) == 0:
        raise EmptyInput("at least one point is required")
    if cone == "positive":
        if np.any(X < -EPS_P):
            raise ValueError("positive-cone points must lie in the closed positive orthant")
        normals, _ = _complete_hull_negative(dim, -np.clip(X, 0.0, None), need_generators=False)
        scale = np.abs(normals).max(axis=1, keepdims=True)
        degenerate = np.any(normals <= EPS_P * scale, axis=1)
        if np.any(degenerate):
            bad = normals[degenerate][0]
            raise NotCobounded(
                f"facet normal {bad.tolist()} has a zero coordinate: complement is unbounded",
                bad.tolist(),
            )
        return canonicalize(dim, normals)
    if cone == "negative":
        if np.any(X > EPS_P):
            raise ValueError("negative-cone points must lie in the closed negative orthant")
        _, gens = _complete_hull_negative(dim, np.clip(X, None, 0.0), need_generators=True)
        if np.any(gens >= 0):
            bad = gens[np.any(gens >= 0, axis=1)][0]
            raise NotCobounded(f"extreme point {bad.tolist()} has a zero coordinate", bad.tolist())
        return DualGenerators(dim, _lexsorted(gens))
    raise ValueError(f"unknown cone {cone!r}")


# ---------------------------------------------------------------------------
# combinations


def _check_pair(P: CopolarBody, Q: CopolarBody):
    if P.dim != Q.dim:
        raise DimensionMismatch(f"dimensions differ: {P.dim} vs {Q.dim}")


def _check_t(t: float):
    if not 0.0 <= t <= 1.0:
        raise TOutOfRange(f"t = {t} is outside [0, 1]")


def copolar_sum(P: CopolarBody, Q: CopolarBody) -> CopolarBody:
    """``P ⊕ Q = (P° + Q°)°``: normals are all pairwise sums ``b_i + c_j``."""
    _check_pair(P, Q)
    if P.full or Q.full:
        return CopolarBody.full_orthant(P.dim)
    sums = (P.normals[:, None, :] + Q.normals[None, :, :]).reshape(-1, P.dim)
    return canonicalize(P.dim, sums)


def copolar_combination(P0: CopolarBody, P1: CopolarBody, t: float) -> CopolarBody:
    """``((1-t) P0° + t P1°)°`` with normals ``(1-t) b_i + t c_j``."""
    _check_pair(P0, P1)
    _check_t(t)
    if t == 0.0:
        return P0
    if t == 1.0:
        return P1
    if P0.full or P1.full:
        return CopolarBody.full_orthant(P0.dim)
    mix = ((1.0 - t) * P0.normals[:, None, :] + t * P1.normals[None, :, :]).reshape(-1, P0.dim)
    return canonicalize(P0.dim, mix)


def minkowski_combination(P0: CopolarBody, P1: CopolarBody, t: float) -> CopolarBody:
    """Minkowski combination ``(1-t) P0 + t P1``.

    Both recession cones are the positive orthant, so the result is the
    complete hull of the pairwise combinations of vertices.
    """
    _check_pair(P0, P1)
    _check_t(t)
    if t == 0.0:
        return P0
    if t == 1.0:
        return P1
    if P0.full and P1.full:
        return P0
    V0 = vertex_enumeration(P0).vertices
    V1 = vertex_enumeration(P1).vertices
    cand = ((1.0 - t) * V0[:, None, :] + t * V1[None, :, :]).reshape(-1, P0.dim)
    return hull_complete(P0.dim, cand, "positive")


def multiplicative_combination(L0: DualGenerators, L1: DualGenerators, t: float) -> DualGenerators:
    """Minkowski combination ``(1-t) L0 + t L1`` on the negative side.

    This is the logarithmic image of the multiplicative combination of the
    Reinhardt compacts ``Exp(L0)`` and ``Exp(L1)``.
    """
    if L0.dim != L1.dim:
        raise DimensionMismatch(f"dimensions differ: {L0.dim} vs {L1.dim}")
    _check_t(t)
    if t == 0.0:
        return L0
    if t == 1.0:
        return L1
    cand = ((1.0 - t) * L0.generators[:, None, :] + t * L1.generators[None, :, :]).reshape(-1, L0.dim)
    return hull_complete(L0.dim, cand, "negative")


def body(normals: Sequence[Sequence[float]]) -> CopolarBody:
    """Shorthand: canonical body from a list of normals."""
    X = _as_rows(normals)
    return canonicalize(X.shape[1], X)
