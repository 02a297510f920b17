"""Newton polyhedra of monomial exponent sets, Newton numbers, indicators."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import exact
from .errors import EmptyInput
from .geometry import (
    CopolarBody,
    canonicalize,
    copolar_combination,
    covolume,
    hull_complete,
    support_value,
)


@dataclass(frozen=True)
class ExponentSet:
    """Finite set of nonzero multi-indices in ``Z^n_{>=0}``."""

    dim: int
    exponents: tuple

    def __post_init__(self):
        rows = tuple(sorted({tuple(int(c) for c in k) for k in self.exponents}))
        if not rows:
            raise EmptyInput("exponent set is empty")
        for k in rows:
            if len(k) != self.dim:
                raise ValueError(f"exponent {k} does not have dimension {self.dim}")
            if min(k) < 0:
                raise ValueError(f"exponent {k} has a negative entry")
            if not any(k):
                raise ValueError("the zero exponent is excluded")
        object.__setattr__(self, "exponents", rows)

    @classmethod
    def of(cls, exponents) -> ExponentSet:
        exponents = [tuple(k) for k in exponents]
        if not exponents:
            raise EmptyInput("exponent set is empty")
        return cls(len(exponents[0]), tuple(exponents))

    def __iter__(self):
        return iter(self.exponents)


@dataclass(frozen=True)
class NewtonNumber:
    """``n! Covol`` of a Newton polyhedron.

    ``exact`` is set when the planar rational path produced the value;
    ``integer`` holds the rounded value when it lies within 1e-9 of one.
    """

    value: float
    exact: bool
    integer: int | None


@dataclass(frozen=True)
class IndicatorWeights:
    """Weight vector ``b > 0`` of ``Phi_b(z) = max_k log|z_k| / b_k``."""

    b: tuple

    def __post_init__(self):
        if any(x <= 0 for x in self.b):
            raise ValueError("indicator weights must be strictly positive")

    def body(self) -> CopolarBody:
        """The cosimplex whose support function this indicator is."""
        return canonicalize(len(self.b), [self.b])

    def __call__(self, s) -> float:
        s = np.asarray(s, dtype=float)
        return float(np.max(s / np.asarray(self.b, dtype=float)))


def newton_polyhedron(A: ExponentSet) -> CopolarBody:
    """Irredundant H-representation of ``conv(A + R^n_+)``.

    Raises:
        NotCobounded: the complement is unbounded (infinite Newton number).
    """
    return hull_complete(A.dim, np.array(A.exponents, dtype=float), "positive")


def newton_number(A: ExponentSet) -> NewtonNumber:
    if A.dim == 2:
        value = 2 * exact.covolume(exact.hull_normals(A.exponents))
        integer = value.numerator if value.denominator == 1 else None
        return NewtonNumber(float(value), True, integer)
    value = math.factorial(A.dim) * covolume(newton_polyhedron(A))
    nearest = round(value)
    integer = int(nearest) if abs(value - nearest) <= 1e-9 else None
    return NewtonNumber(value, False, integer)


def indicator_eval(P: CopolarBody, s) -> float:
    """Convex image of the indicator of ``P``: its support function on ``R^n_-``."""
    return support_value(P, s)


def indicator_combination_mass(P0: CopolarBody, P1: CopolarBody, t: float):
    """Monge-Ampere masses ``n! Covol`` of the copolar combination and the endpoints."""
    f = math.factorial(P0.dim)
    return (
        f * covolume(copolar_combination(P0, P1, t)),
        f * covolume(P0),
        f * covolume(P1),
    )


def combined_weights(w0: IndicatorWeights, w1: IndicatorWeights, t: float) -> IndicatorWeights:
    """Weights of the copolar combination of two cosimplex indicators.

    The combination acts linearly on normals; equivalently the axis
    intercepts ``1 / c_k`` combine harmonically.
    """
    b0 = np.asarray(w0.b, dtype=float)
    b1 = np.asarray(w1.b, dtype=float)
    return IndicatorWeights(tuple(((1 - t) * b0 + t * b1).tolist()))
