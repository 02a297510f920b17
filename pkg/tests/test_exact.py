from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from copolar import exact
from copolar import canonicalize, covolume, minkowski_combination, vertex_enumeration
from copolar.errors import EmptyInput, Infeasible, NonPositiveNormal, NotCobounded, TOutOfRange

F = Fraction


def test_rational_parsing():
    assert exact.rational("1/3") == F(1, 3)
    assert exact.rational(0.5) == F(1, 2)
    assert exact.rational(2) == F(2)


def test_worked_example_exact():
    P0, P1 = [("1/3", 1)], [(1, "1/3")]
    assert exact.covolume(P0) == F(3, 2)
    assert exact.covolume(P1) == F(3, 2)
    mix = exact.copolar_combination(P0, P1, "1/2")
    assert mix == [(F(2, 3), F(2, 3))]
    assert exact.covolume(mix) == F(9, 8)
    V = exact.minkowski_vertices(P0, P1, "1/2")
    assert V == [(0, 2), (F(1, 2), F(1, 2)), (2, 0)]
    assert exact.covolume(exact.hull_normals(V)) == 1


def test_vertices_and_canonicalize():
    assert exact.vertices([(1, 1)]) == [(0, 1), (1, 0)]
    assert exact.canonicalize([(1, 1), (2, 2)]) == [(1, 1)]
    assert exact.canonicalize([("1/3", 1), (1, "1/3")]) == [(F(1, 3), 1), (1, F(1, 3))]


def test_shoelace_by_hand():
    # complement of {a/2 + b >= 1, a + b/2 >= 1}: quadrilateral (0,0),(2,0),(2/3,2/3),(0,2)
    assert exact.covolume([("1/2", 1), (1, "1/2")]) == F(4, 3)


def test_hull_normals():
    assert exact.hull_normals([(2, 0), (0, 3)]) == [(F(1, 2), F(1, 3))]
    with pytest.raises(NotCobounded):
        exact.hull_normals([(2, 2)])
    with pytest.raises(Infeasible):
        exact.hull_normals([(0, 0)])
    with pytest.raises(EmptyInput):
        exact.hull_normals([])


def test_errors():
    with pytest.raises(NonPositiveNormal):
        exact.covolume([(0, 1)])
    with pytest.raises(TOutOfRange):
        exact.copolar_combination([(1, 1)], [(1, 1)], 2)
    with pytest.raises(ValueError):
        exact.vertices([(1, 1, 1)])


@given(st.lists(st.tuples(st.integers(1, 12), st.integers(1, 12)), min_size=1, max_size=5),
       st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_float_path_agrees_with_exact(rows, denom):
    normals = [(F(a, denom * 4), F(b, denom * 4)) for a, b in rows]
    P = canonicalize(2, [[float(x) for x in r] for r in normals])
    assert abs(covolume(P) - float(exact.covolume(normals))) <= 1e-12
    ref = [tuple(float(x) for x in v) for v in exact.vertices(exact.canonicalize(normals))]
    np.testing.assert_allclose(vertex_enumeration(P).vertices, ref, atol=1e-12)


@given(st.lists(st.tuples(st.integers(1, 9), st.integers(1, 9)), min_size=1, max_size=3),
       st.lists(st.tuples(st.integers(1, 9), st.integers(1, 9)), min_size=1, max_size=3))
@settings(max_examples=40, deadline=None)
def test_minkowski_float_vs_exact(r0, r1):
    n0 = [(F(a, 4), F(b, 4)) for a, b in r0]
    n1 = [(F(a, 4), F(b, 4)) for a, b in r1]
    Pm = minkowski_combination(canonicalize(2, [[float(x) for x in r] for r in n0]),
                               canonicalize(2, [[float(x) for x in r] for r in n1]), 0.5)
    ref = exact.covolume(exact.hull_normals(exact.minkowski_vertices(n0, n1, "1/2")))
    assert abs(covolume(Pm) - float(ref)) <= 1e-12
