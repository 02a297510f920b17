"""Small dense tableau simplex with Bland's anti-cycling rule.

Only the form needed by redundancy removal is supported::

    maximize    c . y
    subject to  A y <= b,  y >= 0,  with b >= 0

so the slack basis is feasible and no phase one is needed.
"""

import numpy as np


class Unbounded(ArithmeticError):
    pass


def simplex_max(c, A, b, tol=1e-12, max_iter=10_000):
    """Solve ``max c.y s.t. A y <= b, y >= 0`` for ``b >= 0``.

    Args:
        c: objective, shape (k,).
        A: constraint matrix, shape (m, k).
        b: right-hand side, shape (m,), nonnegative.
        tol: pivot tolerance.
        max_iter: iteration cap (Bland's rule guarantees termination, the cap
            only guards against numerical breakdown).

    Returns:
        (optimum value, optimal y).

    Raises:
        Unbounded: if the objective is unbounded above.
        ValueError: if some b_i < 0.
    """
    c = np.asarray(c, dtype=float)
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float)
    m, k = A.shape
    if np.any(b < 0):
        raise ValueError("right-hand side must be nonnegative")

    # rows 0..m-1: [A | I | b]; last row: reduced costs [-c | 0 | 0]
    T = np.zeros((m + 1, k + m + 1))
    T[:m, :k] = A
    T[:m, k:k + m] = np.eye(m)
    T[:m, -1] = b
    T[m, :k] = -c
    basis = list(range(k, k + m))

    for _ in range(max_iter):
        entering = next((j for j in range(k + m) if T[m, j] < -tol), None)
        if entering is None:
            break
        col = T[:m, entering]
        best_ratio, leaving = np.inf, None
        for i in range(m):
            if col[i] > tol:
                ratio = T[i, -1] / col[i]
                # Bland: smallest ratio, ties broken by smallest basic index
                if ratio < best_ratio - tol or (
                    abs(ratio - best_ratio) <= tol and basis[i] < basis[leaving]
                ):
                    best_ratio, leaving = ratio, i
        if leaving is None:
            raise Unbounded("objective unbounded")
        T[leaving] /= T[leaving, entering]
        for i in range(m + 1):
            if i != leaving and T[i, entering] != 0.0:
                T[i] -= T[i, entering] * T[leaving]
        basis[leaving] = entering
    else:
        raise ArithmeticError("simplex iteration cap reached")

    y = np.zeros(k + m)
    for i, j in enumerate(basis):
        y[j] = T[i, -1]
    return T[m, -1], y[:k]
