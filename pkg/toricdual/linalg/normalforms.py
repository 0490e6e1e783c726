"""
Hermite and Smith normal forms over the integers, with unimodular transforms.

All routines work on object arrays of Python ints and return read-only
matrices built by :func:`toricdual.linalg.matrix.int_matrix`.
"""

from typing import Optional, Tuple

import numpy as np

from .matrix import IntMatrix, MatrixLike, identity, int_matrix, writable


def exgcd(a: int, b: int) -> np.ndarray:
    """
    Extended gcd as a unimodular matrix.

    Returns a 2x2 matrix ``M`` with determinant 1 such that
    ``M @ [a, b] == [g, 0]`` where ``g = gcd(a, b) >= 0``.
    """
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    if old_s * t - old_t * s < 0:
        s, t = -s, -t
    return np.array([[old_s, old_t], [s, t]], dtype=object)


def hnf(m: MatrixLike) -> Tuple[IntMatrix, IntMatrix]:
    """
    Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``h == u @ m``. Pivots of ``h``
    are positive, entries above a pivot lie in ``[0, pivot)`` and zero rows
    come last.
    """
    a = writable(m)
    rows, cols = a.shape
    u = identity(rows)
    pivot_row = 0
    for col in range(cols):
        if pivot_row == rows:
            break
        for i in range(pivot_row + 1, rows):
            if a[i, col] != 0:
                combine = exgcd(a[pivot_row, col], a[i, col])
                pair = [pivot_row, i]
                a[pair] = combine @ a[pair]
                u[pair] = combine @ u[pair]
        pivot = a[pivot_row, col]
        if pivot == 0:
            continue
        if pivot < 0:
            a[pivot_row] *= -1
            u[pivot_row] *= -1
            pivot = -pivot
        for i in range(pivot_row):
            q = a[i, col] // pivot
            if q:
                a[i] -= q * a[pivot_row]
                u[i] -= q * u[pivot_row]
        pivot_row += 1
    return int_matrix(a, cols=cols), int_matrix(u, cols=rows)


def _smallest_entry(a: np.ndarray, t: int) -> Optional[Tuple[int, int]]:
    rows, cols = a.shape
    best = None
    for i in range(t, rows):
        for j in range(t, cols):
            if a[i, j] != 0 and (best is None or abs(a[i, j]) < best[0]):
                best = (abs(a[i, j]), i, j)
    return None if best is None else (best[1], best[2])


def snf(m: MatrixLike) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """
    Smith normal form.

    Returns ``(s, u, v)`` with ``u`` and ``v`` unimodular and
    ``s == u @ m @ v``. The diagonal of ``s`` is nonnegative and each entry
    divides the next.
    """
    a = writable(m)
    rows, cols = a.shape
    u = identity(rows)
    v = identity(cols)
    for t in range(min(rows, cols)):
        position = _smallest_entry(a, t)
        if position is None:
            break
        while True:
            i, j = position
            if i != t:
                a[[t, i]] = a[[i, t]]
                u[[t, i]] = u[[i, t]]
            if j != t:
                a[:, [t, j]] = a[:, [j, t]]
                v[:, [t, j]] = v[:, [j, t]]
            pivot = a[t, t]
            clean = True
            for i in range(t + 1, rows):
                q = a[i, t] // pivot
                if q:
                    a[i] -= q * a[t]
                    u[i] -= q * u[t]
                if a[i, t] != 0:
                    clean = False
            for j in range(t + 1, cols):
                q = a[t, j] // pivot
                if q:
                    a[:, j] -= q * a[:, t]
                    v[:, j] -= q * v[:, t]
                if a[t, j] != 0:
                    clean = False
            if clean:
                stray = next(
                    (
                        i
                        for i in range(t + 1, rows)
                        for j in range(t + 1, cols)
                        if a[i, j] % pivot != 0
                    ),
                    None,
                )
                if stray is None:
                    break
                a[t] += a[stray]
                u[t] += u[stray]
            position = _smallest_entry(a, t)
        if a[t, t] < 0:
            a[t] *= -1
            u[t] *= -1
    return int_matrix(a, cols=cols), int_matrix(u, cols=rows), int_matrix(v, cols=cols)


def invariant_factors(m: MatrixLike) -> Tuple[int, ...]:
    """Nonzero diagonal entries of the Smith normal form."""
    s, _, _ = snf(m)
    return tuple(int(s[k, k]) for k in range(min(s.shape)) if s[k, k] != 0)


def kernel_basis(m: MatrixLike) -> IntMatrix:
    """
    Saturated basis of the integer kernel ``{x : m @ x == 0}``.

    The basis vectors are the columns of the returned matrix.
    """
    a = int_matrix(m)
    cols = a.shape[1]
    h, u = hnf(a.T)
    pivots = sum(1 for row in h if any(x != 0 for x in row))
    return int_matrix(u[pivots:].T, cols=cols - pivots)


def solve_integer(m: MatrixLike, b) -> Optional[Tuple[int, ...]]:
    """
    One integer solution of ``m @ x == b``, or ``None`` if there is none.

    Solved through the Smith form ``s == u @ m @ v``: with ``x == v @ y`` the
    system reads ``s @ y == u @ b``.
    """
    a = int_matrix(m)
    target = [int(x) for x in b]
    if len(target) != a.shape[0]:
        raise ValueError("Right-hand side does not match the row count")
    s, u, v = snf(a)
    rhs = u @ np.array(target, dtype=object) if target else np.array([], dtype=object)
    y = [0] * a.shape[1]
    for k, value in enumerate(rhs):
        diagonal = s[k, k] if k < min(s.shape) else 0
        if diagonal == 0:
            if value != 0:
                return None
            continue
        if value % diagonal != 0:
            return None
        y[k] = value // diagonal
    if a.shape[1] == 0:
        return ()
    x = v @ np.array(y, dtype=object)
    return tuple(int(entry) for entry in x)


def is_unimodular(m: MatrixLike) -> bool:
    from .matrix import det

    a = int_matrix(m)
    return a.shape[0] == a.shape[1] and abs(det(a)) == 1
