"""
Exact integer and rational matrices.

Integer matrices are numpy arrays with ``dtype=object`` holding Python ints, so
arithmetic never overflows. Rational matrices hold ``sympy.Rational`` entries.
"""

from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from toricdual.utils.exceptions import DimensionMismatch, NotSquare

IntMatrix = np.ndarray
RatMatrix = np.ndarray
MatrixLike = Union[np.ndarray, Sequence[Sequence[int]], "sympy.Matrix"]


def _as_int(value) -> int:
    try:
        converted = int(value)
    except (TypeError, ValueError) as e:
        raise TypeError(f"Cannot interpret {value!r} as an integer") from e
    if converted != value:
        raise ValueError(f"{value!r} is not an integer")
    return converted


def _rows(data) -> List[list]:
    if hasattr(data, "tolist"):
        data = data.tolist()
    return [list(row) for row in data]


def int_matrix(data: MatrixLike, cols: Optional[int] = None) -> IntMatrix:
    """
    Build a read-only exact integer matrix.

    Parameters
    ----------
    data : array-like
        Nested rows of integer-valued entries.
    cols : int, optional
        Column count, only needed when ``data`` has no rows.

    Returns
    -------
    IntMatrix
        Two dimensional object array of Python ints.
    """
    if cols is None and isinstance(data, np.ndarray) and data.ndim == 2:
        cols = data.shape[1]
    rows = _rows(data)
    if rows:
        ncols = len(rows[0])
        if any(len(row) != ncols for row in rows):
            raise DimensionMismatch("Ragged rows cannot form a matrix")
    else:
        ncols = cols or 0
    out = np.empty((len(rows), ncols), dtype=object)
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            out[i, j] = _as_int(value)
    out.flags.writeable = False
    return out


def int_vector(data: Iterable) -> Tuple[int, ...]:
    return tuple(_as_int(x) for x in data)


def identity(n: int) -> np.ndarray:
    """Writable ``n x n`` identity of Python ints."""
    return np.eye(n, dtype=int).astype(object)


def writable(m: MatrixLike) -> np.ndarray:
    """Writable copy of ``m`` as an object array of Python ints."""
    return np.array(int_matrix(m), dtype=object)


def rat_matrix(data) -> RatMatrix:
    """Exact rational matrix with ``sympy.Rational`` entries."""
    rows = _rows(data)
    ncols = len(rows[0]) if rows else 0
    out = np.empty((len(rows), ncols), dtype=object)
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            entry = sympy.sympify(value)
            if not entry.is_Rational:
                raise ValueError(f"{value!r} is not rational")
            out[i, j] = sympy.Rational(entry)
    return out


def is_symmetric(m: MatrixLike) -> bool:
    a = int_matrix(m)
    return a.shape[0] == a.shape[1] and bool(np.all(a == a.T))


def det(m: MatrixLike) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    a = int_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise NotSquare(f"Determinant of a {a.shape[0]}x{a.shape[1]} matrix")
    if a.shape[0] == 0:
        return 1
    return int(sympy.Matrix(a.tolist()).det(method="bareiss"))


def rank(m: MatrixLike) -> int:
    from .normalforms import hnf

    h, _ = hnf(m)
    return sum(1 for row in h if any(x != 0 for x in row))


def rational_inverse(m: MatrixLike) -> RatMatrix:
    a = int_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise NotSquare(f"Inverse of a {a.shape[0]}x{a.shape[1]} matrix")
    if det(a) == 0:
        raise ValueError("Matrix is singular")
    return rat_matrix(sympy.Matrix(a.tolist()).inv().tolist())


def integer_inverse(m: MatrixLike) -> IntMatrix:
    """Inverse of a unimodular matrix."""
    a = int_matrix(m)
    if abs(det(a)) != 1:
        raise ValueError("Matrix is not unimodular")
    return int_matrix(rational_inverse(a))


def signature(g: MatrixLike) -> Tuple[int, int, int]:
    """
    Inertia ``(positive, negative, zero)`` of a symmetric integer matrix.

    Computed by congruence diagonalization over the rationals: pivot on a
    nonzero diagonal entry, or when the remaining diagonal vanishes, add a
    row and column with a nonzero off-diagonal entry to create one.
    """
    a = int_matrix(g)
    n = a.shape[0]
    if not is_symmetric(a):
        raise DimensionMismatch("Signature needs a symmetric square matrix")
    work = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            work[i, j] = sympy.Rational(a[i, j])

    active = list(range(n))
    positive = negative = 0
    while active:
        pivot = next((i for i in active if work[i, i] != 0), None)
        if pivot is None:
            pair = next(
                (
                    (i, j)
                    for i in active
                    for j in active
                    if i < j and work[i, j] != 0
                ),
                None,
            )
            if pair is None:
                break
            i, j = pair
            work[i, :] = work[i, :] + work[j, :]
            work[:, i] = work[:, i] + work[:, j]
            continue
        d = work[pivot, pivot]
        if d > 0:
            positive += 1
        else:
            negative += 1
        active.remove(pivot)
        if active:
            block = np.ix_(active, active)
            work[block] = work[block] - np.outer(
                work[active, pivot], work[pivot, active]
            ) / d
    return positive, negative, n - positive - negative
