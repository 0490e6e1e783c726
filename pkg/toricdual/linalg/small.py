"""Fixed-size helpers for lattice vectors in three dimensions."""

from typing import Sequence, Tuple

Vector3 = Tuple[int, int, int]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def cross(u: Sequence, v: Sequence) -> tuple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def det3(a: Sequence, b: Sequence, c: Sequence):
    """Determinant of the matrix with columns ``a``, ``b``, ``c``."""
    return dot(a, cross(b, c))


def apply3(m: Sequence[Sequence[int]], v: Sequence) -> tuple:
    """Matrix-vector product for a 3x3 matrix given as rows."""
    return tuple(dot(row, v) for row in m)


def adjugate3(a: Sequence, b: Sequence, c: Sequence) -> Tuple[tuple, tuple, tuple]:
    """
    Adjugate of the matrix with columns ``a``, ``b``, ``c``, as rows.

    Row ``k`` is the covector pairing to ``det`` with column ``k`` and to zero
    with the other two columns.
    """
    return cross(b, c), cross(c, a), cross(a, b)


def dual_covectors(a: Sequence, b: Sequence, c: Sequence) -> Tuple[tuple, tuple, tuple]:
    """Rows of the inverse of a unimodular matrix with columns ``a``, ``b``, ``c``."""
    d = det3(a, b, c)
    if d not in (1, -1):
        raise ValueError(f"Columns are not a lattice basis (det={d})")
    return tuple(tuple(x * d for x in row) for row in adjugate3(a, b, c))
