"""Exact linear algebra over the integers and rationals."""

from .matrix import (
    IntMatrix,
    RatMatrix,
    det,
    identity,
    int_matrix,
    int_vector,
    integer_inverse,
    is_symmetric,
    rank,
    rat_matrix,
    rational_inverse,
    signature,
)
from .normalforms import (
    exgcd,
    hnf,
    invariant_factors,
    is_unimodular,
    kernel_basis,
    snf,
    solve_integer,
)
