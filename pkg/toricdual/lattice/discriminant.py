"""
Discriminant groups and discriminant quadratic forms of even lattices.

For a nondegenerate even lattice ``L`` the group ``A_L = L*/L`` carries the
quadratic form ``q(x) = x.x mod 2`` and the bilinear form ``b(x, y) = x.y mod 1``.
Generators come from the Smith form ``U G V = S``: the columns of ``V`` divided
by the invariant factors are a basis of ``L*`` adapted to ``L``.
"""

import math
from dataclasses import dataclass
from functools import reduce
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import sympy
from loguru import logger as log

from toricdual.linalg.normalforms import invariant_factors, snf
from toricdual.utils.exceptions import DegenerateLattice, OddLattice

from .lattice import IntLattice

Element = Tuple[int, ...]


def _mod(value, modulus: int) -> sympy.Rational:
    return sympy.Rational(value) % modulus


@dataclass(frozen=True)
class DiscriminantForm:
    """
    Finite quadratic form on ``Z/n_1 + ... + Z/n_k``.

    Attributes
    ----------
    orders : tuple of int
        Orders of the generators.
    values : tuple of tuples
        ``values[i][i]`` is ``q(g_i)`` in ``Q/2Z``; off-diagonal entries are
        ``b(g_i, g_j)`` in ``Q/Z``.
    """

    orders: Tuple[int, ...]
    values: Tuple[Tuple[sympy.Rational, ...], ...]

    @property
    def order(self) -> int:
        return reduce(lambda a, b: a * b, self.orders, 1)

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        if not self.orders:
            return ()
        diagonal = [
            [n if i == j else 0 for j in range(len(self.orders))]
            for i, n in enumerate(self.orders)
        ]
        return tuple(f for f in invariant_factors(diagonal) if f != 1)

    @property
    def length(self) -> int:
        """Minimal number of generators ``l(A)``."""
        return len(self.invariant_factors)

    def q(self, x: Sequence[int]) -> sympy.Rational:
        total = sympy.Integer(0)
        k = len(self.orders)
        for i in range(k):
            total += x[i] * x[i] * self.values[i][i]
            for j in range(i + 1, k):
                total += 2 * x[i] * x[j] * self.values[i][j]
        return _mod(total, 2)

    def b(self, x: Sequence[int], y: Sequence[int]) -> sympy.Rational:
        total = sympy.Integer(0)
        for i in range(len(self.orders)):
            for j in range(len(self.orders)):
                total += x[i] * y[j] * self.values[i][j]
        return _mod(total, 1)

    def elements(self) -> Iterator[Element]:
        return product(*(range(n) for n in self.orders))

    def element_order(self, x: Sequence[int]) -> int:
        return reduce(
            math.lcm, (n // math.gcd(c, n) for c, n in zip(x, self.orders)), 1
        )

    def add(self, x: Sequence[int], y: Sequence[int]) -> Element:
        return tuple((a + c) % n for a, c, n in zip(x, y, self.orders))

    def negate(self) -> "DiscriminantForm":
        """The form ``-q``."""
        k = len(self.orders)
        return DiscriminantForm(
            self.orders,
            tuple(
                tuple(_mod(-self.values[i][j], 2 if i == j else 1) for j in range(k))
                for i in range(k)
            ),
        )

    def direct_sum(self, other: "DiscriminantForm") -> "DiscriminantForm":
        k, m = len(self.orders), len(other.orders)
        zero = sympy.Integer(0)
        rows = [tuple(self.values[i]) + (zero,) * m for i in range(k)]
        rows += [(zero,) * k + tuple(other.values[i]) for i in range(m)]
        return DiscriminantForm(self.orders + other.orders, tuple(rows))

    def describe(self) -> Dict[str, List[str]]:
        return {
            "orders": [str(n) for n in self.orders],
            "q": [str(self.values[i][i]) for i in range(len(self.orders))],
        }


def discriminant_group(lattice: IntLattice) -> Tuple[int, ...]:
    """Nontrivial invariant factors of ``L*/L``."""
    if not lattice.is_nondegenerate:
        raise DegenerateLattice("The Gram matrix is singular")
    return lattice.invariant_factors


def discriminant_form(lattice: IntLattice) -> DiscriminantForm:
    """
    Discriminant quadratic form of an even nondegenerate lattice.

    Raises
    ------
    OddLattice
        If some basis vector has odd square.
    DegenerateLattice
        If the Gram matrix is singular.
    """
    if not lattice.is_even:
        raise OddLattice("Discriminant quadratic forms need an even lattice")
    if not lattice.is_nondegenerate:
        raise DegenerateLattice("The Gram matrix is singular")
    gram = lattice.gram
    s, _, v = snf(gram)
    generators = []
    orders = []
    for k in range(lattice.rank):
        if s[k, k] > 1:
            column = [sympy.Rational(v[r, k], s[k, k]) for r in range(lattice.rank)]
            generators.append(column)
            orders.append(int(s[k, k]))

    def pairing(x, y):
        return sum(
            x[r] * gram[r, c] * y[c]
            for r in range(lattice.rank)
            for c in range(lattice.rank)
            if x[r] != 0 and y[c] != 0
        )

    values = tuple(
        tuple(
            _mod(pairing(x, y), 2 if i == j else 1)
            for j, y in enumerate(generators)
        )
        for i, x in enumerate(generators)
    )
    return DiscriminantForm(tuple(orders), values)


def _isomorphism(
    source: DiscriminantForm, target: DiscriminantForm
) -> Optional[List[Element]]:
    k = len(source.orders)
    candidates = []
    for i in range(k):
        options = [
            y
            for y in target.elements()
            if target.element_order(y) == source.orders[i]
            and target.q(y) == source.values[i][i]
        ]
        if not options:
            return None
        candidates.append(options)

    images: List[Element] = []

    def extend(i: int) -> bool:
        if i == k:
            return _is_bijective(source, target, images)
        for y in candidates[i]:
            if all(
                target.b(images[j], y) == source.values[j][i] for j in range(i)
            ):
                images.append(y)
                if extend(i + 1):
                    return True
                images.pop()
        return False

    return list(images) if extend(0) else None


def _is_bijective(
    source: DiscriminantForm, target: DiscriminantForm, images: List[Element]
) -> bool:
    zero = tuple(0 for _ in target.orders)
    reached = set()
    for x in source.elements():
        y = zero
        for c, image in zip(x, images):
            for _ in range(c):
                y = target.add(y, image)
        reached.add(y)
    return len(reached) == target.order


def forms_isomorphic(a: DiscriminantForm, b: DiscriminantForm) -> bool:
    """
    Decide whether two finite quadratic forms are isomorphic.

    Generator images are searched with matching order, ``q`` value and
    pairwise ``b`` values; the resulting homomorphism must be bijective.
    """
    if a.order != b.order or a.invariant_factors != b.invariant_factors:
        return False
    if a.order == 1:
        return True
    found = _isomorphism(a, b)
    log.debug(f"discriminant form isomorphism: {found}")
    return found is not None
