"""
Primitive embeddings into the K3 lattice and lattice-duality checks.

The K3 lattice ``U^3 + E8^2`` is even unimodular of signature ``(3, 19)``.
An even lattice ``S`` of signature ``(t_+, t_-)`` embeds primitively when
``t_+ <= 3``, ``t_- <= 19`` and ``22 - rank(S) > l(A_S)``. Two such lattices
are mutual orthogonal complements when their discriminant forms are
anti-isometric and their ranks and signatures add up to those of the K3
lattice.
"""

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import List, Optional, Tuple, Union

import numpy as np
from loguru import logger as log

from toricdual.linalg.matrix import IntMatrix, det, int_matrix
from toricdual.linalg.normalforms import kernel_basis, solve_integer
from toricdual.utils.exceptions import DimensionMismatch, InvariantViolation, OddLattice

from .discriminant import discriminant_form, forms_isomorphic
from .lattice import IntLattice
from .named import U_GRAM, NamedLatticeExpr, root_gram

K3_RANK = 22
K3_SIGNATURE = (3, 19)


@dataclass(frozen=True)
class NikulinReport:
    """Outcome of the primitive-embedding criterion for the K3 lattice."""

    t_plus: int
    t_minus: int
    rank: int
    length: int
    even: bool

    @property
    def positive_room(self) -> int:
        return K3_SIGNATURE[0] - self.t_plus

    @property
    def negative_room(self) -> int:
        return K3_SIGNATURE[1] - self.t_minus

    @property
    def corank(self) -> int:
        return K3_RANK - self.rank

    @property
    def conditions(self) -> List[Tuple[str, bool]]:
        return [
            (f"3-t_+={self.positive_room} >= 0", self.positive_room >= 0),
            (f"19-t_-={self.negative_room} >= 0", self.negative_room >= 0),
            (f"22-rank={self.corank} > l(A)={self.length}", self.corank > self.length),
        ]

    @property
    def passed(self) -> bool:
        return self.even and all(ok for _, ok in self.conditions)

    def __bool__(self) -> bool:
        return self.passed

    def summary(self) -> str:
        """Compact line such as ``19-t_-=10, 3-t_+=2, 12>1``."""
        relation = ">" if self.corank > self.length else "<="
        return (
            f"19-t_-={self.negative_room}, 3-t_+={self.positive_room}, "
            f"{self.corank}{relation}{self.length}"
        )


def nikulin_primitive_check(lattice: IntLattice) -> NikulinReport:
    """Sufficient criterion for a unique primitive embedding into the K3 lattice."""
    t_plus, t_minus = lattice.signature
    length = len(lattice.invariant_factors) if lattice.is_nondegenerate else 0
    report = NikulinReport(
        t_plus=t_plus,
        t_minus=t_minus,
        rank=lattice.rank,
        length=length,
        even=lattice.is_even,
    )
    log.debug(f"Nikulin criterion: {report.summary()} -> {report.passed}")
    return report


def orthogonal_pair_check(s: IntLattice, t: IntLattice) -> bool:
    """
    True iff ``s`` and ``t`` are orthogonal complements of each other in the
    K3 lattice.

    Both must be even and pass the embedding criterion, have ranks summing to
    22 and signatures summing to ``(3, 19)``, and satisfy ``q_s = -q_t``.
    """
    if not (s.is_even and t.is_even):
        log.debug("orthogonal pair rejected: odd lattice")
        return False
    if not (nikulin_primitive_check(s) and nikulin_primitive_check(t)):
        log.debug("orthogonal pair rejected: no primitive embedding")
        return False
    if s.rank + t.rank != K3_RANK:
        return False
    if tuple(a + b for a, b in zip(s.signature, t.signature)) != K3_SIGNATURE:
        return False
    if not (s.is_nondegenerate and t.is_nondegenerate):
        return False
    return forms_isomorphic(discriminant_form(s), discriminant_form(t).negate())


@dataclass(frozen=True)
class BasisCertificate:
    """
    Change of basis ``P`` whose columns express a basis adapted to a named
    lattice in the coordinates of a Picard basis.
    """

    source: str
    matrix: IntMatrix
    target: NamedLatticeExpr
    labels: Tuple[str, ...] = field(default=())


def certificate_gram(lattice: IntLattice, cert: BasisCertificate) -> IntMatrix:
    p = int_matrix(cert.matrix)
    if p.shape[0] != lattice.rank:
        raise DimensionMismatch(
            f"Certificate has {p.shape[0]} rows, lattice rank is {lattice.rank}"
        )
    return int_matrix(p.T @ lattice.gram @ p, cols=p.shape[1])


def verify_certificate(lattice: IntLattice, cert: BasisCertificate) -> bool:
    """True iff ``P^T G P`` equals the target Gram matrix and ``|det P| = 1``."""
    p = int_matrix(cert.matrix)
    transformed = certificate_gram(lattice, cert)
    target = cert.target.gram()
    if p.shape[0] != p.shape[1] or transformed.shape != target.shape:
        return False
    return bool(np.array_equal(transformed, target)) and abs(det(p)) == 1


def _connected_order(target: IntMatrix) -> List[int]:
    n = target.shape[0]
    order: List[int] = []
    for root in range(n):
        if root in order:
            continue
        queue = [root]
        order.append(root)
        while queue:
            i = queue.pop(0)
            for j in range(n):
                if j not in order and target[i, j] != 0:
                    order.append(j)
                    queue.append(j)
    return order


def align_certificate(
    lattice: IntLattice, cert: BasisCertificate
) -> Optional[BasisCertificate]:
    """
    Reorder and re-sign the columns of a certificate so that it verifies.

    Transcribed bases often list the simple roots of a summand in another
    node order or with the opposite sign convention. Target nodes are visited
    in breadth-first order; each is matched with an unused column of equal
    square whose pairings with the columns already placed agree up to sign.
    The sign of a column is forced by its first nonzero pairing. Returns
    ``None`` when no reordering works.
    """
    p = int_matrix(cert.matrix)
    target = cert.target.gram()
    if p.shape[0] != p.shape[1] or p.shape[1] != target.shape[0]:
        return None
    if abs(det(p)) != 1:
        return None
    source = certificate_gram(lattice, cert)
    n = target.shape[0]
    order = _connected_order(target)
    chosen: dict = {}
    signs: dict = {}

    def extend(position: int) -> bool:
        if position == n:
            return True
        i = order[position]
        used = set(chosen.values())
        for c in range(n):
            if c in used or source[c, c] != target[i, i]:
                continue
            sign = None
            consistent = True
            for j, cj in chosen.items():
                value, expected = source[cj, c], target[j, i]
                if abs(value) != abs(expected):
                    consistent = False
                    break
                if expected != 0:
                    forced = 1 if signs[j] * value == expected else -1
                    if sign is not None and sign != forced:
                        consistent = False
                        break
                    sign = forced
            if not consistent:
                continue
            chosen[i], signs[i] = c, sign or 1
            if extend(position + 1):
                return True
            del chosen[i], signs[i]
        return False

    if not extend(0):
        return None
    columns = [[signs[i] * x for x in p[:, chosen[i]]] for i in range(n)]
    labels = cert.labels
    if len(labels) == n:
        labels = tuple(
            ("-" if signs[i] < 0 else "") + labels[chosen[i]] for i in range(n)
        )
    aligned = BasisCertificate(
        source=cert.source,
        matrix=int_matrix(np.array(columns, dtype=object).T),
        target=cert.target,
        labels=labels,
    )
    log.debug(f"certificate for {cert.target} aligned by {chosen}")
    return aligned if verify_certificate(lattice, aligned) else None


def invariants_match(lattice: IntLattice, expr: Union[str, NamedLatticeExpr]) -> bool:
    """
    Compare rank, signature, discriminant and discriminant form with a named
    lattice. For even lattices with ``rank >= 3 + l(A)`` and indefinite
    signature this determines the isometry class.
    """
    if isinstance(expr, str):
        expr = NamedLatticeExpr.parse(expr)
    other = expr.lattice()
    if (lattice.rank, lattice.signature, lattice.discriminant) != (
        other.rank,
        other.signature,
        other.discriminant,
    ):
        return False
    if lattice.is_even != other.is_even:
        return False
    if not lattice.is_even or not lattice.is_nondegenerate:
        return lattice.invariant_factors == other.invariant_factors
    return forms_isomorphic(discriminant_form(lattice), discriminant_form(other))


def _coefficient_grid(size: int, bound: int) -> np.ndarray:
    values = [c for c in range(-bound, bound + 1) if c != 0]
    grid = np.array(list(product(values, repeat=size)), dtype=np.int64)
    # e and -e are equivalent
    grid = grid[grid[:, 0] > 0]
    order = np.lexsort(
        tuple(grid[:, k] for k in reversed(range(size)))
        + (np.abs(grid).sum(axis=1), np.abs(grid).max(axis=1))
    )
    return grid[order]


def find_isotropic(
    lattice: IntLattice,
    bound: int = 5,
    max_support: int = 4,
    split_ready: bool = False,
) -> Optional[Tuple[int, ...]]:
    """
    Bounded search for a primitive vector ``e`` with ``e.e = 0``.

    Candidates have at most ``max_support`` nonzero coordinates, each in
    ``[-bound, bound]``, and are tried by support size, then by size of the
    coefficients. With ``split_ready`` the vector must also satisfy
    ``gcd(G e) = 1`` so that a partner ``f`` with ``e.f = 1`` exists.
    """
    n = lattice.rank
    gram = lattice.gram
    dense = np.array(gram.tolist(), dtype=np.int64) if n else np.zeros((0, 0))
    for size in range(1, min(max_support, n) + 1):
        grid = _coefficient_grid(size, bound)
        for support in combinations(range(n), size):
            block = dense[np.ix_(support, support)]
            norms = np.einsum("ki,ij,kj->k", grid, block, grid)
            for row in np.nonzero(norms == 0)[0]:
                e = [0] * n
                for position, c in zip(support, grid[row]):
                    e[position] = int(c)
                if np.gcd.reduce(np.abs(grid[row])) != 1:
                    continue
                if split_ready:
                    image = [int(x) for x in gram @ np.array(e, dtype=object)]
                    if np.gcd.reduce(np.abs(np.array(image, dtype=np.int64))) != 1:
                        continue
                log.debug(f"isotropic vector {e}")
                return tuple(e)
    return None


@dataclass(frozen=True)
class USplit:
    """Decomposition ``L = U + K`` found by :func:`split_off_U`."""

    e: Tuple[int, ...]
    f: Tuple[int, ...]
    complement_basis: IntMatrix
    complement: IntLattice

    @property
    def basis(self) -> IntMatrix:
        """Columns ``e, f, k_1, ...``: a unimodular change of basis."""
        columns = [list(self.e), list(self.f)] + [
            list(c) for c in self.complement_basis.T.tolist()
        ]
        return int_matrix(np.array(columns, dtype=object).T)


def split_off_U(
    lattice: IntLattice, bound: int = 5, max_support: int = 4
) -> Optional[USplit]:
    """
    Split a hyperbolic plane off an even lattice.

    Finds an isotropic ``e`` with ``gcd(G e) = 1``, solves ``e.f = 1``, and
    replaces ``f`` by ``f - (f.f / 2) e`` so that ``f.f = 0``. The complement
    is the kernel of pairing with ``e`` and ``f``. Returns ``None`` when the
    bounded search finds no suitable ``e``.
    """
    if not lattice.is_even:
        raise OddLattice("Splitting off U needs an even lattice")
    e = find_isotropic(lattice, bound, max_support, split_ready=True)
    if e is None:
        return None
    gram = lattice.gram
    ge = [int(x) for x in gram @ np.array(e, dtype=object)]
    f = solve_integer([ge], [1])
    f_square = int(np.array(f, dtype=object) @ gram @ np.array(f, dtype=object))
    f = tuple(a - (f_square // 2) * b for a, b in zip(f, e))
    gf = [int(x) for x in gram @ np.array(f, dtype=object)]
    k = kernel_basis([ge, gf])
    complement = lattice.pullback(k)
    log.debug(f"split off U: complement of rank {complement.rank}")
    return USplit(e=e, f=f, complement_basis=k, complement=complement)


def split_from_basis(lattice: IntLattice, matrix: IntMatrix) -> Optional[USplit]:
    """
    Split ``U`` off along a given basis of ``lattice``.

    The columns of ``matrix`` must have ``|det| = 1`` and the first two must
    span a hyperbolic plane: one isotropic, pairing to ``+-1`` with the
    other. The other is sheared to an isotropic partner ``f`` and each
    remaining column ``v`` becomes ``v - (v.f) e - (v.e) f``, which is a
    unimodular change of basis onto ``U + U^perp``. Returns ``None`` when the
    basis has a different shape.
    """
    if not lattice.is_even:
        raise OddLattice("Splitting off U needs an even lattice")
    p = int_matrix(matrix)
    n = lattice.rank
    if p.shape != (n, n) or n < 3 or abs(det(p)) != 1:
        return None
    gram = lattice.gram

    def pair(a, b) -> int:
        return int(np.array(a, dtype=object) @ gram @ np.array(b, dtype=object))

    first, second = list(p[:, 0]), list(p[:, 1])
    for e, f in ((first, second), (second, first)):
        s = pair(e, f)
        if pair(e, e) != 0 or abs(s) != 1:
            continue
        f = [s * x for x in f]
        half = pair(f, f) // 2
        f = [a - half * b for a, b in zip(f, e)]
        rest = []
        for c in range(2, n):
            v = list(p[:, c])
            ve, vf = pair(v, e), pair(v, f)
            rest.append([a - vf * x - ve * y for a, x, y in zip(v, e, f)])
        k = int_matrix([[v[i] for v in rest] for i in range(n)], cols=n - 2)
        complement = lattice.pullback(k)
        log.debug(f"basis splits off U: complement of rank {complement.rank}")
        return USplit(
            e=tuple(int(x) for x in e),
            f=tuple(int(x) for x in f),
            complement_basis=k,
            complement=complement,
        )
    return None


# root sublattice -> (simple roots spanning it, expected complement)
_E8_ROOTS = {
    "A1": ([0], "E7"),
    "A2": ([0, 2], "E6"),
    "A1+A1": ([0, 1], "D6"),
    "A1^2": ([0, 1], "D6"),
}


def e8_complement(root: str) -> IntLattice:
    """
    Orthogonal complement in ``E8`` of a root sublattice.

    ``A1`` is spanned by the first simple root, ``A2`` by the first and third
    (adjacent in the diagram), ``A1+A1`` by the first and second. The result
    is checked against ``E7``, ``E6`` or ``D6`` before it is returned.
    """
    key = str(NamedLatticeExpr.parse(root))
    if key not in _E8_ROOTS:
        raise ValueError(f"No embedding of {root} into E8 available")
    gram = root_gram("E", 8)
    roots, expected = _E8_ROOTS[key]
    pairings = [list(gram[r]) for r in roots]
    k = kernel_basis(pairings)
    complement = IntLattice(gram).pullback(k)
    if not invariants_match(complement, expected):
        raise InvariantViolation(
            f"complement of {key} in E8 is not {expected}: rank {complement.rank}, "
            f"discriminant {complement.discriminant}"
        )
    return complement


def u_complement(k: int) -> Tuple[Tuple[int, int], IntLattice]:
    """
    Embed ``<2k>`` into ``U`` as ``e + k f``; its complement is ``<-2k>``,
    spanned by ``e - k f``.
    """
    if k == 0:
        raise ValueError("<0> does not embed primitively")
    vector = (1, k)
    complement = IntLattice(U_GRAM).pullback([[1], [-k]])
    return vector, complement
