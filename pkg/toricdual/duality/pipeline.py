"""
End-to-end computation for coupling pairs.

A side of a pair is turned into a reflexive polytope, its MPCP fan is built
from the lattice points of the polar dual, and the toric divisors restricted
to the K3 surface give the Picard lattice. Two sides are lattice dual when
``Pic_delta`` and ``U + Pic_delta_prime`` are orthogonal complements in the
K3 lattice.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger as log
from pydantic import Field

from toricdual.lattice import (
    CATALOG,
    U_GRAM,
    BasisCertificate,
    IntLattice,
    NamedLatticeExpr,
    align_certificate,
    certificate_gram,
    discriminant_form,
    invariants_match,
    nikulin_primitive_check,
    orthogonal_pair_check,
    split_from_basis,
    split_off_U,
    verify_certificate,
)
from toricdual.linalg.matrix import det, int_matrix
from toricdual.linalg.normalforms import kernel_basis, solve_integer
from toricdual.linalg.small import apply3
from toricdual.polytope import (
    ORIGIN,
    Polytope3,
    hull,
    iso_gl3z,
    is_reflexive,
    polar_dual,
    toric_contribution,
)
from toricdual.toric import (
    Fan3,
    RestrictedIntersection,
    mpcp_fan,
    picard_gram,
    picard_number_check,
)
from toricdual.utils.exceptions import (
    DegenerateInput,
    InvariantViolation,
    NontrivialToricContribution,
    PointNotInBasisSpan,
    ToricDualError,
)

from .parameters import (
    CertificateSpec,
    CouplingPair,
    MonomialSpec,
    ParametersBase,
    PolytopeSpec,
    Side,
    WeightSystem,
    format_monomial,
)

Point = Tuple[int, int, int]


def default_basis(ws: WeightSystem) -> List[Tuple[int, int, int, int]]:
    """Saturated basis of ``M = {x in Z^4 : sum a_i x_i = 0}``."""
    k = kernel_basis([list(ws.weights)])
    return [tuple(int(x) for x in column) for column in k.T.tolist()]


def monomials_to_polytope(ws: WeightSystem, spec: MonomialSpec) -> Polytope3:
    """
    Convex hull of the exponent shifts of the monomials, in basis coordinates.

    A monomial ``W^e0 X^e1 Y^e2 Z^e3`` of degree ``d`` corresponds to the
    point ``(e0 - 1, ..., e3 - 1)`` of ``M``, which is written in the given
    basis of ``M``.

    Raises
    ------
    MonomialDegreeMismatch
        If a monomial does not have degree ``d``.
    PointNotInBasisSpan
        If a point is not an integral combination of the basis.
    InvariantViolation
        If a basis vector is not orthogonal to the weights.
    """
    spec.check_degrees(ws)
    basis = spec.basis or default_basis(ws)
    for b in basis:
        if sum(a * x for a, x in zip(ws.weights, b)) != 0:
            raise InvariantViolation(f"Basis vector {b} is not in M for {ws}")
    columns = [[b[r] for b in basis] for r in range(4)]
    points = []
    for m in spec.monomials:
        shifted = [e - 1 for e in m]
        coordinates = solve_integer(columns, shifted)
        if coordinates is None:
            raise PointNotInBasisSpan(
                f"{format_monomial(m)} gives {tuple(shifted)}, "
                "which is not an integral combination of the basis"
            )
        points.append(coordinates)
    polytope = hull(points)
    log.debug(
        f"{len(spec.monomials)} monomials of weights {ws} span a polytope "
        f"with {len(polytope.vertices)} vertices"
    )
    return polytope


def build_polytope(spec: PolytopeSpec) -> Polytope3:
    if spec.vertices is not None:
        return hull(spec.vertices)
    return monomials_to_polytope(spec.weights, spec.monomial_spec())


class PicardReport(ParametersBase):
    """
    Picard lattice of the family of K3 surfaces attached to a polytope.

    When the toric contribution ``L0`` is nonzero the restricted divisors do
    not span the Picard lattice and only ``l0`` is filled in.
    """

    l0: int = 0
    rho: Optional[int] = None
    rays: Optional[int] = None
    dropped_rays: Optional[int] = None
    rho_formula: Optional[int] = None
    basis: List[int] = Field(default_factory=list)
    gram: Optional[List[List[int]]] = None
    signature: Optional[Tuple[int, int]] = None
    discriminant: Optional[int] = None
    invariant_factors: List[int] = Field(default_factory=list)
    discriminant_form: Dict[str, List[str]] = Field(default_factory=dict)
    even: Optional[bool] = None
    matched: Optional[str] = None
    nikulin: Optional[str] = None
    nikulin_passed: Optional[bool] = None
    elliptic: Optional[bool] = None
    complement: Optional[Dict[str, Any]] = None

    @property
    def computed(self) -> bool:
        return self.gram is not None

    def lattice(self) -> IntLattice:
        if not self.computed:
            raise NontrivialToricContribution(
                f"No Picard lattice was computed (L0 = {self.l0})", l0=self.l0
            )
        return IntLattice(int_matrix(self.gram, cols=self.rho))

    @property
    def abs_discriminant(self) -> Optional[int]:
        return None if self.discriminant is None else abs(self.discriminant)

    @property
    def name(self) -> str:
        """Matched lattice in direct-sum notation, or the bare invariants."""
        if not self.computed:
            return f"L0 = {self.l0}"
        if self.matched is not None:
            return NamedLatticeExpr.parse(self.matched).pretty()
        return "U ⊕ L~" if self.elliptic else "L"


def match_catalog(lattice: IntLattice) -> Optional[str]:
    for name in CATALOG:
        expr = NamedLatticeExpr.parse(name)
        if expr.rank == lattice.rank and invariants_match(lattice, expr):
            return name
    return None


@dataclass(frozen=True)
class FamilyResult:
    """Fan, restricted intersection data and report of one family."""

    fan: Fan3
    restricted: RestrictedIntersection
    report: PicardReport


def compute_family(
    delta: Polytope3,
    ray_order: Optional[Sequence[Point]] = None,
    search_bound: int = 5,
    max_support: int = 4,
) -> FamilyResult:
    fan = mpcp_fan(delta, ray_order)
    restricted = picard_gram(fan, delta)
    lattice = IntLattice(restricted.gram)
    rho_rays, rho_formula = picard_number_check(fan, delta)

    elliptic, complement = None, None
    if lattice.rank >= 2 and lattice.is_even:
        split = split_off_U(lattice, search_bound, max_support)
        elliptic = split is not None
        if split is not None:
            complement = split.complement.invariants()

    form = {}
    if lattice.is_even and lattice.is_nondegenerate:
        form = discriminant_form(lattice).describe()
    nikulin = nikulin_primitive_check(lattice)
    matched = match_catalog(lattice)
    report = PicardReport(
        rho=lattice.rank,
        l0=0,
        rays=len(fan.rays),
        dropped_rays=len(fan.rays) - len(restricted.rays),
        rho_formula=rho_formula,
        basis=[k + 1 for k in restricted.basis],
        gram=restricted.gram.tolist(),
        signature=lattice.signature,
        discriminant=lattice.discriminant,
        invariant_factors=list(lattice.invariant_factors),
        discriminant_form=form,
        even=lattice.is_even,
        matched=matched,
        nikulin=nikulin.summary(),
        nikulin_passed=nikulin.passed,
        elliptic=elliptic,
        complement=complement,
    )
    if rho_rays != report.rho:
        log.warning(f"Picard number {report.rho} differs from ray count {rho_rays}")
    log.info(
        f"Picard lattice of rank {report.rho}, |disc| {report.abs_discriminant}"
        + (f", matched {matched}" if matched else "")
    )
    return FamilyResult(fan=fan, restricted=restricted, report=report)


def analyze_family(
    delta: Polytope3, search_bound: int = 5, max_support: int = 4
) -> PicardReport:
    """
    Picard lattice of the family of anticanonical K3 surfaces in the toric
    variety of ``delta``.

    If some toric divisor is reducible on the surface the returned report
    carries only the toric contribution ``l0``.

    Raises
    ------
    NotReflexive
        If ``delta`` is not reflexive.
    """
    try:
        family = compute_family(
            delta, search_bound=search_bound, max_support=max_support
        )
    except NontrivialToricContribution as e:
        log.warning(f"toric contribution L0 = {e.l0}; no Picard lattice computed")
        return PicardReport(l0=e.l0)
    return family.report


@dataclass(frozen=True)
class RayLabels:
    """Transcribed ray labels resolved against a computed fan."""

    order: Tuple[Point, ...]
    points: Dict[int, Point]
    warnings: Tuple[str, ...]


def resolve_ray_labels(
    spec: PolytopeSpec, dual: Polytope3, side: str
) -> RayLabels:
    """
    Match a transcribed ray list with the lattice points of ``dual``.

    The transcription lives in another coordinate system, so the hull of the
    listed rays is compared with ``dual`` through :func:`iso_gl3z`. Labels of
    the transcription are carried to the computed rays. Duplicated, missing
    and stray points are reported.
    """
    rays = spec.corrected_rays()
    if not rays:
        return RayLabels(order=(), points={}, warnings=())
    warnings: List[str] = []
    for label, point in sorted(spec.ray_corrections.items()):
        warnings.append(
            f"{side}: D{label} amended from {tuple(spec.rays[label - 1])} "
            f"to {tuple(point)}"
        )
    first_seen: Dict[Point, int] = {}
    for label, ray in enumerate(rays, start=1):
        if ray in first_seen:
            warnings.append(f"{side}: D{label} repeats D{first_seen[ray]} {ray}")
        else:
            first_seen[ray] = label

    try:
        source = hull(list(first_seen))
    except DegenerateInput:
        source = None
    u = iso_gl3z(source, dual) if source is not None else None
    if u is None:
        warnings.append(
            f"{side}: transcribed rays do not span a polytope equivalent to the "
            "fan's; divisor labels are unresolved"
        )
        for w in warnings:
            log.warning(w)
        return RayLabels(order=(), points={}, warnings=tuple(warnings))

    u = u.tolist()
    points = {label: apply3(u, ray) for label, ray in enumerate(rays, start=1)}
    on_dual = {lp.point: lp.kind for lp in dual.lattice_points}
    for label, point in points.items():
        if point not in on_dual or point == ORIGIN:
            warnings.append(f"{side}: D{label} {rays[label - 1]} is not a ray")
    listed = set(points.values())
    missing = [
        p
        for p, kind in on_dual.items()
        if kind in ("vertex", "edge") and p not in listed
    ]
    if missing:
        warnings.append(f"{side}: {len(missing)} divisor rays are not transcribed")
    for w in warnings:
        log.warning(w)
    order = tuple(points[label] for label in sorted(points))
    return RayLabels(order=order, points=points, warnings=tuple(warnings))


class CertificateResult(ParametersBase):
    side: str
    target: str
    passed: bool
    aligned: bool = False
    labels: List[str] = Field(default_factory=list)
    gram: Optional[List[List[int]]] = None
    reason: Optional[str] = None


def certificate_matrix(
    spec: CertificateSpec,
    labels: RayLabels,
    fan: Fan3,
    restricted: RestrictedIntersection,
) -> np.ndarray:
    """
    Columns of the certificate in the Picard basis.

    Raises
    ------
    KeyError
        If a label is not resolved to a divisor meeting the surface.
    """
    rank = len(restricted.basis)
    columns = []
    for combination in spec.combinations():
        vector = [0] * rank
        for label, coefficient in combination.items():
            point = labels.points.get(label)
            if point not in fan.rays:
                raise KeyError(f"D{label}")
            index = fan.rays.index(point)
            if index not in restricted.rays:
                raise KeyError(f"D{label}")
            for k, x in enumerate(restricted.class_of(index)):
                vector[k] += coefficient * x
        columns.append(vector)
    return int_matrix(np.array(columns, dtype=object).T, cols=len(columns))


def _check_split_certificate(
    spec: CertificateSpec,
    lattice: IntLattice,
    matrix: np.ndarray,
    result: Dict[str, Any],
) -> CertificateResult:
    if matrix.shape[0] != matrix.shape[1] or abs(det(matrix)) != 1:
        return CertificateResult(
            **result, passed=False, reason="basis is not unimodular"
        )
    split = split_from_basis(lattice, matrix)
    if split is None:
        return CertificateResult(
            **result, passed=False, reason="first two vectors do not span U"
        )
    gram = lattice.pullback(split.basis).gram.tolist()
    problems = []
    if split.complement.signature != (0, split.complement.rank):
        problems.append(f"complement signature {split.complement.signature}")
    if spec.complement is not None:
        problems.extend(spec.complement.mismatches(split.complement))
    if problems:
        return CertificateResult(
            **result, passed=False, gram=gram, reason="; ".join(problems)
        )
    return CertificateResult(**result, passed=True, gram=gram)


def check_certificate(
    spec: CertificateSpec, labels: RayLabels, family: FamilyResult
) -> CertificateResult:
    """Verify one transcribed basis, aligning its order and signs if needed."""
    lattice = IntLattice(family.restricted.gram)
    result = dict(side=spec.side, target=spec.target, labels=list(spec.basis))
    try:
        matrix = certificate_matrix(spec, labels, family.fan, family.restricted)
    except KeyError as e:
        return CertificateResult(
            **result, passed=False, reason=f"unresolved divisor {e.args[0]}"
        )
    if spec.splits_U:
        return _check_split_certificate(spec, lattice, matrix, result)
    cert = BasisCertificate(
        source=spec.side,
        matrix=matrix,
        target=NamedLatticeExpr.parse(spec.target),
        labels=tuple(spec.basis),
    )
    if matrix.shape[0] != matrix.shape[1]:
        return CertificateResult(
            **result,
            passed=False,
            reason=f"{matrix.shape[1]} vectors for a lattice of rank {lattice.rank}",
        )
    gram = certificate_gram(lattice, cert).tolist()
    if verify_certificate(lattice, cert):
        return CertificateResult(**result, passed=True, gram=gram)
    aligned = align_certificate(lattice, cert)
    if aligned is not None:
        log.info(f"{spec.side} certificate for {spec.target} verified after reordering")
        return CertificateResult(
            side=spec.side,
            target=spec.target,
            labels=list(aligned.labels),
            passed=True,
            aligned=True,
            gram=certificate_gram(lattice, aligned).tolist(),
        )
    return CertificateResult(
        **result, passed=False, gram=gram, reason="Gram matrix differs from target"
    )


class DualityVerdict(ParametersBase):
    """
    Outcome of :func:`check_pair`. Optional flags are ``None`` when there was
    nothing to check.
    """

    id: str
    polytope_dual_ok: bool
    l0_trivial_ok: bool
    l0: Tuple[Optional[int], Optional[int]] = (None, None)
    pic_delta: Optional[PicardReport] = None
    pic_delta_prime: Optional[PicardReport] = None
    expected_match_ok: Optional[bool] = None
    lattice_duality_ok: bool = False
    certificate_ok: Optional[bool] = None
    certificates: List[CertificateResult] = Field(default_factory=list)
    mismatches: List[str] = Field(default_factory=list)
    warnings: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.polytope_dual_ok
            and self.l0_trivial_ok
            and self.expected_match_ok is not False
            and self.lattice_duality_ok
            and self.certificate_ok is not False
        )

    @property
    def flags(self) -> Dict[str, Optional[bool]]:
        return {
            "polytope_dual_ok": self.polytope_dual_ok,
            "l0_trivial_ok": self.l0_trivial_ok,
            "expected_match_ok": self.expected_match_ok,
            "lattice_duality_ok": self.lattice_duality_ok,
            "certificate_ok": self.certificate_ok,
        }


def _family_or_none(
    polytope: Polytope3,
    labels: RayLabels,
    side: str,
    warnings: List[str],
    search_bound: int,
    max_support: int,
) -> Optional[FamilyResult]:
    try:
        return compute_family(polytope, labels.order, search_bound, max_support)
    except NontrivialToricContribution as e:
        warnings.append(f"{side}: toric contribution L0 = {e.l0}")
    except ToricDualError as e:
        warnings.append(f"{side}: {e}")
    log.warning(warnings[-1])
    return None


def check_pair(
    pair: CouplingPair, search_bound: int = 5, max_support: int = 4
) -> DualityVerdict:
    """
    Run every check on a coupling pair.

    In order: lattice equivalence of ``polar_dual(delta)`` and
    ``delta_prime``; vanishing toric contribution on both sides; the Picard
    lattices of both families; comparison with the expected lattices;
    ``Pic_delta`` against ``U + Pic_delta_prime`` in the K3 lattice; the
    attached certificates. Failures are recorded as flags, not raised.
    """
    log.info(f"checking coupling pair {pair.id}")
    warnings: List[str] = []
    polytopes: Dict[str, Polytope3] = {}
    for side in (Side.delta, Side.delta_prime):
        try:
            polytopes[side] = build_polytope(pair.side(side))
        except ToricDualError as e:
            warnings.append(f"{side}: {e}")
    if len(polytopes) < 2:
        return DualityVerdict(
            id=pair.id, polytope_dual_ok=False, l0_trivial_ok=False, warnings=warnings
        )

    reflexive = {side: is_reflexive(p) for side, p in polytopes.items()}
    for side, ok in reflexive.items():
        if not ok:
            warnings.append(f"{side}: polytope is not reflexive")
    duals = {
        side: polar_dual(p) for side, p in polytopes.items() if reflexive[side]
    }
    polytope_dual_ok = (
        all(reflexive.values())
        and iso_gl3z(duals[Side.delta], polytopes[Side.delta_prime]) is not None
    )
    if not polytope_dual_ok:
        warnings.append("polar dual of delta is not lattice equivalent to delta_prime")

    l0 = tuple(
        toric_contribution(polytopes[side]) if reflexive[side] else None
        for side in (Side.delta, Side.delta_prime)
    )
    l0_trivial_ok = l0 == (0, 0)

    families: Dict[str, Optional[FamilyResult]] = {}
    labels: Dict[str, RayLabels] = {}
    for side in (Side.delta, Side.delta_prime):
        if not reflexive[side]:
            families[side] = None
            continue
        labels[side] = resolve_ray_labels(pair.side(side), duals[side], side)
        warnings.extend(labels[side].warnings)
        families[side] = _family_or_none(
            polytopes[side], labels[side], side, warnings, search_bound, max_support
        )

    mismatches: List[str] = []
    expected_match_ok = None
    for side in (Side.delta, Side.delta_prime):
        expectation = pair.expected.for_side(side)
        if expectation is None:
            continue
        expected_match_ok = expected_match_ok is not False
        family = families[side]
        if family is None:
            mismatches.append(f"{side}: no Picard lattice computed")
            expected_match_ok = False
            continue
        problems = expectation.mismatches(family.report.lattice())
        mismatches.extend(f"{side}: {p}" for p in problems)
        if problems:
            expected_match_ok = False

    lattice_duality_ok = False
    if families[Side.delta] is not None and families[Side.delta_prime] is not None:
        pic = families[Side.delta].report.lattice()
        pic_prime = families[Side.delta_prime].report.lattice()
        lattice_duality_ok = orthogonal_pair_check(pic, IntLattice(U_GRAM) + pic_prime)

    results: List[CertificateResult] = []
    for spec in pair.certificates:
        family = families.get(spec.side)
        if family is None:
            results.append(
                CertificateResult(
                    side=spec.side,
                    target=spec.target,
                    passed=False,
                    reason="no Picard lattice computed",
                )
            )
            continue
        results.append(check_certificate(spec, labels[spec.side], family))
    for r in results:
        if not r.passed:
            warnings.append(f"{r.side}: certificate for {r.target} failed: {r.reason}")
    certificate_ok = all(r.passed for r in results) if results else None

    verdict = DualityVerdict(
        id=pair.id,
        polytope_dual_ok=polytope_dual_ok,
        l0_trivial_ok=l0_trivial_ok,
        l0=l0,
        pic_delta=families[Side.delta].report if families[Side.delta] else None,
        pic_delta_prime=(
            families[Side.delta_prime].report if families[Side.delta_prime] else None
        ),
        expected_match_ok=expected_match_ok,
        lattice_duality_ok=lattice_duality_ok,
        certificate_ok=certificate_ok,
        certificates=results,
        mismatches=mismatches,
        warnings=warnings,
    )
    log.info(f"pair {pair.id}: {'passed' if verdict.passed else 'failed'}")
    return verdict
