"""
This module contains pydantic models describing coupling pairs: weight
systems, the monomials spanning each polytope, transcribed ray lists,
expected Picard lattices and basis certificates.
"""

from __future__ import annotations

import re
from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from toricdual.utils.exceptions import (
    InvariantViolation,
    MonomialDegreeMismatch,
    ParseError,
)

Point = Tuple[int, int, int]
Exponents = Tuple[int, int, int, int]


class CaseInsensitiveEnum(str, Enum):
    @classmethod
    def _missing_(cls, value):
        for member in cls:
            if member.value.lower() == str(value).lower():
                return member
        return super()._missing_(value)


# shared configuration for every parameter model
class ParametersBase(BaseModel):
    model_config = ConfigDict(
        use_enum_values=True, arbitrary_types_allowed=True, validate_assignment=True
    )


class Side(CaseInsensitiveEnum):
    delta = "delta"
    delta_prime = "delta_prime"


class WeightSystem(ParametersBase):
    """Weights ``(a0, a1, a2, a3)`` and degree ``d``; written ``1,6,8,15;30``."""

    weights: Tuple[int, int, int, int]
    degree: int

    @model_validator(mode="before")
    @classmethod
    def from_sequence(cls, data):
        if isinstance(data, str):
            head, _, degree = data.partition(";")
            data = [int(x) for x in head.split(",")] + [int(degree)]
        if isinstance(data, (list, tuple)):
            if len(data) != 5:
                raise ValueError("A weight system has four weights and a degree")
            return {"weights": tuple(data[:4]), "degree": data[4]}
        return data

    @model_validator(mode="after")
    def check_weights(self) -> "WeightSystem":
        if any(a <= 0 for a in self.weights):
            raise ValueError(f"Weights must be positive, got {self.weights}")
        if self.degree <= max(self.weights):
            raise ValueError(
                f"Degree {self.degree} must exceed every weight in {self.weights}"
            )
        return self

    def degree_of(self, exponents: Exponents) -> int:
        return sum(a * e for a, e in zip(self.weights, exponents))

    def __str__(self) -> str:
        return ",".join(str(a) for a in self.weights) + f";{self.degree}"


_VARIABLES = "WXYZ"
_MONOMIAL = re.compile(r"([WXYZ])(\d*)")


def parse_monomial(text: str) -> Exponents:
    """Exponents of a monomial written like ``W6Y3`` or ``XZ2``."""
    compact = "".join(text.split())
    if not compact or _MONOMIAL.sub("", compact):
        raise ParseError(f"Cannot read monomial {text!r}", location=text)
    exponents = [0, 0, 0, 0]
    for variable, power in _MONOMIAL.findall(compact):
        exponents[_VARIABLES.index(variable)] += int(power) if power else 1
    return tuple(exponents)


def format_monomial(exponents: Exponents) -> str:
    parts = []
    for variable, e in zip(_VARIABLES, exponents):
        if e == 1:
            parts.append(variable)
        elif e > 1:
            parts.append(f"{variable}{e}")
    return "".join(parts) or "1"


class MonomialSpec(ParametersBase):
    """
    Monomials spanning a polytope, and a basis of the lattice ``M`` of
    exponent shifts orthogonal to the weights.

    Without a basis the saturated kernel basis of the weights is used.
    """

    monomials: List[Exponents]
    basis: Optional[List[Tuple[int, int, int, int]]] = None

    @field_validator("monomials", mode="before")
    @classmethod
    def read_monomials(cls, value):
        return [parse_monomial(m) if isinstance(m, str) else m for m in value]

    @field_validator("basis")
    @classmethod
    def three_vectors(cls, value):
        if value is not None and len(value) != 3:
            raise ValueError("A basis of M consists of three vectors")
        return value

    def check_degrees(self, weights: WeightSystem) -> None:
        for m in self.monomials:
            if weights.degree_of(m) != weights.degree:
                raise MonomialDegreeMismatch(
                    f"Monomial {format_monomial(m)} has degree "
                    f"{weights.degree_of(m)}, expected {weights.degree} "
                    f"for weights {weights}"
                )


class PolytopeSpec(ParametersBase):
    """
    One side of a coupling pair.

    The polytope is given either by a weight system and monomials or by its
    vertices. ``rays`` is an optional transcribed list of the fan's rays in
    some other coordinates; its order defines the divisor labels ``D1, D2,
    ...`` used by certificates. ``ray_corrections`` replaces individual
    transcribed rays (1-based labels).
    """

    weights: Optional[WeightSystem] = None
    basis: Optional[List[Tuple[int, int, int, int]]] = None
    monomials: Optional[List[Exponents]] = None
    vertices: Optional[List[Point]] = None
    rays: Optional[List[Point]] = None
    ray_corrections: Dict[int, Point] = {}
    notes: List[str] = []

    @field_validator("monomials", mode="before")
    @classmethod
    def read_monomials(cls, value):
        if value is None:
            return value
        return [parse_monomial(m) if isinstance(m, str) else m for m in value]

    @model_validator(mode="after")
    def check_source(self) -> "PolytopeSpec":
        has_monomials = self.monomials is not None
        if has_monomials == (self.vertices is not None):
            raise ValueError("Give either monomials with weights or vertices")
        if has_monomials:
            if self.weights is None:
                raise ValueError("Monomials need a weight system")
            self.monomial_spec().check_degrees(self.weights)
        for label in self.ray_corrections:
            if self.rays is None or not 1 <= label <= len(self.rays):
                raise ValueError(f"Correction for unknown ray label D{label}")
        return self

    def monomial_spec(self) -> MonomialSpec:
        return MonomialSpec(monomials=self.monomials, basis=self.basis)

    def corrected_rays(self) -> Optional[List[Point]]:
        if self.rays is None:
            return None
        return [
            tuple(self.ray_corrections.get(k + 1, ray))
            for k, ray in enumerate(self.rays)
        ]


_TERM = re.compile(r"([+-]?)(\d*)D(\d+)")


def parse_combination(text: str) -> Dict[int, int]:
    """Coefficients of a divisor combination such as ``2D1-D2+D14``."""
    compact = "".join(text.split())
    if not compact or _TERM.sub("", compact):
        raise ParseError(f"Cannot read divisor combination {text!r}", location=text)
    coefficients: Dict[int, int] = {}
    for sign, factor, label in _TERM.findall(compact):
        value = int(factor) if factor else 1
        if sign == "-":
            value = -value
        coefficients[int(label)] = coefficients.get(int(label), 0) + value
    return coefficients


class LatticeExpectation(ParametersBase):
    """
    Expected Picard lattice: a named expression, an invariant tuple, or both.

    ``abs_discriminant`` is the ``|disc|`` printed in the table.
    """

    expr: Optional[str] = None
    rank: Optional[int] = None
    abs_discriminant: Optional[int] = None
    signature: Optional[Tuple[int, int]] = None
    invariant_factors: Optional[List[int]] = None

    @model_validator(mode="before")
    @classmethod
    def from_string(cls, data):
        if isinstance(data, str):
            return {"expr": data}
        return data

    @model_validator(mode="after")
    def check_expr(self) -> "LatticeExpectation":
        if self.expr is None:
            if self.rank is None and self.abs_discriminant is None:
                raise ValueError("An expectation needs an expression or invariants")
            return self
        from toricdual.lattice import NamedLatticeExpr

        lattice = NamedLatticeExpr.parse(self.expr).lattice()
        if self.rank is not None and self.rank != lattice.rank:
            raise InvariantViolation(
                f"{self.expr} has rank {lattice.rank}, not {self.rank}"
            )
        if self.abs_discriminant is not None and self.abs_discriminant != abs(
            lattice.discriminant
        ):
            raise InvariantViolation(
                f"{self.expr} has |disc| {abs(lattice.discriminant)}, "
                f"not {self.abs_discriminant}"
            )
        return self

    @property
    def expected_rank(self) -> Optional[int]:
        if self.rank is not None or self.expr is None:
            return self.rank
        from toricdual.lattice import NamedLatticeExpr

        return NamedLatticeExpr.parse(self.expr).rank

    @property
    def expected_abs_discriminant(self) -> Optional[int]:
        if self.abs_discriminant is not None or self.expr is None:
            return self.abs_discriminant
        from toricdual.lattice import NamedLatticeExpr

        return abs(NamedLatticeExpr.parse(self.expr).lattice().discriminant)

    def mismatches(self, lattice) -> List[str]:
        """Human readable differences between ``lattice`` and the expectation."""
        from toricdual.lattice import invariants_match

        problems = []
        if self.expected_rank is not None and lattice.rank != self.expected_rank:
            problems.append(f"rank {lattice.rank} != {self.expected_rank}")
        disc = abs(lattice.discriminant)
        if (
            self.expected_abs_discriminant is not None
            and disc != self.expected_abs_discriminant
        ):
            problems.append(f"|disc| {disc} != {self.expected_abs_discriminant}")
        if self.signature is not None and lattice.signature != tuple(self.signature):
            problems.append(f"signature {lattice.signature} != {self.signature}")
        if self.invariant_factors is not None and list(
            lattice.invariant_factors
        ) != list(self.invariant_factors):
            problems.append(
                f"invariant factors {list(lattice.invariant_factors)} != "
                f"{self.invariant_factors}"
            )
        if self.expr is not None and not problems:
            if not invariants_match(lattice, self.expr):
                problems.append(f"not isometric to {self.expr}")
        return problems


SPLIT_TARGET = "U+L~"


class CertificateSpec(ParametersBase):
    """
    A transcribed "new basis" of one side, written in divisor labels.

    The target is a named lattice, or ``U+L~`` when the basis only claims to
    start with a hyperbolic plane. In that case ``complement`` constrains the
    lattice ``L~`` that remains after splitting the plane off.
    """

    side: Side
    target: str
    basis: List[str]
    complement: Optional[LatticeExpectation] = None

    @field_validator("target")
    @classmethod
    def parse_target(cls, value):
        from toricdual.lattice import NamedLatticeExpr

        if "".join(value.split()) == SPLIT_TARGET:
            return SPLIT_TARGET
        NamedLatticeExpr.parse(value)
        return value

    @field_validator("basis")
    @classmethod
    def parse_basis(cls, value):
        for combination in value:
            parse_combination(combination)
        return value

    @model_validator(mode="after")
    def check_complement(self) -> "CertificateSpec":
        if self.complement is not None and not self.splits_U:
            raise ValueError(f"A complement only applies to {SPLIT_TARGET} targets")
        return self

    @property
    def splits_U(self) -> bool:
        return self.target == SPLIT_TARGET

    def combinations(self) -> List[Dict[int, int]]:
        return [parse_combination(c) for c in self.basis]


class Expectations(ParametersBase):
    pic_delta: Optional[LatticeExpectation] = None
    pic_delta_prime: Optional[LatticeExpectation] = None

    def for_side(self, side: str) -> Optional[LatticeExpectation]:
        return self.pic_delta if side == Side.delta else self.pic_delta_prime


class CouplingPair(ParametersBase):
    """
    One row (and case) of the table of coupling pairs.

    ``delta`` is the polytope whose family has Picard lattice ``Pic_delta``;
    its fan is built from the lattice points of its polar dual, which is
    lattice equivalent to ``delta_prime``.
    """

    id: str
    numbers: List[int] = []
    case: Optional[int] = None
    delta: PolytopeSpec
    delta_prime: PolytopeSpec
    expected: Expectations = Field(default_factory=Expectations)
    certificates: List[CertificateSpec] = []
    notes: List[str] = []

    @model_validator(mode="after")
    def check_expectations(self) -> "CouplingPair":
        a = self.expected.pic_delta
        b = self.expected.pic_delta_prime
        if a is None or b is None:
            return self
        if a.expected_rank is not None and b.expected_rank is not None:
            if a.expected_rank + b.expected_rank != 20:
                raise InvariantViolation(
                    f"Expected ranks {a.expected_rank} and {b.expected_rank} "
                    "do not add up to 20"
                )
        if (
            a.expected_abs_discriminant is not None
            and b.expected_abs_discriminant is not None
            and a.expected_abs_discriminant != b.expected_abs_discriminant
        ):
            raise InvariantViolation(
                f"Expected |disc| differ: {a.expected_abs_discriminant} and "
                f"{b.expected_abs_discriminant}"
            )
        return self

    def side(self, side: str) -> PolytopeSpec:
        return self.delta if side == Side.delta else self.delta_prime

    def swapped(self) -> "CouplingPair":
        """The same pair with the roles of the two polytopes exchanged."""
        return CouplingPair(
            id=f"{self.id}~",
            numbers=self.numbers,
            case=self.case,
            delta=self.delta_prime,
            delta_prime=self.delta,
            expected=Expectations(
                pic_delta=self.expected.pic_delta_prime,
                pic_delta_prime=self.expected.pic_delta,
            ),
            certificates=[
                c.model_copy(
                    update={
                        "side": Side.delta_prime
                        if c.side == Side.delta
                        else Side.delta
                    }
                )
                for c in self.certificates
            ],
            notes=self.notes,
        )
