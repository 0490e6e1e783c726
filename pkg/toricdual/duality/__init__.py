"""Coupling pairs of reflexive polytopes and the lattice duality of their K3 families."""

from .builtin import (
    builtin_pairs,
    dump_pair,
    get_builtin,
    load_pair,
    load_polytope,
    select_builtin,
)
from .parameters import (
    CaseInsensitiveEnum,
    CertificateSpec,
    CouplingPair,
    Expectations,
    LatticeExpectation,
    MonomialSpec,
    ParametersBase,
    PolytopeSpec,
    Side,
    SPLIT_TARGET,
    WeightSystem,
    format_monomial,
    parse_combination,
    parse_monomial,
)
from .pipeline import (
    CertificateResult,
    DualityVerdict,
    PicardReport,
    analyze_family,
    build_polytope,
    check_pair,
    compute_family,
    default_basis,
    monomials_to_polytope,
    resolve_ray_labels,
)
