"""Integral lattices, discriminant forms and K3 lattice embeddings."""

from .discriminant import (
    DiscriminantForm,
    discriminant_form,
    discriminant_group,
    forms_isomorphic,
)
from .embedding import (
    K3_RANK,
    K3_SIGNATURE,
    BasisCertificate,
    NikulinReport,
    USplit,
    align_certificate,
    certificate_gram,
    e8_complement,
    find_isotropic,
    invariants_match,
    nikulin_primitive_check,
    orthogonal_pair_check,
    split_from_basis,
    split_off_U,
    u_complement,
    verify_certificate,
)
from .lattice import IntLattice, block_diagonal
from .named import CATALOG, U_GRAM, NamedLatticeExpr, named_gram, root_gram
