"""Lattice duality of families of K3 surfaces from coupling pairs of reflexive polytopes"""

from .duality import analyze_family, build_polytope, builtin_pairs, check_pair

try:
    from ._version import __version__
except ImportError:
    __version__ = "1+unknown"
