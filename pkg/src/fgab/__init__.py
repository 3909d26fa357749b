"""Exact subgroup arithmetic for finitely generated abelian groups, and
certificates for ``gd_{F_r} G <= n + r``."""
from .certifier import certify, validate_certificate
from .groups import (
    FgAbelianGroup,
    Subgroup,
    commensurable,
    contains,
    enumerate_maximal,
    index,
    intersect,
    is_maximal,
    make_group,
    max_overgroup,
    parse_group,
    quotient_invariants,
    rank,
    subgroup_from_generators,
    subgroup_sum,
    trivial_subgroup,
    whole_group,
)
from .kernel import BACKEND
from .lattice import INFINITE, IntMatrix, hnf, lattice_index, lattice_intersect, saturate, snf, solve_membership

__version__ = "0.1.0"
