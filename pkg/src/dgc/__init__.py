"""Finite groupoids, finite relations and double groupoids.

The package builds small double groupoids, computes the leaves of their four
distinguished subsets, composes the induced relations on the core and checks
the result against the core groupoid by exhaustive enumeration.
"""

from .corered import (CoisotropicKind, check_core_identities, compare_core_structures,
                      composed_core_structure, leaf_partition, reduction_relation)
from .dblgrpd import DoubleGroupoid, build_double, core_groupoid_bm, core_set, validate_double
from .fingrpd import FiniteGroupoid, build_groupoid, cyclic_group, fixture_pair, validate_groupoid
from .formats import export_structure, parse_input

__all__ = [
    "CoisotropicKind", "DoubleGroupoid", "FiniteGroupoid", "build_double", "build_groupoid",
    "check_core_identities", "compare_core_structures", "composed_core_structure",
    "core_groupoid_bm", "core_set", "cyclic_group", "export_structure", "fixture_pair",
    "leaf_partition", "parse_input", "reduction_relation", "validate_double", "validate_groupoid",
]
