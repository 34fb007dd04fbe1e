"""Covering systems, sub-box covers and subcube covers of the Boolean cube."""

__version__ = "0.1.0"

from .boolean import (
    DnfExpression,
    PointSet,
    Term,
    bound_table,
    boolean_mndr_check,
    canonical_dnf,
    density_bound_A,
    density_bound_B,
    dnf_coverage,
    is_distinct_dnf,
    is_exact_dnf,
    is_tautology,
    pigeonhole_tautology,
)
from .boxcover import Box, ComparisonMode, SubBox, box_cover_check, max_feasible_codimension, symmetric_tail
from .congruence import (
    CongruenceClass,
    CongruenceSystem,
    is_distinct,
    is_exact,
    split_refine,
    top_moduli_check,
    verify_cover,
    znam_multiplicity_check,
)
from .crt import class_to_subbox, crt_inverse, crt_map, factorize, subbox_to_class
from .errors import (
    CapacityError,
    ContractViolation,
    CubeCoverError,
    IntegrityError,
    ParseError,
    UnsupportedCase,
)
from .search import SearchConfig, SearchOutcome, Status, Strategy, certify, search_distinct, search_uniform
