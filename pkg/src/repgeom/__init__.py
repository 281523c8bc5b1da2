"""Exact workbench for action-type algebraic geometry over finite group
representations: free group rings, Fox calculus, finite representations,
algebraic sets and closures, and the standard operators on representations."""

from .errors import WorkbenchError
from .field import GF, QQ, PrimeField, Rationals, field_from_spec
from .fox import TruncatedElement, augment, fox_derive, iterated_fox, taylor_expand, taylor_reconstruct, truncate
from .geometry import (
    EquationSet, Point, QuasiIdentity, algebraic_set, check_quasi_identity, closed_submodule_signature,
    closure_basis, closure_member, enumerate_points, group_closure_member, group_identities_redundant,
    is_group_identity, refute_equivalence,
)
from .group_algebra import RightIdealBasis, annihilator, kernel_via_ideal, quotient_module_representation, stabilizer
from .operators import (
    FilterSpec, cartesian_product, filtered_product, generated_subrepresentation, inflate_along_epimorphism, factor_group,
    restrict_action_group,
)
from .parser import parse_module_expr, parse_ring_expr, parse_word
from .repfile import dump_rep, load_rep
from .representation import (
    FiniteRepresentation, action_kernel, eval_point, eval_word, faithful_image, generate,
    regular_representation,
)
from .ring import FreeModuleElement, GroupRingElement
from .words import Word

__version__ = "0.1.0"
