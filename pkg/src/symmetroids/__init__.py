"""Finite groupoids, their bisection groups, and finite 2-groupoids (symmetroids)."""

__version__ = "0.1.0"

from .core import (
    DEFAULT_CAPS, CapExceeded, Caps, FiniteGroup, FiniteGroupoid, Report, SymmetroidsError,
    action_groupoid, c2_4, connected_components, cyclic_group, direct_product, group_groupoid,
    hom_set, isotropy_group, pair_groupoid, swap_base, verify_groupoid_axioms,
)
from .morphisms import (
    GroupoidFunctor, find_isomorphism, fundamental_sequence, kernel, quotient, verify_functor,
)
from .bisections import (
    Bisection, BisectionGroup, compose_bisections, enumerate_bisections, invert_bisection,
    reconstruct, semidirect_structure,
)
from .symmetroid import (
    TwoGroupoid, canonical_little_symmetroid, canonical_symmetroid, reversibility_symmetroid,
    user_symmetroid, verify_two_groupoid, vertical_orbits,
)
from .symmetry import (
    SymmetroidBisection, compute_cocycle, find_natural_transformation, flat_bisection_group,
    induced_automorphism, inner_symmetry_group, is_flat, wigner_embedding,
)
from .algebra import (
    GroupoidFunction, characteristic_of_bisection, convolve, involution, is_positive_definite,
)
