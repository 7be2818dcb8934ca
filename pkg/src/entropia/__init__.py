"""Exact algebraic entropy of endomorphisms of finite, shift and p-adic group models."""

from .arith import INFINITE, Entropy, Factored, is_infinite
from .duality import (
    FinAb,
    annihilator,
    character_group,
    check_annihilator_preimage,
    check_dual_quotient,
    co_annihilator,
    dual_endo,
    dual_shift_model,
    dual_system,
)
from .entropy import (
    CheckReport,
    Options,
    TrajectoryReport,
    UMinusResult,
    check_addition_theorem,
    check_bridge,
    check_conjugation_invariance,
    check_inverse_modulus,
    check_logarithmic_law,
    check_monotonicity,
    check_weak_addition,
    halg,
    halg_via_inverse_invariant,
    halg_with_respect_to_limit,
    halg_with_respect_to_limitfree,
    htop,
    modulus,
    trajectory,
    u_minus,
)
from .exceptions import *  # noqa: F403
from .finite import (
    FiniteEndo,
    FiniteGroup,
    FiniteSubgroup,
    construct_cyclic,
    construct_from_table,
    construct_product,
    construct_symmetric,
    induced_endo,
    quotient,
    restrict_endo,
)
from .model import contains, equals, image, index, intersect, preimage, product
from .padic import LevelSubgroup, MultEndo, PAdicGroup, padic_halg_closed_form
from .product import ProductModel, product_endo
from .shift import RectangularSubgroup, ShiftEndo, ShiftGroup, truncate

__version__ = "0.1.0"
