"""Exact quantity calculus: quantities as Laurent monomials over the rationals.

A :class:`QuantitySpace` fixes an ordered basis of base quantities; each
:class:`Quantity` is ``measure * prod(b_i ** k_i)`` with a rational measure
and an integer exponent vector. Units live in a :class:`UnitRegistry`.
"""

from .core import (
    Quantity,
    QuantitySpace,
    commensurable,
    compare,
    dimension,
    laurent_form,
    measure,
    one,
    qadd,
    qinv,
    qmul,
    qneg,
    qpow,
    qsub,
    scale,
)
from .dimensions import (
    DimVector,
    LatticeQuotient,
    SmithForm,
    integer_nullspace,
    invariant_factors,
    lattice_quotient,
    smith_decomposition,
    smith_normal_form,
    unimodular_complete,
)
from .errors import *  # noqa: F401,F403
from .evaluate import Evaluator, Result, eval_expression, evaluate
from .quotients import QuotientSpace, build_quotient, format_pi_group, pi_groups, project
from .scalars import ModularElement, Rational, format_rational, parse_rational
from .syntax import parse, parse_expression, parse_statement
from .units import BasisChange, UnitRegistry, change_basis, coherent_unit, convert, define_space, rebase, register_unit

__version__ = "0.1.0"
