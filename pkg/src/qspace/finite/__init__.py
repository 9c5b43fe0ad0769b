"""Brute-force laboratory of small scalable monoids."""

from .checks import (
    ClassModule,
    OrbitPartition,
    Report,
    UnitSet,
    Violation,
    check_axioms,
    classify_unit_set,
    commensurable,
    orbit_facts,
    orbit_module_check,
    orbit_partition,
    strict_approx_witness,
    tensor_associativity,
    tensor_balance,
)
from .models import (
    FiniteMonoid,
    FiniteScalableMonoid,
    Quotient,
    ScalableSubmonoid,
    Submonoid,
    TensorProduct,
    Tilde,
    build_ring_monoid,
    congruence_quotient,
    corrupt_scale_entry,
    direct_product,
    ring_monoid,
    tensor_product,
    trivially_scalable,
)

__all__ = [name for name in dir() if not name.startswith("_")]
