"""Arakelov class group toolkit: reduced divisors, infrastructure
navigation, the h0 size function, and class group / regulator computation
with quadratic-field oracles."""

__version__ = "0.1.0"

from .field import (NumberField, FieldElement, EmbeddingVector, build_field,
                    embed, inner, algebra_norm_trace, log_abs)
from .ideals import (FractionalIdeal, PrimeIdeal, hnf_from_generators,
                     ideal_mul, ideal_inv, contains, split_prime)
from .lattice import (RealLattice, lll_reduce, enumerate_short,
                      shortest_vector, minimal_test)
from .divisors import (ArakelovDivisor, ReducedDivisor, divisor_of_ideal,
                       principal_divisor, trivial_divisor, reduce_divisor,
                       is_reduced, compose, invert, torus_norm,
                       oriented_torus_norm, jump, scan, h0, hermite_gamma)
from .quadratic import (QuadraticForm, is_reduced_form, gauss_reduce,
                        form_of_divisor, divisor_of_form, successor,
                        enumerate_reduced_forms, class_number_oracle,
                        cf_regulator)
from .classgroup import (FactorBase, Relation, ClassGroupResult,
                         estimate_residue, target_volume, build_factor_base,
                         find_relation, assemble, buchmann,
                         deterministic_pic, list_smooth_component)

__all__ = [
    "NumberField", "FieldElement", "EmbeddingVector", "build_field",
    "embed", "inner", "algebra_norm_trace", "log_abs",
    "FractionalIdeal", "PrimeIdeal", "hnf_from_generators",
    "ideal_mul", "ideal_inv", "contains", "split_prime",
    "RealLattice", "lll_reduce", "enumerate_short",
    "shortest_vector", "minimal_test",
    "ArakelovDivisor", "ReducedDivisor", "divisor_of_ideal",
    "principal_divisor", "trivial_divisor", "reduce_divisor",
    "is_reduced", "compose", "invert", "torus_norm",
    "oriented_torus_norm", "jump", "scan", "h0", "hermite_gamma",
    "QuadraticForm", "is_reduced_form", "gauss_reduce",
    "form_of_divisor", "divisor_of_form", "successor",
    "enumerate_reduced_forms", "class_number_oracle", "cf_regulator",
    "FactorBase", "Relation", "ClassGroupResult",
    "estimate_residue", "target_volume", "build_factor_base",
    "find_relation", "assemble", "buchmann",
    "deterministic_pic", "list_smooth_component",
]
