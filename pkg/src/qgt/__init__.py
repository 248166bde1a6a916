"""Explicit U_q(gl_n) Gelfand-Tsetlin modules from admissible relation sets."""
from .qcoeff import (ExactField, ExactScalar, ExtendedExponent, NumericConfig, NumericField,
                     PoleError, evaluate, q_number, q_paren_factorial)
from .tableaux import Entry, Relation, Tableau, delta, is_standard, satisfies_set, shift
from .relations import (RelationSet, closure, has_cross, implies, indecomposable_components,
                        is_admissible, maximal_set, rr_applicable, rr_remove, standard_set)
from .gtmodule import (Basis, DegenerateModuleError, LinearCombination, ModuleError, ModuleSpec,
                       NotRealizationError, SparseMatrix, character, gamma, highest_weight_tableau,
                       standard_module, weight)
from .verify import (VerificationReport, check_defining_relations, check_gamma_separation,
                     is_highest_weight_vector, is_irreducible, weyl_dimension)

__version__ = "0.1.0"
