"""Graded Lie, associative, Poisson and Jordan superalgebras generated by pivot derivations
of a truncated Grassmann algebra, with exact generation, series and identity checks."""
from .field import QQ, GF, Field, PrimeField, field_from_string
from .algebra import Algebra, Element, StructureError, TableAlgebra
from .grassmann import Grassmann, SuperTensor, VarTable, merge_sign, mono_mul, partial
from .operators import (Inconclusive, Operator, OperatorAlgebra, SuperDerivation, ad_nil_index, apply,
                        compose, derivation_to_operator, operator_to_derivation, supercommutator_op)
from .generate import (DimensionTable, GradedBasis, dimension_table, generate_assoc, generate_jordan,
                       generate_lie, generate_poisson, growth_function, periodicity_probe)
from .doubles import (HamiltonianPoisson, JordanDouble, KantorDouble, PlusAlgebra, TrivialPoisson,
                      WreathProduct, d_map, hamiltonian, kantor_mul, poisson_tensor, trivial_poisson, wreath_mul)
from .identities import (Exhaustive, IdentityReport, Sampled, check_jordan_super, check_leibniz,
                         check_super_jacobi)
from .series import TruncatedSeries, gk_slope, hilbert, jordan_transfer, transfer_consistency
from .catalog import (build, m11_check, pivot_abc, pivot_square_check, pivot_v, poisson_ABC, recursion_check,
                      shift_tau)

__version__ = "0.1.0"
