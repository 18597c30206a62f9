"""Freeness of central hyperplane arrangements via generic initial ideals
and sectional matrices of the Jacobian ideal, with converters between
exponents, Betti tables, lex-segment ideals and explicit free arrangements.
"""

from .polyring import (LESS, EQUAL, GREATER, QQ, GF, DimensionError,
                       LinearChange, Polynomial, PowerProduct,
                       apply_linear_change, cmp_degrevlex, multiply,
                       partial_derivative, variables)
from .monomial import (INFINITE, BettiTable, LexSegmentShape, MonomialIdeal,
                       NotStronglyStableError, SectionalMatrix,
                       StronglyStableIdeal, betti_eliahou_kervaire,
                       borel_closure, codimension, contains, is_cm_codim2_stable,
                       is_cohen_macaulay, is_strongly_stable, minimalize,
                       reduction_number, regularity_stable, sectional_matrix,
                       triangle_equality)
from .groebner import (DegreeCapExceeded, GroebnerBasis, buchberger,
                       hilbert_function, leading_term_ideal, normal_form,
                       s_polynomial)
from .gin import (GenericityExhaustedError, GinCertificate, GinConfig,
                  random_linear_change, rgin)
from .arrangement import (Arrangement, ArrangementError, ConjectureReport,
                          ExponentVector, FreenessReport,
                          InternalConsistencyError, NotFreeRginError,
                          RealizabilityVerdict, ValidationInfo, analyze,
                          check_conjecture_Z, defining_polynomial,
                          exponents_from_rgin, is_free_via_rgin,
                          is_free_via_sectional, jacobian_ideal,
                          realizable_as_free, rgin_from_exponents,
                          supersolvable_from_exponents, validate)

__version__ = "0.1.0"
