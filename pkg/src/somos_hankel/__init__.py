"""Exact Hankel-determinant solutions of the Somos-4, Somos-5 and extended
A1 Q-system recurrences, with certification of their Laurent and
polynomiality properties."""

from .errors import (DimensionTooLarge, InternalInconsistency, NotDivisible,
                     NonzeroPivotViolation, SomosHankelError, VarTableMismatch,
                     ZeroAtNegativeExponent, ZeroPivot, ZeroTerm)
from .genfun import (CoeffSeq, FamilyParams, a1q_entries, a1q_entries_alt,
                     a1q_shift_data, series_entries, somos4_entries,
                     somos4_family_initials, somos4_theorem_data,
                     somos5_entries)
from .hankel import (HankelSpec, SquareMatrix, det_bareiss, det_laplace,
                     hankel_det, hankel_matrix, shifted_hankel_run)
from .polyverify import (SOMOS4_CASES, SOMOS5_CASES, XYZ_CASE,
                         CoprimalityVerdict, PolyCase, case_sequence,
                         corollary_determinant_check, corollary_entries,
                         gcd_probe, strong_laurent_consequence_check,
                         verify_polynomial_case, xyz_case_report)
from .qtransform import (FractionContext, RingFraction, SXState, SXTrajectory,
                         sx_closed_identity_check, sx_hankel_product,
                         sx_pivot_recursion_check, sx_shift_transform_check,
                         sx_step, sx_structure_check)
from .report import CheckItem, VerdictReport
from .ring import (ClassReport, GaussianRational, LaurentPoly,
                   TruncatedSeries, VarTable, default_table, lp_add,
                   lp_classify, lp_eval, lp_exact_div, lp_mul,
                   series_compose_fe, series_fe_residual, sqrt_xyz_table)
from .somos import (A1QParams, BTParams, InvariantValue, Somos5Params,
                    SomosParams, a1q_seq, a1q_somos4_embedding_check,
                    a1q_three_term_check, check_bt_pair,
                    even_elimination_check, induced_somos4_params,
                    invariant_T, invariant_Ttilde, invariant_profile,
                    merge_even_odd, scaled_a1q, somos4_residual, somos4_seq,
                    somos5_seq, split_even_odd)

__version__ = "0.1.0"
