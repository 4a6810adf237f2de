"""Exponential matrices over fields: exact verification, char-0 Exp/Log,
and birational classification with machine-checkable witnesses."""

from .birat import (ProjMap, Witness, WitnessStep, sigma_gl2, sigma_lemma56, sigma_quadratic,
                    sigma_reduce, sigma_scaling, verify_chain, verify_equivariance,
                    verify_step)
from .classify import (BirClass, classify, classify_2x2, classify_3x3,
                       classify_char0, equiv_bir, recognize_family)
from .errors import ExpmatError
from .families import FamilyForm, a11, a12, a21, j3, upper2
from .field import FieldCtx, Scalar, field_arith, frobenius, gf, rationals
from .lnd import LinDerivation, derive, flow, sigma_lemma31, sigma_slice
from .matrix import (ExpMatrix, NilMatrix, PolyMatrix, action_of, det_normalize,
                     exp_nilpotent, is_exponential, log_exponential, nilpotent_jordan)
from .oracle import (EnumSpec, brute_conjugate_to_family, brute_gl2_tuple_equiv,
                     brute_linear_equiv, enumerate_family)
from .poly import LocElem, MPoly, Poly, poly_arith
from .ppoly import (PPoly, is_ppoly, ppoly_compose, ppoly_from_poly, reduce_loop,
                    reduce_step, span_canonical)

__version__ = "0.1.0"
