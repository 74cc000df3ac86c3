"""Exact characteristic-ideal computations over Z_p[[t1,...,td]].

Modules over iterated p-adic power-series rings are modeled at an
explicit working precision: coefficients mod p^N, total degree < D.
The library computes characteristic ideals of finitely presented torsion
modules through exact integer-polynomial Fitting minors, verifies the
descent identities relating a module to its t-torsion and t-quotient,
assembles limit ideals along module towers, and cross-checks invariants
with an independent Smith-normal-form growth oracle.
"""

__version__ = "0.1.0"

from .charideal import (CharDivisor, char_ideal, divisor_divides, divisor_mul,
                        divisor_quotient, divisors_equal, divisor_from_poly,
                        is_pseudo_null, mu_lambda, project_divisor,
                        render_divisor, unit_divisor, zero_divisor)
from .descent import (DescentReport, descent_check, pseudo_null_identity_check,
                      pseudo_null_via_descent)
from .errors import (BadVariable, DegreeCapExceeded, HypothesisViolated,
                     Inconclusive, IwasawaError, NonTorsion, NonUnit,
                     NotPreparable, NotPseudoNull, PrecisionExhausted,
                     RingMismatch, SchemaError, SizeLimit, UnitGenerator,
                     UnstableFit)
from .growth import FiniteQuotientSpec, finite_quotient_order, fit_mu_lambda
from .grobner import GBasis, MonomialOrder, gbasis, normal_form, syzygies
from .padic import PadicScalar, padic_invert
from .presentations import (ElementaryModule, PresentedModule, cyclic_module,
                            direct_sum, elementary_to_presentation,
                            free_module, is_zero_module, module_from_rows,
                            module_from_series, module_rank, quotient_by_t,
                            t_torsion, zero_module)
from .series import (PolySeries, RingDescriptor, is_unit, make_ring,
                     parse_int_poly, parse_poly, project, render_poly,
                     render_series, series_invert, series_mul)
from .towers import (LevelReport, Tower, TowerReport, check_hypotheses,
                     multiplicativity_check, pro_char_ideal)
from .weierstrass import WeierstrassForm, series_divides, weierstrass_prepare

__all__ = [name for name in dir() if not name.startswith("_")]
