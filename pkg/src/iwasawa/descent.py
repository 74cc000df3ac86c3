"""Descent identities relating a module over A[[t]] to its t-invariants.

For a finitely presented torsion module M over B = A[[t]] the three
divisors Ch_A(M_t), pi(Ch_B(M)) and Ch_A(M/tM) satisfy the product
identity checked here; for pseudo-null modules the outer two collapse and
the identity becomes an equality of torsion and quotient ideals, which in
turn characterizes pseudo-nullity when M/tM is torsion.
"""

from __future__ import annotations

from dataclasses import dataclass

from .charideal import (CharDivisor, char_ideal, divisor_mul, divisors_equal,
                        is_pseudo_null, project_divisor)
from .errors import HypothesisViolated, Inconclusive, NotPseudoNull, PrecisionExhausted
from .presentations import PresentedModule, module_rank, quotient_by_t, t_torsion


@dataclass(frozen=True)
class DescentReport:
    """Outcome of the product identity for one module and variable."""

    ch_torsion: CharDivisor
    ch_projected: CharDivisor
    ch_quotient: CharDivisor
    identity_holds: bool
    zero_case: bool
    rank_info: tuple | None = None  # (rank M_t, rank M/tM) in the zero case


def descent_check(M: PresentedModule, k: int) -> DescentReport:
    """Evaluate Ch_A(M_t) * pi(Ch_B(M)) = Ch_A(M/tM) for the last variable.

    When any of the three ideals is zero all must be (non-torsion case)
    and the two A-modules must have equal generic rank.  A comparison
    blocked by precision raises Inconclusive rather than reporting False.
    """
    try:
        torsion = t_torsion(M, k)
        quotient = quotient_by_t(M, k)
        ch_b = char_ideal(M)
        ch_t = char_ideal(torsion)
        ch_q = char_ideal(quotient)
        ch_p = project_divisor(ch_b, k)
    except Inconclusive:
        raise
    except PrecisionExhausted as exc:
        raise Inconclusive(f"sub-computation at precision limit: {exc}") from exc
    if ch_t.is_zero or ch_p.is_zero or ch_q.is_zero:
        ranks = (module_rank(torsion), module_rank(quotient))
        all_zero = ch_t.is_zero and ch_p.is_zero and ch_q.is_zero
        return DescentReport(ch_t, ch_p, ch_q,
                             all_zero and ranks[0] == ranks[1], True, ranks)
    try:
        holds = divisors_equal(divisor_mul(ch_t, ch_p), ch_q)
    except PrecisionExhausted as exc:
        raise Inconclusive(str(exc)) from exc
    return DescentReport(ch_t, ch_p, ch_q, holds, False, None)


def pseudo_null_identity_check(P: PresentedModule, k: int) -> bool:
    """For pseudo-null P: does Ch_A(P_t) equal Ch_A(P/tP)?"""
    if not is_pseudo_null(P):
        raise NotPseudoNull("module is not pseudo-null over its ring")
    try:
        ch_t = char_ideal(t_torsion(P, k))
        ch_q = char_ideal(quotient_by_t(P, k))
    except Inconclusive:
        raise
    except PrecisionExhausted as exc:
        raise Inconclusive(str(exc)) from exc
    return divisors_equal(ch_t, ch_q)


def pseudo_null_via_descent(M: PresentedModule, k: int) -> bool:
    """Decide pseudo-nullity of M without computing Ch over the big ring.

    Requires M/tM to be torsion over the subring; then M is pseudo-null
    iff Ch_A(M_t) = Ch_A(M/tM).  A unit quotient ideal short-circuits to
    True (quotient pseudo-null forces the module pseudo-null).
    """
    try:
        quotient = quotient_by_t(M, k)
        ch_q = char_ideal(quotient)
        if ch_q.is_zero:
            raise HypothesisViolated("M/tM is not torsion over the subring")
        if ch_q.is_unit_ideal():
            return True
        ch_t = char_ideal(t_torsion(M, k))
        return divisors_equal(ch_t, ch_q)
    except Inconclusive:
        raise
    except PrecisionExhausted as exc:
        raise Inconclusive(str(exc)) from exc
