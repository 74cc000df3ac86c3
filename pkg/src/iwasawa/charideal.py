"""Characteristic ideals in canonical divisor form.

The ideal of a presented torsion module is the divisorial hull of its
0-th Fitting ideal: all maximal minors of the exact integer relation
matrix, the gcd over the rationals of their p-depleted primitive parts,
the common p-power content as the mu invariant, and unit factors
stripped.  For one variable the polynomial part is additionally stored as
its distinguished polynomial, which removes all unit ambiguity from
equality tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import intpoly
from .errors import (DegreeCapExceeded, IwasawaError, NonTorsion,
                     PrecisionExhausted, RingMismatch)
from .grobner import exact_gbasis
from .presentations import PresentedModule
from .series import PolySeries, RingDescriptor, render_poly
from .weierstrass import series_divides, weierstrass_prepare

# above this minor count the relation columns are first replaced by an
# exact Groebner basis of their span (same module, same Fitting ideal)
_MINOR_BUDGET = 20000


@dataclass(frozen=True)
class CharDivisor:
    """Canonical form p^mu * poly of a characteristic ideal.

    poly is a primitive integer polynomial with positive grevlex-leading
    coefficient and no unit factors; is_zero marks the zero ideal of a
    non-torsion module (then mu = 0 and poly = 1 as placeholders).
    dist is the distinguished form of poly for d = 1 rings.
    """

    ring: RingDescriptor
    is_zero: bool
    mu: int
    poly: tuple  # sorted ((exps, coeff), ...) of the integer polynomial
    dist: PolySeries | None = None
    factors: tuple = ()  # ((ipoly items, multiplicity), ...)

    def poly_dict(self) -> dict:
        return dict(self.poly)

    def is_unit_ideal(self) -> bool:
        return (not self.is_zero) and self.mu == 0 and self.poly_degree() == 0

    def poly_degree(self) -> int:
        return intpoly.ip_total_degree(self.poly_dict())

    def lam(self) -> int:
        """Degree of the distinguished part (d = 1 only)."""
        if self.ring.d != 1 or self.dist is None:
            raise IwasawaError("lambda is defined for d = 1 divisors")
        return self.dist.total_degree()

    def generator(self) -> PolySeries:
        """p^mu * poly reduced into the ring."""
        f = intpoly.reduce_mod(self.poly_dict(), self.ring)
        return f.scale(self.ring.p**self.mu)

    def __repr__(self):
        return render_divisor(self)


def _freeze(ip: dict) -> tuple:
    return tuple(sorted(ip.items()))


def unit_divisor(ring: RingDescriptor) -> CharDivisor:
    dist = PolySeries.const(ring, 1) if ring.d == 1 else None
    return CharDivisor(ring, False, 0, _freeze(intpoly.ip_const(ring.d, 1)), dist)


def zero_divisor(ring: RingDescriptor) -> CharDivisor:
    return CharDivisor(ring, True, 0, _freeze(intpoly.ip_const(ring.d, 1)), None)


def divisor_from_poly(ring: RingDescriptor, ip: dict, mu: int = 0) -> CharDivisor:
    """Normalize p^mu * ip: extract p-content, drop unit factors, fix signs."""
    if not ip:
        return zero_divisor(ring)
    pv, _, _, core = intpoly.ip_split_units(ip, ring.names, ring.p)
    mu += pv
    poly = intpoly.ip_product(core, ring.d)
    dist = None
    if ring.d == 1:
        if intpoly.ip_total_degree(poly) == 0:
            dist = PolySeries.const(ring, 1)
        else:
            form = weierstrass_prepare(intpoly.reduce_mod(poly, ring))
            dist = form.distinguished
    return CharDivisor(ring, False, mu, _freeze(poly), dist,
                       tuple((_freeze(f), m) for f, m in core))


def render_divisor(x: CharDivisor) -> str:
    if x.is_zero:
        return "0"
    return f"p^{x.mu} * ({render_poly(x.poly_dict(), x.ring.names)})"


def _compatible(a: CharDivisor, b: CharDivisor):
    if (a.ring.p, a.ring.names) != (b.ring.p, b.ring.names):
        raise RingMismatch(f"{a.ring} vs {b.ring}")


def divisors_equal(a: CharDivisor, b: CharDivisor) -> bool:
    """Canonical-form equality at working precision.

    d = 1 compares mu and the distinguished polynomial mod p^(N - mu)
    (unique by preparation); other dimensions compare the normalized
    integer polynomial generators.
    """
    _compatible(a, b)
    if a.is_zero or b.is_zero:
        return a.is_zero == b.is_zero
    if a.mu != b.mu:
        return False
    if a.ring.d == 0:
        return True
    if a.ring.d == 1:
        q = a.ring.p ** max(1, a.ring.N - a.mu)
        ta, tb = a.dist.terms, b.dist.terms
        return all((ta.get(e, 0) - tb.get(e, 0)) % q == 0
                   for e in set(ta) | set(tb))
    return a.poly == b.poly


def divisor_mul(a: CharDivisor, b: CharDivisor) -> CharDivisor:
    """Product divisor: mu adds, polynomial parts multiply."""
    _compatible(a, b)
    if a.is_zero or b.is_zero:
        return zero_divisor(a.ring)
    poly = intpoly.ip_mul(a.poly_dict(), b.poly_dict())
    dist = None
    if a.ring.d == 1:
        if a.dist.total_degree() + b.dist.total_degree() >= a.ring.D:
            raise DegreeCapExceeded("product of distinguished parts exceeds D")
        dist = a.dist * b.dist
    merged: dict = {}
    for f, m in a.factors + b.factors:
        merged[f] = merged.get(f, 0) + m
    return CharDivisor(a.ring, False, a.mu + b.mu, _freeze(poly), dist,
                       tuple(sorted(merged.items())))


def divisor_divides(a: CharDivisor, b: CharDivisor) -> bool:
    """True iff the ideal of b is contained in the ideal of a."""
    return divisor_quotient(a, b) is not None


def divisor_quotient(a: CharDivisor, b: CharDivisor) -> CharDivisor | None:
    """The cofactor c with b = c * a, or None when a does not divide b.

    Exact integer division is tried first; for d <= 1 a failure falls back
    to Weierstrass division at working precision, which tolerates mod-p^N
    differences between generators of the same ideal.
    """
    _compatible(a, b)
    if b.is_zero:
        return zero_divisor(a.ring)
    if a.is_zero:
        return None
    if a.mu > b.mu:
        return None
    mu = b.mu - a.mu
    quot = intpoly.ip_divides(a.poly_dict(), b.poly_dict(), a.ring.names)
    if quot is not None:
        den = 1
        for c in quot.values():
            den = den * Fraction(c).denominator // _gcd(den, Fraction(c).denominator)
        if den % a.ring.p != 0:
            ip = {e: int(Fraction(c) * den) for e, c in quot.items()}
            return divisor_from_poly(a.ring, ip, mu)
    if a.ring.d <= 1:
        fa = intpoly.reduce_mod(a.poly_dict(), a.ring)
        fb = intpoly.reduce_mod(b.poly_dict(), b.ring)
        ok, witness = series_divides(fa, fb)
        if ok:
            return divisor_from_poly(a.ring, intpoly.lift_balanced(witness), mu)
    return None


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def project_divisor(x: CharDivisor, k: int) -> CharDivisor:
    """Image under t_k -> 0 (k the last variable), renormalized.

    A vanishing projection yields the zero ideal, which is a valid output
    (a (t_k) factor in the generator), not an error.
    """
    if x.ring.d == 0 or k != x.ring.d:
        raise IwasawaError(f"projection removes the last variable, got {k}")
    sub = x.ring.subring()
    if x.is_zero:
        return zero_divisor(sub)
    h = intpoly.ip_project_last(x.poly_dict())
    if not h:
        return zero_divisor(sub)
    return divisor_from_poly(sub, h, x.mu)


def _all_minors(rows, k: int, d: int):
    m = len(rows[0]) if rows else 0
    for combo in itertools.combinations(range(m), k):
        sub = [[rows[i][j] for j in combo] for i in range(k)]
        det = intpoly.matrix_det(sub, d)
        if det:
            yield det


def _working_columns(M: PresentedModule):
    """Nonzero, deduplicated exact columns; Groebner-compressed when the
    minor count would blow past the budget (same span, same Fitting ideal)."""
    cols = [c for c in dict.fromkeys(M.columns) if any(c)]
    n, k = len(cols), M.gens
    if n <= k:
        return [tuple(dict(e) for e in c) for c in cols]
    count = 1
    for i in range(k):
        count = count * (n - i) // (i + 1)
    dicts = [tuple(dict(e) for e in c) for c in cols]
    if count > _MINOR_BUDGET:
        quads = exact_gbasis(dicts, M.ring.d, k, M.ring.D, M.ring.p)
        vecs = []
        for f, _, _, _ in quads:
            col = [{} for _ in range(k)]
            for (pos, exps), c in f.items():
                col[pos][exps] = c
            vecs.append(tuple(col))
        dicts = [v for v in vecs if any(v)]
    return dicts


def char_ideal(M: PresentedModule) -> CharDivisor:
    """Characteristic ideal of M, zero when M is not torsion.

    All k x k minors of the exact integer relation matrix feed a gcd over
    the rationals; the common p-power content becomes mu and unit factors
    are stripped.  The gcd divides every minor by construction, which is
    the residual certificate of the divisorial hull.  When every nonzero
    minor vanishes mod p^N the module is indistinguishable from a
    non-torsion one at this precision and PrecisionExhausted is raised.
    """
    ring = M.ring
    if M.gens == 0:
        return unit_divisor(ring)
    cols = _working_columns(M)
    if len(cols) < M.gens:
        return zero_divisor(ring)  # fewer relations than generators
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(M.gens)]
    minors = list(_all_minors(rows, M.gens, ring.d))
    if not minors:
        return zero_divisor(ring)  # rank-deficient relation matrix
    mu = min(intpoly.ip_content_pval(mi, ring.p) for mi in minors)
    if mu >= ring.N:
        raise PrecisionExhausted(
            "all minors vanish mod p^N; retry at higher precision")
    prims = [intpoly.ip_primitive(mi)[1] for mi in minors]
    if len(prims) == 1:
        g = prims[0]
    else:
        g = intpoly.ip_gcd(prims, ring.names)
    return divisor_from_poly(ring, g, mu)


def is_pseudo_null(M: PresentedModule) -> bool:
    """True iff the characteristic ideal is the unit ideal."""
    return char_ideal(M).is_unit_ideal()


def mu_lambda(M: PresentedModule):
    """(mu, lambda) of a torsion module over a one-variable ring."""
    if M.ring.d != 1:
        raise IwasawaError("mu/lambda invariants are defined for d = 1")
    ch = char_ideal(M)
    if ch.is_zero:
        raise NonTorsion("module is not torsion; mu/lambda undefined")
    return ch.mu, ch.lam()
