"""Weierstrass preparation and divisibility in truncated power-series rings.

Preparation always acts on the last variable t of the ring.  Writing
f = sum a_i t^i with coefficients in the subring, the prepared degree is
lambda = min{ i : a_i is a unit } (after the maximal p-power is removed),
and f factors as p^mu * unit * distinguished.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import intpoly
from .errors import (BadVariable, Inconclusive, IwasawaError, NotPreparable,
                     PrecisionExhausted)
from .series import PolySeries, is_unit, series_invert


@dataclass(frozen=True)
class WeierstrassForm:
    """Factorization f = p^mu * unit * distinguished, lam = deg(distinguished)."""

    mu: int
    distinguished: PolySeries
    unit: PolySeries
    lam: int

    def reconstruct(self) -> PolySeries:
        ring = self.distinguished.ring
        return (self.unit * self.distinguished).scale(ring.p**self.mu)


def _split_last(f: PolySeries, lam: int):
    """f = t^lam * W + V in the last variable; W, V in the ambient ring."""
    ring = f.ring
    w, v = {}, {}
    for exps, c in f.terms.items():
        if exps[-1] >= lam:
            w[exps[:-1] + (exps[-1] - lam,)] = c
        else:
            v[exps] = c
    return PolySeries(ring, w), PolySeries(ring, v)


def _strip_p_power(f: PolySeries):
    """Divide out the maximal p-power from all coefficients (exact on residues)."""
    mu = f.content_valuation()
    if mu >= f.ring.N:
        raise PrecisionExhausted(
            f"all coefficients vanish mod {f.ring.p}^{f.ring.N}")
    if mu == 0:
        return 0, f
    pm = f.ring.p**mu
    return mu, PolySeries(f.ring, {e: c // pm for e, c in f.terms.items()})


def _unit_index(f: PolySeries) -> int:
    """Minimal last-variable exponent whose coefficient is a unit, or -1."""
    best = -1
    for i, coeff in sorted(f.last_var_profile().items()):
        if is_unit(coeff):
            return i
    return best


def weierstrass_divide(g: PolySeries, f: PolySeries, lam: int):
    """Division g = q*f + r with deg_t(r) < lam, at working precision.

    f must have a unit coefficient at t^lam and non-unit ones below; the
    correction term shrinks inside the maximal ideal, so the loop ends
    after at most N + D rounds.
    """
    ring = f.ring
    w, v = _split_last(f, lam)
    winv = series_invert(w)
    q = PolySeries.zero(ring)
    rem = g
    for _ in range(ring.N + ring.D + 2):
        high, low = _split_last(rem, lam)
        if high.is_zero():
            return q, rem
        step = winv * high
        q = q + step
        rem = low - step * v
    raise IwasawaError("weierstrass division failed to converge")  # unreachable


def weierstrass_prepare(f: PolySeries) -> WeierstrassForm:
    """Factor f as p^mu * unit * distinguished in the last variable.

    Raises PrecisionExhausted when f vanishes mod p^N, and NotPreparable
    when, after removing p^mu, no coefficient of the last variable is a
    unit (possible only for d >= 2; such inputs take the lifted
    integer-polynomial route instead).
    """
    ring = f.ring
    if ring.d < 1:
        raise BadVariable("preparation needs at least one variable")
    mu, f1 = _strip_p_power(f)
    lam = _unit_index(f1)
    if lam < 0:
        raise NotPreparable("no unit coefficient in the prepared variable")
    tlam = PolySeries(ring, {(0,) * (ring.d - 1) + (lam,): 1})
    q, r = weierstrass_divide(tlam, f1, lam)
    if not is_unit(q):
        raise IwasawaError("division produced a non-unit quotient")  # unreachable
    dist = tlam - r
    unit = series_invert(q)
    return WeierstrassForm(mu, dist, unit, lam)


def series_divides(f: PolySeries, g: PolySeries):
    """Decide whether g = q*f has a solution q modulo (p^N, degree >= D).

    Returns (True, q) or (False, None).  Raises Inconclusive when the
    answer is blocked purely by precision (f indistinguishable from 0).

    d = 1 reduces to Weierstrass division and is complete at the working
    precision; d >= 2 goes through exact division of lifted integer
    representatives after stripping power-series units.
    """
    if f.ring != g.ring:
        raise IwasawaError(f"ring mismatch: {f.ring} vs {g.ring}")
    ring = f.ring
    if g.is_zero():
        return True, PolySeries.zero(ring)
    if f.is_zero():
        raise Inconclusive("divisor indistinguishable from 0 at this precision")

    if ring.d == 0:
        vf = f.content_valuation()
        vg = g.content_valuation()
        if vf > vg:
            return False, None
        cf, cg = f.constant_value(), g.constant_value()
        unit = cf // ring.p**vf
        q = (cg // ring.p**vf) * pow(unit, -1, ring.modulus)
        return True, PolySeries.const(ring, q)

    if ring.d == 1:
        form = weierstrass_prepare(f)
        if g.content_valuation() < form.mu:
            return False, None
        pm = ring.p**form.mu
        g1 = PolySeries(ring, {e: c // pm for e, c in g.terms.items()})
        q, r = weierstrass_divide(g1, form.distinguished, form.lam)
        # r is determined mod p^(N - mu): below that it is precision noise
        if any(c % ring.p**(ring.N - form.mu) for c in r.terms.values()):
            return False, None
        witness = q * series_invert(form.unit)
        return True, witness

    fl = intpoly.lift_balanced(f)
    gl = intpoly.lift_balanced(g)
    pv_f, cf, units_f, core_f = intpoly.ip_split_units(fl, ring.names, ring.p)
    pv_g, cg, units_g, core_g = intpoly.ip_split_units(gl, ring.names, ring.p)
    if pv_f > pv_g:
        return False, None
    core_fp = intpoly.ip_product(core_f, ring.d)
    core_gp = intpoly.ip_product(core_g, ring.d)
    quot = intpoly.ip_divides(core_fp, core_gp, ring.names)
    if quot is None:
        return False, None
    witness = intpoly.ip_rational_to_ring(quot, ring)
    witness = witness.scale(ring.p**(pv_g - pv_f))
    witness = witness.scale(cg * pow(cf, -1, ring.modulus))
    witness = witness * intpoly.reduce_mod(intpoly.ip_product(units_g, ring.d), ring)
    witness = witness * series_invert(
        intpoly.reduce_mod(intpoly.ip_product(units_f, ring.d), ring))
    return True, witness
