"""Exact integer-polynomial representatives of mod-p^N polynomials.

The characteristic-ideal pipeline lifts relation entries once, via the
balanced representative in (-p^N/2, p^N/2], then works exactly over Z
(minors, contents, gcds, factorization).  Results are only meaningful
mod p^N, which is all the truncated model promises.
"""

from __future__ import annotations

import math
from functools import reduce as _reduce

import sympy
from sympy import Poly, Symbol

from .errors import IwasawaError
from .padic import pval
from .series import PolySeries, RingDescriptor, grevlex_key

# An "ipoly" is a dict mapping exponent tuples to nonzero Python ints.


def lift_balanced(f: PolySeries) -> dict:
    """Balanced integer lift: residue c becomes c or c - p^N, whichever is smaller."""
    q = f.ring.modulus
    half = q // 2
    return {e: (c if c <= half else c - q) for e, c in f.terms.items()}


def reduce_mod(ip: dict, ring: RingDescriptor) -> PolySeries:
    return PolySeries(ring, dict(ip))


def ip_is_zero(ip: dict) -> bool:
    return not ip


def ip_const(d: int, c: int) -> dict:
    return {(0,) * d: c} if c else {}

def ip_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        elif e in out:
            del out[e]
    return out


def ip_neg(a: dict) -> dict:
    return {e: -c for e, c in a.items()}


def ip_mul(a: dict, b: dict) -> dict:
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def ip_total_degree(a: dict) -> int:
    return max((sum(e) for e in a), default=0)


def ip_constant(a: dict) -> int:
    for e, c in a.items():
        if not any(e):
            return c
    return 0


def ip_project_last(a: dict) -> dict:
    """Substitute 0 for the last variable and drop that coordinate."""
    return {e[:-1]: c for e, c in a.items() if e[-1] == 0}


def ip_content_pval(a: dict, p: int) -> int:
    """v_p of the integer content; raises on the zero polynomial."""
    if not a:
        raise IwasawaError("zero polynomial has no content")
    v = None
    for c in a.values():
        w = pval(abs(c), p, 1 << 62)
        v = w if v is None else min(v, w)
        if v == 0:
            return 0
    return v


def ip_primitive(a: dict) -> tuple:
    """(content, primitive part) with the grevlex-leading coefficient positive."""
    if not a:
        return 0, {}
    g = 0
    for c in a.values():
        g = math.gcd(g, abs(c))
    lead = max(a, key=grevlex_key)
    sign = 1 if a[lead] > 0 else -1
    return sign * g, {e: c // (sign * g) for e, c in a.items()}


# -- sympy bridge ------------------------------------------------------------

_SYMBOL_CACHE: dict = {}


def _symbols(names) -> tuple:
    key = tuple(names)
    if key not in _SYMBOL_CACHE:
        _SYMBOL_CACHE[key] = tuple(Symbol(n) for n in names) if names else ()
    return _SYMBOL_CACHE[key]


def to_sympy(a: dict, names):
    syms = _symbols(names)
    if not syms:
        return sympy.Integer(ip_constant(a))
    if not a:
        return sympy.Integer(0)
    return Poly.from_dict(a, *syms, domain="ZZ").as_expr()


def from_sympy(expr, names) -> dict:
    syms = _symbols(names)
    if not syms:
        c = int(expr)
        return ip_const(0, c)
    poly = Poly(expr, *syms, domain="QQ")
    out = {}
    for mono, coeff in poly.terms():
        if coeff.q != 1:
            raise IwasawaError(f"non-integer coefficient {coeff} in lift")
        out[tuple(int(x) for x in mono)] = int(coeff)
    return {e: c for e, c in out.items() if c}


def ip_gcd(polys, names) -> dict:
    """gcd over Z of a list of nonzero ipolys (primitive, positive lead)."""
    exprs = [to_sympy(a, names) for a in polys]
    g = _reduce(sympy.gcd, exprs)
    out = from_sympy(g, names)
    _, prim = ip_primitive(out)
    return prim


def ip_factor_list(a: dict, names) -> list:
    """Irreducible factorization over Q as [(primitive ipoly, multiplicity)].

    The integer content is dropped (it must be handled separately).
    Factors are sorted deterministically.
    """
    if not a:
        raise IwasawaError("cannot factor 0")
    _, factors = sympy.factor_list(to_sympy(a, names))
    out = []
    for f, mult in factors:
        ip = from_sympy(f, names)
        if ip_total_degree(ip) == 0:
            continue  # rational content, handled by the caller
        _, prim = ip_primitive(ip)
        out.append((prim, int(mult)))
    out.sort(key=lambda fm: (ip_total_degree(fm[0]),
                             tuple(sorted(fm[0].items()))))
    return out


def ip_split_units(a: dict, names, p: int) -> tuple:
    """Factor out everything invertible in Z_p[[t1..td]].

    Returns (pv, c, units, core) with a = p^pv * c * prod(units) * prod(core),
    where c is a p-free integer, units are the irreducible factors whose
    constant term is a p-unit, and core the remaining (non-unit) factors.
    """
    if not a:
        raise IwasawaError("cannot split 0")
    content, prim = ip_primitive(a)
    pv = 0
    c = content
    while c % p == 0:
        c //= p
        pv += 1
    units, core = [], []
    for f, mult in ip_factor_list(prim, names):
        if ip_constant(f) % p != 0:
            units.append((f, mult))
        else:
            core.append((f, mult))
    return pv, c, units, core


def ip_product(factors, d: int) -> dict:
    out = ip_const(d, 1)
    for f, mult in factors:
        for _ in range(mult):
            out = ip_mul(out, f)
    return out


def ip_divides(a: dict, b: dict, names) -> dict | None:
    """Exact quotient b/a over Q when it exists (None otherwise).

    Rational coefficients are allowed in the quotient; the caller decides
    whether their denominators are units downstream.
    """
    if not a:
        raise IwasawaError("division by zero polynomial")
    if not b:
        return {}
    syms = _symbols(names)
    if not syms:
        ca, cb = ip_constant(a), ip_constant(b)
        from fractions import Fraction
        fr = Fraction(cb, ca)
        return {(): fr}
    q, r = sympy.div(to_sympy(b, names), to_sympy(a, names), *syms, domain="QQ")
    if r != 0:
        return None
    poly = Poly(q, *syms, domain="QQ")
    from fractions import Fraction
    return {tuple(int(x) for x in mono): Fraction(int(c.p), int(c.q))
            for mono, c in poly.terms()}


def ip_rational_to_ring(qd: dict, ring: RingDescriptor) -> PolySeries:
    """Map a rational-coefficient quotient into the ring (denominators must be p-units)."""
    from fractions import Fraction
    q = ring.modulus
    out = {}
    for e, c in qd.items():
        fr = Fraction(c)
        if fr.denominator % ring.p == 0:
            raise IwasawaError("denominator divisible by p; quotient not in the ring")
        out[e] = fr.numerator * pow(fr.denominator, -1, q)
    return PolySeries(ring, out)


def matrix_det(rows: list, d: int) -> dict:
    """Determinant of a square matrix of ipolys by cofactor expansion."""
    n = len(rows)
    if n == 0:
        return ip_const(d, 1)
    if n == 1:
        return dict(rows[0][0])
    if n == 2:
        return ip_add(ip_mul(rows[0][0], rows[1][1]),
                      ip_neg(ip_mul(rows[0][1], rows[1][0])))
    total: dict = {}
    sign = 1
    for j in range(n):
        if rows[0][j]:
            minor = [[row[jj] for jj in range(n) if jj != j] for row in rows[1:]]
            term = ip_mul(rows[0][j], matrix_det(minor, d))
            total = ip_add(total, term if sign > 0 else ip_neg(term))
        sign = -sign
    return total


def matrix_rank(rows: list, names) -> int:
    """Rank over the fraction field Q(t1..td), exact."""
    if not rows or not rows[0]:
        return 0
    m = sympy.Matrix([[to_sympy(e, names) for e in row] for row in rows])
    return m.rank()
