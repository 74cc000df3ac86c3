"""Seeded random generators for the property suites.

All randomness flows through an explicit random.Random instance so the
suites (and the CLI selftest) are reproducible bit for bit.
"""

from __future__ import annotations

import random

from . import intpoly
from .presentations import (ElementaryModule, PresentedModule, cyclic_module,
                            direct_sum, elementary_to_presentation,
                            module_from_rows)
from .series import PolySeries, RingDescriptor, make_ring
from .towers import Tower


def random_ipoly(rng: random.Random, d: int, max_deg: int, max_coeff: int,
                 allow_zero=False) -> dict:
    """Sparse integer polynomial with total degree <= max_deg."""
    while True:
        out = {}
        for _ in range(rng.randint(1, max_deg + 2)):
            exps = [0] * d
            budget = rng.randint(0, max_deg)
            for _ in range(budget):
                exps[rng.randrange(d)] += 1
            c = rng.randint(-max_coeff, max_coeff)
            if c:
                e = tuple(exps)
                out[e] = out.get(e, 0) + c
        out = {e: c for e, c in out.items() if c}
        if out or allow_zero:
            return out


def _is_unit_ip(ip: dict, p: int) -> bool:
    return intpoly.ip_constant(ip) % p != 0


def random_nonunit_ipoly(rng, d, max_deg, max_coeff, p) -> dict:
    """Nonzero, non-unit integer polynomial (constant term divisible by p)."""
    while True:
        ip = random_ipoly(rng, d, max_deg, max_coeff)
        const = intpoly.ip_constant(ip)
        if const % p != 0:
            ip = dict(ip)
            zero = (0,) * d
            ip[zero] = const - const % p
            ip = {e: c for e, c in ip.items() if c}
        if ip and intpoly.ip_total_degree(ip) > 0:
            return ip


def random_pseudo_null_pair(rng, ring: RingDescriptor):
    """B/(f, g) with f, g integer polynomials of degree <= 3 and unit gcd.

    The gcd condition is checked on the lifted representatives: after
    stripping power-series unit factors nothing common may remain.
    """
    p, d = ring.p, ring.d
    while True:
        f = random_nonunit_ipoly(rng, d, 3, 6, p)
        g = random_nonunit_ipoly(rng, d, 3, 6, p)
        gcd = intpoly.ip_gcd([f, g], ring.names)
        _, _, _, core = intpoly.ip_split_units(gcd, ring.names, p)
        if core:
            continue
        # both must also be p-free (a shared p-power breaks unit gcd)
        if intpoly.ip_content_pval(f, p) > 0 and intpoly.ip_content_pval(g, p) > 0:
            continue
        return cyclic_module(ring, [f, g])


def random_square_presentation(rng, ring: RingDescriptor, size: int,
                               inject_t_factor=False) -> PresentedModule:
    """size x size torsion presentation with integer-polynomial entries.

    With inject_t_factor the first column is multiplied by the last
    variable, putting a (t) factor into the determinant (the zero case of
    the descent identity).
    """
    d = ring.d
    t_ip = {(0,) * (d - 1) + (1,): 1}
    while True:
        rows = [[random_ipoly(rng, d, 2, 4, allow_zero=True)
                 for _ in range(size)] for _ in range(size)]
        det = intpoly.matrix_det(rows, d)
        if not det:
            continue
        if intpoly.ip_content_pval(det, ring.p) >= ring.N:
            continue
        if inject_t_factor:
            for i in range(size):
                rows[i][0] = intpoly.ip_mul(rows[i][0], t_ip)
        if max(intpoly.ip_total_degree(e) for row in rows for e in row
               if e) >= ring.D:
            continue
        return module_from_rows(ring, rows)


def random_elementary_d1(rng, ring: RingDescriptor) -> PresentedModule:
    """Random elementary module over a one-variable ring.

    Summand generators are p-powers (exponent <= 2) and distinguished
    polynomials; the total lambda stays small enough for the default
    growth grid to fit under the degree cap.
    """
    p = ring.p
    summands = []
    n = rng.randint(1, 3)
    lam_budget = 3
    for _ in range(n):
        if rng.random() < 0.4 or lam_budget == 0:
            a = rng.randint(1, 2)
            summands.append((PolySeries.const(ring, p**a), 1))
        else:
            deg = rng.randint(1, min(2, lam_budget))
            lam_budget -= deg
            terms = {(deg,): 1}
            for i in range(deg):
                c = rng.randint(0, 2) * p
                if c:
                    terms[(i,)] = c
            summands.append((PolySeries(ring, terms), 1))
    E = ElementaryModule(ring, tuple(summands))
    return elementary_to_presentation(E)


def constant_tower(rng, p: int, N: int, D: int, d_max: int,
                   base_deg: int = 3) -> Tower:
    """Tower M_d = Lambda_d/(f) with f a random non-unit in t1 only.

    t_d then acts freely at every level, so both tower hypotheses hold
    with exact coherence.
    """
    f1 = random_nonunit_ipoly(rng, 1, base_deg, 6, p)
    levels = []
    for d in range(1, d_max + 1):
        ring = make_ring(p, N, D, names=tuple(f"t{i+1}" for i in range(d)))
        f = {e + (0,) * (d - 1): c for e, c in f1.items()}
        levels.append(cyclic_module(ring, [f]))
    return Tower(1, tuple(levels))


def direct_sum_tower(t1: Tower, t2: Tower) -> Tower:
    levels = tuple(direct_sum(a, b) for a, b in zip(t1.levels, t2.levels))
    return Tower(t1.start_level, levels)
