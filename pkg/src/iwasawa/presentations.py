"""Finitely presented modules over truncated power-series rings.

A module is the cokernel of its generators x relations matrix; columns
are relations.  Entries are stored as exact integer polynomials (the
input class of the artifact), so minors, gcds and syzygies run without
precision loss; the mod-p^N PolySeries view is derived on demand.

Descent operations (quotient by t, t-torsion) remove the last ring
variable and return a presentation over the subring, matching the tower
filtration Lambda_d = Lambda_{d-1}[[t_d]].  Torsion presentations are
computed from exact integer-polynomial syzygies: the polynomial ring sits
flat inside the power-series ring, so these span all power-series
relations and introduce none of the chain ring's precision artifacts.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import intpoly
from .errors import BadVariable, DegreeCapExceeded, RingMismatch, UnitGenerator
from .grobner import (exact_gbasis, exact_normal_form, exact_syzygies,
                      gbasis, is_zero_vector, normal_form)
from .series import PolySeries, RingDescriptor, is_unit


def _freeze(ip: dict) -> tuple:
    return tuple(sorted((e, c) for e, c in ip.items() if c))


def _thaw(frozen) -> dict:
    return dict(frozen)


@dataclass(frozen=True)
class PresentedModule:
    """coker of a relation matrix; columns are frozen integer polynomials."""

    ring: RingDescriptor
    gens: int
    columns: tuple  # each column: tuple of frozen ipolys, length = gens

    def __post_init__(self):
        cols = []
        for col in self.columns:
            col = tuple(_freeze(e) if isinstance(e, dict) else tuple(e)
                        for e in col)
            if len(col) != self.gens:
                raise RingMismatch("relation column has wrong length")
            for e in col:
                for exps, c in e:
                    if len(exps) != self.ring.d:
                        raise RingMismatch("entry arity does not match the ring")
                    if sum(exps) >= self.ring.D:
                        raise DegreeCapExceeded(
                            f"entry degree {sum(exps)} >= cap {self.ring.D}")
            cols.append(col)
        object.__setattr__(self, "columns", tuple(cols))

    @property
    def num_relations(self) -> int:
        return len(self.columns)

    def column_dicts(self):
        return [tuple(_thaw(e) for e in col) for col in self.columns]

    def int_rows(self):
        """Exact integer relation matrix, row-major."""
        cols = self.column_dicts()
        return [[cols[j][i] for j in range(len(cols))] for i in range(self.gens)]

    def series_entry(self, i: int, j: int) -> PolySeries:
        return intpoly.reduce_mod(_thaw(self.columns[j][i]), self.ring)

    def series_columns(self):
        """Relation columns as mod-p^N PolySeries vectors."""
        return [tuple(intpoly.reduce_mod(_thaw(e), self.ring) for e in col)
                for col in self.columns]

    def __repr__(self):
        return (f"PresentedModule({self.ring}, gens={self.gens}, "
                f"relations={self.num_relations})")


def module_from_rows(ring: RingDescriptor, rows) -> PresentedModule:
    """Build from a row-major matrix of ipoly dicts (rows = generators)."""
    k = len(rows)
    m = len(rows[0]) if k else 0
    cols = [tuple(rows[i][j] for i in range(k)) for j in range(m)]
    return PresentedModule(ring, k, tuple(cols))


def module_from_series(ring: RingDescriptor, gens: int, series_columns) -> PresentedModule:
    """Build from PolySeries columns via the balanced integer lift."""
    cols = [tuple(intpoly.lift_balanced(f) for f in col)
            for col in series_columns]
    return PresentedModule(ring, gens, tuple(cols))


def free_module(ring: RingDescriptor, rank: int) -> PresentedModule:
    return PresentedModule(ring, rank, ())


def zero_module(ring: RingDescriptor) -> PresentedModule:
    return PresentedModule(ring, 0, ())


def cyclic_module(ring: RingDescriptor, relations) -> PresentedModule:
    """Lambda/(f1,...,fm) as a 1-generator presentation (ipolys or PolySeries)."""
    cols = []
    for f in relations:
        ip = intpoly.lift_balanced(f) if isinstance(f, PolySeries) else f
        cols.append((ip,))
    return PresentedModule(ring, 1, tuple(cols))


@dataclass(frozen=True)
class ElementaryModule:
    """A finite direct sum of cyclic modules ring/(f_i^{e_i})."""

    ring: RingDescriptor
    summands: tuple  # pairs (generator PolySeries, exponent int)


def elementary_to_presentation(E: ElementaryModule) -> PresentedModule:
    """Block-diagonal presentation diag(f1^e1, ..., fn^en)."""
    diag = []
    for f, e in E.summands:
        if f.ring != E.ring:
            raise RingMismatch("elementary generator in the wrong ring")
        if f.is_zero():
            raise UnitGenerator("zero generator in elementary module")
        if is_unit(f):
            raise UnitGenerator("unit generator: the summand would vanish")
        if e < 1:
            raise UnitGenerator(f"exponent {e} must be positive")
        ip = intpoly.lift_balanced(f)
        acc = intpoly.ip_const(E.ring.d, 1)
        for _ in range(e):
            acc = intpoly.ip_mul(acc, ip)
        if intpoly.ip_total_degree(acc) >= E.ring.D:
            raise DegreeCapExceeded(
                f"f^{e} has degree {intpoly.ip_total_degree(acc)} >= cap")
        diag.append(acc)
    n = len(diag)
    cols = [tuple(diag[j] if i == j else {} for i in range(n)) for j in range(n)]
    return PresentedModule(E.ring, n, tuple(cols))


def direct_sum(m1: PresentedModule, m2: PresentedModule) -> PresentedModule:
    if m1.ring != m2.ring:
        raise RingMismatch(f"{m1.ring} vs {m2.ring}")
    k1, k2 = m1.gens, m2.gens
    zero = ()
    cols = [tuple(col) + (zero,) * k2 for col in m1.columns]
    cols += [(zero,) * k1 + tuple(col) for col in m2.columns]
    return PresentedModule(m1.ring, k1 + k2, tuple(cols))


def _require_last(M: PresentedModule, k: int):
    if M.ring.d == 0:
        raise BadVariable("module over Z_p has no variable to remove")
    if k != M.ring.d:
        raise BadVariable(
            f"descent removes the last variable (index {M.ring.d}), got {k}")


def quotient_by_t(M: PresentedModule, k: int) -> PresentedModule:
    """Presentation of M / t_k M over the subring (k must be last).

    Every relation entry is projected along t_k -> 0; columns that become
    zero are dropped.
    """
    _require_last(M, k)
    sub = M.ring.subring()
    cols = []
    for col in M.column_dicts():
        pc = tuple(_freeze(intpoly.ip_project_last(e)) for e in col)
        if any(pc):
            cols.append(pc)
    return PresentedModule(sub, M.gens, tuple(dict.fromkeys(cols)))


def t_torsion(M: PresentedModule, k: int) -> PresentedModule:
    """Presentation over the subring of M_t = { x in M : t_k x = 0 }.

    Three exact syzygy steps: (i) relations of [Phi | -t I] give
    generators x of the preimage T = { x : t x in im Phi }; (ii) relations
    of [X | Phi] restricted to the X block present T / im Phi; (iii)
    coefficients are projected along t_k -> 0, valid because t_k kills the
    quotient.
    """
    _require_last(M, k)
    ring, kgen = M.ring, M.gens
    sub = ring.subring()
    d = ring.d
    # the exact engine never truncates, so intermediate syzygy work may
    # safely exceed D; stored presentation entries are still capped at D
    cap = 2 * ring.D + 2
    t_ip = {(0,) * (d - 1) + (1,): -1}

    cols = M.column_dicts()
    block = cols + [tuple(t_ip if i == j else {} for i in range(kgen))
                    for j in range(kgen)]
    syz1 = exact_syzygies(block, d, kgen, cap, ring.p)
    m = len(cols)
    xs = [s[m:] for s in syz1]
    if cols:
        gb = exact_gbasis(cols, d, kgen, cap, ring.p)
        xs = [exact_normal_form(x, gb, d, kgen, cap, ring.p) for x in xs]
    seen = []
    for x in xs:
        fx = tuple(_freeze(e) for e in x)
        if any(fx) and fx not in seen:
            seen.append(fx)
    if not seen:
        return zero_module(sub)
    xs = [tuple(_thaw(e) for e in fx) for fx in seen]

    syz2 = exact_syzygies(xs + cols, d, kgen, cap, ring.p)
    r = len(xs)
    rel_cols = []
    for s in syz2:
        col = tuple(_freeze(intpoly.ip_project_last(c)) for c in s[:r])
        if any(col):
            rel_cols.append(col)
    return PresentedModule(sub, r, tuple(dict.fromkeys(rel_cols)))


def is_zero_module(M: PresentedModule) -> bool:
    """True when every generator lies in the mod-p^N span of the relations."""
    if M.gens == 0:
        return True
    if not M.columns:
        return False
    series_cols = M.series_columns()
    gb = gbasis(series_cols, M.ring, rank=M.gens)
    zero = PolySeries.zero(M.ring)
    one = PolySeries.const(M.ring, 1)
    for i in range(M.gens):
        e = tuple(one if j == i else zero for j in range(M.gens))
        if not is_zero_vector(normal_form(e, gb)):
            return False
    return True


def module_rank(M: PresentedModule) -> int:
    """Generic rank over the fraction field of the polynomial ring."""
    if M.gens == 0:
        return 0
    if not M.columns:
        return M.gens
    return M.gens - intpoly.matrix_rank(M.int_rows(), M.ring.names)
