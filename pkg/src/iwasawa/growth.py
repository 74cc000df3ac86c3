"""Brute-force validation through finite quotients and growth exponents.

Everything here reduces to integer matrices and Smith normal form; none
of the gcd / preparation machinery is reused, so agreement with the main
pipeline is an independent check.  The order of M/(p^m, t1^n1, .., td^nd)
is computed as the cokernel of an explicit integer matrix; for d = 1 the
exponents e(m, n) grow like lambda * m + mu * n + O(1) on a suitable
grid, and integer differencing recovers (mu, lambda).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import IwasawaError, SizeLimit, UnstableFit
from .padic import pval
from .presentations import PresentedModule

_MAX_ROWS = 2048


@dataclass(frozen=True)
class FiniteQuotientSpec:
    """Truncation levels: p^m on coefficients, t_i^{n_i} on variables."""

    m: int
    n: tuple

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(self.n))
        if self.m < 1 or any(x < 1 for x in self.n):
            raise IwasawaError("quotient spec needs m >= 1 and n_i >= 1")

    def fits(self, ring) -> bool:
        return (self.m <= ring.N and len(self.n) == ring.d
                and all(x <= ring.D for x in self.n))


def smith_diagonal(rows: list) -> list:
    """Diagonal of an integer matrix under unimodular row/column operations.

    Entries are not forced into a divisibility chain; their product still
    equals the order of the cokernel, which is all the oracle needs.
    """
    A = [row[:] for row in rows]
    R = len(A)
    C = len(A[0]) if A else 0
    diag = []
    r = 0
    while r < min(R, C):
        # smallest nonzero entry of the trailing block becomes the pivot
        pi, pj, best = -1, -1, None
        for i in range(r, R):
            for j in range(r, C):
                a = abs(A[i][j])
                if a and (best is None or a < best):
                    pi, pj, best = i, j, a
        if best is None:
            break
        A[r], A[pi] = A[pi], A[r]
        for row in A:
            row[r], row[pj] = row[pj], row[r]
        while True:
            pivot = A[r][r]
            dirty = False
            for i in range(r + 1, R):
                if A[i][r]:
                    q = A[i][r] // pivot
                    if q:
                        for j in range(r, C):
                            A[i][j] -= q * A[r][j]
                    if A[i][r]:  # remainder smaller than pivot: swap up
                        A[r], A[i] = A[i], A[r]
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(r + 1, C):
                if A[r][j]:
                    q = A[r][j] // pivot
                    if q:
                        for i in range(r, R):
                            A[i][j] -= q * A[i][r]
                    if A[r][j]:
                        for i in range(r, R):
                            A[i][r], A[i][j] = A[i][j], A[i][r]
                        dirty = True
                        break
            if not dirty:
                break
        diag.append(abs(A[r][r]))
        r += 1
    return diag


def finite_quotient_order(M: PresentedModule, spec: FiniteQuotientSpec,
                          max_rows: int = _MAX_ROWS) -> int:
    """Exponent e with |M / (p^m, t^n) M| = p^e, via integer Smith form.

    The quotient is presented over Z on the monomial basis below the
    truncation box; relations are p^m times each basis vector plus every
    in-box monomial multiple of each lifted relation column.
    """
    ring = M.ring
    if not spec.fits(ring):
        raise IwasawaError(f"{spec} does not fit ring precision {ring}")
    box = list(itertools.product(*(range(n) for n in spec.n)))
    box_index = {b: i for i, b in enumerate(box)}
    nrows = M.gens * len(box)
    if nrows == 0:
        return 0
    if nrows > max_rows:
        raise SizeLimit(f"monomial basis needs {nrows} rows > {max_rows}")

    def slot(gen, mono):
        return gen * len(box) + box_index[mono]

    columns = []
    pm = ring.p ** spec.m
    for i in range(nrows):
        col = [0] * nrows
        col[i] = pm
        columns.append(col)
    for rel in M.column_dicts():
        for mult in box:
            col = [0] * nrows
            touched = False
            for i, entry in enumerate(rel):
                for exps, c in entry.items():
                    mono = tuple(a + b for a, b in zip(exps, mult))
                    if all(x < n for x, n in zip(mono, spec.n)):
                        col[slot(i, mono)] += c
                        touched = True
            if touched:
                columns.append(col)

    rows = [[columns[j][i] for j in range(len(columns))] for i in range(nrows)]
    diag = smith_diagonal(rows)
    if len(diag) < nrows or any(x == 0 for x in diag):
        raise IwasawaError("finite quotient unexpectedly infinite")  # unreachable
    return sum(pval(x, ring.p, 10**9) for x in diag)


def fit_mu_lambda(M: PresentedModule, m_grid=(2, 3, 4), offsets=(2, 4),
                  lambda_max: int = None):
    """Recover (mu, lambda) for a d = 1 torsion module by differencing.

    For each candidate lambda_c, orders are sampled on the grid
    (m, lambda_c * m + c); first differences in n give mu, differences
    along the rays give lambda.  The fit is accepted once all estimates
    agree on integers and the detected lambda fits the region
    n >= lambda * m; otherwise the candidate is raised.
    """
    ring = M.ring
    if ring.d != 1:
        raise IwasawaError("growth fitting is defined for d = 1")
    if max(m_grid) > ring.N:
        raise IwasawaError("m grid exceeds coefficient precision N")
    if lambda_max is None:
        lambda_max = max(0, (ring.D - max(offsets)) // max(m_grid))
    cache = {}

    def order(m, n):
        if (m, n) not in cache:
            cache[(m, n)] = finite_quotient_order(M, FiniteQuotientSpec(m, (n,)))
        return cache[(m, n)]

    for lam_c in range(lambda_max + 1):
        if lam_c * max(m_grid) + max(offsets) > ring.D:
            break
        grid = {(m, lam_c * m + c): order(m, lam_c * m + c)
                for m in m_grid for c in offsets}
        span = max(offsets) - min(offsets)
        mu_est = set()
        for m in m_grid:
            delta = grid[(m, lam_c * m + max(offsets))] - grid[(m, lam_c * m + min(offsets))]
            if delta % span:
                mu_est.add(None)
            else:
                mu_est.add(delta // span)
        if len(mu_est) != 1 or None in mu_est:
            continue
        mu = mu_est.pop()
        lam_est = set()
        ms = sorted(m_grid)
        for m1, m2 in zip(ms, ms[1:]):
            if m2 - m1 != 1:
                raise IwasawaError("m grid must be consecutive integers")
            for c in offsets:
                diff = grid[(m2, lam_c * m2 + c)] - grid[(m1, lam_c * m1 + c)]
                lam_est.add(diff - mu * lam_c)
        if len(lam_est) != 1:
            continue
        lam = lam_est.pop()
        if mu >= 0 and 0 <= lam <= lam_c:
            return mu, lam
    raise UnstableFit("growth differences did not stabilize on the grid")
