"""Strong Groebner bases for submodules of free modules, two coefficient domains.

Chain domain Z/p^N: the classical field algorithm is not enough because of
zero divisors.  Leading coefficients are normalized to powers of p, a term
is reducible only when the reducer's p-valuation does not exceed the
term's, and every basis element with positive lead valuation contributes
an annihilator pair p^(N-v) * f.  S- and annihilator pairs all reduce to
zero at precision N (the strong basis condition).

Exact domain Z_(p) (integers localized at p): this backs the module layer.
The polynomial ring over Z_(p) sits flat inside the power-series ring, so
its syzygies span all power-series syzygies with none of the chain ring's
precision-born annihilators.  Coefficients stay integers: a leading
coefficient is p^v times a p-free unit, reduction cross-scales by the unit
(fraction-free), and p-free content is stripped as it accumulates --
every scaling is by a unit of the power-series ring, which no downstream
characteristic-ideal computation can see.

Monomials are ordered in graded reverse lexicographic order; module terms
position-over-term, position 0 highest.  Syzygies are read off a basis
computed in an extended free module whose trailing coordinates track the
coefficients of each input generator; pairs supported entirely on the
tracking block are syzygies of syzygies and are skipped.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field

from .errors import DegreeCapExceeded, IwasawaError, RingMismatch
from .padic import pval
from .series import PolySeries, RingDescriptor, grevlex_key

_BIG = 10**9  # valuation cap standing in for "exact zero never happens"


@dataclass(frozen=True)
class MonomialOrder:
    """Fixed order: grevlex on monomials, position-over-term for modules."""

    kind: str = "grevlex"
    priority: tuple = ()  # variable priority (informational; grevlex is fixed)

    @staticmethod
    def term_key(term):
        pos, exps = term
        return (-pos, grevlex_key(exps))


_KEY_CACHE: dict = {}
_INV_CACHE: dict = {}


def _term_key(term):
    k = _KEY_CACHE.get(term)
    if k is None:
        pos, exps = term
        k = _KEY_CACHE[term] = (-pos, grevlex_key(exps))
    return k


def _inv_key(term):
    """Inverted key: min-heap order = descending term order."""
    k = _INV_CACHE.get(term)
    if k is None:
        pos, exps = term
        k = _INV_CACHE[term] = (pos, -sum(exps), tuple(reversed(exps)))
    return k


def _strip_p_free_content(f: dict, p: int) -> dict:
    """Divide out the p-free part of the integer content (a ring unit)."""
    g = 0
    for c in f.values():
        g = gcd_int(g, c if c >= 0 else -c)
        if g == 1:
            return f
    if g == 0:
        return f
    while g % p == 0:
        g //= p
    if g <= 1:
        return f
    return {k: c // g for k, c in f.items()}


def gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


class _Engine:
    """One Buchberger run; elements are dicts (pos, exps) -> coefficient.

    mode "chain" works in Z/p^N; mode "local" works fraction-free over the
    localization Z_(p), with exact integer coefficients.
    """

    def __init__(self, nvars: int, cap: int, p: int, N: int = None,
                 syzygy_rank: int = None):
        self.nvars = nvars
        self.cap = cap
        self.p = p
        self.N = N
        self.modulus = p**N if N is not None else None
        self.chain = N is not None
        # positions >= syzygy_rank track input coefficients; pairs living
        # entirely in that block are syzygies of syzygies (Schreyer) and
        # are skipped -- they never contribute new generating relations
        self.syzygy_rank = syzygy_rank

    def _val(self, c: int) -> int:
        return pval(c if c >= 0 else -c, self.p, self.N if self.chain else _BIG)

    def normalize(self, f: dict) -> dict:
        """Scale by a unit so the lead coefficient is p^v (chain) or
        p^v times a positive p-free integer with content stripped (local)."""
        t = max(f, key=_term_key)
        c = f[t]
        if self.chain:
            v = pval(c, self.p, self.N)
            u = c // self.p**v
            if u == 1:
                return f
            ui = pow(u, -1, self.modulus)
            return {k: (cc * ui) % self.modulus for k, cc in f.items()}
        f = _strip_p_free_content(f, self.p)
        if f[t] < 0:
            f = {k: -cc for k, cc in f.items()}
        return f

    def _lead_triple(self, f: dict):
        t = max(f, key=_term_key)
        c = f[t]
        v = self._val(c)
        u = c // self.p**v  # p-free unit part; exactly 1 in chain mode
        return (f, t, v, u)

    def reduce(self, f: dict, basis: list, frozen=()) -> dict:
        """Full strong normal form of f against basis quadruples.

        Terms listed in frozen are never reduced (they ride along through
        any scaling).  Local mode cross-scales by p-free unit parts to
        stay integer; the returned remainder therefore equals a unit
        multiple of the exact normal form, which is all any caller
        observes through ideals.
        """
        chain = self.chain
        mod = self.modulus
        cap = self.cap
        p = self.p
        work = dict(f)
        done = set(frozen)
        heap = [(_inv_key(t), t) for t in work]
        heapq.heapify(heap)
        by_pos = {}
        for quad in basis:
            by_pos.setdefault(quad[1][0], []).append(quad)
        steps = 0
        while heap:
            _, t = heapq.heappop(heap)
            if t not in work or t in done:
                continue
            pos, exps = t
            reducers = by_pos.get(pos, ())
            while t in work:
                c = work[t]
                hit = None
                cv = self._val(c)
                for g, (_, gexps), gv, gu in reducers:
                    if gv > cv:
                        continue
                    if all(a >= b for a, b in zip(exps, gexps)):
                        hit = (g, gexps, gv, gu)
                        break
                if hit is None:
                    done.add(t)
                    break
                g, gexps, gv, gu = hit
                if not chain and gu != 1:
                    for k in work:
                        work[k] *= gu
                    c = work[t]
                q = c // (p**gv * gu if not chain else p**gv)
                shift = tuple(a - b for a, b in zip(exps, gexps))
                for (gpos2, gexps2), gc in g.items():
                    ne = tuple(a + b for a, b in zip(gexps2, shift))
                    if sum(ne) >= cap:
                        raise DegreeCapExceeded(
                            f"reduction needs degree {sum(ne)} >= cap {cap}")
                    k = (gpos2, ne)
                    v = work.get(k)
                    if v is None:
                        nv = -q * gc
                        if mod is not None:
                            nv %= mod
                        if nv:
                            work[k] = nv
                            heapq.heappush(heap, (_inv_key(k), k))
                    else:
                        nv = v - q * gc
                        if mod is not None:
                            nv %= mod
                        if nv:
                            work[k] = nv
                        else:
                            del work[k]
                steps += 1
                if not chain and steps % 16 == 0:
                    work = _strip_p_free_content(work, p)
        if not chain and work:
            work = _strip_p_free_content(work, p)
        return work

    def tail_reduce(self, basis: list):
        """Reduce every basis tail against the full basis, in place.

        The lead term is frozen, so it keeps its monomial and valuation
        (any unit scaling applies to the whole element); pending pair
        bookkeeping stays valid while tails and coefficients shrink.
        """
        for i, (g, lt, gv, gu) in enumerate(basis):
            if len(g) == 1:
                continue
            nf = self.reduce(g, basis, frozen=(lt,))
            if nf != g:
                basis[i] = self._lead_triple(self.normalize(nf))

    def _spair(self, a, b):
        fa, (pa, ea), va, ua = a
        fb, (pb, eb), vb, ub = b
        lcm = tuple(max(x, y) for x, y in zip(ea, eb))
        if sum(lcm) >= self.cap:
            raise DegreeCapExceeded(
                f"S-pair needs degree {sum(lcm)} >= cap {self.cap}")
        sa = tuple(x - y for x, y in zip(lcm, ea))
        sb = tuple(x - y for x, y in zip(lcm, eb))
        v = max(va, vb)
        if self.chain:
            ca, cb = self.p**(v - va), -self.p**(v - vb)
        else:
            ca, cb = ub * self.p**(v - va), -ua * self.p**(v - vb)
        out: dict = {}
        self._accumulate(out, ca, sa, fa)
        self._accumulate(out, cb, sb, fb)
        return out

    def _apair(self, a):
        """Annihilator polynomial p^(N - v) * f (chain mode only)."""
        f, _, v, _ = a
        m = self.p**(self.N - v)
        return {k: (c * m) % self.modulus for k, c in f.items()
                if (c * m) % self.modulus}

    def _accumulate(self, acc: dict, coeff: int, shift, g: dict):
        mod = self.modulus
        for (pos, exps), c in g.items():
            ne = tuple(a + b for a, b in zip(exps, shift))
            if sum(ne) >= self.cap:
                raise DegreeCapExceeded(
                    f"pair needs degree {sum(ne)} >= cap {self.cap}")
            k = (pos, ne)
            v = acc.get(k, 0) + coeff * c
            if mod is not None:
                v %= mod
            if v:
                acc[k] = v
            elif k in acc:
                del acc[k]

    def buchberger(self, gens: list) -> list:
        basis = []
        heap = []
        tick = itertools.count()
        chain = self.chain
        skip_from = self.syzygy_rank

        def push_pairs(idx):
            f, (pos, exps), v, u = basis[idx]
            if skip_from is not None and pos >= skip_from:
                return
            for j in range(idx):
                g, (gpos, gexps), gv, gu = basis[j]
                if gpos != pos:
                    continue
                if v == 0 and gv == 0 and all(
                        min(a, b) == 0 for a, b in zip(exps, gexps)):
                    continue  # product criterion: coprime unit-lead pair
                lcm = tuple(max(a, b) for a, b in zip(exps, gexps))
                heapq.heappush(heap, ((sum(lcm), next(tick)), ("s", j, idx)))
            if chain and v > 0:
                heapq.heappush(heap, ((sum(exps), next(tick)), ("a", idx)))

        def add(f: dict):
            basis.append(self._lead_triple(self.normalize(f)))
            push_pairs(len(basis) - 1)

        for g in gens:
            if g:
                r = self.reduce(g, basis)
                if r:
                    add(r)
        while heap:
            _, job = heapq.heappop(heap)
            if job[0] == "s":
                s = self._spair(basis[job[1]], basis[job[2]])
            else:
                s = self._apair(basis[job[1]])
            if s:
                r = self.reduce(s, basis)
                if r:
                    add(r)
        return basis


# -- chain-ring API over PolySeries vectors ---------------------------------


def _vec_to_dict(vec, ring: RingDescriptor, offset=0) -> dict:
    out = {}
    for pos, f in enumerate(vec):
        if f.ring != ring:
            raise RingMismatch("vector entries in different rings")
        for exps, c in f.terms.items():
            out[(pos + offset, exps)] = c
    return out


def _dict_to_vec(d: dict, ring: RingDescriptor, rank: int):
    cols = [{} for _ in range(rank)]
    for (pos, exps), c in d.items():
        cols[pos][exps] = c
    return tuple(PolySeries(ring, col) for col in cols)


@dataclass
class GBasis:
    """A strong Groebner basis of a submodule of ring^rank (chain domain)."""

    ring: RingDescriptor
    rank: int
    generators: list = field(default_factory=list)  # vectors of PolySeries
    order: MonomialOrder = MonomialOrder()
    _internal: list = field(default_factory=list, repr=False)


def _as_vectors(gens, ring, rank):
    vecs = []
    for v in gens:
        if len(v) != rank:
            raise RingMismatch("vector of wrong rank")
        vecs.append(_vec_to_dict(tuple(v), ring))
    return vecs


def _chain_engine(ring: RingDescriptor, cap=None, syzygy_rank=None) -> _Engine:
    return _Engine(ring.d, ring.D if cap is None else cap, ring.p, ring.N,
                   syzygy_rank=syzygy_rank)


def gbasis(gens: list, ring: RingDescriptor, rank: int = None, cap: int = None) -> GBasis:
    """Strong Groebner basis of the submodule generated by gens in ring^rank.

    Membership of every input in the span of the output is certified by
    reduction; a failure would indicate an engine bug and raises.
    """
    if rank is None:
        rank = len(gens[0]) if gens else 1
    eng = _chain_engine(ring, cap)
    internal = eng.buchberger(_as_vectors(gens, ring, rank))
    gb = GBasis(ring, rank,
                [_dict_to_vec(f, ring, rank) for f, _, _, _ in internal],
                MonomialOrder("grevlex", ring.names), internal)
    for v in _as_vectors(gens, ring, rank):
        if eng.reduce(v, internal):
            raise IwasawaError("membership certificate failed")  # unreachable
    return gb


def normal_form(vec, G: GBasis):
    """Fully reduced remainder of vec against G; zero iff vec is in the span."""
    eng = _chain_engine(G.ring)
    r = eng.reduce(_vec_to_dict(tuple(vec), G.ring), G._internal)
    return _dict_to_vec(r, G.ring, G.rank)


def is_zero_vector(vec) -> bool:
    return all(f.is_zero() for f in vec)


def syzygies(gens: list, ring: RingDescriptor, rank: int = None, cap: int = None) -> list:
    """Generators of { c : sum_i c_i * gens_i = 0 } at precision p^N.

    Chain-ring annihilator relations (p^k times a unit combination) are
    genuine syzygies of the truncated model and are included.
    """
    if rank is None:
        rank = len(gens[0]) if gens else 1
    m = len(gens)
    eng = _chain_engine(ring, cap, syzygy_rank=rank)
    ext = []
    one = (0,) * ring.d
    for i, v in enumerate(_as_vectors(gens, ring, rank)):
        h = dict(v)
        h[(rank + i, one)] = 1
        ext.append(h)
    basis = eng.buchberger(ext)
    out = []
    for f, (pos, _), _, _ in basis:
        if pos >= rank:
            shifted = {(p - rank, e): c for (p, e), c in f.items()}
            out.append(_dict_to_vec(shifted, ring, m))
    return out


# -- exact Z_(p) API over integer-dict vectors -------------------------------
#
# vectors here are tuples of exponent-dicts with integer coefficients; the
# results are exact over Z_(p)[t1..td] up to ring units, hence valid over
# the power-series ring by flatness, with no precision-born relations.


def _ivec_to_dict(vec) -> dict:
    out = {}
    for pos, ip in enumerate(vec):
        for exps, c in ip.items():
            if c:
                out[(pos, exps)] = int(c)
    return out


def _dict_to_ivec(d: dict, rank: int):
    cols = [{} for _ in range(rank)]
    for (pos, exps), c in d.items():
        cols[pos][exps] = c
    return tuple(cols)


def exact_gbasis(gens: list, nvars: int, rank: int, cap: int, p: int) -> list:
    """Strong basis quadruples over Z_(p)[t1..td] (internal representation)."""
    eng = _Engine(nvars, cap, p)
    return eng.buchberger([_ivec_to_dict(v) for v in gens])


def exact_normal_form(vec, basis: list, nvars: int, rank: int, cap: int, p: int):
    """Remainder of vec against an exact basis, up to a p-free unit scale."""
    eng = _Engine(nvars, cap, p)
    return _dict_to_ivec(eng.reduce(_ivec_to_dict(vec), basis), rank)


def exact_syzygies(gens: list, nvars: int, rank: int, cap: int, p: int) -> list:
    """Generators of the relation module, exact up to p-free unit scales."""
    m = len(gens)
    eng = _Engine(nvars, cap, p, syzygy_rank=rank)
    ext = []
    one = (0,) * nvars
    for i, v in enumerate(gens):
        h = _ivec_to_dict(v)
        h[(rank + i, one)] = h.get((rank + i, one), 0) + 1
        ext.append(h)
    basis = eng.buchberger(ext)
    out = []
    for f, (pos, _), _, _ in basis:
        if pos >= rank:
            shifted = {(p2 - rank, e): c for (p2, e), c in f.items()}
            out.append(_dict_to_ivec(shifted, m))
    return out
