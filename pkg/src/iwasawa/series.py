"""Sparse polynomials over Z/p^N viewed inside truncated power-series rings.

An element of Z_p[[t1,...,td]] is modeled by a polynomial of total degree
< D with coefficients known mod p^N.  Every equality below is an equality
"to working precision (N, D)"; exact integer lifts live in `intpoly`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from sympy import isprime

from .errors import BadVariable, IwasawaError, NonUnit, RingMismatch
from .padic import PadicScalar, pval

Exps = tuple  # exponent vector, one entry per ring variable


def default_names(d: int) -> tuple:
    """Conventional variable names: t for d=1, (s, t) for d=2, else t1..td."""
    if d == 1:
        return ("t",)
    if d == 2:
        return ("s", "t")
    return tuple(f"t{i+1}" for i in range(d))


@dataclass(frozen=True)
class RingDescriptor:
    """Parameters of a truncated ring (Z/p^N)[t1..td] / (degree >= D)."""

    p: int
    N: int
    D: int
    names: tuple = ()

    def __post_init__(self):
        if not isprime(self.p):
            raise IwasawaError(f"p = {self.p} is not prime")
        if self.N < 1 or self.D < 1:
            raise IwasawaError("need N >= 1 and D >= 1")
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise IwasawaError("duplicate variable names")

    @property
    def d(self) -> int:
        return len(self.names)

    @property
    def modulus(self) -> int:
        return self.p**self.N

    def subring(self) -> "RingDescriptor":
        """The coefficient ring obtained by dropping the last variable."""
        if self.d == 0:
            raise BadVariable("d = 0 ring has no variable to drop")
        return RingDescriptor(self.p, self.N, self.D, self.names[:-1])

    def drop_variable(self, k: int) -> "RingDescriptor":
        if not 1 <= k <= self.d:
            raise BadVariable(f"variable index {k} out of range 1..{self.d}")
        return RingDescriptor(self.p, self.N, self.D,
                              self.names[: k - 1] + self.names[k:])

    def at_precision(self, N: int) -> "RingDescriptor":
        return RingDescriptor(self.p, N, self.D, self.names)

    def __repr__(self):
        vars_ = ",".join(self.names) if self.names else "-"
        return f"Ring(p={self.p}, N={self.N}, D={self.D}, vars=[{vars_}])"


def make_ring(p: int, N: int, D: int, d: int = None, names: Iterable = None) -> RingDescriptor:
    """Convenience constructor; give either d (default names) or names."""
    if names is None:
        if d is None:
            raise IwasawaError("make_ring needs d or names")
        names = default_names(d)
    return RingDescriptor(p, N, D, tuple(names))


class PolySeries:
    """Immutable sparse polynomial over Z/p^N, total degree < D.

    terms maps exponent vectors to nonzero residues in [1, p^N).
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingDescriptor, terms: dict):
        cleaned = {}
        q = ring.modulus
        for exps, c in terms.items():
            if len(exps) != ring.d:
                raise RingMismatch(f"exponent vector {exps} has wrong arity for {ring}")
            if sum(exps) >= ring.D:
                raise IwasawaError(f"monomial of degree {sum(exps)} >= cap D={ring.D}")
            c %= q
            if c:
                cleaned[tuple(exps)] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, *a):
        raise AttributeError("PolySeries is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(ring: RingDescriptor) -> "PolySeries":
        return PolySeries(ring, {})

    @staticmethod
    def const(ring: RingDescriptor, c: int) -> "PolySeries":
        return PolySeries(ring, {(0,) * ring.d: c})

    @staticmethod
    def variable(ring: RingDescriptor, k: int) -> "PolySeries":
        """The k-th variable (1-based)."""
        if not 1 <= k <= ring.d:
            raise BadVariable(f"variable index {k} out of range 1..{ring.d}")
        e = [0] * ring.d
        e[k - 1] = 1
        return PolySeries(ring, {tuple(e): 1})

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exps) -> PadicScalar:
        return PadicScalar(self.terms.get(tuple(exps), 0), self.ring.p, self.ring.N)

    def constant_value(self) -> int:
        return self.terms.get((0,) * self.ring.d, 0)

    def content_valuation(self) -> int:
        """min_e v_p(coefficient); N for the zero residue polynomial."""
        p, N = self.ring.p, self.ring.N
        if not self.terms:
            return N
        return min(pval(c, p, N) for c in self.terms.values())

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def last_var_profile(self) -> dict:
        """Split by exponent of the last variable: i -> subring coefficient."""
        sub = self.ring.subring()
        out = {}
        for exps, c in self.terms.items():
            out.setdefault(exps[-1], {})[exps[:-1]] = c
        return {i: PolySeries(sub, t) for i, t in out.items()}

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "PolySeries"):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return PolySeries(self.ring, out)

    def __neg__(self):
        return PolySeries(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        D, q = self.ring.D, self.ring.modulus
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if sum(e) >= D:
                    continue  # truncation forced by the degree cap
                out[e] = (out.get(e, 0) + c1 * c2) % q
        return PolySeries(self.ring, out)

    def scale(self, c: int) -> "PolySeries":
        return PolySeries(self.ring, {e: v * c for e, v in self.terms.items()})

    def shift(self, exps) -> "PolySeries":
        """Multiply by the monomial with exponent vector exps."""
        D = self.ring.D
        out = {}
        for e, c in self.terms.items():
            ne = tuple(a + b for a, b in zip(e, exps))
            if sum(ne) >= D:
                continue
            out[ne] = c
        return PolySeries(self.ring, out)

    def __pow__(self, n: int):
        if n < 0:
            raise IwasawaError("negative power")
        result = PolySeries.const(self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, PolySeries) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __repr__(self):
        return f"<{render_poly(self.terms, self.ring.names) if self.terms else '0'}>"


def series_mul(f: PolySeries, g: PolySeries) -> PolySeries:
    """Product in the truncated ring; terms of total degree >= D are discarded."""
    return f * g


def is_unit(f: PolySeries) -> bool:
    """True iff the constant term has p-valuation 0 (unit power series)."""
    return f.constant_value() % f.ring.p != 0


def project(f: PolySeries, k: int) -> PolySeries:
    """Substitute t_k = 0; the result lives in the ring without t_k."""
    if not 1 <= k <= f.ring.d:
        raise BadVariable(f"variable index {k} out of range 1..{f.ring.d}")
    sub = f.ring.drop_variable(k)
    out = {}
    for exps, c in f.terms.items():
        if exps[k - 1] == 0:
            out[exps[: k - 1] + exps[k:]] = c
    return PolySeries(sub, out)


def series_invert(f: PolySeries) -> PolySeries:
    """Inverse of a unit power series mod (p^N, degree >= D), by Newton lifting."""
    if not is_unit(f):
        raise NonUnit("constant term has positive valuation")
    ring = f.ring
    c0 = f.constant_value()
    x = PolySeries.const(ring, pow(c0, -1, ring.modulus))
    two = PolySeries.const(ring, 2)
    # degree-accuracy doubles each step; p-adic accuracy is exact throughout
    steps = max(1, ring.D).bit_length() + 1
    for _ in range(steps):
        x = x * (two - f * x)
    return x


# -- text grammar ----------------------------------------------------------
#
# integer coefficients, ring variables, operators + - * ^ and parentheses,
# e.g. "25 + s + t" or "t^2 + 5*t + 125".  The prime is always numeric.


def _alias_map(names) -> dict:
    amap = {n: i for i, n in enumerate(names)}
    d = len(names)
    if d == 1:
        amap.setdefault("t", 0)
        amap.setdefault("t1", 0)
    elif d == 2:
        amap.setdefault("s", 0)
        amap.setdefault("t", 1)
        amap.setdefault("t1", 0)
        amap.setdefault("t2", 1)
    return amap


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j])))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j]))
            i = j
        elif ch in "+-*^()":
            tokens.append((ch, ch))
            i += 1
        else:
            raise IwasawaError(f"bad character {ch!r} in polynomial text")
    tokens.append(("end", None))
    return tokens


def parse_int_poly(text: str, names) -> dict:
    """Parse polynomial text into an exact integer-coefficient exponent dict."""
    d = len(names)
    amap = _alias_map(names)
    toks = _tokenize(text)
    pos = [0]

    def peek():
        return toks[pos[0]][0]

    def take(kind=None):
        k, v = toks[pos[0]]
        if kind and k != kind:
            raise IwasawaError(f"expected {kind}, found {k} in {text!r}")
        pos[0] += 1
        return v

    def p_add(a, b):
        out = dict(a)
        for e, c in b.items():
            out[e] = out.get(e, 0) + c
        return {e: c for e, c in out.items() if c}

    def p_mul(a, b):
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return {e: c for e, c in out.items() if c}

    def p_pow(a, n):
        r = {(0,) * d: 1}
        for _ in range(n):
            r = p_mul(r, a)
        return r

    def factor():
        k = peek()
        if k == "int":
            v = take()
            return {(0,) * d: v}
        if k == "name":
            name = take()
            if name not in amap:
                raise IwasawaError(f"unknown variable {name!r} (ring vars: {names})")
            e = [0] * d
            e[amap[name]] = 1
            base = {tuple(e): 1}
        elif k == "(":
            take("(")
            base = expr()
            take(")")
        else:
            raise IwasawaError(f"unexpected token {k} in {text!r}")
        if peek() == "^":
            take("^")
            return p_pow(base, take("int"))
        return base

    def term():
        out = factor()
        while peek() == "*":
            take("*")
            out = p_mul(out, factor())
        return out

    def expr():
        sign = 1
        if peek() in "+-":
            sign = -1 if take() == "-" else 1
        out = {e: sign * c for e, c in term().items()}
        while peek() in "+-":
            sign = -1 if take() == "-" else 1
            out = p_add(out, {e: sign * c for e, c in term().items()})
        return out

    result = expr()
    if peek() != "end":
        raise IwasawaError(f"trailing input in {text!r}")
    return result


def parse_poly(text: str, ring: RingDescriptor) -> PolySeries:
    return PolySeries(ring, parse_int_poly(text, ring.names))


def grevlex_key(exps):
    """Sort key: larger key = larger monomial in graded reverse lex."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def render_poly(terms: dict, names) -> str:
    """Canonical text: grevlex-descending monomials, explicit integers."""
    if not terms:
        return "0"
    pieces = []
    for exps in sorted(terms, key=grevlex_key, reverse=True):
        c = terms[exps]
        mono = "*".join(
            n if e == 1 else f"{n}^{e}"
            for n, e in zip(names, exps) if e
        )
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)


def render_series(f: PolySeries) -> str:
    return render_poly(f.terms, f.ring.names)
