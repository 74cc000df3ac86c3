"""p-adic integers known to finite precision, modeled as Z/p^N."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonUnit, RingMismatch


def pval(n: int, p: int, cap: int) -> int:
    """p-adic valuation of the residue n, with val(0) reported as cap.

    cap plays the role of "at least the working precision N".
    """
    if n == 0:
        return cap
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PadicScalar:
    """An element of Z/p^N standing for a p-adic integer known mod p^N."""

    value: int
    p: int
    N: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p**self.N)

    @property
    def modulus(self) -> int:
        return self.p**self.N

    def valuation(self) -> int:
        """v_p(value); the zero residue reports N ("at least precision")."""
        return pval(self.value, self.p, self.N)

    def is_unit(self) -> bool:
        return self.value % self.p != 0

    def _check(self, other: "PadicScalar"):
        if (self.p, self.N) != (other.p, other.N):
            raise RingMismatch(f"Z/{self.p}^{self.N} vs Z/{other.p}^{other.N}")

    def __add__(self, other):
        self._check(other)
        return PadicScalar(self.value + other.value, self.p, self.N)

    def __sub__(self, other):
        self._check(other)
        return PadicScalar(self.value - other.value, self.p, self.N)

    def __mul__(self, other):
        self._check(other)
        return PadicScalar(self.value * other.value, self.p, self.N)

    def __repr__(self):
        return f"{self.value} (mod {self.p}^{self.N})"


def padic_invert(x: PadicScalar) -> PadicScalar:
    """Inverse of a unit in Z/p^N; raises NonUnit when p | x."""
    if not x.is_unit():
        raise NonUnit(f"{x.value} has positive valuation, not invertible mod {x.p}^{x.N}")
    return PadicScalar(pow(x.value, -1, x.modulus), x.p, x.N)
