"""Limit characteristic ideals along module towers.

A tower assigns to each level d a presented module over the d-variable
ring, the levels being compatible by assumption.  When at every checked
level the t_d-torsion is pseudo-null and the quotient ideal is contained
in the previous level's ideal, the level ideals form a coherent sequence
and the top generator represents the limit ideal; the cofactor between a
level and the projection from above records whether coherence is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .charideal import (CharDivisor, char_ideal, divisor_mul,
                        divisor_quotient, divisors_equal, is_pseudo_null,
                        project_divisor)
from .errors import IwasawaError, RingMismatch
from .presentations import PresentedModule, direct_sum, quotient_by_t, t_torsion
from .series import PolySeries


@dataclass(frozen=True)
class Tower:
    """Modules M_d for d = start_level .. start_level + len(levels) - 1."""

    start_level: int
    levels: tuple  # PresentedModule per level, variable count increasing by 1

    def __post_init__(self):
        if self.start_level < 1:
            raise IwasawaError("towers start at level d0 >= 1")
        if not self.levels:
            raise IwasawaError("empty tower")
        prev = None
        for i, M in enumerate(self.levels):
            ring = M.ring
            if ring.d != self.start_level + i:
                raise RingMismatch(
                    f"level {self.start_level + i} module lives over a "
                    f"{ring.d}-variable ring")
            if prev is not None:
                sub = ring.subring()
                if (sub.p, sub.N, sub.D, sub.names) != (
                        prev.p, prev.N, prev.D, prev.names):
                    raise RingMismatch(
                        f"ring at level {self.start_level + i} does not "
                        f"extend the previous level")
            prev = ring

    @property
    def top_level(self) -> int:
        return self.start_level + len(self.levels) - 1

    def module(self, d: int) -> PresentedModule:
        if not self.start_level <= d <= self.top_level:
            raise IwasawaError(f"level {d} outside {self.start_level}..{self.top_level}")
        return self.levels[d - self.start_level]


@dataclass(frozen=True)
class LevelReport:
    level: int
    ch: CharDivisor
    hyp1: bool | None  # None at the start level
    hyp2: bool | None
    coherent_exactly: bool | None
    cofactor: CharDivisor | None  # pi(ch_d) = cofactor * ch_{d-1}


@dataclass(frozen=True)
class TowerReport:
    verdict: str  # "Defined" or "HypothesisFailed"
    levels: tuple  # LevelReport per level
    failed_level: int | None = None
    failed_hypothesis: str | None = None
    limit: CharDivisor | None = None

    def limit_generator(self) -> PolySeries:
        if self.limit is None:
            raise IwasawaError(f"no limit: verdict is {self.verdict}")
        return self.limit.generator()


def check_hypotheses(T: Tower, d: int):
    """(hyp1, hyp2) at level d: torsion pseudo-null, quotient ideal contained."""
    if not T.start_level < d <= T.top_level:
        raise IwasawaError(f"hypotheses are checked for {T.start_level} < d <= {T.top_level}")
    M_d = T.module(d)
    hyp1 = is_pseudo_null(t_torsion(M_d, d))
    ch_prev = char_ideal(T.module(d - 1))
    ch_quot = char_ideal(quotient_by_t(M_d, d))
    hyp2 = divisor_quotient(ch_prev, ch_quot) is not None
    return hyp1, hyp2


def pro_char_ideal(T: Tower) -> TowerReport:
    """Verify the tower hypotheses level by level and assemble the limit.

    The level ideals are coherent once the hypotheses hold: the projection
    of ch_d equals the quotient ideal (torsion being invisible), which is
    a multiple of ch_{d-1}; the recorded cofactor is a unit exactly when
    the projection reproduces the previous level.
    """
    reports = []
    chs = {}
    failed = None
    for d in range(T.start_level, T.top_level + 1):
        chs[d] = char_ideal(T.module(d))
    for d in range(T.start_level, T.top_level + 1):
        if d == T.start_level:
            reports.append(LevelReport(d, chs[d], None, None, None, None))
            continue
        hyp1, hyp2 = check_hypotheses(T, d)
        cofactor = None
        coherent = None
        if hyp1 and hyp2:
            projected = project_divisor(chs[d], d)
            cofactor = divisor_quotient(chs[d - 1], projected)
            coherent = cofactor is not None and cofactor.is_unit_ideal()
        reports.append(LevelReport(d, chs[d], hyp1, hyp2, coherent, cofactor))
        if failed is None and not (hyp1 and hyp2):
            failed = (d, "hyp1" if not hyp1 else "hyp2")
    if failed is not None:
        return TowerReport("HypothesisFailed", tuple(reports),
                           failed[0], failed[1], None)
    return TowerReport("Defined", tuple(reports), None, None,
                       chs[T.top_level])


def multiplicativity_check(T1: Tower, T: Tower, T2: Tower) -> bool:
    """For T presented levelwise as T1 (+) T2 (split exact sequences):
    level ideals must multiply, and towers T1, T2 passing the hypotheses
    must force T to pass them as well."""
    if not (T1.start_level == T.start_level == T2.start_level
            and T1.top_level == T.top_level == T2.top_level):
        raise IwasawaError("towers must cover the same levels")
    for d in range(T.start_level, T.top_level + 1):
        expected = direct_sum(T1.module(d), T2.module(d))
        got = T.module(d)
        if (got.gens, got.columns) != (expected.gens, expected.columns):
            raise IwasawaError(
                f"level {d} of the middle tower is not the direct sum")
    for d in range(T.start_level, T.top_level + 1):
        prod = divisor_mul(char_ideal(T1.module(d)), char_ideal(T2.module(d)))
        if not divisors_equal(prod, char_ideal(T.module(d))):
            return False
    r1 = pro_char_ideal(T1)
    r2 = pro_char_ideal(T2)
    if r1.verdict == "Defined" and r2.verdict == "Defined":
        if pro_char_ideal(T).verdict != "Defined":
            return False
    return True
