"""Tempered parameters at generic m: a GL-tempered part times a discrete series."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .ds import ds
from .partitions import (
    ETableau,
    NonGenericError,
    Partition,
    as_partition,
    central_character,
    format_partition,
    is_generic,
    partitions,
)
from .rational import format_rational
from .segments import GL, CentralCharacter, MarkedPartition, Segment

DISCRETE_SERIES = "discrete_series"
TEMPERED_NOT_DS = "tempered_not_ds"
NEITHER = "neither"


def gl_tempered_segments(sigma_a: Sequence[int]) -> list[Segment]:
    """One segment per part, centred at 0."""
    out = []
    for part in as_partition(sigma_a):
        half = Fraction(part - 1, 2)
        out.append(Segment(-half, half, GL))
    return out


@dataclass(frozen=True)
class TemperedParameter:
    gl_part: Partition
    sp_part: Partition
    m: Fraction
    character: CentralCharacter
    marked: MarkedPartition

    @property
    def n(self) -> int:
        return sum(self.gl_part) + sum(self.sp_part)

    def to_dict(self) -> dict:
        return {
            "gl": format_partition(self.gl_part),
            "sp": format_partition(self.sp_part),
            "m": format_rational(self.m),
            "marked_partition": self.marked.to_dict(),
        }


def tempered_parameter(sigma_a: Sequence[int], sigma_sp: Sequence[int], m) -> TemperedParameter:
    m = Fraction(m)
    if not is_generic(m):
        raise NonGenericError(f"non-generic m={m}")
    sigma_a, sigma_sp = as_partition(sigma_a), as_partition(sigma_sp)
    gl_segs = gl_tempered_segments(sigma_a)
    sp_cc = central_character(ETableau(sigma_sp, m))
    gl_vals = [v for s in gl_segs for v in s.evalues()]
    cc = CentralCharacter(m, sp_cc.sp, tuple(gl_vals))
    sp_mp = ds(sigma_sp, m) if sigma_sp else MarkedPartition((), (), m)
    mp = MarkedPartition(
        tuple(gl_segs) + sp_mp.segments, (False,) * len(gl_segs) + sp_mp.marked, m
    )
    cc.check_adapted(mp)
    return TemperedParameter(sigma_a, sigma_sp, m, cc, mp)


def enumerate_tempered(n: int, m) -> list[TemperedParameter]:
    out = []
    for n1 in range(n + 1):
        for a in partitions(n1):
            for b in partitions(n - n1):
                out.append(tempered_parameter(a, b, m))
    return out


def casselman_classify(weights: Iterable[Sequence]) -> str:
    """Classify a set of weights (log coordinates) by their partial sums."""
    weights = [tuple(Fraction(x) for x in w) for w in weights]
    if len({len(w) for w in weights}) > 1:
        raise ValueError("weights have different lengths")
    strict = weak = True
    for w in weights:
        total = Fraction(0)
        for x in w:
            total += x
            if total >= 0:
                strict = False
            if total > 0:
                weak = False
    if strict:
        return DISCRETE_SERIES
    return TEMPERED_NOT_DS if weak else NEITHER
