"""Partitions, e-function tableaux, hooks and extremities."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence

from .rational import ParseError, format_rational, frac_part, is_integer, parse_rational
from .segments import CentralCharacter, MarkedPartition, Segment

Partition = tuple[int, ...]


class NonGenericError(ValueError):
    """The parameter m lies in 1/2 Z (or an |e|-tie was met)."""


def as_partition(parts: Sequence[int]) -> Partition:
    parts = tuple(int(p) for p in parts)
    if any(p <= 0 for p in parts):
        raise ValueError(f"partition parts must be positive: {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"partition parts must be weakly decreasing: {parts}")
    return parts


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if text in ("", "()", "0", "∅"):
        return ()
    try:
        parts = [int(p) for p in text.strip("()").split(",") if p.strip()]
    except ValueError as exc:
        raise ParseError(f"not a partition: {text!r}") from exc
    try:
        return as_partition(sorted(parts, reverse=True))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_partition(p: Sequence[int]) -> str:
    return ",".join(str(x) for x in p) if p else "∅"


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def count_partitions(n: int) -> int:
    # Euler's pentagonal recurrence
    if n < 0:
        return 0
    if n == 0:
        return 1
    total, k = 0, 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > n:
            break
        sign = 1 if k % 2 else -1
        total += sign * count_partitions(n - g1)
        g2 = k * (3 * k + 1) // 2
        if g2 <= n:
            total += sign * count_partitions(n - g2)
        k += 1
    return total


def count_bipartitions(n: int) -> int:
    return sum(count_partitions(k) * count_partitions(n - k) for k in range(n + 1))


def conjugate(p: Sequence[int]) -> Partition:
    if not p:
        return ()
    return tuple(sum(1 for x in p if x > j) for j in range(p[0]))


def is_generic(m) -> bool:
    return not is_integer(2 * Fraction(m))


class Box(NamedTuple):
    row: int
    col: int


class Bipartition(NamedTuple):
    left: Partition
    right: Partition

    @property
    def size(self) -> int:
        return sum(self.left) + sum(self.right)

    def __str__(self):
        def show(p):
            return ",".join(map(str, p)) if p else "∅"

        return "{(" + show(self.left) + ")(" + show(self.right) + ")}"


def bipartition(left: Sequence[int], right: Sequence[int]) -> Bipartition:
    """Normalize part lists (any order, zeros allowed) to a Bipartition."""
    return Bipartition(
        tuple(sorted((x for x in left if x), reverse=True)),
        tuple(sorted((x for x in right if x), reverse=True)),
    )


@dataclass(frozen=True)
class ETableau:
    """Young diagram of ``shape`` filled by e(row, col) = m + col - row."""

    shape: Partition
    m: Fraction

    def __post_init__(self):
        object.__setattr__(self, "shape", as_partition(self.shape))
        object.__setattr__(self, "m", Fraction(self.m))

    @property
    def n(self) -> int:
        return sum(self.shape)

    def __contains__(self, box) -> bool:
        row, col = box
        return 1 <= row <= len(self.shape) and 1 <= col <= self.shape[row - 1]

    def e(self, row: int, col: int) -> Fraction:
        return self.m + col - row

    def boxes(self) -> Iterator[Box]:
        for r, length in enumerate(self.shape, start=1):
            for c in range(1, length + 1):
                yield Box(r, c)

    def evalues(self) -> list[Fraction]:
        return [self.e(*b) for b in self.boxes()]

    def c_function(self) -> dict[Box, int]:
        """Index boxes 1..n by decreasing e-value, ties by (row, col)."""
        order = sorted(self.boxes(), key=lambda b: (-self.e(*b), b.row, b.col))
        return {b: i for i, b in enumerate(order, start=1)}

    def render(self) -> str:
        lines = []
        for r, length in enumerate(self.shape, start=1):
            lines.append(" ".join(f"[{format_rational(self.e(r, c))}]" for c in range(1, length + 1)))
        return "\n".join(lines)


def e_value(t: ETableau, b: Box | tuple[int, int]) -> Fraction:
    if b not in t:
        raise ValueError(f"box {tuple(b)} lies outside the shape {t.shape}")
    return t.e(*b)


@dataclass(frozen=True)
class Hook:
    index: int
    arm_evalues: tuple[Fraction, ...]   # row part from the corner, ascending
    leg_evalues: tuple[Fraction, ...]   # column part below the corner, descending
    r: Fraction
    r_prime: Fraction

    @property
    def size(self) -> int:
        return len(self.arm_evalues) + len(self.leg_evalues)

    def evalues(self) -> list[Fraction]:
        return list(self.arm_evalues) + list(self.leg_evalues)


def hook_decomposition(t: ETableau) -> list[Hook]:
    """Strip first row + first column repeatedly; outermost hook first."""
    shape, conj = t.shape, conjugate(t.shape)
    hooks = []
    j = 1
    while j <= len(shape) and shape[j - 1] >= j:
        arm = tuple(t.e(j, c) for c in range(j, shape[j - 1] + 1))
        leg = tuple(t.e(r, j) for r in range(j + 1, conj[j - 1] + 1))
        r_prime = leg[-1] if leg else arm[0]
        hooks.append(Hook(j, arm, leg, arm[-1], r_prime))
        j += 1
    return hooks


def hook_of(box: Box) -> int:
    return min(box.row, box.col)


def fold_to_distinguished(t: ETableau) -> MarkedPartition:
    """The distinguished (open-orbit) marked partition: one marked segment per hook."""
    if not is_generic(t.m):
        raise NonGenericError(f"non-generic m={t.m}")
    hooks = hook_decomposition(t)
    segs = tuple(Segment(h.r_prime, h.r) for h in hooks)
    return MarkedPartition(segs, (True,) * len(segs), t.m)


def central_character(t: ETableau) -> CentralCharacter:
    if not is_generic(t.m):
        raise NonGenericError(f"non-generic m={t.m}")
    return CentralCharacter(t.m, tuple(t.evalues()))


def extremities(t: ETableau | Sequence[int], k) -> tuple[list[Fraction], list[Fraction]]:
    """(E+, E-) of the shape filled with parameter k, each sorted decreasingly.

    E+ collects row maxima that are >= {k}; E- collects negated column minima
    for columns whose minimum is <= {k} - 1.
    """
    shape = t.shape if isinstance(t, ETableau) else as_partition(t)
    k = Fraction(k)
    frac = frac_part(k)
    tab = ETableau(shape, k)
    eplus = [tab.e(r, length) for r, length in enumerate(shape, start=1) if tab.e(r, length) >= frac]
    eminus = []
    for c, height in enumerate(conjugate(shape), start=1):
        low = tab.e(height, c)
        if low <= frac - 1:
            eminus.append(-low)
    return sorted(eplus, reverse=True), sorted(eminus, reverse=True)


def hook_e_sums(t: ETableau) -> list[Fraction]:
    return [sum(h.evalues(), Fraction(0)) for h in hook_decomposition(t)]


def evalue_counter(t: ETableau) -> Counter:
    return Counter(t.evalues())
