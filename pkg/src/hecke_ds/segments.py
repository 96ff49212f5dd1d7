"""Segments, marked partitions and central characters.

A segment is stored by its e-range ``[lo, hi]``; its e-multiset is
``{lo, lo + 1, ..., hi}``.  Segments in the symplectic coset (``m + Z``) may
carry a marking at the e-value ``m``; segments in the GL coset (``1/2 Z``)
never do.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Sequence

from .rational import format_rational, is_integer, parse_rational

SP = "sp"
GL = "gl"

DEFAULT_ENUM_CAP = 12


class CosetMismatch(ValueError):
    pass


class MarkedInputError(ValueError):
    """An operation defined on unmarked partitions received markings."""


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Segment:
    lo: Fraction
    hi: Fraction
    coset: str = SP

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.hi < self.lo or not is_integer(self.hi - self.lo):
            raise ValueError(f"invalid segment [{self.lo}, {self.hi}]")
        if self.coset not in (SP, GL):
            raise ValueError(f"unknown coset {self.coset!r}")

    @property
    def size(self) -> int:
        return int(self.hi - self.lo) + 1

    def evalues(self) -> list[Fraction]:
        return [self.lo + i for i in range(self.size)]

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi and is_integer(x - self.lo)

    def av(self) -> Fraction:
        """Sum of the e-values."""
        return (self.lo + self.hi) * self.size / 2

    def __str__(self):
        if self.lo == self.hi:
            return f"[{format_rational(self.lo)}]"
        return f"[{format_rational(self.lo)},{format_rational(self.hi)}]"


def _check_coset(a: Segment, b: Segment) -> None:
    if a.coset != b.coset or not is_integer(a.lo - b.lo):
        raise CosetMismatch(f"segments {a} and {b} lie in different cosets")


def dominates(a: Segment, b: Segment) -> bool:
    """``a`` is dominated by ``b``: lo_a <= lo_b <= hi_a <= hi_b."""
    _check_coset(a, b)
    return a.lo <= b.lo <= a.hi <= b.hi


def precedes(a: Segment, b: Segment) -> bool:
    _check_coset(a, b)
    return a.lo <= b.lo


def nested(a: Segment, b: Segment) -> bool:
    """``a`` sits strictly inside ``b`` at both ends."""
    _check_coset(a, b)
    return b.lo < a.lo and a.hi < b.hi


def linked(a: Segment, b: Segment) -> bool:
    """Ranges overlap or abut, so the two segments can interact."""
    if a.coset != b.coset or not is_integer(a.lo - b.lo):
        return False
    return a.lo <= b.hi + 1 and b.lo <= a.hi + 1


@dataclass(frozen=True)
class MarkedPartition:
    """A multiset of segments with a per-segment marking.

    ``m`` is the e-value at which markings live.  Segment order is kept as
    constructed (algorithm output order); use :meth:`canonical` or
    :func:`same_orbit` for comparisons up to reordering.
    """

    segments: tuple[Segment, ...]
    marked: tuple[bool, ...]
    m: Fraction

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        object.__setattr__(self, "marked", tuple(bool(x) for x in self.marked))
        object.__setattr__(self, "m", Fraction(self.m))
        if len(self.segments) != len(self.marked):
            raise ValueError("segments and markings differ in length")
        for seg, mk in zip(self.segments, self.marked):
            if mk and (seg.coset != SP or not seg.contains(self.m)):
                raise ValueError(f"segment {seg} cannot carry a marking at m={self.m}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Segment, bool]], m) -> "MarkedPartition":
        pairs = list(pairs)
        return cls(tuple(s for s, _ in pairs), tuple(k for _, k in pairs), m)

    @classmethod
    def unmarked(cls, segments: Iterable[Segment], m) -> "MarkedPartition":
        segments = tuple(segments)
        return cls(segments, (False,) * len(segments), m)

    def pairs(self) -> list[tuple[Segment, bool]]:
        return list(zip(self.segments, self.marked))

    def __len__(self):
        return len(self.segments)

    @property
    def n(self) -> int:
        return sum(s.size for s in self.segments)

    def is_unmarked(self) -> bool:
        return not any(self.marked)

    def strip_marks(self) -> "MarkedPartition":
        return MarkedPartition.unmarked(self.segments, self.m)

    def canonical(self) -> "MarkedPartition":
        """Saturated marking, segments sorted by (lo, hi, marked)."""
        sat = tilde_delta(self)
        return MarkedPartition.from_pairs(sorted(sat.pairs(), key=_pair_key), self.m)

    def key(self) -> tuple:
        """Hashable orbit key: equal keys iff same orbit."""
        return tuple(_pair_key(p) for p in self.canonical().pairs())

    def support_key(self) -> tuple:
        return tuple(sorted((s.lo, s.hi, s.coset) for s in self.segments))

    def evalue_multiset(self, coset: str | None = None) -> Counter:
        c: Counter = Counter()
        for s in self.segments:
            if coset is None or s.coset == coset:
                c.update(s.evalues())
        return c

    def to_dict(self) -> dict:
        rows = sorted(self.pairs(), key=_pair_key)
        out = []
        for seg, mk in rows:
            d = {"lo": format_rational(seg.lo), "hi": format_rational(seg.hi), "marked": mk}
            if seg.coset != SP:
                d["coset"] = seg.coset
            out.append(d)
        return {"segments": out}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict, m) -> "MarkedPartition":
        pairs = []
        for row in data["segments"]:
            seg = Segment(parse_rational(row["lo"]), parse_rational(row["hi"]), row.get("coset", SP))
            pairs.append((seg, bool(row.get("marked", False))))
        return cls.from_pairs(pairs, m)

    def __str__(self):
        parts = [f"{s}{'*' if k else ''}" for s, k in sorted(self.pairs(), key=_pair_key)]
        return "{" + " ".join(parts) + "}"


def _pair_key(pair: tuple[Segment, bool]):
    seg, mk = pair
    return (seg.coset, seg.lo, seg.hi, mk)


@dataclass(frozen=True)
class CentralCharacter:
    """Multiset of log-weights split by coset.

    ``sp`` holds the values in ``m + Z`` (sorted decreasingly, the c-function
    order); ``gl`` holds the values in ``1/2 Z``.
    """

    m: Fraction
    sp: tuple[Fraction, ...] = ()
    gl: tuple[Fraction, ...] = field(default=())

    def __post_init__(self):
        m = Fraction(self.m)
        object.__setattr__(self, "m", m)
        sp = tuple(sorted((Fraction(x) for x in self.sp), reverse=True))
        gl = tuple(sorted((Fraction(x) for x in self.gl), reverse=True))
        for x in sp:
            if not is_integer(x - m):
                raise ValueError(f"{x} is not in the coset m+Z for m={m}")
        for x in gl:
            if not is_integer(2 * x):
                raise ValueError(f"{x} is not in 1/2 Z")
        object.__setattr__(self, "sp", sp)
        object.__setattr__(self, "gl", gl)

    @property
    def n(self) -> int:
        return len(self.sp) + len(self.gl)

    def weights(self) -> list[tuple[Fraction, str]]:
        return [(x, SP) for x in self.sp] + [(x, GL) for x in self.gl]

    def multiset(self, coset: str = SP) -> Counter:
        return Counter(self.sp if coset == SP else self.gl)

    def torus_dim(self) -> int:
        """dim G(s) for a generic positive real character: sum of mult^2."""
        return sum(c * c for c in Counter(self.sp).values()) + sum(
            c * c for c in Counter(self.gl).values()
        )

    def check_adapted(self, mp: MarkedPartition) -> None:
        if mp.m != self.m:
            raise CosetMismatch(f"marked partition has m={mp.m}, character has m={self.m}")
        if mp.evalue_multiset(SP) != self.multiset(SP) or mp.evalue_multiset(GL) != self.multiset(GL):
            raise CosetMismatch("marked partition is not adapted to this central character")


# -- marking saturation and orbit equality ---------------------------------


def tilde_delta(mp: MarkedPartition) -> MarkedPartition:
    """Saturate the marking under domination, to a fixed point."""
    marked = list(mp.marked)
    segs = mp.segments
    changed = True
    while changed:
        changed = False
        for i, seg in enumerate(segs):
            if marked[i] or seg.coset != SP or not seg.contains(mp.m):
                continue
            for j, other in enumerate(segs):
                if marked[j] and other.coset == SP and dominates(seg, other):
                    marked[i] = True
                    changed = True
                    break
    return MarkedPartition(segs, tuple(marked), mp.m)


def same_orbit(a: MarkedPartition, b: MarkedPartition) -> bool:
    if a.m != b.m or a.evalue_multiset(SP) != b.evalue_multiset(SP) or a.evalue_multiset(
        GL
    ) != b.evalue_multiset(GL):
        raise CosetMismatch("marked partitions are adapted to different characters")
    return a.key() == b.key()


# -- stabilizers ------------------------------------------------------------


def _domination_pairs(segs: Sequence[Segment]) -> int:
    u = 0
    for i, a in enumerate(segs):
        for j, b in enumerate(segs):
            if i != j and a.coset == b.coset and is_integer(a.lo - b.lo) and dominates(a, b):
                u += 1
    return u


def stabilizer_dims(mp: MarkedPartition, cc: CentralCharacter | None = None) -> tuple[int, int]:
    """(rank, dim) of the stabilizer of an unmarked orbit."""
    if not mp.is_unmarked():
        raise MarkedInputError("stabilizer_dims expects an unmarked partition")
    if cc is not None:
        cc.check_adapted(mp)
    r = len(mp.segments)
    return r, r + _domination_pairs(mp.segments)


def orbit_dim(mp: MarkedPartition, cc: CentralCharacter) -> int:
    _, dim = stabilizer_dims(mp, cc)
    return cc.torus_dim() - dim


# -- enumeration ------------------------------------------------------------


def segmentations(counts: Counter) -> Iterator[list[Segment]]:
    """All multisets of segments whose e-multiset is ``counts``.

    Each multiset is produced once, as a list sorted by (lo, hi).
    """
    counts = Counter({k: v for k, v in counts.items() if v > 0})

    def rec(counts: Counter, last: tuple | None):
        if not counts:
            yield []
            return
        lo = min(counts)
        hi = lo
        while True:
            if last is None or (lo, hi) >= last:
                rest = counts.copy()
                for i in range(int(hi - lo) + 1):
                    rest[lo + i] -= 1
                    if rest[lo + i] == 0:
                        del rest[lo + i]
                seg = Segment(lo, hi)
                for tail in rec(rest, (lo, hi)):
                    yield [seg] + tail
            if counts.get(hi + 1, 0) > 0:
                hi += 1
            else:
                break

    yield from rec(counts, None)


def enumerate_mp(cc: CentralCharacter, cap: int = DEFAULT_ENUM_CAP) -> list[MarkedPartition]:
    """Orbit representatives (canonical forms) for a symplectic-coset character."""
    from .partitions import is_generic

    if not is_generic(cc.m):
        raise ValueError(f"non-generic m={cc.m}")
    if cc.gl:
        raise ValueError("enumerate_mp handles the symplectic coset only")
    if cc.n > cap:
        raise CapExceeded(f"n={cc.n} exceeds enumeration cap {cap}")
    seen: dict[tuple, MarkedPartition] = {}
    for segs in segmentations(cc.multiset(SP)):
        slots = [i for i, s in enumerate(segs) if s.contains(cc.m)]
        for choice in product((False, True), repeat=len(slots)):
            marked = [False] * len(segs)
            for i, c in zip(slots, choice):
                marked[i] = c
            mp = MarkedPartition(tuple(segs), tuple(marked), cc.m).canonical()
            seen.setdefault(mp.key(), mp)
    return [seen[k] for k in sorted(seen)]


# -- nested components ------------------------------------------------------


def _entangled(a: Segment, b: Segment) -> bool:
    if not linked(a, b):
        return False
    return not (nested(a, b) or nested(b, a))


def nested_components(mp: MarkedPartition) -> list[MarkedPartition]:
    """Finest split of the segments into blocks that are pairwise nested or unlinked.

    Blocks are returned outermost first (by decreasing e-range width, then lo).
    """
    segs = mp.segments
    parent = list(range(len(segs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            if _entangled(segs[i], segs[j]):
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(len(segs)):
        groups.setdefault(find(i), []).append(i)

    def span(idx):
        lo = min(segs[i].lo for i in idx)
        hi = max(segs[i].hi for i in idx)
        return (-(hi - lo), lo)

    blocks = sorted(groups.values(), key=span)
    return [
        MarkedPartition(tuple(segs[i] for i in idx), tuple(mp.marked[i] for i in idx), mp.m)
        for idx in blocks
    ]
