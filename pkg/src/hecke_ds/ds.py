"""The discrete-series algorithm and the criteria built on top of it.

``ds(sigma, m)`` runs the three stages in order: :func:`peel` strips the
tableau into horizontal/vertical strips by the largest |e|, :func:`assemble`
glues strips that meet at the same offset, and :func:`mark` assigns the
marking.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .partitions import (
    Bipartition,
    Box,
    ETableau,
    NonGenericError,
    Partition,
    as_partition,
    conjugate,
    extremities,
    fold_to_distinguished,
    hook_decomposition,
    is_generic,
)
from .rational import format_rational, is_integer
from .segments import MarkedPartition, Segment, dominates, nested, nested_components, same_orbit, tilde_delta

PLUS = "+"
MINUS = "-"


@dataclass(frozen=True)
class PeelStep:
    side: str
    segment: Segment
    boxes: tuple[Box, ...]

    @property
    def evalues(self) -> list[Fraction]:
        return self.segment.evalues()


@dataclass(frozen=True)
class PeelResult:
    m: Fraction
    log: tuple[PeelStep, ...]

    @property
    def Lplus(self) -> list[Segment]:
        return [s.segment for s in self.log if s.side == PLUS]

    @property
    def Lminus(self) -> list[Segment]:
        return [s.segment for s in self.log if s.side == MINUS]

    def format_log(self) -> str:
        lines = []
        for i, step in enumerate(self.log, start=1):
            vals = ",".join(format_rational(v) for v in step.evalues)
            kind = "row" if step.side == PLUS else "column"
            lines.append(f"{i:>3} L{step.side} {kind:<6} [{vals}]")
        return "\n".join(lines)


def _largest_abs_box(t: ETableau, boxes: list[Box]) -> Box:
    best = max(abs(t.e(*b)) for b in boxes)
    winners = [b for b in boxes if abs(t.e(*b)) == best]
    if len(winners) != 1:
        raise NonGenericError(f"|e|-tie at m={t.m}: {winners}")
    return winners[0]


def peel(t: ETableau) -> PeelResult:
    """Strip the current top row or first column, whichever holds the largest |e|."""
    if not is_generic(t.m):
        raise NonGenericError(f"non-generic m={t.m}")
    shape, conj = t.shape, conjugate(t.shape)
    top = left = 0
    log = []
    while top < len(shape) and shape[top] > left:
        r, c = top + 1, left + 1
        right = Box(r, shape[top])
        bottom = Box(conj[left], c)
        e_right, e_bottom = t.e(*right), t.e(*bottom)
        if right == bottom:
            if e_right == 0:
                raise NonGenericError(f"zero e-value at m={t.m}")
            side = PLUS if e_right > 0 else MINUS
        elif abs(e_right) == abs(e_bottom):
            raise NonGenericError(f"|e|-tie at m={t.m}")
        else:
            side = PLUS if abs(e_right) > abs(e_bottom) else MINUS
        if __debug__:
            remaining = [b for b in t.boxes() if b.row > top and b.col > left]
            assert _largest_abs_box(t, remaining) == (right if side == PLUS else bottom)
        if side == PLUS:
            boxes = tuple(Box(r, j) for j in range(c, right.col + 1))
            top += 1
        else:
            boxes = tuple(Box(i, c) for i in range(r, bottom.row + 1))
            left += 1
        vals = [t.e(*b) for b in boxes]
        log.append(PeelStep(side, Segment(min(vals), max(vals)), boxes))
    return PeelResult(t.m, tuple(log))


def assemble(p: PeelResult) -> list[Segment]:
    """Glue the L+ strips starting at m+k with the L- strips ending at m+k-1."""
    m = p.m
    plus: dict[int, list[Segment]] = {}
    minus: dict[int, list[Segment]] = {}
    for seg in p.Lplus:
        plus.setdefault(int(seg.lo - m), []).append(seg)
    for seg in p.Lminus:
        minus.setdefault(int(seg.hi - m + 1), []).append(seg)
    out = []
    for k in sorted(set(plus) | set(minus), reverse=True):
        a = sorted(plus.get(k, []), key=lambda s: -s.size)
        b = sorted(minus.get(k, []), key=lambda s: -s.size)
        for j in range(max(len(a), len(b))):
            x = a[j] if j < len(a) else None
            y = b[j] if j < len(b) else None
            if x is None or y is None:
                out.append(x or y)
                continue
            if y.hi + 1 != x.lo:
                raise AssertionError(f"non-contiguous union of {x} and {y}")
            out.append(Segment(y.lo, x.hi))
    return out


def mark(segments: Sequence[Segment], m) -> MarkedPartition:
    """Temporary marking on m-segments with positive e-sum, then drop dominated marks.

    When several identical segments are temporarily marked, the first copy
    keeps its mark so the orbit is unchanged.
    """
    m = Fraction(m)
    segments = tuple(segments)
    temp = [s.contains(m) and s.av() > 0 for s in segments]
    final = []
    for i, seg in enumerate(segments):
        keep = temp[i]
        if keep:
            for j, other in enumerate(segments):
                if j == i or not temp[j] or not dominates(seg, other):
                    continue
                if other != seg or j < i:
                    keep = False
                    break
        final.append(keep)
    return MarkedPartition(segments, tuple(final), m)


def ds(sigma: Sequence[int], m) -> MarkedPartition:
    """Discrete-series parameter for the distinguished character of sigma."""
    t = ETableau(as_partition(sigma), Fraction(m))
    if not is_generic(t.m):
        raise NonGenericError(f"non-generic m={t.m}")
    return mark(assemble(peel(t)), t.m)


# -- one-hook closed form ---------------------------------------------------


def one_hook_case(k: int, n: int, m) -> str:
    m = Fraction(m)
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if not is_generic(m):
        raise NonGenericError(f"non-generic m={m}")
    if m <= 0:
        raise ValueError("the one-hook closed form assumes m > 0")
    if m + k - n > 0:
        return "a"
    depth = n - k - m  # |e| of the bottom box
    if depth > m + k - 1:
        return "b1"
    if depth > m - 1:
        return "b2"
    return "b3"


def one_hook_oracle(k: int, n: int, m) -> MarkedPartition:
    """Closed-form discrete-series parameter for sigma = (k, 1^(n-k)), m > 0."""
    m = Fraction(m)
    case = one_hook_case(k, n, m)
    row = Segment(m, m + k - 1)
    bottom = m + k - n
    if case == "a":
        singles = [Segment(m - i, m - i) for i in range(1, n - k + 1)]
        return MarkedPartition((row, *singles), (True,) + (False,) * len(singles), m)
    if case in ("b1", "b2"):
        return MarkedPartition((Segment(bottom, m + k - 1),), (case == "b2",), m)
    depth = n - k - m
    x = depth - m
    l = x.numerator // x.denominator + 1  # the integer with m+l-1 < depth < m+l
    singles = [Segment(m + i, m + i) for i in range(-1, l, -1)]
    segs = (row, *singles, Segment(bottom, m + l))
    return MarkedPartition(segs, (True,) + (False,) * (len(segs) - 1), m)


# -- ladders ----------------------------------------------------------------


def positive_ladder(sigma: Sequence[int], m) -> MarkedPartition:
    m = Fraction(m)
    segs = tuple(Segment(m + 1 - i, m + lam - i) for i, lam in enumerate(sigma, start=1))
    return MarkedPartition(segs, tuple(i == 0 for i in range(len(segs))), m)


def negative_ladder(sigma: Sequence[int], m) -> MarkedPartition:
    m = Fraction(m)
    segs = tuple(Segment(m + i - h, m + i - 1) for i, h in enumerate(conjugate(sigma), start=1))
    return MarkedPartition.unmarked(segs, m)


def is_positive_ladder(mp: MarkedPartition, sigma: Sequence[int], m) -> bool:
    ref = positive_ladder(sigma, m)
    return mp.evalue_multiset() == ref.evalue_multiset() and same_orbit(mp, ref)


def is_negative_ladder(mp: MarkedPartition, sigma: Sequence[int], m) -> bool:
    ref = negative_ladder(sigma, m)
    return mp.evalue_multiset() == ref.evalue_multiset() and same_orbit(mp, ref)


def ladder_threshold_check(sigma: Sequence[int], m) -> str:
    n, m = sum(sigma), Fraction(m)
    if m > n - 1:
        return "forced_positive"
    if m < 1 - n:
        return "forced_negative"
    return "neither"


@dataclass(frozen=True)
class WStructure:
    bipartition: Bipartition
    sgn_twisted: bool

    def __str__(self):
        return f"{self.bipartition}" + (" ⊗ sgn" if self.sgn_twisted else "")


def w_structure_if_ladder(sigma: Sequence[int], m) -> WStructure | None:
    sigma = as_partition(sigma)
    out = ds(sigma, m)
    if is_positive_ladder(out, sigma, m):
        return WStructure(Bipartition(sigma, ()), True)
    if is_negative_ladder(out, sigma, m):
        return WStructure(Bipartition(sigma, ()), False)
    return None


# -- sgn criteria -----------------------------------------------------------


def _weakly_decreasing(xs: Sequence[Fraction]) -> bool:
    return all(xs[i] >= xs[i + 1] for i in range(len(xs) - 1))


def sgn_condition_support(mp: MarkedPartition) -> bool:
    """max e(I_1) >= -min e(I_1) >= max e(I_2) >= ... over the support."""
    segs = sorted(mp.segments, key=lambda s: (-s.hi, s.lo))
    chain = []
    for s in segs:
        chain += [s.hi, -s.lo]
    return _weakly_decreasing(chain)


def extremity_chain(sigma: Sequence[int], m) -> list[Fraction] | None:
    """Alternating chain e1 >= e2 >= ... read off the peel, or None when the
    peel does not alternate row, column, row, ...

    Odd terms are row maxima and even terms negated column minima, so a
    positive chain lives inside E+ and E-.  The bare sets are not enough to
    decide the sgn condition: (4) at m=-11/8 and (3,2) at m=-3/8 share them.
    """
    log = peel(ETableau(as_partition(sigma), Fraction(m))).log
    chain = []
    for i, step in enumerate(log):
        want = PLUS if i % 2 == 0 else MINUS
        if step.side != want:
            return None
        chain.append(step.segment.hi if want == PLUS else -step.segment.lo)
    return chain


def sgn_condition_extremities(sigma: Sequence[int], m) -> bool:
    chain = extremity_chain(sigma, m)
    if chain is None or not _weakly_decreasing(chain) or chain[-1] < 0:
        return False
    eplus, eminus = extremities(as_partition(sigma), m)
    assert set(chain[0::2]) <= set(eplus) and set(chain[1::2]) <= set(eminus)
    return True


class ConditionMismatch(AssertionError):
    pass


def ds_contains_sgn(sigma: Sequence[int], m, check: bool = True) -> bool:
    sigma = as_partition(sigma)
    out = ds(sigma, m)
    result = sgn_condition_support(out)
    if check:
        via_ext = sgn_condition_extremities(sigma, m)
        via_open = same_orbit(out, fold_to_distinguished(ETableau(sigma, Fraction(m))))
        if not result == via_ext == via_open:
            raise ConditionMismatch(
                f"sigma={sigma}, m={m}: support={result}, extremities={via_ext}, open={via_open}"
            )
    return result


# -- minimality predicates --------------------------------------------------


def minimality_predicates(mp: MarkedPartition, sign: str) -> dict[str, bool]:
    """The positive (p1-p3) or negative (n1, n2) predicates on one component.

    Markings are read after saturation.  p1 counts segments whose e-values
    all exceed m - i (that is, lo >= m - i + 1); n1 mirrors it.  The
    strict bound lo > m - i + 1 accepts orbits below ds, e.g. {[1/4]* [5/4]}
    under sigma = (2), m = 1/4.
    """
    m = mp.m
    segs = mp.segments
    if sign == PLUS:
        sat = tilde_delta(mp)
        p1 = all(sum(1 for s in segs if s.lo >= m - i + 1) <= i for i in range(len(segs) + 1))
        p2 = all(s.av() > 0 for s in segs)
        p3 = all(mk for s, mk in sat.pairs() if s.contains(m))
        return {"p1": p1, "p2": p2, "p3": p3}
    if sign == MINUS:
        n1 = all(sum(1 for s in segs if s.hi <= m + i - 1) <= i for i in range(len(segs) + 1))
        n2 = all(s.av() < 0 for s in segs)
        return {"n1": n1, "n2": n2}
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


@dataclass(frozen=True)
class HookGroup:
    sign: str
    hooks: tuple[int, ...]
    evalues: Counter = field(compare=False)


def hook_groups(sigma: Sequence[int], m) -> list[HookGroup]:
    """Maximal runs of consecutive hooks whose e-sums share a sign, outermost first."""
    t = ETableau(as_partition(sigma), Fraction(m))
    groups: list[HookGroup] = []
    for h in hook_decomposition(t):
        total = sum(h.evalues(), Fraction(0))
        sign = PLUS if total > 0 else MINUS
        if groups and groups[-1].sign == sign:
            g = groups[-1]
            groups[-1] = HookGroup(sign, g.hooks + (h.index,), g.evalues + Counter(h.evalues()))
        else:
            groups.append(HookGroup(sign, (h.index,), Counter(h.evalues())))
    return groups


def _groups_nested(parts: list[list[Segment]]) -> bool:
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            if not all(nested(b, a) for a in parts[i] for b in parts[j]):
                return False
    return True


def hook_nested_decompositions(mp: MarkedPartition, sigma: Sequence[int]) -> Iterator[list[tuple[str, MarkedPartition]]]:
    """Every way of splitting mp along the hook groups of sigma.

    Each split assigns whole nested blocks of mp to hook groups so that the
    e-multisets match and the groups are nested (outer group first).
    """
    groups = hook_groups(sigma, mp.m)
    sat = tilde_delta(mp)
    blocks = nested_components(sat)
    block_counts = [b.evalue_multiset() for b in blocks]
    assignment = [-1] * len(blocks)

    def rec(i, remaining):
        if i == len(blocks):
            if all(not +r for r in remaining):
                yield list(assignment)
            return
        for g, rem in enumerate(remaining):
            if all(rem[v] >= c for v, c in block_counts[i].items()):
                assignment[i] = g
                new = list(remaining)
                new[g] = rem - block_counts[i]
                yield from rec(i + 1, new)
        assignment[i] = -1

    for assign in rec(0, [g.evalues.copy() for g in groups]):
        parts: list[list[tuple[Segment, bool]]] = [[] for _ in groups]
        for b, g in zip(blocks, assign):
            parts[g].extend(b.pairs())
        if not _groups_nested([[s for s, _ in p] for p in parts]):
            continue
        yield [(grp.sign, MarkedPartition.from_pairs(p, mp.m)) for grp, p in zip(groups, parts)]


def satisfies_hook_predicates(mp: MarkedPartition, sigma: Sequence[int]) -> bool:
    for split in hook_nested_decompositions(mp, sigma):
        if all(all(minimality_predicates(comp, sign).values()) for sign, comp in split):
            return True
    return False


# -- deformation in m -------------------------------------------------------


class ConstancyViolation(AssertionError):
    pass


@dataclass(frozen=True)
class DeformationProfile:
    sigma: Partition
    intervals: tuple[tuple[Fraction, Fraction, MarkedPartition], ...]
    critical_points: tuple[Fraction, ...]

    def to_dict(self) -> dict:
        return {
            "sigma": list(self.sigma),
            "critical_points": [format_rational(x) for x in self.critical_points],
            "intervals": [
                {"lo": format_rational(a), "hi": format_rational(b), "ds": mp.to_dict()}
                for a, b, mp in self.intervals
            ],
        }


def _half_integer_cuts(lo: Fraction, hi: Fraction) -> list[Fraction]:
    k = (2 * lo).__floor__() + 1
    cuts = []
    while Fraction(k, 2) < hi:
        cuts.append(Fraction(k, 2))
        k += 1
    return cuts


def sample_points(lo: Fraction, hi: Fraction, count: int = 3) -> list[Fraction]:
    return [lo + (hi - lo) * j / (count + 1) for j in range(1, count + 1)]


def deformation_profile(sigma: Sequence[int], m_lo, m_hi, samples: int = 3) -> DeformationProfile:
    sigma = as_partition(sigma)
    m_lo, m_hi = Fraction(m_lo), Fraction(m_hi)
    if not m_lo < m_hi:
        raise ValueError("need m_lo < m_hi")
    cuts = _half_integer_cuts(m_lo, m_hi)
    edges = [m_lo] + cuts + [m_hi]
    intervals = []
    for a, b in zip(edges, edges[1:]):
        pts = [x for x in sample_points(a, b, samples) if is_generic(x)]
        outs = [ds(sigma, x) for x in pts]
        # representatives at different m live on different characters: compare shapes
        keys = {_relative_key(o) for o in outs}
        if len(keys) != 1:
            raise ConstancyViolation(f"ds({sigma}) changes inside ({a}, {b})")
        intervals.append((a, b, outs[len(outs) // 2]))
    return DeformationProfile(sigma, tuple(intervals), tuple(cuts))


def _relative_key(mp: MarkedPartition) -> tuple:
    """Orbit key with e-values expressed as offsets from m."""
    return tuple((lo - mp.m, hi - mp.m, mk) for _, lo, hi, mk in mp.key())


def same_orbit_across_m(a: MarkedPartition, b: MarkedPartition) -> bool:
    return _relative_key(a) == _relative_key(b)


def extremity_repetition_test(sigma: Sequence[int], k) -> bool:
    k = Fraction(k)
    if not is_integer(2 * k):
        raise ValueError(f"k={k} is not a critical value")
    eplus, eminus = extremities(as_partition(sigma), k)
    values = eplus + eminus
    return len(values) == len(set(values))
