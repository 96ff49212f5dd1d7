"""Closure order on orbits, generated by linking moves and added markings.

The order here is the computable sub-order described in the README: two
segments that are linked but not nested may be replaced by their union and
intersection (the orbit grows), and a marking may be added to a segment
containing ``m`` (the orbit grows).  Nothing is claimed about marked closure
relations beyond these generators.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .segments import (
    DEFAULT_ENUM_CAP,
    SP,
    CentralCharacter,
    MarkedInputError,
    MarkedPartition,
    Segment,
    enumerate_mp,
    segmentations,
)

SPADESUIT = "spadesuit"
MARK_REMOVAL = "mark_removal"


def _move_pairs(segs: tuple[Segment, ...]):
    for k, a in enumerate(segs):
        for l, b in enumerate(segs):
            if k == l or a.coset != b.coset:
                continue
            if a.lo < b.lo <= a.hi + 1 < b.hi + 1:
                yield k, l


def _apply_move(mp: MarkedPartition, k: int, l: int) -> MarkedPartition:
    a, b = mp.segments[k], mp.segments[l]
    pairs = [p for i, p in enumerate(mp.pairs()) if i not in (k, l)]
    pairs.append((Segment(a.lo, b.hi, a.coset), mp.marked[k] or mp.marked[l]))
    if b.lo <= a.hi:
        pairs.append((Segment(b.lo, a.hi, a.coset), False))
    return MarkedPartition.from_pairs(pairs, mp.m)


def spadesuit_moves(mp: MarkedPartition, cc: CentralCharacter | None = None) -> list[MarkedPartition]:
    """Every single linking move out of an unmarked partition, deduplicated."""
    if not mp.is_unmarked():
        raise MarkedInputError("spadesuit_moves expects an unmarked partition")
    if cc is not None:
        cc.check_adapted(mp)
    return _moves(mp)


def _moves(mp: MarkedPartition) -> list[MarkedPartition]:
    seen = {}
    for k, l in _move_pairs(mp.segments):
        out = _apply_move(mp, k, l).canonical()
        seen.setdefault(out.key(), out)
    return [seen[key] for key in sorted(seen)]


def _mark_additions(mp: MarkedPartition) -> list[MarkedPartition]:
    seen = {}
    base = mp.key()
    for i, (seg, mk) in enumerate(mp.pairs()):
        if mk or seg.coset != SP or not seg.contains(mp.m):
            continue
        marked = list(mp.marked)
        marked[i] = True
        out = MarkedPartition(mp.segments, tuple(marked), mp.m).canonical()
        if out.key() != base:
            seen.setdefault(out.key(), out)
    return [seen[key] for key in sorted(seen)]


def successors(mp: MarkedPartition) -> list[tuple[MarkedPartition, str]]:
    """One-step moves upward: linking moves (markings transported) and mark additions."""
    return [(x, SPADESUIT) for x in _moves(mp)] + [(x, MARK_REMOVAL) for x in _mark_additions(mp)]


def _check_same_character(a: MarkedPartition, b: MarkedPartition) -> None:
    from .segments import CosetMismatch

    if a.m != b.m or a.evalue_multiset() != b.evalue_multiset():
        raise CosetMismatch("marked partitions are adapted to different characters")


def closure_leq(a: MarkedPartition, b: MarkedPartition, cc: CentralCharacter | None = None) -> bool:
    """True when ``b`` is reachable from ``a`` in the generated order."""
    _check_same_character(a, b)
    if cc is not None:
        cc.check_adapted(a)
        cc.check_adapted(b)
    target = b.key()
    start = a.canonical()
    seen = {start.key()}
    stack = [start]
    while stack:
        x = stack.pop()
        if x.key() == target:
            return True
        for y, _ in successors(x):
            if y.key() not in seen:
                seen.add(y.key())
                stack.append(y)
    return False


@dataclass
class OrbitPoset:
    nodes: list[MarkedPartition]
    covers: list[tuple[int, int, str]] = field(default_factory=list)

    def index(self, mp: MarkedPartition) -> int:
        key = mp.key()
        for i, node in enumerate(self.nodes):
            if node.key() == key:
                return i
        raise KeyError(str(mp))

    def up_sets(self) -> list[int]:
        """Bitmask of everything weakly above each node."""
        above = [1 << i for i in range(len(self.nodes))]
        succ: list[list[int]] = [[] for _ in self.nodes]
        for i, j, _ in self.covers:
            succ[i].append(j)
        for i in self._topological(succ)[::-1]:
            for j in succ[i]:
                above[i] |= above[j]
        return above

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up_sets()[i] >> j & 1)

    def maxima(self) -> list[int]:
        has_up = {i for i, _, _ in self.covers}
        return [i for i in range(len(self.nodes)) if i not in has_up]

    def _topological(self, succ: list[list[int]]) -> list[int]:
        indeg = [0] * len(self.nodes)
        for out in succ:
            for j in out:
                indeg[j] += 1
        order = [i for i, d in enumerate(indeg) if d == 0]
        for i in order:
            for j in succ[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    order.append(j)
        if len(order) != len(self.nodes):
            raise ValueError("closure relation has a cycle")
        return order

    def to_dict(self) -> dict:
        return {
            "nodes": [n.to_dict() for n in self.nodes],
            "covers": [[i, j, kind] for i, j, kind in self.covers],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def build_poset(cc: CentralCharacter, cap: int = DEFAULT_ENUM_CAP) -> OrbitPoset:
    nodes = enumerate_mp(cc, cap)
    where = {n.key(): i for i, n in enumerate(nodes)}
    edges: dict[tuple[int, int], str] = {}
    for i, node in enumerate(nodes):
        for y, kind in successors(node):
            edges.setdefault((i, where[y.key()]), kind)
    succ: list[set[int]] = [set() for _ in nodes]
    for i, j in edges:
        succ[i].add(j)

    # transitive reduction via reachability bitmasks
    poset = OrbitPoset(nodes, [(i, j, k) for (i, j), k in sorted(edges.items())])
    above = poset.up_sets()
    covers = []
    for (i, j), kind in sorted(edges.items()):
        redundant = any(k != j and above[k] >> j & 1 for k in succ[i])
        if not redundant:
            covers.append((i, j, kind))
    poset.covers = covers
    return poset


def to_dot(p: OrbitPoset) -> str:
    if not p.nodes:
        return "digraph{}\n"
    lines = ["digraph{"]
    for i, node in enumerate(p.nodes):
        lines.append(f"  n{i} [label={json.dumps(node.to_json())}];")
    for i, j, kind in p.covers:
        style = "solid" if kind == SPADESUIT else "dashed"
        lines.append(f"  n{i} -> n{j} [style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- independent check on unmarked orbits ----------------------------------


def rank_vector(mp: MarkedPartition) -> dict[tuple[Fraction, Fraction], int]:
    """r[i, j] = number of segments containing the run [i, j], for i <= j in the support."""
    values = sorted(mp.evalue_multiset())
    out = {}
    for i in values:
        for j in values:
            if j >= i:
                out[(i, j)] = sum(1 for s in mp.segments if s.lo <= i and j <= s.hi)
    return out


def rank_leq(a: MarkedPartition, b: MarkedPartition) -> bool:
    """Degeneration order on multisegments: every rank of ``a`` bounded by ``b``."""
    ra, rb = rank_vector(a), rank_vector(b)
    return all(v <= rb.get(k, 0) for k, v in ra.items())


def unmarked_orbits(cc: CentralCharacter) -> list[MarkedPartition]:
    return [MarkedPartition.unmarked(segs, cc.m) for segs in segmentations(cc.multiset(SP))]
