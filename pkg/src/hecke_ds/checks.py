"""Property suites, runnable from the ``check`` command or from tests.

Each suite takes a size bound ``n`` and returns a :class:`SuiteResult`;
counterexamples are data, never exceptions.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Callable

from .ds import (
    ConditionMismatch,
    ConstancyViolation,
    deformation_profile,
    ds,
    ds_contains_sgn,
    is_negative_ladder,
    is_positive_ladder,
    one_hook_oracle,
    satisfies_hook_predicates,
    w_structure_if_ladder,
)
from .partitions import (
    ETableau,
    Bipartition,
    central_character,
    count_bipartitions,
    count_partitions,
    format_partition,
    fold_to_distinguished,
    is_generic,
    partitions,
)
from .poset import SPADESUIT, build_poset, rank_leq, spadesuit_moves, unmarked_orbits
from .rational import format_rational
from .segments import enumerate_mp, same_orbit, stabilizer_dims
from .springer import cross_validate, cuspidal_part, enumerate_distinguished, expected_params
from .tempered import DISCRETE_SERIES, casselman_classify, enumerate_tempered

MAX_EXAMPLES = 20
SPRINGER_GRID = tuple(Fraction(k, 4) for k in (1, 3, 5, 7, 9, 11))


@dataclass
class SuiteResult:
    name: str
    n: int
    checked: int = 0
    counterexamples: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def fail(self, msg: str) -> None:
        if len(self.counterexamples) < MAX_EXAMPLES:
            self.counterexamples.append(msg)
        else:
            self.counterexamples[-1] = f"... and more (last: {msg})"

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "n": self.n,
            "passed": self.passed,
            "checked": self.checked,
            "counterexamples": self.counterexamples,
        }


def interval_midpoints(n: int) -> list[Fraction]:
    """One generic m in each interval (k/2, (k+1)/2) inside (-n, n)."""
    return [Fraction(2 * k + 1, 4) for k in range(-2 * n, 2 * n)]


def _show(sigma, m) -> str:
    return f"sigma={format_partition(sigma)}, m={format_rational(m)}"


# -- suites -----------------------------------------------------------------


def suite_sgn_equivalence(res: SuiteResult) -> None:
    for n in range(1, res.n + 1):
        for sigma in partitions(n):
            for m in interval_midpoints(n):
                res.checked += 1
                try:
                    ds_contains_sgn(sigma, m, check=True)
                except ConditionMismatch as exc:
                    res.fail(str(exc))


def suite_springer(res: SuiteResult) -> None:
    report = cross_validate(res.n, SPRINGER_GRID)
    res.checked += len(report.rows)
    for msg in report.failures:
        res.fail(msg)
    for m in SPRINGER_GRID:
        d, _ = expected_params(0, m)
        lam = cuspidal_part(m)
        want = 2 * (m + Fraction(1, 4)) * (m - Fraction(1, 4))
        res.checked += 1
        if not (lam.ell == d * (2 * d - 1) == want):
            res.fail(f"cuspidal part {lam} at m={format_rational(m)} sums to {lam.ell}")


def _one_hook_samples(k: int, n: int, per_region: int = 5) -> list[Fraction]:
    cuts = sorted({Fraction(n - 2 * k + 1, 2), Fraction(n - k + 1, 2), Fraction(n - k)})
    edges = [Fraction(0)] + [c for c in cuts if c > 0] + [Fraction(n - k + 3)]
    out = []
    for lo, hi in zip(edges, edges[1:]):
        if hi <= lo:
            continue
        grid = [lo + (hi - lo) * j / (2 * per_region + 1) for j in range(1, 2 * per_region + 1)]
        grid = [x for x in grid if is_generic(x)]
        out += grid[:: max(1, len(grid) // per_region)][:per_region]
    return out


def suite_one_hook(res: SuiteResult) -> None:
    for n in range(1, res.n + 1):
        for k in range(1, n + 1):
            sigma = (k,) + (1,) * (n - k)
            for m in _one_hook_samples(k, n):
                res.checked += 1
                got, want = ds(sigma, m), one_hook_oracle(k, n, m)
                if not same_orbit(got, want):
                    res.fail(f"{_show(sigma, m)}: ds={got}, closed form={want}")


def suite_ladders(res: SuiteResult) -> None:
    for n in range(1, res.n + 1):
        for sigma in partitions(n):
            label = Bipartition(sigma, ())
            for m, positive in ((n - Fraction(3, 4), True), (-(n - Fraction(3, 4)), False)):
                res.checked += 1
                out = ds(sigma, m)
                ok = (is_positive_ladder if positive else is_negative_ladder)(out, sigma, m)
                w = w_structure_if_ladder(sigma, m)
                if not ok or w is None or w.bipartition != label or w.sgn_twisted != positive:
                    res.fail(f"{_show(sigma, m)}: ds={out}, W-structure={w}")


def suite_constancy(res: SuiteResult) -> None:
    for n in range(1, res.n + 1):
        for sigma in partitions(n):
            res.checked += 1
            try:
                deformation_profile(sigma, -n - 1, n + 1, samples=3)
            except ConstancyViolation as exc:
                res.fail(str(exc))


def suite_counting(res: SuiteResult) -> None:
    for m in (Fraction(1, 4), Fraction(3, 4), Fraction(9, 4)):
        for n in range(res.n + 1):
            d, ell = expected_params(n, m)
            got = len(enumerate_distinguished(ell, d))
            res.checked += 1
            if got != count_partitions(n):
                res.fail(f"X_({ell},{d}) at n={n}: {got} distinguished orbits, want {count_partitions(n)}")
    for n in range(res.n + 1):
        got = len(enumerate_tempered(n, Fraction(3, 4)))
        res.checked += 1
        if got != count_bipartitions(n):
            res.fail(f"n={n}: {got} tempered parameters, want {count_bipartitions(n)}")


def suite_hook_orbits(res: SuiteResult) -> None:
    for n in range(1, res.n + 1):
        for k in range(1, n + 1):
            sigma = (k,) + (1,) * (n - k)
            cc = central_character(ETableau(sigma, Fraction(1, 4)))
            got = len(enumerate_mp(cc, cap=max(n, 12)))
            res.checked += 1
            if got != 2 ** n:
                res.fail(f"hook {format_partition(sigma)}: {got} orbits, want {2 ** n}")


def suite_orbits(res: SuiteResult) -> None:
    for n in range(1, min(res.n, 6) + 1):
        for sigma in partitions(n):
            for m in interval_midpoints(n):
                cc = central_character(ETableau(sigma, m))
                for mp in unmarked_orbits(cc):
                    _, before = stabilizer_dims(mp)
                    for up in spadesuit_moves(mp):
                        res.checked += 1
                        if stabilizer_dims(up)[1] >= before:
                            res.fail(f"{_show(sigma, m)}: {mp} -> {up} does not shrink the stabilizer")
    for n in range(1, min(res.n, 6) + 1):
        for sigma in partitions(n):
            for m in (Fraction(1, 4), Fraction(3, 4), Fraction(5, 4), Fraction(-3, 4), Fraction(-5, 4)):
                _poset_checks(res, sigma, m, rank_check=n <= 5)


def _poset_checks(res: SuiteResult, sigma, m, rank_check: bool) -> None:
    cc = central_character(ETableau(sigma, m))
    p = build_poset(cc)
    res.checked += 1
    fold = p.index(fold_to_distinguished(ETableau(sigma, m)))
    if p.maxima() != [fold]:
        res.fail(f"{_show(sigma, m)}: maxima {[str(p.nodes[i]) for i in p.maxima()]}")
    for i, j, kind in p.covers:
        a, b = p.nodes[i], p.nodes[j]
        if kind == SPADESUIT and a.is_unmarked() and b.is_unmarked():
            if stabilizer_dims(b)[1] >= stabilizer_dims(a)[1]:
                res.fail(f"{_show(sigma, m)}: cover {a} -> {b} does not raise orbit dim")
        if kind != SPADESUIT and a.support_key() != b.support_key():
            res.fail(f"{_show(sigma, m)}: mark edge {a} -> {b} changes support")
    if not rank_check:
        return
    up = p.up_sets()
    un = [i for i, node in enumerate(p.nodes) if node.is_unmarked()]
    for i in un:
        for j in un:
            res.checked += 1
            if bool(up[i] >> j & 1) != rank_leq(p.nodes[i], p.nodes[j]):
                res.fail(f"{_show(sigma, m)}: reachability and ranks disagree on {p.nodes[i]} <= {p.nodes[j]}")


def suite_predicates(res: SuiteResult) -> None:
    for n in range(1, res.n + 1):
        for sigma in partitions(n):
            for m in interval_midpoints(n):
                res.checked += 1
                out = ds(sigma, m)
                if not satisfies_hook_predicates(out, sigma):
                    res.fail(f"{_show(sigma, m)}: ds={out} fails the hook predicates")
    for n in range(1, min(res.n, 6) + 1):
        for sigma in partitions(n):
            for m in interval_midpoints(n):
                out = ds(sigma, m)
                p = build_poset(central_character(ETableau(sigma, m)))
                up, top = p.up_sets(), p.index(out)
                for i, node in enumerate(p.nodes):
                    if i == top or not up[i] >> top & 1:
                        continue
                    res.checked += 1
                    if satisfies_hook_predicates(node, sigma):
                        res.fail(f"{_show(sigma, m)}: {node} lies below ds={out} and satisfies the predicates")


def suite_tempered(res: SuiteResult) -> None:
    m = Fraction(3, 4)
    for n in range(res.n + 1):
        params = enumerate_tempered(n, m)
        res.checked += 1
        if len(params) != count_bipartitions(n):
            res.fail(f"n={n}: {len(params)} parameters, want {count_bipartitions(n)}")
        keys = {(p.marked.key(), p.character) for p in params}
        if len(keys) != len(params):
            res.fail(f"n={n}: repeated tempered parameters")
    for n in range(1, min(res.n, 6) + 1):
        for sigma in partitions(n):
            mm = n - Fraction(3, 4)
            cc = central_character(ETableau(sigma, mm))
            weights = set(permutations([-x for x in cc.sp]))
            res.checked += 1
            if casselman_classify(weights) != DISCRETE_SERIES:
                res.fail(f"{_show(sigma, mm)}: permuted ladder weights are not discrete series")


@dataclass(frozen=True)
class Suite:
    name: str
    run: Callable[[SuiteResult], None]
    default_n: int
    about: str


SUITES: dict[str, Suite] = {
    s.name: s
    for s in (
        Suite("sgn-equivalence", suite_sgn_equivalence, 8, "three sgn criteria agree"),
        Suite("springer", suite_springer, 8, "two bipartition algorithms agree"),
        Suite("one-hook", suite_one_hook, 10, "ds matches the hook closed form"),
        Suite("ladders", suite_ladders, 8, "threshold ladders and their W-labels"),
        Suite("constancy", suite_constancy, 8, "ds is constant between half-integers"),
        Suite("counting", suite_counting, 12, "P(n) distinguished orbits, P2(n) tempered"),
        Suite("hook-orbits", suite_hook_orbits, 10, "a single hook carries 2^n orbits"),
        Suite("orbits", suite_orbits, 6, "stabilizers, poset maximum, rank oracle"),
        Suite("predicates", suite_predicates, 8, "hook predicates and minimality of ds"),
        Suite("tempered", suite_tempered, 8, "tempered counts and Casselman signs"),
    )
}


def run_suite(name: str, n: int | None = None) -> SuiteResult:
    suite = SUITES[name]
    res = SuiteResult(name, suite.default_n if n is None else n)
    start = time.perf_counter()
    suite.run(res)
    res.seconds = time.perf_counter() - start
    return res
