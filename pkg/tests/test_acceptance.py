"""Acceptance criteria, one test each; a PASS/FAIL line per criterion is
printed at the end of the run (and by ``python tests/test_acceptance.py``)."""
import time
from fractions import Fraction as F

import pytest

from hecke_ds import checks
from hecke_ds.ds import ds, peel
from hecke_ds.partitions import Bipartition, ETableau
from hecke_ds.segments import MarkedPartition, Segment, same_orbit
from hecke_ds.springer import cross_validate, cuspidal_part, ls_rho, orbit_defect, sigma_to_orbit, slooten_bipartition

RESULTS: dict[int, tuple[str, bool, float, float]] = {}


def mp_at(m, *rows):
    return MarkedPartition(tuple(Segment(m + a, m + b) for a, b, _ in rows), tuple(k for *_, k in rows), m)


def crit_n2_table():
    problems = []
    for m in (F(1, 4), F(3, 4), F(5, 4)):
        if not same_orbit(ds((2,), m), mp_at(m, (0, 1, True))):
            problems.append(f"(2) at {m}")
    want = {
        F(1, 4): mp_at(F(1, 4), (-1, 0, False)),
        F(3, 4): mp_at(F(3, 4), (-1, 0, True)),
        F(5, 4): mp_at(F(5, 4), (0, 0, True), (-1, -1, False)),
    }
    for m, target in want.items():
        if not same_orbit(ds((1, 1), m), target):
            problems.append(f"(1,1) at {m}")
    return problems


def crit_worked_example():
    m = F(9, 4)
    problems = []
    want = mp_at(m, (0, 3, True), (-1, 1, False), (-4, 0, False), (-2, -2, False))
    if ds((4, 3, 3, 2, 1), m).key() != want.key():
        problems.append("ds")
    p = peel(ETableau((4, 3, 3, 2, 1), m))
    if p.Lplus != [Segment(m, m + 3), Segment(m - 1, m + 1), Segment(m - 2, m), Segment(m - 2, m - 2)]:
        problems.append(f"L+ = {p.Lplus}")
    if p.Lminus != [Segment(m - 4, m - 3)]:
        problems.append(f"L- = {p.Lminus}")
    return problems


def crit_springer_chain():
    m = F(9, 4)
    problems = []
    if cuspidal_part(m).parts != (3, 7):
        problems.append("cuspidal part")
    orbit = sigma_to_orbit((4, 3, 3, 2, 1), m)
    if orbit.parts != (1, 3, 9, 11, 15, 23) or orbit_defect(orbit) != -2 or orbit.ell != 62:
        problems.append(f"orbit {orbit}")
    target = Bipartition((4, 3, 3, 1), (2,))
    if slooten_bipartition((4, 3, 3, 2, 1), m) != target or ls_rho(orbit) != target:
        problems.append("bipartition")
    return problems


def crit_springer_sweep():
    return cross_validate(8, [F(k, 4) for k in (1, 3, 5, 7, 9, 11)]).failures


def suite(name, n):
    return lambda: checks.run_suite(name, n).counterexamples


CRITERIA = [
    (1, "n=2 table", crit_n2_table, 1),
    (2, "worked example (4,3,3,2,1) at 9/4", crit_worked_example, 1),
    (3, "Spin orbit chain at 9/4", crit_springer_chain, 1),
    (4, "Springer cross-validation n<=8", crit_springer_sweep, 60),
    (5, "one-hook closed form n<=10", suite("one-hook", 10), 30),
    (6, "sgn three-way equivalence n<=8", suite("sgn-equivalence", 8), 120),
    (7, "counting P(n) and P2(n) n<=12", suite("counting", 12), 60),
    (8, "orbit calculus", lambda: suite("hook-orbits", 10)() + suite("orbits", 6)(), 120),
    (9, "ladder thresholds n<=8", suite("ladders", 8), 10),
    (10, "interval constancy n<=8", suite("constancy", 8), 60),
    (11, "hook predicates and minimality", suite("predicates", 8), 120),
]


def evaluate(number, title, fn, limit):
    start = time.perf_counter()
    problems = fn()
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < limit
    RESULTS[number] = (title, ok, elapsed, limit)
    return problems, elapsed


def summary_lines():
    lines = []
    for number in sorted(RESULTS):
        title, ok, elapsed, limit = RESULTS[number]
        lines.append(f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {title} ({elapsed:.2f}s, limit {limit}s)")
    return lines


@pytest.mark.parametrize("number,title,fn,limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, fn, limit):
    problems, elapsed = evaluate(number, title, fn, limit)
    assert not problems, problems[:5]
    assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"


if __name__ == "__main__":
    for c in CRITERIA:
        evaluate(*c)
    print("\n".join(summary_lines()))
