"""Orbits in X_{l,d} for Spin(l), the map sigma -> O_sigma, and two routes
from a partition to a bipartition that must agree when 4m is odd.
"""
from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .ds import PLUS, peel
from .partitions import (
    Bipartition,
    ETableau,
    Partition,
    as_partition,
    bipartition,
    format_partition,
    hook_decomposition,
    partitions,
)
from .rational import format_rational, frac_part


class SpringerInputError(ValueError):
    pass


def _check_quarter(m) -> Fraction:
    m = Fraction(m)
    q = 4 * m
    if q.denominator != 1 or q.numerator % 2 == 0:
        raise SpringerInputError(f"4m must be an odd integer, got m={m}")
    if m <= 0:
        raise SpringerInputError(f"m must be positive, got m={m}")
    return m


def part_defect(a: int) -> int:
    if a < 1:
        raise SpringerInputError(f"parts must be positive, got {a}")
    return {1: 1, 3: -1}.get(a % 4, 0)


@dataclass(frozen=True)
class SpinOrbit:
    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(sorted(int(p) for p in self.parts)))
        if any(p < 1 for p in self.parts):
            raise SpringerInputError(f"non-positive part in {self.parts}")

    @property
    def ell(self) -> int:
        return sum(self.parts)

    def in_X(self) -> bool:
        """Odd parts occur once, even parts an even number of times."""
        counts = Counter(self.parts)
        return all((c == 1) if p % 2 else (c % 2 == 0) for p, c in counts.items())

    def is_distinguished(self) -> bool:
        return len(set(self.parts)) == len(self.parts) and all(p % 2 for p in self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def orbit_defect(o: SpinOrbit | Sequence[int]) -> int:
    parts = o.parts if isinstance(o, SpinOrbit) else o
    return sum(part_defect(a) for a in parts)


def expected_params(n: int, m) -> tuple[int, int]:
    """(d, l) attached to the graded Hecke algebra of rank n at parameter m."""
    m = _check_quarter(m)
    d = -part_defect(int(4 * m)) * math.floor(m + Fraction(1, 4))
    return d, 4 * n + d * (2 * d - 1)


def cuspidal_part(m) -> SpinOrbit:
    m = _check_quarter(m)
    top, bottom = int(4 * m - 2), int(4 - 4 * frac_part(m))
    return SpinOrbit(tuple(range(top, bottom - 1, -4)) if top >= bottom else ())


def sigma_to_orbit(sigma: Sequence[int], m) -> SpinOrbit:
    m = _check_quarter(m)
    parts = Counter(cuspidal_part(m).parts)
    for hook in reversed(hook_decomposition(ETableau(as_partition(sigma), m))):
        r, rp = hook.r, hook.r_prime
        parts[int(4 * r + 2)] += 1
        if rp <= Fraction(1, 4):
            parts[int(-4 * rp + 2)] += 1
        else:
            gone = int(4 * rp - 2)
            if parts[gone] == 0:
                raise SpringerInputError(f"part {gone} absent while processing hook ({r}, {rp})")
            parts[gone] -= 1
    return SpinOrbit(tuple(parts.elements()))


def ls_rho(lam: SpinOrbit | Sequence[int]) -> Bipartition:
    """Recursive bipartition from an orbit in X_l (largest part stripped first)."""
    o = lam if isinstance(lam, SpinOrbit) else SpinOrbit(tuple(lam))
    if not o.in_X():
        raise SpringerInputError(f"{o} is not in X_l")
    gamma, delta = _ls(o.parts)
    return bipartition(gamma, delta)


def _ls(parts: tuple[int, ...]) -> tuple[list[int], list[int]]:
    if not parts:
        return [], []
    top = parts[-1]
    mu = parts[:-1] if top % 2 else parts[:-2]
    gamma, delta = _ls(mu)
    dmu = orbit_defect(mu)
    dtop = part_defect(top)
    if dtop == 0:
        e = (top + 2) // 4 - dmu
        f = top // 4 + dmu
        if dmu > 0:
            return gamma + [e], delta + [f]
        return gamma + [f], delta + [e]
    if dtop == 1:
        e = (top - 1) // 4 - dmu
        if dmu > 0:
            return gamma + [e], delta
        if dmu == 0:
            return delta + [e], gamma
        return gamma, delta + [e]
    e = (top - 3) // 4 + dmu
    if dmu > 1:
        return gamma, delta + [e]
    if dmu == 1:
        return delta + [e], gamma
    return gamma + [e], delta


def slooten_bipartition(sigma: Sequence[int], m) -> Bipartition:
    """Strip sizes of the max-|e| peel: rows to the left, columns to the right."""
    log = peel(ETableau(as_partition(sigma), Fraction(m))).log
    left = [len(s.boxes) for s in log if s.side == PLUS]
    right = [len(s.boxes) for s in log if s.side != PLUS]
    return bipartition(left, right)


def _distinct_odd(total: int, largest: int) -> Iterator[tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    top = min(largest, total)
    if top % 2 == 0:
        top -= 1
    for a in range(top, 0, -2):
        for rest in _distinct_odd(total - a, a - 2):
            yield (a,) + rest


def enumerate_distinguished(ell: int, d: int) -> list[SpinOrbit]:
    """Partitions of ell into distinct odd parts of total defect d."""
    if (ell - d) % 4:
        raise SpringerInputError(f"4 does not divide l - d = {ell - d}")
    out = [SpinOrbit(p) for p in _distinct_odd(ell, ell) if orbit_defect(p) == d]
    return sorted(out, key=lambda o: o.parts)


# -- cross validation -------------------------------------------------------

CSV_COLUMNS = ("n", "m", "sigma", "bipartition_slooten", "orbit", "bipartition_ls", "pass")


@dataclass
class CrossRow:
    n: int
    m: Fraction
    sigma: Partition
    slooten: Bipartition
    orbit: SpinOrbit
    ls: Bipartition
    ok: bool
    note: str = ""


@dataclass
class CrossReport:
    rows: list[CrossRow] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow(
                [r.n, format_rational(r.m), format_partition(r.sigma), r.slooten, r.orbit, r.ls, r.ok]
            )
        return buf.getvalue()


def check_instance(sigma: Sequence[int], m) -> CrossRow:
    sigma = as_partition(sigma)
    m = _check_quarter(m)
    n = sum(sigma)
    d, ell = expected_params(n, m)
    orbit = sigma_to_orbit(sigma, m)
    sl, ls = slooten_bipartition(sigma, m), ls_rho(orbit)
    problems = []
    if sl != ls:
        problems.append(f"bipartitions differ: {sl} vs {ls}")
    if orbit.ell != ell or orbit_defect(orbit) != d:
        problems.append(f"orbit {orbit} has size {orbit.ell}, defect {orbit_defect(orbit)}; want {ell}, {d}")
    if not orbit.is_distinguished():
        problems.append(f"orbit {orbit} is not distinguished")
    if ls.size != n:
        problems.append(f"bipartition {ls} has size {ls.size}, want {n}")
    return CrossRow(n, m, sigma, sl, orbit, ls, not problems, "; ".join(problems))


def cross_validate(n_max: int, m_list: Sequence) -> CrossReport:
    report = CrossReport()
    for m in m_list:
        for n in range(1, n_max + 1):
            orbits: dict[tuple[int, ...], Partition] = {}
            for sigma in partitions(n):
                row = check_instance(sigma, m)
                report.rows.append(row)
                if not row.ok:
                    report.failures.append(f"sigma={format_partition(sigma)}, m={format_rational(row.m)}: {row.note}")
                prev = orbits.setdefault(row.orbit.parts, sigma)
                if prev != sigma:
                    report.failures.append(
                        f"m={format_rational(row.m)}: {format_partition(prev)} and "
                        f"{format_partition(sigma)} share orbit {row.orbit}"
                    )
    return report
