from fractions import Fraction as F

import pytest
from hypothesis import given

from hecke_ds.partitions import Bipartition, count_partitions, partitions
from hecke_ds.springer import (
    CSV_COLUMNS,
    SpinOrbit,
    SpringerInputError,
    check_instance,
    cross_validate,
    cuspidal_part,
    enumerate_distinguished,
    expected_params,
    ls_rho,
    orbit_defect,
    part_defect,
    sigma_to_orbit,
    slooten_bipartition,
)

from strategies import partitions_st, quarter_m

GRID = [F(k, 4) for k in (1, 3, 5, 7, 9, 11)]


def test_part_defect():
    assert [part_defect(a) for a in (1, 7, 4, 5, 3, 2)] == [1, -1, 0, 1, -1, 0]
    with pytest.raises(SpringerInputError):
        part_defect(0)


def test_orbit_defect_and_membership():
    assert orbit_defect((3, 7)) == -2
    assert orbit_defect(SpinOrbit((1, 3, 9, 11, 15, 23))) == -2
    assert orbit_defect(()) == 0
    assert SpinOrbit((2, 2, 1)).in_X() and not SpinOrbit((1, 1)).in_X() and not SpinOrbit((2,)).in_X()
    assert SpinOrbit((23, 1, 9)).parts == (1, 9, 23)
    assert str(SpinOrbit((3, 1))) == "(1,3)"


def test_expected_params():
    assert expected_params(13, F(9, 4)) == (-2, 62)
    assert expected_params(2, F(1, 4)) == (0, 8)
    assert expected_params(1, F(3, 4)) == (1, 5)
    for bad in (F(1, 2), F(1, 3), F(-1, 4), 0):
        with pytest.raises(SpringerInputError):
            expected_params(1, bad)


def test_cuspidal_part():
    assert cuspidal_part(F(9, 4)).parts == (3, 7)
    assert cuspidal_part(F(1, 4)).parts == ()
    assert cuspidal_part(F(3, 4)).parts == (1,)
    for m in GRID:
        d, ell = expected_params(0, m)
        assert cuspidal_part(m).ell == ell and orbit_defect(cuspidal_part(m)) == d


def test_sigma_to_orbit_examples():
    assert sigma_to_orbit((4, 3, 3, 2, 1), F(9, 4)).parts == (1, 3, 9, 11, 15, 23)
    assert sigma_to_orbit((1,), F(1, 4)).parts == (1, 3)
    assert sigma_to_orbit((1,), F(3, 4)).parts == (5,)


def test_ls_rho_examples():
    assert ls_rho(()) == Bipartition((), ())
    assert ls_rho((1, 3, 9, 11, 15, 23)) == Bipartition((4, 3, 3, 1), (2,))
    assert ls_rho((5,)) == Bipartition((1,), ())
    with pytest.raises(SpringerInputError):
        ls_rho((1, 1))


def test_slooten_examples():
    assert slooten_bipartition((4, 3, 3, 2, 1), F(9, 4)) == Bipartition((4, 3, 3, 1), (2,))
    for n in range(1, 6):
        assert slooten_bipartition((n,), F(5, 4)) == Bipartition((n,), ())
    assert slooten_bipartition((1, 1), F(1, 4)) == Bipartition((), (2,))


def test_worked_chain():
    row = check_instance((4, 3, 3, 2, 1), F(9, 4))
    assert row.ok and row.orbit.ell == 62 and str(row.ls) == str(Bipartition((4, 3, 3, 1), (2,)))


def test_springer_rejects_bad_m():
    with pytest.raises(SpringerInputError):
        sigma_to_orbit((2,), F(1, 3))
    with pytest.raises(SpringerInputError):
        check_instance((2,), F(-3, 4))


@given(partitions_st(max_n=9), quarter_m)
def test_two_algorithms_agree(p, m):
    row = check_instance(p, m)
    assert row.ok, row.note


def test_cross_validate():
    assert cross_validate(0, GRID).passed
    report = cross_validate(5, GRID)
    assert report.passed
    assert len(report.rows) == len(GRID) * sum(count_partitions(n) for n in range(1, 6))
    csv_text = report.to_csv()
    assert csv_text.splitlines()[0] == ",".join(CSV_COLUMNS)
    assert len(csv_text.splitlines()) == len(report.rows) + 1


def test_orbit_map_injective_and_distinguished():
    for m in GRID:
        for n in range(1, 8):
            d, ell = expected_params(n, m)
            images = {sigma_to_orbit(s, m).parts for s in partitions(n)}
            assert images == {o.parts for o in enumerate_distinguished(ell, d)}


def test_enumerate_distinguished():
    assert SpinOrbit((1, 3, 9, 11, 15, 23)) in enumerate_distinguished(62, -2)
    assert enumerate_distinguished(5, 1) == [SpinOrbit((5,))]
    assert enumerate_distinguished(0, 0) == [SpinOrbit(())]
    with pytest.raises(SpringerInputError):
        enumerate_distinguished(6, 1)
    for m in (F(1, 4), F(3, 4), F(9, 4)):
        for n in range(9):
            d, ell = expected_params(n, m)
            assert len(enumerate_distinguished(ell, d)) == count_partitions(n)
