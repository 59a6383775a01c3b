import numpy as np
import pytest

from components.models.states import Grid, StateVector
from components.numerics.discretization import homogeneous_block_spectrum
from components.numerics.stability import spectrum, summarize
from conftest import homogeneous, row


def test_summary_counts():
    summary = summarize(np.array([1 + 2j, 1 - 2j, -1.0, 3.0]))
    assert summary.unstable == 3
    assert summary.unstable_real == 1
    assert summary.unstable_complex == 2
    assert summary.rightmost == 3.0
    assert summary.eigenvalues is None
    assert not summary.stable


def test_rightmost_pair_reports_positive_imaginary_part():
    summary = summarize(np.array([0.5 - 1j, 0.5 + 1j, -2.0]), keep=True)
    assert summary.rightmost == 0.5 + 1j
    assert summary.rightmost_imag == 1.0
    assert summary.eigenvalues.size == 3


def test_marginal_eigenvalues_are_not_unstable():
    summary = summarize(np.array([0.0, -1.0]))
    assert summary.stable
    assert summary.marginal == 1


@pytest.mark.parametrize("d, expected", [("1/25", 0), ("1/40", 1), ("3/200", 2)])
def test_unstable_modes_on_the_homogeneous_branch(d, expected):
    p = row(1, d1=d, d2=d)
    grid = Grid(41)
    summary = spectrum(p, homogeneous(p, grid))
    assert summary.unstable == expected
    assert summary.unstable_real == expected
    assert summary.unstable_complex == 0
    blocks = homogeneous_block_spectrum(p, 13 / 8, 1 / 8, grid)
    assert np.count_nonzero(blocks.real > 1e-9) == expected


def test_strong_competition_exclusion_is_stable():
    p = row(4)
    summary = spectrum(p, StateVector.constant(Grid(21), 2.5, 0.0))
    assert summary.stable
    assert summary.rightmost.real == pytest.approx(-5.0, abs=1e-5)


def test_strong_competition_coexistence_is_a_saddle():
    p = row(4)
    summary = spectrum(p, StateVector.constant(Grid(21), 5 / 7, 5 / 7))
    assert summary.unstable == 1
    assert summary.rightmost.real == pytest.approx(10 / 7, rel=1e-8)
    assert summary.rightmost_imag == 0.0
