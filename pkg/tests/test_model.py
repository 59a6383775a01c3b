from fractions import Fraction

import numpy as np
import pytest

from components.analysis.model import (
    admissible_coexistence,
    alpha_beta,
    classify_regime,
    coexistence_state,
    diffusion_jacobian,
    reaction_jacobian,
)
from components.exceptions import DomainError
from components.models.params import ModelParams
from components.models.reports import Regime
from conftest import row


def test_coexistence_is_exact_for_table_rows():
    assert coexistence_state(row(1)).coexistence == (Fraction(13, 8), Fraction(1, 8))
    assert coexistence_state(row(2)).coexistence == (1, 2)
    assert admissible_coexistence(row(3)) == (Fraction(9, 14), Fraction(23, 28))


def test_decoupled_logistic_equations():
    p = ModelParams(r1=1, r2=1, a1=1, a2=1, b1=0, b2=0)
    assert coexistence_state(p).coexistence == (1, 1)


@pytest.mark.parametrize(
    "number, expected",
    [
        (1, (Fraction(5, 32), Fraction(-247, 32))),
        (2, (Fraction(2), Fraction(0))),
        (4, (Fraction(25, 49), Fraction(75, 49))),
    ],
)
def test_alpha_beta(number, expected):
    assert alpha_beta(row(number)) == expected


def test_alpha_plus_beta_for_row_3():
    alpha, beta = alpha_beta(row(3))
    assert alpha < 0 < beta
    assert alpha + beta == Fraction(34, 49)


@pytest.mark.parametrize(
    "number, regime, case",
    [
        (1, Regime.WEAK, "3w"),
        (2, Regime.STRONG, None),
        (3, Regime.WEAK, None),
        (4, Regime.STRONG, None),
    ],
)
def test_table_regimes(number, regime, case):
    report = classify_regime(row(number))
    assert report.regime == regime
    if case is not None:
        assert report.case == case


def test_regime_invariants():
    for number in (1, 2, 3, 4):
        report = classify_regime(row(number))
        assert report.tr_j < 0
        if report.regime == Regime.WEAK:
            assert report.det_j > 0
        else:
            assert report.det_j < 0


def test_ratio_in_the_middle_band_is_case_2w():
    report = classify_regime(row(1, r1=1, r2=1))
    assert report.regime == Regime.WEAK
    assert report.case == "2w"


def test_ratio_on_a_case_boundary():
    p = row(1, r1=1, r2=3)
    assert classify_regime(p).case == "boundary"
    assert not coexistence_state(p).admissible
    with pytest.raises(DomainError):
        alpha_beta(p)


def test_degenerate_competition_is_reported():
    p = ModelParams(r1=1, r2=1, a1=1, a2=1, b1=1, b2=1)
    equilibria = coexistence_state(p)
    assert equilibria.degenerate
    assert equilibria.coexistence is None
    report = classify_regime(p)
    assert report.regime == Regime.NONE
    assert report.case == "n/a"


def test_jacobians_at_coexistence():
    p = row(1)
    u, v = admissible_coexistence(p)
    assert reaction_jacobian(p, u, v) == [
        [Fraction(-39, 8), Fraction(-13, 8)],
        [Fraction(-1, 8), Fraction(-3, 8)],
    ]
    assert diffusion_jacobian(p, u, v)[0][1] == 3 * Fraction(13, 8)


def test_parameters_validate():
    with pytest.raises(ValueError):
        row(1, d12=-1)
    with pytest.raises(ValueError):
        row(1, d1=0, d2=0)
    p = row(1, d1=0, d2=0, allow_negative_d=True)
    assert p.d == 0


def test_with_value_ties_standard_diffusion():
    p = row(1).with_value("d", Fraction(1, 50))
    assert p.d1 == p.d2 == Fraction(1, 50)
    assert p.value_of("d") == Fraction(1, 50)
    assert p.is_exact


def test_weak_competition_never_has_both_alpha_and_beta_positive():
    rng = np.random.default_rng(7)
    checked = 0
    for _ in range(2000):
        r1, r2, a1, a2, b1, b2 = (Fraction(int(n)) for n in rng.integers(1, 10, 6))
        p = ModelParams(r1=r1, r2=r2, a1=a1, a2=a2, b1=b1, b2=b2)
        if classify_regime(p).regime != Regime.WEAK:
            continue
        if not coexistence_state(p).admissible:
            continue
        alpha, beta = alpha_beta(p)
        assert not (alpha > 0 and beta > 0)
        checked += 1
    assert checked > 100
