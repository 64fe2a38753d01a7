from fractions import Fraction

import pytest

from src.config import NUMERICS
from src.spectra import (
    EnumerationBudgetExceeded,
    SpectralValidationError,
    enumerate_spectrum,
    heat_trace,
    karamata_target,
    make_quotient,
    scaled_trace_sequence,
    spectral_sum,
)


@pytest.mark.parametrize("t", [1.0, 0.5])
@pytest.mark.parametrize(("d", "alpha"), [
    (1, 0), (1, Fraction(1, 2)), (1, 1), (2, 0), (2, Fraction(1, 2)), (2, 2), (2, -2),
])
def test_matches_direct_spectral_sum(d, alpha, t):
    q = make_quotient(d, (1,) * d, 1)
    records = enumerate_spectrum(q, alpha, 90.0, include_type_b=False)
    point = heat_trace(q, alpha, t)
    assert point.g == pytest.approx(spectral_sum(records, t), rel=1e-9)


def test_matches_direct_sum_with_nontrivial_lattice():
    q = make_quotient(2, (1, 3), "2/3")
    records = enumerate_spectrum(q, Fraction(1, 3), 120.0, include_type_b=False)
    assert heat_trace(q, Fraction(1, 3), 0.5).g == pytest.approx(spectral_sum(records, 0.5), rel=1e-9)


def test_truncation_bound_covers_tail():
    q = make_quotient(2, (1, 2), 1)
    loose = heat_trace(q, 0.5, 1e-4, tol=1e-4)
    tight = heat_trace(q, 0.5, 1e-4, tol=1e-15)
    assert loose.truncation_bound >= 0
    assert loose.terms < tight.terms
    assert tight.g - loose.g <= loose.truncation_bound * (1 + 1e-9) + 1e-12 * tight.g


@pytest.mark.parametrize(("d", "alpha"), [(1, 0.3), (2, 1.5), (2, 2), (3, 1)])
def test_alpha_symmetry(d, alpha):
    q = make_quotient(d, (1,) * d, 1)
    for t in (0.01, 0.1, 1.0):
        assert heat_trace(q, alpha, t).g == pytest.approx(heat_trace(q, -alpha, t).g, rel=1e-12)


@pytest.mark.parametrize(("d", "alpha"), [(1, 0), (2, 1), (2, 2)])
def test_strictly_decreasing_in_t(d, alpha):
    q = make_quotient(d, (1,) * d, 1)
    values = [heat_trace(q, alpha, t).g for t in (0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0)]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_vanishes_for_large_t(unit_quotient):
    point = heat_trace(unit_quotient, 0, 50.0)
    assert 0 < point.g < 1e-30


def test_scaled_sequence(unit_quotient):
    t_values = [1e-1, 1e-2, 1e-3, 1e-4]
    points = scaled_trace_sequence(unit_quotient, 0, t_values)
    assert [p.t for p in points] == t_values
    for point in points:
        assert point.scaled == pytest.approx(point.t ** 2 * point.g, rel=1e-15)
        assert point.scaled > 0
    # converges to vol(M) * 2! * C_{1,0} = 1
    errors = [abs(p.scaled - 1.0) for p in points]
    assert all(b < a for a, b in zip(errors, errors[1:]))
    assert errors[-1] < 1e-3


@pytest.mark.parametrize(("d", "alpha", "tolerance"), [
    (1, 0, 0.02), (2, 0, 0.02), (2, Fraction(1, 2), 0.02), (1, 1, 0.05), (2, 2, 0.05),
])
def test_karamata_limit(d, alpha, tolerance):
    q = make_quotient(d, (1,) * d, 1)
    point = heat_trace(q, alpha, 1e-4)
    assert point.scaled == pytest.approx(karamata_target(q, alpha), rel=tolerance)


@pytest.mark.parametrize("t", [0, -1.0, 1e-9, float("nan")])
def test_rejects_bad_t(unit_quotient, t):
    with pytest.raises(SpectralValidationError):
        heat_trace(unit_quotient, 0, t)


def test_rejects_bad_alpha_and_tol(unit_quotient):
    with pytest.raises(SpectralValidationError):
        heat_trace(unit_quotient, 1.5, 1.0)
    with pytest.raises(SpectralValidationError):
        heat_trace(unit_quotient, 0, 1.0, tol=0)
    with pytest.raises(SpectralValidationError):
        scaled_trace_sequence(unit_quotient, 0, [])


def test_term_cap(unit_quotient):
    with pytest.raises(EnumerationBudgetExceeded) as excinfo:
        heat_trace(unit_quotient, 0, 1e-3, max_terms=10)
    assert excinfo.value.budget == 10


def test_minimum_length_rejected_up_front(unit_quotient):
    # d = 1, alpha = 0 at the smallest t needs about 6e7 terms before the tail shrinks
    with pytest.raises(EnumerationBudgetExceeded) as excinfo:
        heat_trace(unit_quotient, 0, NUMERICS.min_heat_t, max_terms=10**6)
    assert excinfo.value.budget == 10**6
    assert excinfo.value.attempted > 6 * 10**7


def test_near_boundary_alpha_rejected_up_front(unit_quotient):
    with pytest.raises(EnumerationBudgetExceeded):
        heat_trace(unit_quotient, 0.999999, NUMERICS.min_heat_t)


def test_smallest_t_within_term_cap():
    # a small center keeps the series short at the smallest accepted t
    q = make_quotient(1, (1,), "1/1000")
    point = heat_trace(q, 0, NUMERICS.min_heat_t)
    assert point.terms <= NUMERICS.max_heat_terms
    assert point.truncation_bound < 1e-6 * point.g
    assert point.scaled == pytest.approx(karamata_target(q, 0), rel=1e-3)
