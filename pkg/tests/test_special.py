import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special as sp

from qfgcpe import special
from qfgcpe.errors import ConvergenceError, DomainError
from qfgcpe.special import SeriesControl


def test_series_control_validation():
    with pytest.raises(DomainError):
        SeriesControl(max_terms=0)
    with pytest.raises(DomainError):
        SeriesControl(abs_tol=0.0)
    with pytest.raises(DomainError):
        SeriesControl(rel_tol=-1.0)


@pytest.mark.parametrize("x, expected", [(1.0, 1.0), (0.5, math.sqrt(math.pi)), (5.0, 24.0)])
def test_gamma_known_values(x, expected):
    assert special.gamma(x) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
def test_gamma_rejects_nonpositive(x):
    with pytest.raises(DomainError):
        special.gamma(x)


@pytest.mark.parametrize("x", [0.3, 0.7, 1.5, 3.2])
def test_gamma_recurrence(x):
    assert special.gamma(x + 1) == pytest.approx(x * special.gamma(x), rel=1e-10)


@given(st.floats(min_value=0.1, max_value=50.0))
def test_gamma_matches_mpmath(x):
    assert special.gamma(x) == pytest.approx(float(mpmath.gamma(x)), rel=1e-12)


def test_zeta_known_values():
    assert special.riemann_zeta(2.0) == pytest.approx(math.pi**2 / 6, abs=1e-10)
    # independent oracle: mpmath's zeta
    assert special.riemann_zeta(1.5) == pytest.approx(2.612375348685488, abs=1e-9)
    assert special.riemann_zeta(1.75) == pytest.approx(float(mpmath.zeta(1.75)), abs=1e-9)


def test_zeta_feeds_exponential_table_values():
    # (zeta(eta+1) - 1) / lambda at lambda = 1
    assert special.riemann_zeta(1.5) - 1 == pytest.approx(1.6124, abs=5e-5)
    assert special.riemann_zeta(1.75) - 1 == pytest.approx(0.96232, abs=5e-6)


@given(st.floats(min_value=1.001, max_value=40.0))
@settings(max_examples=60)
def test_zeta_matches_mpmath(s):
    assert special.riemann_zeta(s) == pytest.approx(float(mpmath.zeta(s)), abs=1e-10, rel=1e-10)


def test_zeta_near_one_converges_quickly():
    # acceleration keeps the term count small even very close to the pole
    val = special.riemann_zeta(1.0 + 1e-4, SeriesControl(max_terms=200))
    assert val == pytest.approx(float(mpmath.zeta(1.0 + 1e-4)), rel=1e-9)


def test_zeta_limits_and_monotonicity():
    z20 = special.riemann_zeta(20.0)
    assert 1.0 < z20 < 1.0 + 2e-6
    s = np.linspace(1.05, 12.0, 60)
    vals = [special.riemann_zeta(x) for x in s]
    assert np.all(np.diff(vals) < 0)


def test_zeta_domain_and_budget():
    with pytest.raises(DomainError):
        special.riemann_zeta(1.0)
    with pytest.raises(ConvergenceError):
        special.riemann_zeta(1.5, SeriesControl(max_terms=2, abs_tol=1e-15, rel_tol=1e-15))


def test_polylog_values():
    assert special.polylog(2.0, 0.0) == 0.0
    li2_half = math.pi**2 / 12 - math.log(2) ** 2 / 2
    assert special.polylog(2.0, 0.5) == pytest.approx(li2_half, abs=1e-10)
    assert special.polylog(2.0, 0.5) == pytest.approx(0.5822405, abs=1e-7)


def test_polylog_approaches_zeta():
    assert special.polylog(1.5, 1 - 1e-8) == pytest.approx(special.riemann_zeta(1.5), abs=1e-2)


@given(st.floats(min_value=0.2, max_value=6.0), st.floats(min_value=0.0, max_value=0.999))
@settings(max_examples=60)
def test_polylog_matches_mpmath(s, z):
    assert special.polylog(s, z) == pytest.approx(float(mpmath.polylog(s, z)), abs=1e-10, rel=1e-9)


@pytest.mark.parametrize("s", [1.25, 1.5, 2.0, 3.0])
def test_polylog_bounded_by_zeta_and_increasing(s):
    z = np.linspace(0.0, 0.999, 40)
    vals = np.array([special.polylog(s, x) for x in z])
    assert np.all(np.diff(vals) > 0)
    assert np.all(vals <= special.riemann_zeta(s))


@pytest.mark.parametrize("z", [-0.1, 1.0, 1.5])
def test_polylog_rejects_z_outside_unit_interval(z):
    with pytest.raises(DomainError):
        special.polylog(2.0, z)


def test_polylog_rejects_nonpositive_order():
    with pytest.raises(DomainError):
        special.polylog(0.0, 0.5)


def test_polylog_falls_back_to_integral_when_series_budget_is_short():
    ctl = SeriesControl(max_terms=10)
    ref = float(mpmath.polylog(2, 0.99))
    assert special.polylog(2.0, 0.99, ctl) == pytest.approx(ref, rel=1e-9)


def test_lerch_at_zero_is_first_term():
    assert special.lerch_phi(0.0, 1.5, 2.0) == pytest.approx(2.0**-1.5, rel=1e-14)


def test_lerch_reduces_to_polylog_at_unit_shift():
    assert special.lerch_phi(0.9, 2.0, 1.0) == pytest.approx(special.polylog(2.0, 0.9) / 0.9,
                                                              rel=1e-10)


@given(st.floats(min_value=0.01, max_value=0.99), st.floats(min_value=1.01, max_value=4.0))
@settings(max_examples=40)
def test_lerch_shift_two_identity(z, s):
    # Phi(z, s, 2) = (Li_s(z) - z) / z^2
    lhs = special.lerch_phi(z, s, 2.0)
    rhs = (special.polylog(s, z) - z) / z**2
    assert lhs == pytest.approx(rhs, rel=1e-8)


@given(st.floats(min_value=1e-6, max_value=0.995), st.floats(min_value=0.5, max_value=4.0),
       st.floats(min_value=0.2, max_value=5.0))
@settings(max_examples=60)
def test_lerch_matches_mpmath(z, s, a):
    assert special.lerch_phi(z, s, a) == pytest.approx(float(mpmath.lerchphi(z, s, a)),
                                                       abs=1e-10, rel=1e-9)


@pytest.mark.parametrize("z", [1e-200, 1e-30, 1e-9])
def test_lerch_tiny_argument(z):
    # mpmath.lerchphi loses accuracy here; two series terms are exact to double precision
    s, a = 3.1, 3.2
    assert special.lerch_phi(z, s, a) == pytest.approx(a**-s + z * (a + 1) ** -s, rel=1e-14)


def test_lerch_rejects_bad_shift():
    with pytest.raises(DomainError):
        special.lerch_phi(0.5, 2.0, 0.0)


def test_tricomi_known_values():
    # U(1, 1, z) = e^z E_1(z), U(1, 2, z) = 1/z
    assert special.tricomi_u(1.0, 1.0, 1.0) == pytest.approx(math.e * sp.exp1(1.0), rel=1e-8)
    assert special.tricomi_u(1.0, 1.0, 1.0) == pytest.approx(0.596347, abs=1e-6)
    assert special.tricomi_u(1.0, 2.0, 5.0) == pytest.approx(0.2, rel=1e-10)


def _kummer_u(A, B, z):
    """U through the two-term 1F1 combination; only valid for non-integer B."""
    return (sp.gamma(1 - B) / sp.gamma(A - B + 1) * sp.hyp1f1(A, B, z)
            + sp.gamma(B - 1) / sp.gamma(A) * z ** (1 - B) * sp.hyp1f1(A - B + 1, 2 - B, z))


@pytest.mark.parametrize("A, B, z", [(1.75, 1.25, 0.693), (0.5, 0.3, 2.0), (2.5, -0.7, 1.3),
                                     (1.2, 2.6, 0.4), (3.0, 1.5, 7.0)])
def test_tricomi_matches_kummer_combination(A, B, z):
    assert special.tricomi_u(A, B, z) == pytest.approx(_kummer_u(A, B, z), rel=1e-8)


@given(st.floats(min_value=0.1, max_value=6.0), st.floats(min_value=-3.0, max_value=4.0),
       st.floats(min_value=0.01, max_value=30.0))
@settings(max_examples=60, deadline=None)
def test_tricomi_matches_mpmath(A, B, z):
    assert special.tricomi_u(A, B, z) == pytest.approx(float(mpmath.hyperu(A, B, z)), rel=1e-8)


def test_tricomi_handles_integer_b():
    # the 1F1 combination is singular here; the integral form is not
    for B in (0.0, 1.0, 2.0, 3.0):
        assert special.tricomi_u(1.5, B, 0.8) == pytest.approx(float(mpmath.hyperu(1.5, B, 0.8)),
                                                               rel=1e-8)


@pytest.mark.parametrize("A, z", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0)])
def test_tricomi_domain(A, z):
    with pytest.raises(DomainError):
        special.tricomi_u(A, 1.0, z)


def test_euler_gamma_against_quadrature():
    # -int_0^1 ln(-ln p) dp = gamma_E
    val, _ = integrate.quad(lambda p: -math.log(-math.log(p)), 0.0, 1.0, limit=200)
    assert special.euler_gamma() == pytest.approx(val, abs=1e-10)
    assert special.euler_gamma() == pytest.approx(0.5772156649, abs=1e-10)


def test_log_kernel_constant():
    assert math.exp(-1.0 - 0.0 * special.euler_gamma()) == pytest.approx(math.exp(-1))
    assert math.exp(-1.0 - special.euler_gamma()) == pytest.approx(0.206549, abs=1e-6)
