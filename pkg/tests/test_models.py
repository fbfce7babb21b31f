import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from thermoptics.errors import Overflow
from thermoptics.models import (
    ISING,
    TI,
    XY,
    ReducedCouplings,
    free_spin_observables,
    ising_observables,
    ising_transfer,
    ti_free_energy,
    ti_magnetization,
    ti_observables,
    xy_observables,
)
from thermoptics.numerics import QuadratureSpec, central_difference

from oracles import XY_S_K1_C0, trapezoid_mean

reals = st.floats(min_value=-30, max_value=30, allow_nan=False)


# -- couplings -----------------------------------------------------------------

@pytest.mark.parametrize(
    "conv,expected_K", [(XY, 3.0 / (2 * 0.7 * 1.3)), (TI, 3.0 / (0.7 * 1.3)), (ISING, 3.0 / (0.7 * 1.3))]
)
def test_from_raw_conventions(conv, expected_K):
    rc = ReducedCouplings.from_raw(conv, J=3.0, mu=0.4, B=2.0, T=0.7, k=1.3)
    assert rc.K == pytest.approx(expected_K, abs=1e-12)
    assert rc.C == pytest.approx(0.4 * 2.0 / (0.7 * 1.3), abs=1e-12)


def test_from_raw_rejects_nonpositive_temperature():
    with pytest.raises(ValueError):
        ReducedCouplings.from_raw(TI, 1, 1, 1, 0.0)
    with pytest.raises(ValueError):
        ReducedCouplings(1.0, 1.0, "HEISENBERG")


# -- free spins ------------------------------------------------------------

def test_free_spin_examples():
    o = free_spin_observables(0.0)
    assert (o.f_density, o.m, o.s) == (math.log(2), 0.0, 1.0)
    o = free_spin_observables(1.0)
    assert o.m == pytest.approx(0.761594, abs=1e-6)
    assert o.s == pytest.approx(0.419974, abs=1e-6)
    assert o.f_density == pytest.approx(math.log(2 * math.cosh(1.0)), abs=1e-15)


@given(st.floats(min_value=-700, max_value=700, allow_nan=False))
def test_free_spin_equality(x):
    assert abs(free_spin_observables(x).comp_sum - 1.0) <= 1e-12


# -- classical Ising -----------------------------------------------------------

def test_ising_transfer_zero_field():
    K = 0.8
    lp, lm, f = ising_transfer(ReducedCouplings(K, 0.0, ISING))
    assert lp == pytest.approx(2 * math.cosh(K), rel=1e-14)
    assert lm == pytest.approx(2 * math.sinh(K), rel=1e-14)
    assert f == pytest.approx(math.log(2 * math.cosh(K)), rel=1e-14)


def test_ising_transfer_zero_coupling():
    lp, lm, _ = ising_transfer(ReducedCouplings(0.0, 1.3, ISING))
    assert lp == pytest.approx(2 * math.cosh(1.3), rel=1e-14)
    assert lm == 0.0


def test_ising_transfer_matches_numpy_eigenvalues():
    for K, C in [(0.7, 0.3), (-0.4, 1.1), (1.5, -2.0)]:
        T = np.array([[math.exp(K + C), math.exp(-K)], [math.exp(-K), math.exp(K - C)]])
        ref = np.sort(np.linalg.eigvalsh(T))[::-1]
        lp, lm, _ = ising_transfer(ReducedCouplings(K, C, ISING))
        np.testing.assert_allclose([lp, lm], ref, rtol=1e-13, atol=1e-14)


def test_ising_transfer_n4_enumeration():
    K, C = 0.7, 0.3
    Z = sum(
        math.exp(K * sum(s[i] * s[(i + 1) % 4] for i in range(4)) + C * sum(s))
        for s in itertools.product((1, -1), repeat=4)
    )
    lp, lm, _ = ising_transfer(ReducedCouplings(K, C, ISING))
    assert lp**4 + lm**4 == pytest.approx(Z, rel=1e-13)


@given(st.floats(min_value=1e-3, max_value=5), st.floats(min_value=-5, max_value=5))
def test_ising_nondegenerate(K, C):
    lp, lm, _ = ising_transfer(ReducedCouplings(K, C, ISING))
    assert lp > lm


def test_ising_antiferromagnetic_dominant_root_positive():
    lp, lm, _ = ising_transfer(ReducedCouplings(-1.2, 0.4, ISING))
    assert lm < 0 < lp and lp > abs(lm)


def test_ising_overflow():
    with pytest.raises(Overflow):
        ising_transfer(ReducedCouplings(500.0, 300.0, ISING))


def test_ising_observables_derivatives():
    rc = ReducedCouplings(0.6, 0.4, ISING)
    obs = ising_observables(rc)
    f = lambda c: ising_transfer(rc.with_field(c)).f_density
    assert obs.m == pytest.approx(central_difference(f, 0.4), abs=1e-9)
    assert obs.s == pytest.approx(central_difference(lambda c: ising_observables(rc.with_field(c)).m, 0.4), abs=1e-9)


def test_ising_reduces_to_free_spins_at_zero_coupling():
    a = ising_observables(ReducedCouplings(0.0, 0.9, ISING))
    b = free_spin_observables(0.9)
    assert (a.f_density, a.m, a.s) == pytest.approx((b.f_density, b.m, b.s), abs=1e-14)


def test_ising_susceptibility_exceeds_bound_for_ferromagnet():
    # the classical chain is not a two-level system: s = e^{2K} at zero field
    obs = ising_observables(ReducedCouplings(1.0, 0.0, ISING))
    assert obs.s == pytest.approx(math.exp(2.0), rel=1e-13)


# -- XY ------------------------------------------------------------------------

def test_xy_zero_coupling_is_free():
    for C in np.linspace(-6, 6, 25):
        a = xy_observables(ReducedCouplings(0.0, C, XY))
        b = free_spin_observables(C)
        assert abs(a.f_density - b.f_density) <= 1e-10
        assert abs(a.m - b.m) <= 1e-10 and abs(a.s - b.s) <= 1e-10


def test_xy_zero_field_has_no_magnetization():
    for K in (0.3, 1.0, 4.0):
        assert abs(xy_observables(ReducedCouplings(K, 0.0, XY)).m) <= 1e-12


def test_xy_susceptibility_oracle():
    s = xy_observables(ReducedCouplings(1.0, 0.0, XY)).s
    assert s == pytest.approx(XY_S_K1_C0, abs=1e-10)


def test_xy_free_energy_oracle():
    K, C = 0.8, -0.3
    ref = math.log(2) + trapezoid_mean(lambda w: np.log(np.cosh(C - 2 * K * np.cos(w))), n=20000)
    assert xy_observables(ReducedCouplings(K, C, XY)).f_density == pytest.approx(ref, abs=1e-10)


def test_xy_magnetization_is_field_derivative():
    rc = ReducedCouplings(0.9, 0.5, XY)
    tight = QuadratureSpec(abs_tol=1e-13)
    obs = xy_observables(rc, tight)
    fd = central_difference(lambda c: xy_observables(rc.with_field(c), tight).f_density, 0.5)
    assert obs.m == pytest.approx(fd, rel=1e-6)


@settings(max_examples=40, deadline=None)
@given(reals, reals)
def test_xy_parity_and_bound(K, C):
    a = xy_observables(ReducedCouplings(K, C, XY))
    b = xy_observables(ReducedCouplings(K, -C, XY))
    assert abs(a.m + b.m) <= 1e-9 and abs(a.s - b.s) <= 1e-9
    assert -1 <= a.m <= 1 and 0 <= a.s <= 1
    assert a.comp_sum <= 1 + 1e-9


# -- transverse Ising --------------------------------------------------------------

def test_ti_zero_coupling_is_free():
    for C in (-2.0, -0.3, 0.7, 3.0):
        a = ti_observables(ReducedCouplings(0.0, C, TI))
        b = free_spin_observables(abs(C))
        assert a.f_density == pytest.approx(b.f_density, abs=1e-10)
        assert a.m == pytest.approx(math.copysign(b.m, C), abs=1e-10)
        assert a.s == pytest.approx(b.s, abs=1e-7)


def test_ti_zero_field_has_no_magnetization():
    for K in (0.5, 2.0):
        assert abs(ti_observables(ReducedCouplings(K, 0.0, TI)).m) <= 1e-12


def test_ti_zero_field_susceptibility_closed_form():
    # at C = 0: s = (sech^2 K + tanh K / K) / 2
    K = 1.5
    ref = 0.5 * (1 / math.cosh(K) ** 2 + math.tanh(K) / K)
    assert ti_observables(ReducedCouplings(K, 0.0, TI)).s == pytest.approx(ref, abs=1e-8)


def test_ti_free_energy_oracle():
    K, C = 1.2, 0.4
    eps = lambda w: np.sqrt(K * K + C * C - 2 * K * C * np.cos(w))
    ref = trapezoid_mean(lambda w: np.log(2 * np.cosh(eps(w))), n=20000)
    assert ti_free_energy(ReducedCouplings(K, C, TI)) == pytest.approx(ref, abs=1e-10)
    assert ti_observables(ReducedCouplings(K, C, TI)).f_density == pytest.approx(ref, abs=1e-10)


def test_ti_magnetization_consistency():
    rc = ReducedCouplings(1.3, 0.6, TI)
    m = ti_magnetization(rc)
    fd = central_difference(lambda c: ti_free_energy(rc.with_field(c)), 0.6)
    assert m == pytest.approx(fd, rel=1e-6)
    assert ti_observables(rc).m == pytest.approx(m, abs=1e-12)


def test_ti_gap_flag_at_criticality():
    obs = ti_observables(ReducedCouplings(2.0, 2.0, TI))
    assert obs.flags == ("GapSingularity",)
    assert obs.comp_sum <= 1 + 1e-9
    assert not ti_observables(ReducedCouplings(2.0, 1.0, TI)).flags


def test_ti_saturation():
    for K in (0.5, 1.0, 2.0):
        up = ti_observables(ReducedCouplings(K, 50.0, TI))
        down = ti_observables(ReducedCouplings(K, -50.0, TI))
        assert up.m > 0.999 and down.m < -0.999
        assert 0 <= up.s < 1e-3


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=-8, max_value=8), st.floats(min_value=-8, max_value=8))
def test_ti_parity_and_bound(K, C):
    a = ti_observables(ReducedCouplings(K, C, TI))
    b = ti_observables(ReducedCouplings(K, -C, TI))
    assert abs(a.m + b.m) <= 1e-9 and abs(a.s - b.s) <= 1e-9
    assert -1 <= a.m <= 1 and 0 <= a.s <= 1
    assert a.comp_sum <= 1 + 1e-9


def test_wrong_convention_rejected():
    with pytest.raises(ValueError):
        xy_observables(ReducedCouplings(1, 1, TI))
    with pytest.raises(ValueError):
        ti_observables(ReducedCouplings(1, 1, XY))
    with pytest.raises(ValueError):
        ising_transfer(ReducedCouplings(1, 1, XY))
