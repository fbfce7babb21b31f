import math

import numpy as np
import pytest

from thermoptics.errors import CapExceeded
from thermoptics.models import ISING, TI, XY, ReducedCouplings, free_spin_observables, ising_transfer, ti_observables, xy_observables
from thermoptics.oracle import ChainSpec, build_hamiltonian, ed_observables, enumerate_classical_Z


def test_free_single_spin():
    np.testing.assert_array_equal(build_hamiltonian(ChainSpec("FREE", 1, mu_B=1.0)), np.diag([-1.0, 1.0]))


def test_ti_single_spin_field_only():
    ev = np.linalg.eigvalsh(build_hamiltonian(ChainSpec("TI", 1, J=5.0, mu_B=1.0)))
    np.testing.assert_allclose(ev, [-1.0, 1.0], atol=1e-15)


def test_xy_two_site_hand_diagonalized():
    # -(1/2)(sx sx + sy sy) hops |ud> <-> |du> with amplitude -1; |uu>, |dd> untouched
    H = build_hamiltonian(ChainSpec("XY", 2, J=1.0, mu_B=0.0, boundary="open"))
    expected = np.zeros((4, 4))
    expected[1, 2] = expected[2, 1] = -1.0
    np.testing.assert_array_equal(H, expected)
    np.testing.assert_allclose(np.linalg.eigvalsh(H), [-1, 0, 0, 1], atol=1e-15)


def _pauli_reference(model, N, J, hb, periodic=True):
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]])
    sz = np.diag([1.0, -1.0]).astype(complex)

    def site(op, i):
        out = np.eye(1)
        for j in range(N):
            out = np.kron(out, op if j == i else np.eye(2))
        return out

    bonds = [(i, (i + 1) % N) for i in range(N)] if periodic and N > 2 else [(i, i + 1) for i in range(N - 1)]
    H = np.zeros((2**N, 2**N), dtype=complex)
    for i, j in bonds:
        if model == "XY":
            H -= J / 2 * (site(sx, i) @ site(sx, j) + site(sy, i) @ site(sy, j))
        else:
            H -= J * site(sz, i) @ site(sz, j)
    for i in range(N):
        H -= hb * site(sz if model == "XY" else sx, i)
    return H


@pytest.mark.parametrize("model", ["XY", "TI"])
@pytest.mark.parametrize("N", [2, 3, 5])
def test_hamiltonian_matches_kron_construction(model, N):
    H = build_hamiltonian(ChainSpec(model, N, J=0.7, mu_B=0.3))
    ref = _pauli_reference(model, N, 0.7, 0.3)
    assert np.max(np.abs(ref.imag)) == 0
    np.testing.assert_allclose(H, ref.real, atol=1e-15)


@pytest.mark.parametrize("model", ["XY", "TI", "FREE"])
def test_hamiltonian_symmetric(model):
    H = build_hamiltonian(ChainSpec(model, 8, J=1.3, mu_B=0.4))
    assert np.max(np.abs(H - H.T)) <= 1e-12


def test_symmetric_spectra():
    for spec in (ChainSpec("FREE", 6, mu_B=0.7), ChainSpec("TI", 6, J=0.0, mu_B=0.7)):
        ev = np.linalg.eigvalsh(build_hamiltonian(spec))
        np.testing.assert_allclose(ev, -ev[::-1], atol=1e-12)


def test_cap():
    with pytest.raises(CapExceeded):
        build_hamiltonian(ChainSpec("TI", 11))
    assert build_hamiltonian(ChainSpec("FREE", 11, mu_B=1.0, allow_large=True)).shape == (2048, 2048)
    with pytest.raises(CapExceeded):
        build_hamiltonian(ChainSpec("FREE", 13, allow_large=True))


def test_chain_spec_validation():
    with pytest.raises(ValueError):
        ChainSpec("HEIS", 4)
    with pytest.raises(ValueError):
        ChainSpec("TI", 0)
    with pytest.raises(ValueError):
        ChainSpec("TI", 4, boundary="twisted")


def test_periodic_two_sites_single_bond():
    assert ChainSpec("TI", 2).bonds() == [(0, 1)]
    assert ChainSpec("TI", 1).bonds() == []
    assert len(ChainSpec("TI", 5).bonds()) == 5


@pytest.mark.parametrize("N", [1, 3, 6])
def test_ed_free_spins(N):
    r = ed_observables(ChainSpec("FREE", N, mu_B=1.0), 1.0)
    fs = free_spin_observables(1.0)
    assert len(r.eigenvalues) == 2**N and r.Z > 0
    assert r.f_density == pytest.approx(fs.f_density, abs=1e-12)
    assert r.m == pytest.approx(fs.m, abs=1e-8)
    assert r.s == pytest.approx(fs.s, abs=1e-6)


def test_ed_low_temperature_no_overflow():
    r = ed_observables(ChainSpec("TI", 6, J=1.0, mu_B=0.5), 1e-3)
    assert math.isfinite(r.log_Z) and math.isinf(r.Z)
    assert math.isfinite(r.f_density)


def test_ed_ti_converges():
    inf = ti_observables(ReducedCouplings.from_raw(TI, 1.0, 1.0, 0.5, 1.0))
    errs = [abs(ed_observables(ChainSpec("TI", N, 1.0, 0.5), 1.0).f_density - inf.f_density) for N in (4, 6, 8)]
    assert errs[0] > errs[1] > errs[2]


def test_ed_xy_magnetization_close():
    inf = xy_observables(ReducedCouplings.from_raw(XY, 1.0, 1.0, 0.3, 1.0))
    r = ed_observables(ChainSpec("XY", 8, 1.0, 0.3), 1.0)
    assert abs(r.m - inf.m) <= 0.05 * abs(inf.m)


@pytest.mark.parametrize("model,mu_b", [("TI", 0.5), ("XY", 0.3), ("TI", 1.0), ("XY", 1.5)])
def test_ed_complementarity(model, mu_b):
    r = ed_observables(ChainSpec(model, 6, 1.0, mu_b), 0.7)
    assert r.m**2 + r.s <= 1 + 1e-6


def test_enumeration_examples():
    assert enumerate_classical_Z(3, ReducedCouplings(0.0, 0.0, ISING)) == pytest.approx(8.0, rel=1e-15)
    rc = ReducedCouplings(0.7, 0.3, ISING)
    lp, lm, _ = ising_transfer(rc)
    assert enumerate_classical_Z(4, rc) == pytest.approx(lp**4 + lm**4, rel=1e-12)
    ref = (2 * math.cosh(1)) ** 10 + (2 * math.sinh(1)) ** 10
    assert enumerate_classical_Z(10, ReducedCouplings(1.0, 0.0, ISING)) == pytest.approx(ref, rel=1e-12)


def test_enumeration_two_sites_counts_bond_twice():
    rc = ReducedCouplings(0.4, 0.2, ISING)
    lp, lm, _ = ising_transfer(rc)
    assert enumerate_classical_Z(2, rc) == pytest.approx(lp**2 + lm**2, rel=1e-13)


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        enumerate_classical_Z(21, ReducedCouplings(0.1, 0.1, ISING))
    with pytest.raises(ValueError):
        enumerate_classical_Z(4, ReducedCouplings(0.1, 0.1, XY))
