"""Brute-force ground truth for small chains.

Quantum chains are diagonalized densely in the sigma^z product basis; the
classical Ising chain is summed over all 2^N configurations. Site 0 is the
most significant bit of the basis index, bit value 0 is spin up (sigma^z = +1).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded, Overflow
from .models import ISING, ReducedCouplings
from .numerics import DiffSpec, central_difference, second_difference

__all__ = [
    "ChainSpec",
    "SpectrumResult",
    "DEFAULT_CAP",
    "HARD_CAP",
    "build_hamiltonian",
    "ed_observables",
    "enumerate_classical_Z",
    "CLASSICAL_CAP",
]

DEFAULT_CAP = 10
HARD_CAP = 12
CLASSICAL_CAP = 20
_MODELS = ("XY", "TI", "FREE")


@dataclass(frozen=True)
class ChainSpec:
    """A finite chain of ``N`` spins-1/2.

    XY:   H = -(J/2) sum (sx sx + sy sy) - muB sum sz
    TI:   H = -J sum sz sz - muB sum sx
    FREE: H = -muB sum sz

    Periodic chains with N = 2 carry a single bond; N = 1 has none. Sizes above
    10 sites need ``allow_large=True`` and never exceed 12.
    """

    model: str
    N: int
    J: float = 1.0
    mu_B: float = 0.0
    boundary: str = "periodic"
    allow_large: bool = False

    def __post_init__(self):
        if self.model not in _MODELS:
            raise ValueError(f"unknown chain model {self.model!r}")
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if self.boundary not in ("periodic", "open"):
            raise ValueError(f"unknown boundary {self.boundary!r}")

    @property
    def cap(self) -> int:
        return HARD_CAP if self.allow_large else DEFAULT_CAP

    def bonds(self):
        N = self.N
        if self.boundary == "open" or N <= 2:
            return [(i, i + 1) for i in range(N - 1)]
        return [(i, (i + 1) % N) for i in range(N)]

    def with_field(self, mu_B: float) -> ChainSpec:
        return ChainSpec(self.model, self.N, self.J, mu_B, self.boundary, self.allow_large)


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: np.ndarray
    Z: float
    log_Z: float
    f_density: float
    m: float
    s: float


def _z_values(N):
    idx = np.arange(2**N)
    return [1 - 2 * ((idx >> (N - 1 - i)) & 1) for i in range(N)]


def build_hamiltonian(spec: ChainSpec) -> np.ndarray:
    """Dense real-symmetric Hamiltonian of dimension 2^N.

    sigma^y sigma^y is real on bond (i, j): it flips both spins with amplitude
    ``-z_i z_j``, so sx sx + sy sy has amplitude ``1 - z_i z_j``.
    """
    N = spec.N
    if N > spec.cap:
        raise CapExceeded(f"N={N} exceeds the size cap {spec.cap}")
    dim = 2**N
    idx = np.arange(dim)
    z = _z_values(N)
    H = np.zeros((dim, dim))
    diag = np.zeros(dim)

    def mask(i):
        return 1 << (N - 1 - i)

    if spec.model in ("XY", "FREE"):
        diag -= spec.mu_B * np.sum(z, axis=0)
    if spec.model == "XY":
        for i, j in spec.bonds():
            flipped = idx ^ (mask(i) | mask(j))
            H[flipped, idx] += -0.5 * spec.J * (1 - z[i] * z[j])
    elif spec.model == "TI":
        for i, j in spec.bonds():
            diag -= spec.J * z[i] * z[j]
        for i in range(N):
            H[idx ^ mask(i), idx] += -spec.mu_B
    H[idx, idx] += diag
    return H


def _log_partition(eigenvalues, kT):
    e0 = eigenvalues[0]
    return -e0 / kT + math.log(np.sum(np.exp(-(eigenvalues - e0) / kT)))


def ed_observables(spec: ChainSpec, T: float, diff: DiffSpec | None = None) -> SpectrumResult:
    """Finite-N thermodynamics from the full spectrum at temperature ``kT = T``.

    ``f_density = ln Z / N``; ``m`` and ``s`` are first and second central
    differences of ``f_density`` in the reduced field ``C = muB / kT``. The
    default step is ``delta B = 1e-4 (1 + |muB|)``.
    """
    if not T > 0:
        raise ValueError("temperature must be positive")
    kT = float(T)
    if diff is None:
        diff = DiffSpec(step=1e-4 * (1.0 + abs(spec.mu_B)) / kT, scheme="central-2pt", relative=False)

    def f_at(C):
        ev = np.linalg.eigvalsh(build_hamiltonian(spec.with_field(C * kT)))
        return _log_partition(ev, kT) / spec.N

    ev = np.linalg.eigvalsh(build_hamiltonian(spec))
    log_Z = _log_partition(ev, kT)
    C = spec.mu_B / kT
    m = central_difference(f_at, C, diff)
    s = second_difference(f_at, C, diff)
    Z = math.exp(log_Z) if log_Z < 709.0 else math.inf
    return SpectrumResult(ev, Z, log_Z, log_Z / spec.N, m, s)


def enumerate_classical_Z(N: int, rc: ReducedCouplings) -> float:
    """Sum of exp(K sum s_i s_{i+1} + C sum s_i) over all periodic configurations.

    Bonds run i -> i+1 mod N, so N = 2 counts its bond twice, exactly as the
    trace of the squared transfer matrix does.
    """
    if rc.convention != ISING:
        raise ValueError(f"expected ISING couplings, got {rc.convention}")
    if not 1 <= N <= CLASSICAL_CAP:
        raise CapExceeded(f"N={N} outside 1..{CLASSICAL_CAP}")
    spins = np.array(list(itertools.product((1, -1), repeat=N)), dtype=float)
    bond = np.sum(spins * np.roll(spins, -1, axis=1), axis=1)
    weight = rc.K * bond + rc.C * np.sum(spins, axis=1)
    top = weight.max()
    log_Z = top + math.log(np.sum(np.exp(weight - top)))
    if log_Z > 709.0:
        raise Overflow(f"partition sum overflows (ln Z = {log_Z:.1f})")
    return math.exp(log_Z)
