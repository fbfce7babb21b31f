"""Thermodynamic versus optical complementarity for spin chains.

Magnetization and susceptibility of spin chains, computed from their
partition functions, behave like the predictability and visibility of a
Gaussian double slit. This package evaluates both sides, the general
``f^2 + alpha f' = beta`` law linking them, and brute-force oracles for
small chains.
"""

__version__ = "0.1.0"

from .duality import LawParams, law_inequality_check, law_residual, tanh_solution
from .errors import (
    CapExceeded,
    DegenerateScan,
    InvalidMap,
    NonConvergent,
    NonFinite,
    Overflow,
    ThermopticsError,
)
from .grid import SweepGrid
from .models import (
    ISING,
    TI,
    XY,
    ObservableTriple,
    ReducedCouplings,
    free_spin_observables,
    ising_observables,
    ising_transfer,
    ti_free_energy,
    ti_magnetization,
    ti_observables,
    xy_observables,
)
from .numerics import (
    DiffSpec,
    QuadratureSpec,
    central_difference,
    integrate_unit_pi,
    log_cosh,
    second_difference,
    tanh_sech2,
)
from .observables import (
    complementarity_sum,
    detect_critical_field,
    ising_interference_ratio,
    ti_gap,
)
from .optics import (
    SlitGeometry,
    amplitude_intensity,
    double_slit_intensity,
    slit_array_analog,
    thermo_slit_map,
    visibility_predictability,
)
from .oracle import ChainSpec, build_hamiltonian, ed_observables, enumerate_classical_Z
