"""Finite-dimensional spin-boson model with a discretized Ohmic bath.

The system is a two-level site, ``h_sys = (delta/2) sigma_z + epsilon sigma_x``,
coupled through ``sigma_x`` to a set of harmonic modes sampled from the Ohmic
spectral density ``J(w) = 2 gamma w exp(-w/omega_d)``.  Each mode is truncated
to a finite Fock ladder and its position/momentum operators are built from the
truncated ladder operators; as a consequence the mode Hamiltonian
``(omega/2)(p^2 + x^2)`` equals ``omega (n + 1/2)`` on all levels except the
topmost one.  Every operator is a dense complex matrix on the tensor-product
space ordered spin first, then modes in grid order.  hbar = 1 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetError, DimensionError

__all__ = [
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "SpinParams",
    "BathMode",
    "ModelSystem",
    "ohmic_density",
    "discretize_ohmic",
    "build_spin_boson",
    "gibbs_state",
]

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

HERMITICITY_RTOL = 1e-12


@dataclass(frozen=True)
class SpinParams:
    """Two-level system parameters: site energy difference and tunneling element."""

    delta: float
    epsilon: float

    def __post_init__(self):
        if not (math.isfinite(self.delta) and math.isfinite(self.epsilon)):
            raise ValueError("spin parameters must be finite")


@dataclass(frozen=True)
class BathMode:
    """One discretized harmonic mode: frequency, coupling constant, Fock cutoff."""

    omega: float
    coupling: float
    fock_cutoff: int

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"mode frequency must be positive, got {self.omega}")
        if self.fock_cutoff < 2:
            raise ValueError(f"fock_cutoff must be >= 2, got {self.fock_cutoff}")
        if not math.isfinite(self.coupling):
            raise ValueError("mode coupling must be finite")


@dataclass(frozen=True, eq=False)
class ModelSystem:
    """Assembled model: Hamiltonian pieces and embedded system operators.

    Attributes
    ----------
    dim : int
        Total Hilbert-space dimension, 2 * prod(fock_cutoff_j).
    h_total, h_sys, h_bath, h_coupling : np.ndarray
        Dense complex Hermitian matrices with h_total = h_sys + h_bath +
        h_coupling holding elementwise.
    q_op : np.ndarray
        System coupling operator (sigma_x embedded).
    observable : np.ndarray
        Dipole operator (sigma_x embedded).
    beta : float
        Inverse temperature used for the steady state.
    """

    dim: int
    h_total: np.ndarray
    h_sys: np.ndarray
    h_bath: np.ndarray
    h_coupling: np.ndarray
    q_op: np.ndarray
    observable: np.ndarray
    beta: float
    spin: SpinParams | None = None
    modes: tuple[BathMode, ...] = ()


def ohmic_density(omega, gamma: float, omega_d: float):
    """Ohmic spectral density J(w) = 2 gamma w exp(-|w|/omega_d)."""
    omega = np.asarray(omega, dtype=float)
    return 2.0 * gamma * omega * np.exp(-np.abs(omega) / omega_d)


def discretize_ohmic(
    gamma: float,
    omega_d: float,
    n_modes: int,
    omega_max: float,
    fock_cutoff: int = 4,
) -> list[BathMode]:
    """Sample the Ohmic density on a uniform frequency grid.

    Modes sit at ``w_j = j * dw`` with ``dw = omega_max / n_modes`` and carry
    couplings ``c_j = sqrt((2/pi) J(w_j) w_j dw)``, so the discrete sum
    ``sum_j (pi/2) c_j^2 / w_j`` reconstructs the integral of J over the grid.

    Parameters
    ----------
    gamma : float
        Coupling strength (J is identically zero for gamma = 0).
    omega_d : float
        Cutoff frequency of the exponential tail; must be positive.
    n_modes : int
        Number of modes; zero yields an empty list (bare system).
    omega_max : float
        Upper edge of the frequency grid.
    fock_cutoff : int
        Fock truncation assigned to every mode.

    Returns
    -------
    list of BathMode
    """
    if gamma < 0:
        raise ValueError("gamma must be nonnegative")
    if omega_d <= 0:
        raise ValueError("omega_d must be positive")
    if n_modes < 0:
        raise ValueError("n_modes must be nonnegative")
    if n_modes == 0:
        return []
    if omega_max <= 0:
        raise ValueError("omega_max must be positive")
    d_omega = omega_max / n_modes
    modes = []
    for j in range(1, n_modes + 1):
        w = j * d_omega
        c = math.sqrt((2.0 / math.pi) * float(ohmic_density(w, gamma, omega_d)) * w * d_omega)
        modes.append(BathMode(omega=w, coupling=c, fock_cutoff=fock_cutoff))
    return modes


def _ladder(n: int) -> np.ndarray:
    """Truncated annihilation operator a|k> = sqrt(k)|k-1> on n levels."""
    a = np.zeros((n, n), dtype=complex)
    idx = np.arange(1, n)
    a[idx - 1, idx] = np.sqrt(idx)
    return a


def _mode_xp(n: int) -> tuple[np.ndarray, np.ndarray]:
    a = _ladder(n)
    adag = a.conj().T
    x = (a + adag) / math.sqrt(2.0)
    p = 1.0j * (adag - a) / math.sqrt(2.0)
    return x, p


def _embed(factors: list[np.ndarray]) -> np.ndarray:
    out = factors[0]
    for f in factors[1:]:
        out = np.kron(out, f)
    return out


def _check_hermitian(name: str, mat: np.ndarray) -> None:
    scale = np.abs(mat).max()
    if scale == 0.0:
        return
    dev = np.abs(mat - mat.conj().T).max()
    if dev > HERMITICITY_RTOL * scale:
        raise ValueError(f"{name} is not Hermitian (max deviation {dev:.3e})")


def build_spin_boson(
    spin: SpinParams,
    modes: list[BathMode] | tuple[BathMode, ...],
    beta: float,
    oracle_limit: int | None = None,
) -> ModelSystem:
    """Assemble the full spin-boson Hamiltonian on the truncated product space.

    Parameters
    ----------
    spin : SpinParams
    modes : sequence of BathMode
    beta : float
        Inverse temperature, stored for downstream steady-state construction.
    oracle_limit : int, optional
        When given, reject models whose squared dimension exceeds it (guard
        for downstream dense superoperator work).

    Returns
    -------
    ModelSystem
    """
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    modes = tuple(modes)
    dims = [2] + [m.fock_cutoff for m in modes]
    dim = int(np.prod(dims))
    if oracle_limit is not None and dim * dim > oracle_limit:
        raise BudgetError(
            f"dim^2 = {dim * dim} exceeds the configured oracle budget {oracle_limit}"
        )

    eyes = [np.eye(d, dtype=complex) for d in dims]

    def one_site(k: int, op: np.ndarray) -> np.ndarray:
        factors = list(eyes)
        factors[k] = op
        return _embed(factors)

    h_spin = 0.5 * spin.delta * SIGMA_Z + spin.epsilon * SIGMA_X
    h_sys = one_site(0, h_spin)
    q_op = one_site(0, SIGMA_X)

    h_bath = np.zeros((dim, dim), dtype=complex)
    f_op = np.zeros((dim, dim), dtype=complex)
    for k, mode in enumerate(modes, start=1):
        x, p = _mode_xp(mode.fock_cutoff)
        h_mode = 0.5 * mode.omega * (p @ p + x @ x)
        h_bath += one_site(k, h_mode)
        f_op += mode.coupling * one_site(k, x)
    h_coupling = q_op @ f_op
    h_total = h_sys + h_bath + h_coupling

    for name, mat in (
        ("h_sys", h_sys),
        ("h_bath", h_bath),
        ("h_coupling", h_coupling),
        ("h_total", h_total),
    ):
        _check_hermitian(name, mat)

    return ModelSystem(
        dim=dim,
        h_total=h_total,
        h_sys=h_sys,
        h_bath=h_bath,
        h_coupling=h_coupling,
        q_op=q_op,
        observable=q_op.copy(),
        beta=beta,
        spin=spin,
        modes=modes,
    )


def gibbs_state(h: np.ndarray, beta: float) -> np.ndarray:
    """Normalized thermal state exp(-beta h) / Tr exp(-beta h).

    The spectrum is shifted by its minimum before exponentiation so the
    construction stays finite for large beta.  Real-symmetric input is
    diagonalized in real arithmetic, which keeps the result exactly real.
    """
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {h.shape}")
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    _check_hermitian("gibbs_state input", np.asarray(h, dtype=complex))

    is_real = not np.iscomplexobj(h) or bool(np.all(h.imag == 0))
    work = h.real if is_real else h
    evals, vecs = np.linalg.eigh(work)
    weights = np.exp(-beta * (evals - evals.min()))
    weights /= weights.sum()
    rho = (vecs * weights) @ vecs.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return rho.astype(complex)
