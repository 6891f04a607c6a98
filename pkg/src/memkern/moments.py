"""Steady-state-weighted pairing and the static moment recursion.

The pairing is ``<X Y> = Tr(X Y rho_ss)``; it is linear, not a Hermitian inner
product.  Moments are generated by repeatedly applying the Heisenberg
generator ``X -> i [H, X]`` to the observable and pairing the result back
against the observable.  The commutator itself is exposed separately because
downstream superoperator construction reuses it.
"""

from __future__ import annotations

import hashlib
import warnings
from dataclasses import dataclass

import numpy as np

from .csvio import read_table, write_table
from .errors import DimensionError, PrecisionHazardWarning
from .model import ModelSystem, gibbs_state

__all__ = [
    "PairingContext",
    "MomentSequence",
    "InitialKernelVector",
    "pairing_context",
    "pair",
    "commutator",
    "compute_moments",
    "initial_kernel_vector",
    "moments_to_csv",
    "moments_from_csv",
]

#: |Omega_n|^(1/n) above this triggers a PrecisionHazardWarning.
GROWTH_BOUND = 1e6


@dataclass(frozen=True, eq=False)
class PairingContext:
    """Steady state, observable, and the normalization <A A>."""

    rho_ss: np.ndarray
    observable: np.ndarray
    norm: complex

    def __post_init__(self):
        if self.rho_ss.shape != self.observable.shape:
            raise DimensionError(
                f"rho_ss {self.rho_ss.shape} and observable "
                f"{self.observable.shape} differ in shape"
            )
        if abs(self.norm) == 0.0:
            raise ValueError("degenerate pairing: <A A> = 0")


@dataclass(frozen=True, eq=False)
class MomentSequence:
    """Static moments Omega_1 .. Omega_{order+1} for one model/pairing.

    ``values[n-1]`` holds Omega_n.  ``growth_rate`` is max_n |Omega_n|^(1/n),
    the geometric growth estimate used to pick the default scaling frequency.
    ``context_hash`` fingerprints the model and pairing that produced them.
    """

    order: int
    values: np.ndarray
    growth_rate: float
    context_hash: str

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if len(self.values) != self.order + 1:
            raise ValueError(
                f"expected {self.order + 1} moments, got {len(self.values)}"
            )
        if not np.isfinite(self.values).all():
            raise ValueError("nonfinite moment encountered")

    @property
    def omega1(self) -> complex:
        """The frequency parameter of the master equation."""
        return complex(self.values[0])


@dataclass(frozen=True, eq=False)
class InitialKernelVector:
    """Initial hierarchy values K_n(0) = Omega_{n+1} - Omega_n * Omega_1."""

    values: np.ndarray


def pairing_context(model: ModelSystem, observable: np.ndarray | None = None) -> PairingContext:
    """Build the pairing context from a model's Gibbs state and observable."""
    obs = model.observable if observable is None else np.asarray(observable, dtype=complex)
    rho = gibbs_state(model.h_total, model.beta)
    norm = complex(np.trace(obs @ obs @ rho))
    return PairingContext(rho_ss=rho, observable=obs, norm=norm)


def pair(x: np.ndarray, y: np.ndarray, ctx: PairingContext) -> complex:
    """Pairing <x y> = Tr(x y rho_ss)."""
    if x.shape != y.shape or x.shape != ctx.rho_ss.shape:
        raise DimensionError(
            f"shape mismatch: {x.shape}, {y.shape}, rho {ctx.rho_ss.shape}"
        )
    return complex(np.trace(x @ y @ ctx.rho_ss))


def commutator(h: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Commutator [h, x]."""
    if h.shape != x.shape:
        raise DimensionError(f"shape mismatch: {h.shape} vs {x.shape}")
    return h @ x - x @ h


def _context_hash(model: ModelSystem, ctx: PairingContext) -> str:
    digest = hashlib.sha256()
    for arr in (model.h_total, ctx.observable, ctx.rho_ss):
        digest.update(np.ascontiguousarray(arr).tobytes())
    return digest.hexdigest()[:16]


def compute_moments(
    model: ModelSystem,
    ctx: PairingContext,
    order: int,
    growth_bound: float = GROWTH_BOUND,
) -> MomentSequence:
    """Moments Omega_n = <G^n A, A> / <A A> with G = i [H, .], n = 1..order+1.

    The recursion uses exact nested commutators in double precision.  Moment
    magnitudes grow roughly like the spectral spread of H to the nth power;
    the growth rate is reported and a precision warning is emitted when it
    exceeds ``growth_bound``.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    h = model.h_total
    a = ctx.observable
    # Tr(x a rho) = sum(x * weight) with weight = (a rho)^T, O(d^2) per moment.
    weight = (a @ ctx.rho_ss).T.copy()
    values = np.empty(order + 1, dtype=complex)
    x = a
    for n in range(1, order + 2):
        x = 1.0j * commutator(h, x)
        values[n - 1] = np.sum(x * weight) / ctx.norm

    mags = np.abs(values)
    with np.errstate(divide="ignore"):
        rates = np.where(mags > 0, mags ** (1.0 / np.arange(1, order + 2)), 0.0)
    growth = float(rates.max())
    if growth > growth_bound:
        warnings.warn(
            f"moment growth rate {growth:.3e} exceeds {growth_bound:.1e}; "
            "double precision may be insufficient at this truncation order",
            PrecisionHazardWarning,
            stacklevel=2,
        )
    return MomentSequence(
        order=order,
        values=values,
        growth_rate=growth,
        context_hash=_context_hash(model, ctx),
    )


def initial_kernel_vector(m: MomentSequence) -> InitialKernelVector:
    """Assemble K_n(0) = Omega_{n+1} - Omega_n * Omega_1 for n = 1..order."""
    omega = m.values
    return InitialKernelVector(values=omega[1:] - omega[:-1] * omega[0])


def moments_to_csv(m: MomentSequence, path, provenance: str = "") -> None:
    """Write moments as rows (n, Re Omega_n, Im Omega_n)."""
    rows = [
        (float(n), v.real, v.imag)
        for n, v in zip(range(1, m.order + 2), m.values)
    ]
    write_table(path, ["n", "re", "im"], rows, provenance=provenance)


def moments_from_csv(path) -> MomentSequence:
    """Read a moment table written by :func:`moments_to_csv`."""
    columns, data = read_table(path)
    if columns[:3] != ["n", "re", "im"]:
        raise ValueError(f"unexpected moment CSV columns: {columns}")
    n_col = data[:, 0].astype(int)
    if not np.array_equal(n_col, np.arange(1, len(n_col) + 1)):
        raise ValueError("moment CSV must list n = 1..N+1 contiguously")
    values = data[:, 1] + 1.0j * data[:, 2]
    order = len(values) - 1
    if order < 1:
        raise ValueError("moment CSV must contain at least two rows")
    mags = np.abs(values)
    rates = np.where(mags > 0, mags ** (1.0 / np.arange(1, order + 2)), 0.0)
    digest = hashlib.sha256(values.tobytes()).hexdigest()[:16]
    return MomentSequence(
        order=order,
        values=values,
        growth_rate=float(rates.max()),
        context_hash=f"import-{digest}",
    )
