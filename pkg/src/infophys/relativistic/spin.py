"""Wigner rotations and boosted spin-momentum states of massive spin-1/2 particles.

Boosts are applied actively: a particle with momentum p ends up with
momentum Lambda p and its spin is rotated by W(Lambda, p).  Spinors use the
SL(2, C) representation X = E + p.sigma, X -> A X A^dagger.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..errors import ValidationError
from ..quantum_core import DensityMatrix, StateVector, bell_state, concurrence, partial_trace, von_neumann_entropy
from ..units import DEFAULT_BASE
from .kinematics import Boost

PAULI = np.array([[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def _sigma_dot(v: np.ndarray) -> np.ndarray:
    return np.einsum("...i,ijk->...jk", v, PAULI)


def spinor_boost(boost: Boost) -> np.ndarray:
    """exp(xi n.sigma / 2)."""
    h = boost.rapidity / 2
    return math.cosh(h) * I2 + math.sinh(h) * _sigma_dot(boost.direction)


def _standard_boosts(p: np.ndarray, energy: np.ndarray, mass: float) -> np.ndarray:
    # ((E + m) + p.sigma) / sqrt(2 m (E + m)), Hermitian and positive
    num = (energy + mass)[:, None, None] * I2 + _sigma_dot(p)
    return num / np.sqrt(2 * mass * (energy + mass))[:, None, None]


def _standard_boosts_inv(p: np.ndarray, energy: np.ndarray, mass: float) -> np.ndarray:
    num = (energy + mass)[:, None, None] * I2 - _sigma_dot(p)
    return num / np.sqrt(2 * mass * (energy + mass))[:, None, None]


def boost_momenta(p, mass: float, boost: Boost) -> np.ndarray:
    """Boosted 3-momenta (shape (K, 3)) of particles with momenta ``p``."""
    p = np.atleast_2d(np.asarray(p, dtype=float))
    energy = np.sqrt(mass * mass + np.sum(p * p, axis=1))
    n = boost.direction
    ch, sh = math.cosh(boost.rapidity), math.sinh(boost.rapidity)
    par = p @ n
    return p + ((ch - 1.0) * par + sh * energy)[:, None] * n


def wigner_rotations(p, mass: float, boost: Boost) -> np.ndarray:
    """Spin rotations W = L(Lambda p)^-1 A L(p) for each row of ``p``; shape (K, 2, 2)."""
    if not mass > 0:
        raise ValidationError(f"mass must be positive, got {mass!r}")
    p = np.atleast_2d(np.asarray(p, dtype=float))
    energy = np.sqrt(mass * mass + np.sum(p * p, axis=1))
    q = boost_momenta(p, mass, boost)
    eq = np.sqrt(mass * mass + np.sum(q * q, axis=1))
    a = spinor_boost(boost)
    return _standard_boosts_inv(q, eq, mass) @ a @ _standard_boosts(p, energy, mass)


def wigner_rotation(p, mass: float, boost: Boost) -> np.ndarray:
    """2x2 SU(2) matrix rotating the spin of a particle with 3-momentum ``p``."""
    return wigner_rotations(np.asarray(p, dtype=float).reshape(1, 3), mass, boost)[0]


def spinor_rotation_angle(w: np.ndarray) -> float:
    """Rotation angle in [0, pi] of the SO(3) element covered by +/-w."""
    c = abs(np.trace(w).real) / 2
    s = np.linalg.norm([np.trace(PAULI[k] @ w).imag for k in range(3)]) / 2
    return 2 * math.atan2(s, c)


def spinor_to_rotation(w: np.ndarray) -> np.ndarray:
    """Adjoint action R_ij = Tr(sigma_i W sigma_j W^dagger) / 2."""
    return np.real(np.einsum("iab,bc,jcd,da->ij", PAULI, w, PAULI, w.conj().T)) / 2


@dataclass(frozen=True)
class MomentumGrid:
    """Cartesian momentum grid with normalized Gaussian weights |f(p)|^2.

    The grid spans +/- ``width`` standard deviations per axis; ``spread`` is
    the standard deviation of each momentum component.
    """

    mass: float
    spread: float
    points_per_axis: int = 15
    ndim: int = 3
    width: float = 4.0
    momenta: np.ndarray = field(init=False, repr=False)
    weights: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if not self.mass > 0:
            raise ValidationError("mass must be positive")
        if self.spread < 0:
            raise ValidationError("momentum spread must be nonnegative")
        if self.points_per_axis < 1 or self.ndim not in (1, 2, 3):
            raise ValidationError("need points_per_axis >= 1 and ndim in 1..3")
        if self.spread == 0 or self.points_per_axis == 1:
            pts = np.zeros((1, 3))
            w = np.ones(1)
        else:
            axis = np.linspace(-self.width * self.spread, self.width * self.spread, self.points_per_axis)
            mesh = np.meshgrid(*([axis] * self.ndim), indexing="ij")
            pts = np.zeros((axis.size**self.ndim, 3))
            for k, m in enumerate(mesh):
                pts[:, k] = m.ravel()
            w = np.exp(-np.sum(pts * pts, axis=1) / (2 * self.spread**2))
            w = w / w.sum()
        pts.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "momenta", pts)
        object.__setattr__(self, "weights", w)

    @property
    def size(self) -> int:
        return self.weights.size

    def amplitudes(self) -> np.ndarray:
        return np.sqrt(self.weights)


@dataclass(frozen=True)
class SpinMomentumState:
    """Pure state of one or more spin-1/2 particles on discrete momentum sets.

    ``amplitudes`` has axes (spin_1, k_1, spin_2, k_2, ...); ``momenta[i]`` is
    the (K_i, 3) array of momentum labels of particle i.  Distinct labels are
    orthogonal momentum states.
    """

    amplitudes: np.ndarray = field(repr=False)
    momenta: tuple = field(repr=False)
    mass: float = 1.0

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=complex)
        moms = tuple(np.atleast_2d(np.asarray(m, dtype=float)) for m in self.momenta)
        expected = tuple(d for m in moms for d in (2, m.shape[0]))
        if a.shape != expected:
            raise ValidationError(f"amplitude tensor has shape {a.shape}, momenta imply {expected}")
        if abs(np.linalg.norm(a) - 1.0) > 1e-9:
            raise ValidationError("spin-momentum state is not normalized")
        if not self.mass > 0:
            raise ValidationError("mass must be positive")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)
        object.__setattr__(self, "momenta", moms)

    @property
    def num_particles(self) -> int:
        return len(self.momenta)

    @classmethod
    def product(cls, spin: np.ndarray, grid: MomentumGrid) -> "SpinMomentumState":
        """Single particle with spin state ``spin`` times the Gaussian packet of ``grid``."""
        spin = np.asarray(spin, dtype=complex)
        spin = spin / np.linalg.norm(spin)
        return cls(np.outer(spin, grid.amplitudes()), (grid.momenta,), grid.mass)

    @classmethod
    def pair(cls, spins: np.ndarray, grid1: MomentumGrid, grid2: MomentumGrid | None = None) -> "SpinMomentumState":
        """Two particles: 2x2 spin amplitude matrix times product Gaussian momenta."""
        grid2 = grid1 if grid2 is None else grid2
        spins = np.asarray(spins, dtype=complex).reshape(2, 2)
        a = np.einsum("ab,k,l->akbl", spins, grid1.amplitudes(), grid2.amplitudes())
        return cls(a / np.linalg.norm(a), (grid1.momenta, grid2.momenta), grid1.mass)

    def as_state_vector(self) -> StateVector:
        return StateVector(self.amplitudes.ravel(), self.amplitudes.shape)

    def spin_density(self) -> DensityMatrix:
        """Reduced density matrix of the spins, momenta traced out."""
        spin_axes = list(range(0, 2 * self.num_particles, 2))
        return partial_trace(self.as_state_vector(), spin_axes)


MIN_POINTS_PER_AXIS = 15
MIN_WIDTH = 4.0


def check_grid_resolution(grid: MomentumGrid) -> None:
    """Warn when a Gaussian packet is sampled too coarsely to be trusted.

    Boosted momenta are exact relabellings of the grid points, so no weight
    is ever lost off the grid; the only discretization error is in how well
    the grid resolves the packet itself.
    """
    if grid.size == 1:
        return
    if grid.points_per_axis < MIN_POINTS_PER_AXIS or grid.width < MIN_WIDTH:
        warnings.warn(
            f"momentum grid with {grid.points_per_axis} points over +/-{grid.width} sigma "
            f"under-resolves the packet (need >= {MIN_POINTS_PER_AXIS} over +/-{MIN_WIDTH})",
            RuntimeWarning,
            stacklevel=3,
        )


def boost_state(s: SpinMomentumState, boost: Boost) -> SpinMomentumState:
    """Apply a Lorentz boost to every particle of ``s``.

    Each momentum label p is relabelled Lambda p and the spin index at that
    label is rotated by W(Lambda, p).  Labels stay distinct, so the map is
    unitary on the discrete momentum basis and the norm is preserved.
    """
    a = s.amplitudes
    new_momenta = []
    for i, p in enumerate(s.momenta):
        w = wigner_rotations(p, s.mass, boost)
        spin_ax, mom_ax = 2 * i, 2 * i + 1
        a = np.moveaxis(a, (spin_ax, mom_ax), (0, 1))
        a = np.einsum("kst,tk...->sk...", w, a)
        a = np.moveaxis(a, (0, 1), (spin_ax, mom_ax))
        new_momenta.append(boost_momenta(p, s.mass, boost))
    return SpinMomentumState(a, tuple(new_momenta), s.mass)


def spin_entropy(s: SpinMomentumState, base=DEFAULT_BASE) -> float:
    return von_neumann_entropy(s.spin_density(), base)


def spin_channel(grid: MomentumGrid, boost: Boost) -> np.ndarray:
    """Momentum-averaged action of a boost on one particle's spin.

    Returns T[s, a, t, b] = sum_k |f_k|^2 W_k[s, a] conj(W_k[t, b]), so that a
    spin operator rho maps to sum T[s, a, t, b] rho[a, b] at position (s, t).
    This equals tracing out the momentum after ``boost_state`` for a
    spin-momentum product input.
    """
    w = wigner_rotations(grid.momenta, grid.mass, boost)
    return np.einsum("k,ksa,ktb->satb", grid.weights, w, w.conj())


def boosted_pair_spin_density(
    spins: np.ndarray,
    grid: MomentumGrid,
    boost: Boost,
    method: str = "auto",
    explicit_limit: int = 2**20,
) -> DensityMatrix:
    """Two-spin density matrix after boosting a spin-entangled product-Gaussian pair.

    ``method="explicit"`` builds the full boosted state and traces momenta;
    ``"channel"`` contracts the per-particle spin channels, which is exact for
    product momentum wave packets and needs no K^2 storage.
    """
    spins = np.asarray(spins, dtype=complex).reshape(2, 2)
    spins = spins / np.linalg.norm(spins)
    if method == "auto":
        method = "explicit" if 4 * grid.size**2 <= explicit_limit else "channel"
    if method == "explicit":
        state = boost_state(SpinMomentumState.pair(spins, grid), boost)
        return state.spin_density()
    if method != "channel":
        raise ValidationError(f"unknown method {method!r}")
    t = spin_channel(grid, boost)
    rho = np.einsum("ij,kl,aick,bjdl->abcd", spins, spins.conj(), t, t).reshape(4, 4)
    rho = (rho + rho.conj().T) / 2
    return DensityMatrix(rho / np.trace(rho).real, (2, 2), check=False)


def boosted_pair_concurrence(
    sigma_over_m: float,
    xi: float,
    grid_res: int = 15,
    axis=(0.0, 0.0, 1.0),
    kind: str = "psi-",
    method: str = "auto",
) -> float:
    """Spin concurrence of a Bell pair with product Gaussian momenta, boosted by rapidity ``xi``."""
    grid = MomentumGrid(mass=1.0, spread=sigma_over_m, points_per_axis=grid_res)
    boost = Boost(xi, axis)
    check_grid_resolution(grid)
    spins = bell_state(kind).amplitudes.reshape(2, 2)
    return concurrence(boosted_pair_spin_density(spins, grid, boost, method))


def fig2_concurrence_analytic(p: float, xi: float) -> float:
    """Closed-form spin concurrence of the crossed Phi-/Phi+ pair (m = 1)."""
    if p < 0 or xi < 0:
        raise ValidationError("p and xi must be nonnegative")
    ch = math.cosh(xi)
    return p * p * (ch * ch - 1.0) / (math.sqrt(1.0 + p * p) * ch + 1.0) ** 2


def fig2_state(p: float, mass: float = 1.0) -> SpinMomentumState:
    """Equal superposition of two back-to-back branches at right angles.

    Branch 1: momenta (+p y, -p y) with spins in Phi-.
    Branch 2: momenta (+p x, -p x) with spins in Phi+.
    """
    if p < 0:
        raise ValidationError("p must be nonnegative")
    if p == 0:
        raise ValidationError("p = 0 makes the two branches identical")
    m1 = np.array([[0.0, p, 0.0], [p, 0.0, 0.0]])
    m2 = -m1
    phi_minus = bell_state("phi-").amplitudes.reshape(2, 2)
    phi_plus = bell_state("phi+").amplitudes.reshape(2, 2)
    a = np.zeros((2, 2, 2, 2), dtype=complex)
    a[:, 0, :, 0] = phi_minus / math.sqrt(2)
    a[:, 1, :, 1] = phi_plus / math.sqrt(2)
    return SpinMomentumState(a, (m1, m2), mass)


FIG2_BOOST_AXIS = (0.0, 0.0, 1.0)


def fig2_concurrence_numeric(p: float, xi: float) -> float:
    """Concurrence of the crossed-branch state boosted along z, perpendicular to both branches."""
    if p < 0 or xi < 0:
        raise ValidationError("p and xi must be nonnegative")
    if p == 0:
        return 0.0
    boosted = boost_state(fig2_state(p), Boost(xi, FIG2_BOOST_AXIS))
    return concurrence(boosted.spin_density())


def plane_wave_state(spin: Sequence[complex], momentum, mass: float = 1.0) -> SpinMomentumState:
    spin = np.asarray(spin, dtype=complex)
    spin = spin / np.linalg.norm(spin)
    return SpinMomentumState(spin.reshape(2, 1), (np.asarray(momentum, dtype=float).reshape(1, 3),), mass)
