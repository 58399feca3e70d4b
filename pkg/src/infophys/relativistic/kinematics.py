"""Boosts and closed-form relativistic transformations (c = 1 unless noted)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import constants

from ..errors import ValidationError

AXIS_TOL = 1e-12


@dataclass(frozen=True)
class Boost:
    """Pure Lorentz boost by rapidity ``rapidity`` along unit vector ``axis``.

    Velocity and rapidity are related by beta = tanh(rapidity).
    """

    rapidity: float
    axis: tuple = (0.0, 0.0, 1.0)

    def __post_init__(self):
        xi = float(self.rapidity)
        if not (xi >= 0 and math.isfinite(xi)):
            raise ValidationError(f"rapidity must be finite and >= 0, got {self.rapidity!r}")
        n = np.asarray(self.axis, dtype=float)
        if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > AXIS_TOL:
            raise ValidationError(f"boost axis must be a unit 3-vector, got {self.axis!r}")
        object.__setattr__(self, "rapidity", xi)
        object.__setattr__(self, "axis", tuple(float(c) for c in n))

    @classmethod
    def from_beta(cls, beta: float, axis=(0.0, 0.0, 1.0)) -> "Boost":
        check_beta(beta)
        return cls(math.atanh(beta), axis)

    @classmethod
    def along(cls, rapidity: float, axis) -> "Boost":
        """Boost along an arbitrary (not necessarily unit) direction."""
        n = np.asarray(axis, dtype=float)
        return cls(rapidity, tuple(n / np.linalg.norm(n)))

    @property
    def beta(self) -> float:
        return math.tanh(self.rapidity)

    @property
    def gamma(self) -> float:
        return math.cosh(self.rapidity)

    @property
    def direction(self) -> np.ndarray:
        return np.asarray(self.axis)


def check_beta(beta: float) -> float:
    if not (0 <= beta < 1):
        raise ValidationError(f"beta must lie in [0, 1), got {beta!r}")
    return float(beta)


def doppler_factor(beta: float) -> float:
    """Frequency ratio nu'/nu for a source receding along the line of sight."""
    check_beta(beta)
    return math.sqrt((1.0 - beta) / (1.0 + beta))


def channel_capacity(bandwidth: float, snr: float, alpha: float = 1.0) -> float:
    """Gaussian-channel capacity W log2(1 + alpha SNR) in bits per second."""
    if bandwidth <= 0:
        raise ValidationError("bandwidth must be positive")
    if snr < 0 or alpha < 0:
        raise ValidationError("snr and alpha must be nonnegative")
    return bandwidth * math.log2(1.0 + alpha * snr)


def boosted_temperature(temperature: float, beta: float, theta_prime: float) -> float:
    """Blackbody temperature seen by a detector moving at ``beta``.

    ``theta_prime`` is the angle between the detector's direction of motion
    and the line of sight, measured in the detector frame.
    """
    if temperature <= 0:
        raise ValidationError("temperature must be positive")
    check_beta(beta)
    return temperature * math.sqrt(1.0 - beta * beta) / (1.0 - beta * math.cos(theta_prime))


def unruh_temperature(acceleration: float, units: str = "natural") -> float:
    """Temperature a/2pi (hbar = c = k_B = 1) or hbar a / (2 pi c k_B) in kelvin."""
    if acceleration < 0:
        raise ValidationError("acceleration must be nonnegative")
    if units == "natural":
        return acceleration / (2 * math.pi)
    if units.upper() == "SI":
        return constants.hbar * acceleration / (2 * math.pi * constants.c * constants.k)
    raise ValidationError(f"units must be 'natural' or 'SI', got {units!r}")


def add_velocities(u: np.ndarray, boost: Boost) -> np.ndarray:
    """Velocities ``u`` (shape (..., 3)) seen from a frame moving with the boost velocity."""
    u = np.asarray(u, dtype=float)
    b = boost.beta
    if b == 0:
        return u.copy()
    n = boost.direction
    v = b * n
    g = boost.gamma
    uv = u @ v
    num = u / g - v + (g / (1.0 + g)) * uv[..., None] * v
    return num / (1.0 - uv)[..., None]
