"""4x4 Lorentz matrices: an independent route to Wigner rotations.

Metric signature (+, -, -, -); vectors are (E, px, py, pz).
"""

from __future__ import annotations

import math

import numpy as np

from .kinematics import Boost


def boost_matrix(rapidity: float, axis) -> np.ndarray:
    n = np.asarray(axis, dtype=float)
    ch, sh = math.cosh(rapidity), math.sinh(rapidity)
    lam = np.eye(4)
    lam[0, 0] = ch
    lam[0, 1:] = lam[1:, 0] = sh * n
    lam[1:, 1:] += (ch - 1.0) * np.outer(n, n)
    return lam


def standard_boost(p: np.ndarray, mass: float) -> np.ndarray:
    """Pure boost taking (m, 0, 0, 0) to (E, p)."""
    p = np.asarray(p, dtype=float)
    pn = np.linalg.norm(p)
    if pn == 0:
        return np.eye(4)
    return boost_matrix(math.asinh(pn / mass), p / pn)


def four_momentum(p, mass: float) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    return np.concatenate([[math.sqrt(mass * mass + p @ p)], p])


def wigner_rotation_4(p, mass: float, boost: Boost) -> np.ndarray:
    """3x3 rotation block of L(Lp)^-1 L L(p)."""
    lam = boost_matrix(boost.rapidity, boost.axis)
    q = (lam @ four_momentum(p, mass))[1:]
    r = np.linalg.inv(standard_boost(q, mass)) @ lam @ standard_boost(p, mass)
    return r[1:, 1:]


def rotation_angle(r3: np.ndarray) -> float:
    """Angle in [0, pi] of a proper 3x3 rotation."""
    c = (np.trace(r3) - 1.0) / 2.0
    s = np.linalg.norm([r3[2, 1] - r3[1, 2], r3[0, 2] - r3[2, 0], r3[1, 0] - r3[0, 1]]) / 2.0
    return math.atan2(s, c)
