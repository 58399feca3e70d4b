"""Mutual information between the velocity components of a 2-D gas.

At rest, velocities uniform on a disk have I(vx:vy) = ln(pi/e) nats,
independent of the disk radius.  Boosting the gas mixes the components
through relativistic velocity addition and the mutual information rises.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.spatial import cKDTree
from scipy.special import digamma

from ..errors import ValidationError
from .kinematics import Boost, add_velocities

REST_DISK_MI = math.log(math.pi / math.e)
MIN_SAMPLES = 10_000
CONVERGENCE_LIMIT = 0.02


@dataclass(frozen=True)
class GasSpec:
    """Velocity ensemble in the x-y plane.

    ``kind="uniform-disk"`` draws speeds uniformly over the disk |v| < v_max.
    ``kind="maxwell"`` draws independent Gaussian components with standard
    deviation ``thermal_speed``, rejecting the (negligible) tail beyond v_max.
    """

    kind: str = "uniform-disk"
    v_max: float = 0.9
    samples: int = 100_000
    seed: int = 0
    thermal_speed: float = 0.05

    def __post_init__(self):
        if self.kind not in ("uniform-disk", "maxwell"):
            raise ValidationError(f"unknown gas kind {self.kind!r}")
        if not 0 < self.v_max < 1:
            raise ValidationError(f"v_max must lie in (0, 1), got {self.v_max}")
        if self.samples < MIN_SAMPLES:
            raise ValidationError(f"need at least {MIN_SAMPLES} samples, got {self.samples}")
        if self.kind == "maxwell" and not 0 < self.thermal_speed < self.v_max:
            raise ValidationError("thermal_speed must be positive and below v_max")


@dataclass(frozen=True)
class MIEstimate:
    value: float
    stderr: float
    converged: bool
    method: str


def sample_velocities(spec: GasSpec) -> np.ndarray:
    """Rest-frame velocities, shape (samples, 3) with vz = 0."""
    rng = np.random.default_rng(spec.seed)
    n = spec.samples
    v = np.zeros((n, 3))
    if spec.kind == "uniform-disk":
        r = spec.v_max * np.sqrt(rng.random(n))
        t = 2 * np.pi * rng.random(n)
        v[:, 0] = r * np.cos(t)
        v[:, 1] = r * np.sin(t)
        return v
    filled = 0
    while filled < n:
        draw = rng.normal(scale=spec.thermal_speed, size=(2 * (n - filled), 2))
        draw = draw[np.hypot(draw[:, 0], draw[:, 1]) < spec.v_max][: n - filled]
        v[filled : filled + len(draw), :2] = draw
        filled += len(draw)
    return v


def boosted_velocities(spec: GasSpec, boost: Boost) -> tuple[np.ndarray, np.ndarray]:
    if abs(boost.axis[2]) > 1e-12:
        raise ValidationError("gas boosts must lie in the x-y plane")
    v = add_velocities(sample_velocities(spec), boost)
    return v[:, 0], v[:, 1]


def ksg_mutual_information(x: np.ndarray, y: np.ndarray, k: int = 5) -> float:
    """Kraskov-Stoegbauer-Grassberger estimator (algorithm 1), in nats."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = x.size
    if n <= k:
        raise ValidationError("need more samples than neighbours")
    joint = np.column_stack([x, y])
    dist, _ = cKDTree(joint).query(joint, k + 1, p=np.inf)
    # strict inequality: shrink the radius by one ulp-scale factor
    eps = dist[:, -1] * (1 - 1e-12)
    nx = cKDTree(x[:, None]).query_ball_point(x[:, None], eps, p=np.inf, return_length=True) - 1
    ny = cKDTree(y[:, None]).query_ball_point(y[:, None], eps, p=np.inf, return_length=True) - 1
    return float(digamma(k) + digamma(n) - np.mean(digamma(nx + 1) + digamma(ny + 1)))


def histogram_mutual_information(x: np.ndarray, y: np.ndarray, bins: int | None = None) -> float:
    """Plug-in estimate on equal-mass bins with the Miller-Madow correction.

    Strongly biased low for densities with sharp support edges; kept as a
    cross-check of the nearest-neighbour estimator.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = x.size
    if bins is None:
        bins = max(2, int(round(n ** (1 / 3))))
    bx = np.argsort(np.argsort(x, kind="stable"), kind="stable") * bins // n
    by = np.argsort(np.argsort(y, kind="stable"), kind="stable") * bins // n

    def h(counts):
        c = counts[counts > 0]
        p = c / n
        return float(-(p * np.log(p)).sum() + (c.size - 1) / (2 * n))

    return h(np.bincount(bx, minlength=bins)) + h(np.bincount(by, minlength=bins)) - h(
        np.bincount(bx * bins + by, minlength=bins * bins)
    )


def estimate_mutual_information(
    x: np.ndarray, y: np.ndarray, method: str = "ksg", batches: int = 10, **kwargs
) -> MIEstimate:
    """Full-sample estimate with a batch-means standard error.

    The sample is split into ``batches`` contiguous blocks; the spread of the
    per-block estimates, divided by sqrt(batches), estimates the error of the
    full-sample value.
    """
    fn = {"ksg": ksg_mutual_information, "histogram": histogram_mutual_information}.get(method)
    if fn is None:
        raise ValidationError(f"unknown estimator {method!r}")
    value = fn(x, y, **kwargs)
    parts = [fn(xb, yb, **kwargs) for xb, yb in zip(np.array_split(x, batches), np.array_split(y, batches))]
    stderr = float(np.std(parts, ddof=1) / math.sqrt(batches))
    converged = stderr <= CONVERGENCE_LIMIT
    if not converged:
        warnings.warn(f"mutual-information estimate did not converge (stderr {stderr:.3g})", RuntimeWarning)
    return MIEstimate(value, stderr, converged, method)


def gas_mutual_info(spec: GasSpec, boost: Boost | None = None, method: str = "ksg", **kwargs) -> MIEstimate:
    """Estimate I(vx:vy) in nats for the gas seen from a boosted frame."""
    boost = Boost(0.0, (1.0, 0.0, 0.0)) if boost is None else boost
    vx, vy = boosted_velocities(spec, boost)
    return estimate_mutual_information(vx, vy, method=method, **kwargs)


def disk_mi_quadrature() -> float:
    """Rest-frame disk value 2 h(vx) - h(vx, vy) by numerical integration.

    The marginal of a component is the semicircle density 2 sqrt(1 - x^2) / pi
    on the unit disk; the result does not depend on the radius.
    """

    def integrand(x):
        f = 2 * math.sqrt(1 - x * x) / math.pi
        return -f * math.log(f) if f > 0 else 0.0

    h_marginal, _ = integrate.quad(integrand, -1, 1, limit=200)
    return 2 * h_marginal - math.log(math.pi)
