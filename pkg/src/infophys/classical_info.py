"""Discrete classical information theory.

Entropies are returned in the unit set by ``base`` (2, ``"e"`` or 10).
Distributions are immutable; operations never modify their inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ConditioningError, ValidationError
from .units import DEFAULT_BASE, entropy_of, resolve_base

NORM_TOL = 1e-12


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Distribution:
    """Normalized probabilities over a labelled, finite outcome set."""

    labels: tuple
    probs: np.ndarray = field(repr=False)

    def __init__(self, labels: Sequence, probs, renormalize: bool = False):
        p = np.array(probs, dtype=float).ravel()
        labels = tuple(str(x) for x in labels)
        if p.size == 0:
            raise ValidationError("distribution needs at least one outcome")
        if len(labels) != p.size:
            raise ValidationError(f"{len(labels)} labels for {p.size} probabilities")
        if len(set(labels)) != len(labels):
            raise ValidationError("outcome labels must be distinct")
        if not np.all(np.isfinite(p)) or np.any(p < 0):
            raise ValidationError("probabilities must be finite and nonnegative")
        total = p.sum()
        if renormalize:
            if total <= 0:
                raise ValidationError("cannot renormalize an all-zero vector")
            p = p / total
        elif abs(total - 1.0) > NORM_TOL:
            raise ValidationError(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "probs", _frozen(p))

    @classmethod
    def uniform(cls, labels: Sequence) -> "Distribution":
        n = len(labels)
        return cls(labels, np.full(n, 1.0 / n))

    def __len__(self) -> int:
        return len(self.labels)

    def prob(self, label) -> float:
        return float(self.probs[self.labels.index(str(label))])

    def as_dict(self) -> dict:
        return {"labels": list(self.labels), "probs": self.probs.tolist()}


@dataclass(frozen=True)
class JointDistribution:
    """Joint probabilities ``p[i, j]`` of X = x_i and Y = y_j."""

    x_labels: tuple
    y_labels: tuple
    probs: np.ndarray = field(repr=False)

    def __init__(self, x_labels: Sequence, y_labels: Sequence, probs, renormalize: bool = False):
        p = np.array(probs, dtype=float)
        x_labels = tuple(str(x) for x in x_labels)
        y_labels = tuple(str(y) for y in y_labels)
        if p.shape != (len(x_labels), len(y_labels)):
            raise ValidationError(
                f"joint table has shape {p.shape}, labels imply {(len(x_labels), len(y_labels))}"
            )
        if p.size == 0:
            raise ValidationError("joint distribution needs at least one outcome")
        if len(set(x_labels)) != len(x_labels) or len(set(y_labels)) != len(y_labels):
            raise ValidationError("outcome labels must be distinct")
        if not np.all(np.isfinite(p)) or np.any(p < 0):
            raise ValidationError("probabilities must be finite and nonnegative")
        total = p.sum()
        if renormalize:
            if total <= 0:
                raise ValidationError("cannot renormalize an all-zero table")
            p = p / total
        elif abs(total - 1.0) > NORM_TOL:
            raise ValidationError(f"joint probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "x_labels", x_labels)
        object.__setattr__(self, "y_labels", y_labels)
        object.__setattr__(self, "probs", _frozen(p))

    @classmethod
    def product(cls, px: Distribution, py: Distribution) -> "JointDistribution":
        return cls(px.labels, py.labels, np.outer(px.probs, py.probs))

    def marginal_x(self) -> Distribution:
        return Distribution(self.x_labels, self.probs.sum(axis=1), renormalize=True)

    def marginal_y(self) -> Distribution:
        """Marginal q_j = sum_i p_ij of the conditioning variable."""
        return Distribution(self.y_labels, self.probs.sum(axis=0), renormalize=True)

    def transpose(self) -> "JointDistribution":
        return JointDistribution(self.y_labels, self.x_labels, self.probs.T)

    def y_index(self, j) -> int:
        if isinstance(j, (int, np.integer)) and not isinstance(j, bool):
            if not 0 <= j < len(self.y_labels):
                raise ValidationError(f"outcome index {j} out of range")
            return int(j)
        try:
            return self.y_labels.index(str(j))
        except ValueError:
            raise ValidationError(f"unknown outcome {j!r}; expected one of {self.y_labels}") from None

    def as_dict(self) -> dict:
        return {
            "x_labels": list(self.x_labels),
            "y_labels": list(self.y_labels),
            "probs": self.probs.tolist(),
        }


@dataclass(frozen=True)
class ThermoSystem:
    """Coarse-grained system in contact with a heat bath (k_B = 1).

    ``num_states`` is the number of phase-space cells the detector resolves;
    ``energies`` lists one energy per occupied cell.
    """

    num_states: int
    energies: tuple
    temperature: float

    def __init__(self, num_states: int, energies: Sequence[float], temperature: float):
        energies = tuple(float(e) for e in np.atleast_1d(energies))
        if int(num_states) != num_states or num_states < 1:
            raise ValidationError("num_states must be a positive integer")
        if not energies:
            raise ValidationError("at least one energy level is required")
        if len(energies) > num_states:
            raise ValidationError("more occupied cells than resolvable states")
        if not all(math.isfinite(e) for e in energies):
            raise ValidationError("energies must be finite")
        if not (temperature > 0 and math.isfinite(temperature)):
            raise ValidationError("temperature must be positive and finite")
        object.__setattr__(self, "num_states", int(num_states))
        object.__setattr__(self, "energies", energies)
        object.__setattr__(self, "temperature", float(temperature))


def shannon_entropy(d: Distribution, base=DEFAULT_BASE) -> float:
    """H = -sum_i p_i log p_i."""
    return entropy_of(d.probs, base)


def max_entropy(n: int, base=DEFAULT_BASE) -> float:
    """A priori maximal entropy log n of an n-state detector."""
    if int(n) != n or n < 1:
        raise ValidationError(f"number of states must be a positive integer, got {n!r}")
    return math.log(n) / math.log(resolve_base(base))


def joint_entropy(jd: JointDistribution, base=DEFAULT_BASE) -> float:
    return entropy_of(jd.probs, base)


def measurement_update(jd: JointDistribution, j) -> Distribution:
    """Posterior distribution of X after observing Y = y_j."""
    col = jd.probs[:, jd.y_index(j)]
    q = col.sum()
    if q <= 0:
        raise ConditioningError(f"outcome {j!r} has zero probability")
    return Distribution(jd.x_labels, col / q, renormalize=True)


def conditional_entropy_given(j, jd: JointDistribution, base=DEFAULT_BASE) -> float:
    """Remaining entropy H(X | Y = y_j)."""
    return shannon_entropy(measurement_update(jd, j), base)


def average_conditional_entropy(jd: JointDistribution, base=DEFAULT_BASE) -> float:
    """H(X|Y) = sum_j q_j H(X | Y = y_j); outcomes with q_j = 0 contribute nothing."""
    q = jd.probs.sum(axis=0)
    total = 0.0
    for j, qj in enumerate(q):
        if qj > 0:
            total += qj * entropy_of(jd.probs[:, j] / qj, base)
    return total


def mutual_information(jd: JointDistribution, base=DEFAULT_BASE) -> float:
    """Shared entropy H(X:Y) = H(X) + H(Y) - H(XY), clipped at 0 for round-off."""
    hx = entropy_of(jd.probs.sum(axis=1), base)
    hy = entropy_of(jd.probs.sum(axis=0), base)
    return max(0.0, hx + hy - joint_entropy(jd, base))


def information_gain(h_max: float, h_actual: float) -> float:
    """Knowledge I = H_max - H_actual."""
    if h_actual < 0 or h_max < 0:
        raise ValidationError("entropies must be nonnegative")
    if h_actual > h_max:
        raise ValidationError(f"actual entropy {h_actual} exceeds maximal entropy {h_max}")
    return h_max - h_actual


def canonical_distribution(sys: ThermoSystem) -> Distribution:
    """Boltzmann weights exp(-E_i/T)/Z, shifted by the ground energy to avoid overflow."""
    e = np.asarray(sys.energies)
    w = np.exp(-(e - e.min()) / sys.temperature)
    labels = [f"E{i}" for i in range(e.size)]
    return Distribution(labels, w / w.sum(), renormalize=True)


def log_partition(sys: ThermoSystem) -> float:
    """log Z in nats, computed stably."""
    e = np.asarray(sys.energies)
    e0 = e.min()
    return -e0 / sys.temperature + math.log(float(np.sum(np.exp(-(e - e0) / sys.temperature))))


def thermo_information(sys: ThermoSystem) -> float:
    """Knowledge, in nats, that thermal equilibrium gives about the cell occupied.

    I = log(num_states) - log Z - <E>/T.
    """
    if sys.num_states < len(sys.energies):
        raise ValidationError(
            f"num_states={sys.num_states} is smaller than the {len(sys.energies)} energy levels"
        )
    p = canonical_distribution(sys).probs
    mean_e = float(np.dot(p, sys.energies))
    return math.log(sys.num_states) - log_partition(sys) - mean_e / sys.temperature


PERES_POCKET_PROB = 0.9
PERES_PLACES = 100


def peres_key_joint(p_pocket: float = PERES_POCKET_PROB, places: int = PERES_PLACES) -> JointDistribution:
    """Key-location example: X = (pocket, place_1..place_N) against P = pocket yes/no.

    The key is in the pocket with probability ``p_pocket``; otherwise it is in
    one of ``places`` other spots with equal probability.
    """
    if not 0 <= p_pocket <= 1:
        raise ValidationError("p_pocket must lie in [0, 1]")
    x_labels = ["pocket"] + [f"place:{i}" for i in range(1, places + 1)]
    table = np.zeros((places + 1, 2))
    table[0, 0] = p_pocket
    table[1:, 1] = (1.0 - p_pocket) / places
    return JointDistribution(x_labels, ["pocket:yes", "pocket:no"], table, renormalize=True)


def perfect_measurement_joint(px: Distribution) -> JointDistribution:
    """Joint table of a detector that copies X exactly (p_{i|j} = delta_ij)."""
    return JointDistribution(px.labels, [f"y:{x}" for x in px.labels], np.diag(px.probs))
