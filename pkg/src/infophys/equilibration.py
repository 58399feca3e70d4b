"""Exact-ensemble perfume-bottle equilibration.

A gas of ``n`` labelled particles lives on ``total`` cells; initially every
particle sits independently and uniformly in the first ``small`` cells.  The
reversible dynamics is a seeded bijection of the configuration space, so the
probability multiset, and hence the joint entropy, never changes while the
per-particle entropies and the correlation entropy grow.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, ValidationError
from .units import DEFAULT_BASE, entropy_of

MAX_PARTICLES = 6
MAX_CELLS = 16
MAX_CONFIGS = 2**24


def _check_size(n: int, total: int) -> int:
    if not 1 <= n <= MAX_PARTICLES:
        raise CapacityError(f"num_particles must be in 1..{MAX_PARTICLES}, got {n}")
    if not 1 <= total <= MAX_CELLS:
        raise CapacityError(f"num_cells_total must be in 1..{MAX_CELLS}, got {total}")
    size = total**n
    if size > MAX_CONFIGS:
        raise CapacityError(f"{total}^{n} = {size} configurations exceeds the cap of {MAX_CONFIGS}")
    return size


@dataclass(frozen=True)
class GasEnsemble:
    """Probability over configurations (cell index of each particle).

    ``joint_probs`` has shape ``(total,) * n``; axis ``i`` is particle ``i``.
    """

    num_particles: int
    num_cells_small: int
    num_cells_total: int
    joint_probs: np.ndarray = field(repr=False)
    seed: int = 0

    def __post_init__(self):
        _check_size(self.num_particles, self.num_cells_total)
        p = np.asarray(self.joint_probs, dtype=float)
        expected = (self.num_cells_total,) * self.num_particles
        if p.shape != expected:
            raise ValidationError(f"joint_probs has shape {p.shape}, expected {expected}")
        if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-12:
            raise ValidationError("joint_probs must be nonnegative and sum to 1")
        p = p.copy()
        p.setflags(write=False)
        object.__setattr__(self, "joint_probs", p)

    @property
    def num_configs(self) -> int:
        return self.joint_probs.size

    def marginal(self, i: int) -> np.ndarray:
        axes = tuple(k for k in range(self.num_particles) if k != i)
        return self.joint_probs.sum(axis=axes) if axes else self.joint_probs


@dataclass(frozen=True)
class MixingMap:
    """Seeded bijection on flattened configuration indices."""

    seed: int
    permutation: np.ndarray = field(repr=False)

    def __post_init__(self):
        perm = np.asarray(self.permutation, dtype=np.int64)
        n = perm.size
        if perm.ndim != 1 or not np.array_equal(np.sort(perm), np.arange(n)):
            raise ValidationError("mixing map is not a bijection on 0..n-1")
        perm.setflags(write=False)
        object.__setattr__(self, "permutation", perm)

    @classmethod
    def random(cls, num_configs: int, seed: int) -> "MixingMap":
        rng = np.random.default_rng(seed)
        return cls(seed, rng.permutation(num_configs))

    @classmethod
    def identity(cls, num_configs: int) -> "MixingMap":
        return cls(-1, np.arange(num_configs))

    @property
    def size(self) -> int:
        return self.permutation.size


def init_confined(n: int, small: int, total: int, seed: int = 0) -> GasEnsemble:
    """Uniform product distribution with every particle in cells ``0..small-1``."""
    if not 1 <= small <= total:
        raise ValidationError(f"need 1 <= small <= total, got small={small}, total={total}")
    _check_size(n, total)
    one = np.zeros(total)
    one[:small] = 1.0 / small
    joint = one
    for _ in range(n - 1):
        joint = np.multiply.outer(joint, one)
    return GasEnsemble(n, small, total, joint.reshape((total,) * n), seed)


def mix_step(e: GasEnsemble, m: MixingMap) -> GasEnsemble:
    """Push the ensemble forward through the bijection: p'[perm[c]] = p[c]."""
    if m.size != e.num_configs:
        raise ValidationError(f"map acts on {m.size} configurations, ensemble has {e.num_configs}")
    flat = e.joint_probs.ravel()
    out = np.empty_like(flat)
    out[m.permutation] = flat
    return GasEnsemble(
        e.num_particles, e.num_cells_small, e.num_cells_total, out.reshape(e.joint_probs.shape), e.seed
    )


def step_maps(e: GasEnsemble, steps: int, seed: int | None = None):
    """Yield one independently seeded map per step."""
    ss = np.random.SeedSequence(e.seed if seed is None else seed)
    for child in ss.spawn(steps):
        yield MixingMap(int(child.generate_state(1)[0]), np.random.default_rng(child).permutation(e.num_configs))


def joint_entropy(e: GasEnsemble, base=DEFAULT_BASE) -> float:
    # sorted summation makes the value a function of the probability multiset only
    return entropy_of(np.sort(e.joint_probs.ravel()), base)


def entropy_report(e: GasEnsemble, base=DEFAULT_BASE) -> dict:
    """Joint entropy, sum of per-particle entropies and their difference H_corr."""
    h_joint = joint_entropy(e, base)
    h_sum = sum(entropy_of(e.marginal(i), base) for i in range(e.num_particles))
    return {"h_joint": h_joint, "h_marginal_sum": h_sum, "h_corr": h_sum - h_joint}


def simulate(n: int, small: int, total: int, seed: int, steps: int, base=DEFAULT_BASE) -> list[dict]:
    """Rows ``step, h_joint, h_marginal_sum, h_corr`` for steps 0..steps."""
    e = init_confined(n, small, total, seed)
    rows = [{"step": 0, **entropy_report(e, base)}]
    for k, m in enumerate(step_maps(e, steps), start=1):
        e = mix_step(e, m)
        rows.append({"step": k, **entropy_report(e, base)})
    return rows
