"""Black-hole thermodynamics and the stimulated-emission information channel.

Natural units hbar = c = G = k_B = 1.  The tripartite state lives on three
registers per accreted mode k:

* Q_k, the black-hole ladder {psi, psi_{+k}, psi_{-k}} (dimension 3),
* M_k, the incoming mode {absent, k} (dimension 2),
* R_k, the stimulated radiation {vacuum, k} (dimension 2).

Subsystem order is Q_1..Q_n, M_1..M_n, R_1..R_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, TrajectoryError, ValidationError
from .quantum_core import StateVector, density_from_state, partial_trace, von_neumann_entropy
from .units import DEFAULT_BASE

MAX_MODES = 6

Q_GROUND, Q_ABSORBED, Q_EMITTED = 0, 1, 2


def _check_mass(m: float) -> float:
    if not (m > 0 and math.isfinite(m)):
        raise ValidationError(f"black-hole mass must be positive, got {m!r}")
    return float(m)


def bh_entropy(mass: float) -> float:
    """Bekenstein-Hawking entropy 4 pi M^2."""
    return 4 * math.pi * _check_mass(mass) ** 2


def hawking_temperature(mass: float) -> float:
    """T_H = 1 / (8 pi M)."""
    return 1.0 / (8 * math.pi * _check_mass(mass))


@dataclass(frozen=True)
class ModeSpec:
    """An incoming field mode.

    ``beta`` may be given explicitly; otherwise it follows from detailed
    balance at the black hole's temperature when the mode is accreted.
    """

    label: str
    omega: float
    alpha: complex = 1.0
    beta: complex | None = None

    def __post_init__(self):
        if not self.omega > 0:
            raise ValidationError(f"mode frequency must be positive, got {self.omega!r}")
        object.__setattr__(self, "alpha", complex(self.alpha))
        if self.beta is not None:
            object.__setattr__(self, "beta", complex(self.beta))
            if abs(self.beta) > abs(self.alpha) + 1e-15:
                raise ValidationError("|beta| may not exceed |alpha|")


def detailed_balance_beta(mode: ModeSpec, t_hawking: float) -> complex:
    """Stimulated-emission amplitude with |beta|^2 / |alpha|^2 = exp(-omega / T_H).

    The phase of alpha is kept.
    """
    if not t_hawking > 0:
        raise ValidationError("Hawking temperature must be positive")
    return mode.alpha * math.exp(-mode.omega / (2 * t_hawking))


@dataclass(frozen=True)
class TripartiteState:
    """Pure state of black hole (Q), incoming modes (M) and stimulated radiation (R)."""

    amplitudes: np.ndarray = field(repr=False)
    labels: tuple = ()
    mass: float = 1.0

    def __post_init__(self):
        n = len(self.labels)
        a = np.array(self.amplitudes, dtype=complex).reshape((3,) * n + (2,) * (2 * n))
        if abs(np.linalg.norm(a) - 1.0) > 1e-10:
            raise ValidationError("tripartite state is not normalized")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)
        object.__setattr__(self, "labels", tuple(self.labels))
        _check_mass(self.mass)

    @classmethod
    def vacuum(cls, mass: float = 1.0) -> "TripartiteState":
        """Pure black hole |psi> with no accreted modes."""
        return cls(np.ones(1, dtype=complex), (), mass)

    @property
    def num_modes(self) -> int:
        return len(self.labels)

    @property
    def dims(self) -> tuple:
        n = self.num_modes
        return (3,) * n + (2,) * (2 * n)

    def as_state_vector(self) -> StateVector:
        return StateVector(self.amplitudes.ravel(), self.dims or (1,))

    def q_axes(self) -> list[int]:
        return list(range(self.num_modes))

    def m_axes(self) -> list[int]:
        return list(range(self.num_modes, 2 * self.num_modes))

    def r_axes(self) -> list[int]:
        return list(range(2 * self.num_modes, 3 * self.num_modes))


def accrete_mode(
    s: TripartiteState,
    mode: ModeSpec,
    keep_elastic: bool = False,
    t_hawking: float | None = None,
) -> TripartiteState:
    """Scatter one incoming mode off the black hole and renormalize.

    |k>_M |psi>_Q |0>_R -> [|k>|psi>|0>] + alpha |0>|psi_k>|0> + beta |k>|psi_-k>|k>,
    the bracketed elastic term being kept only when ``keep_elastic``.
    """
    n = s.num_modes
    if n >= MAX_MODES:
        raise CapacityError(f"register holds at most {MAX_MODES} modes")
    if mode.label in s.labels:
        raise ValidationError(f"mode {mode.label!r} already accreted")
    beta = mode.beta
    if beta is None:
        beta = detailed_balance_beta(mode, hawking_temperature(s.mass) if t_hawking is None else t_hawking)
    branch = np.zeros((3, 2, 2), dtype=complex)  # (q, m, r) of the new mode
    if keep_elastic:
        branch[Q_GROUND, 1, 0] = 1.0
    branch[Q_ABSORBED, 0, 0] = mode.alpha
    branch[Q_EMITTED, 1, 1] = beta
    norm = np.linalg.norm(branch)
    if norm == 0:
        raise ValidationError("mode has no amplitude once the elastic term is dropped")
    branch /= norm
    old = s.amplitudes.reshape((3,) * n + (2,) * n + (2,) * n)
    new = np.multiply.outer(old, branch)  # axes: Q.. M.. R.. q m r
    q_new, m_new, r_new = 3 * n, 3 * n + 1, 3 * n + 2
    order = list(range(n)) + [q_new] + list(range(n, 2 * n)) + [m_new] + list(range(2 * n, 3 * n)) + [r_new]
    new = np.transpose(new, order)
    return TripartiteState(new, s.labels + (mode.label,), s.mass)


def accrete_modes(s: TripartiteState, modes, keep_elastic: bool = False) -> TripartiteState:
    for mode in modes:
        s = accrete_mode(s, mode, keep_elastic)
    return s


def tripartite_entropies(s: TripartiteState, base=DEFAULT_BASE) -> dict:
    """S(Q), S(M), S(R), S(MR) and I = S(M:R)."""
    if s.num_modes == 0:
        return {"S_Q": 0.0, "S_M": 0.0, "S_R": 0.0, "S_MR": 0.0, "I": 0.0}
    psi = s.as_state_vector()
    s_m = von_neumann_entropy(partial_trace(psi, s.m_axes()), base)
    s_r = von_neumann_entropy(partial_trace(psi, s.r_axes()), base)
    s_mr = von_neumann_entropy(partial_trace(psi, s.m_axes() + s.r_axes()), base)
    s_q = von_neumann_entropy(partial_trace(psi, s.q_axes()), base)
    return {"S_Q": s_q, "S_M": s_m, "S_R": s_r, "S_MR": s_mr, "I": max(0.0, s_m + s_r - s_mr)}


def joint_entropy_constant(ent: dict, tol: float = 1e-9) -> bool:
    """Purity check: for a pure QMR state the black hole and MR carry equal entropy."""
    return abs(ent["S_Q"] - ent["S_MR"]) <= tol


def mr_information(s: TripartiteState, base=DEFAULT_BASE) -> float:
    """Information I = S(M:R) shared by incoming modes and stimulated radiation."""
    return tripartite_entropies(s, base)["I"]


def global_entropy(s: TripartiteState, base=DEFAULT_BASE) -> float:
    """Entropy of the full QMR projector; zero for every reachable state."""
    return von_neumann_entropy(density_from_state(s.as_state_vector()), base)


def branch_probabilities(s: TripartiteState) -> np.ndarray:
    """Probabilities p_i of the orthogonal black-hole branches (Schmidt weights)."""
    n = s.num_modes
    p = np.abs(s.amplitudes) ** 2
    return p.sum(axis=tuple(range(n, 3 * n))).ravel() if n else np.ones(1)


LEDGER_COLUMNS = ("event", "M", "S_BH", "T_H", "dS_rad", "dS_tot", "S_M", "S_R", "S_MR", "I", "joint_constant")


def entropy_ledger(
    events,
    m0: float,
    modes=(),
    base=DEFAULT_BASE,
    keep_elastic: bool = False,
) -> list[dict]:
    """Second-law bookkeeping along a sequence of absorb/emit events.

    ``events`` is a list of ``{"type": "absorb"|"emit", "omega": w}`` dicts
    (an absorb event may name a ``"mode"`` label from ``modes``).  Emitting w
    at mass M carries thermal entropy w / T_H(M) = 8 pi M w; absorbing a
    mode in a definite state carries none.  Absorbed modes are also accreted
    onto the QMR state, whose M/R entropies are reported per row together
    with the purity check S(Q) = S(MR).
    Energies (and so masses and entropies) are in the same natural units.
    """
    mass = _check_mass(m0)
    by_label = {m.label: m for m in modes}
    state = TripartiteState.vacuum(mass)
    ent = tripartite_entropies(state, base)
    rows = [
        {
            "event": "init",
            "M": mass,
            "S_BH": bh_entropy(mass),
            "T_H": hawking_temperature(mass),
            "dS_rad": 0.0,
            "dS_tot": 0.0,
            **{k: ent[k] for k in ("S_M", "S_R", "S_MR", "I")},
            "joint_constant": True,
        }
    ]
    for i, ev in enumerate(events):
        kind = ev.get("type")
        if kind not in ("absorb", "emit"):
            raise ValidationError(f"event {i}: type must be 'absorb' or 'emit', got {kind!r}")
        label = ev.get("mode")
        mode = by_label.get(label) if label is not None else None
        if label is not None and mode is None:
            raise ValidationError(f"event {i}: unknown mode {label!r}")
        omega = float(ev.get("omega", mode.omega if mode else 0.0))
        if not omega > 0:
            raise ValidationError(f"event {i}: omega must be positive")
        new_mass = mass + omega if kind == "absorb" else mass - omega
        if new_mass <= 0:
            raise TrajectoryError(f"event {i}: mass underflow ({mass} - {omega} <= 0)")
        if kind == "emit":
            # expanded form avoids cancellation between S_BH and the radiation
            _, ds_rad, ds_tot = emission_entropy_change(mass, omega)
        else:
            ds_rad = 0.0
            ds_tot = 4 * math.pi * (new_mass * new_mass - mass * mass)
            if mode is None:
                mode = ModeSpec(label or f"k{i}", omega, ev.get("alpha", 1.0))
            state = accrete_mode(state, mode, keep_elastic, t_hawking=hawking_temperature(mass))
        if ds_tot < -1e-12:
            raise AssertionError(f"event {i}: total entropy decreased by {-ds_tot}")
        mass = new_mass
        state = TripartiteState(state.amplitudes, state.labels, mass)
        ent = tripartite_entropies(state, base)
        rows.append(
            {
                "event": f"{kind}:{omega:g}",
                "M": mass,
                "S_BH": bh_entropy(mass),
                "T_H": hawking_temperature(mass),
                "dS_rad": ds_rad,
                "dS_tot": ds_tot,
                **{k: ent[k] for k in ("S_M", "S_R", "S_MR", "I")},
                "joint_constant": joint_entropy_constant(ent),
            }
        )
    return rows


def equal_amplitude_modes(n: int, omega: float = 0.1) -> list[ModeSpec]:
    """``n`` modes with |alpha| = |beta|, giving uniform branch weights."""
    a = 1 / math.sqrt(2)
    return [ModeSpec(f"k{i + 1}", omega, a, a) for i in range(n)]


def emission_entropy_change(mass: float, omega: float) -> tuple[float, float, float]:
    """(dS_BH, dS_rad, dS_tot) for emitting energy omega; dS_tot = 4 pi omega^2."""
    _check_mass(mass)
    ds_bh = -8 * math.pi * mass * omega + 4 * math.pi * omega * omega
    ds_rad = 8 * math.pi * mass * omega
    return ds_bh, ds_rad, 4 * math.pi * omega * omega


