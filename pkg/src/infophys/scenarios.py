"""Named, parameterized experiments runnable from the command line.

Each scenario maps one grid point (a dict of parameters) to one or more
output rows.  ``run_scenario`` expands the grid, runs the points (optionally
on a process pool) and returns ``ExperimentRecord`` objects in grid order.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import blackhole as bh
from . import classical_info as ci
from . import equilibration as eq
from . import quantum_core as qc
from .errors import InfoPhysError, ValidationError
from .relativistic import gas, kinematics, spin
from .units import base_label, entropy_of, resolve_base

SCHEMA_VERSION = 1


@dataclass
class ScenarioConfig:
    scenario: str
    grid: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    seed: int = 0
    base: object = None
    out: str | None = None
    format: str = "csv"
    tolerances: dict = field(default_factory=dict)
    workers: int = 1

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ValidationError(f"unknown scenario {self.scenario!r}; choose from {', '.join(SCENARIOS)}")
        if not isinstance(self.grid, dict):
            raise ValidationError("grid must be a mapping of parameter -> list of values")
        for k, v in self.grid.items():
            if not isinstance(v, (list, tuple)) or len(v) == 0:
                raise ValidationError(f"grid entry {k!r} must be a nonempty list")
        if self.base is not None:
            resolve_base(self.base)
        if self.workers < 1:
            raise ValidationError("workers must be >= 1")

    @classmethod
    def from_dict(cls, obj: dict, **overrides) -> "ScenarioConfig":
        schema = obj.get("schema", SCHEMA_VERSION)
        if schema != SCHEMA_VERSION:
            raise ValidationError(f"unsupported config schema {schema!r}; expected {SCHEMA_VERSION}")
        known = {"scenario", "grid", "params", "seed", "base", "out", "format", "tolerances", "workers"}
        unknown = set(obj) - known - {"schema"}
        if unknown:
            raise ValidationError(f"unknown config keys: {sorted(unknown)}")
        data = {k: obj[k] for k in known if k in obj}
        data.update({k: v for k, v in overrides.items() if v is not None})
        if "scenario" not in data:
            raise ValidationError("config names no scenario")
        return cls(**data)

    def points(self) -> list[dict]:
        spec = SCENARIOS[self.scenario]
        known = set(spec.defaults) | set(spec.default_grid)
        unknown = (set(self.params) | set(self.grid)) - known
        if unknown:
            raise ValidationError(
                f"unknown parameter(s) {sorted(unknown)} for {self.scenario}; known: {sorted(known)}"
            )
        # default axes stay unless fixed by params or replaced by the user grid
        grid = {k: v for k, v in spec.default_grid.items() if k not in self.params}
        grid.update(self.grid)
        keys = list(grid)
        pts = []
        for combo in itertools.product(*(grid[k] for k in keys)):
            pt = dict(spec.defaults)
            pt.update(self.params)
            pt.update(zip(keys, combo))
            pts.append(pt)
        if not pts:
            raise ValidationError("parameter grid is empty")
        return pts


@dataclass
class ExperimentRecord:
    scenario: str
    index: int
    params: dict
    outputs: dict
    seed: int
    wall_time_ms: float
    stderr: float | None = None

    def flat(self, timing: bool = False) -> dict:
        row = {"scenario": self.scenario, "point": self.index, "seed": self.seed}
        row.update({k: v for k, v in self.params.items() if _scalar(v)})
        row.update(self.outputs)
        if self.stderr is not None:
            row["stderr"] = self.stderr
        if timing:
            row["wall_time_ms"] = self.wall_time_ms
        return row


def _scalar(v) -> bool:
    return isinstance(v, (int, float, str, bool, np.generic)) or v is None


@dataclass(frozen=True)
class RunContext:
    """What a scenario function sees besides its parameters."""

    seed: int
    base_seed: int
    base: object
    tol: dict


@dataclass(frozen=True)
class Scenario:
    name: str
    func: Callable
    defaults: dict
    default_grid: dict
    default_base: object = 2
    description: str = ""


SCENARIOS: dict[str, Scenario] = {}


def scenario(name, defaults=None, grid=None, base=2):
    def deco(fn):
        SCENARIOS[name] = Scenario(name, fn, defaults or {}, grid or {}, base, (fn.__doc__ or "").strip())
        return fn

    return deco


@scenario("peres", defaults={"p_pocket": ci.PERES_POCKET_PROB, "places": ci.PERES_PLACES}, base="e")
def _peres(p, ctx):
    """Key-in-pocket measurement example."""
    base = ctx.base
    jd = ci.peres_key_joint(p["p_pocket"], int(p["places"]))
    h_x = ci.shannon_entropy(jd.marginal_x(), base)
    h_p = ci.shannon_entropy(jd.marginal_y(), base)
    # H(O|P) by the chain rule; the post-measurement average by Bayes updates
    h_o_p = ci.joint_entropy(jd, base) - h_p
    q = jd.marginal_y()
    post = sum(q.prob(y) * ci.conditional_entropy_given(y, jd, base) for y in jd.y_labels if q.prob(y) > 0)
    return [
        {
            "H_P": h_p,
            "H_O_given_P": h_o_p,
            "H_X": h_x,
            "H_P_plus_H_O_given_P": h_p + h_o_p,
            "H_X_given_yes": ci.conditional_entropy_given("pocket:yes", jd, base),
            "H_X_given_no": ci.conditional_entropy_given("pocket:no", jd, base),
            "post_measurement_avg": post,
            "information_gain": ci.information_gain(h_x, h_o_p),
            "I_X_P": ci.mutual_information(jd, base),
        }
    ]


@scenario("equilibrate", defaults={"n": 3, "small": 2, "total": 8, "steps": 100})
def _equilibrate(p, ctx):
    """Perfume-bottle expansion under seeded reversible mixing; one row per step."""
    return eq.simulate(int(p["n"]), int(p["small"]), int(p["total"]), ctx.seed, int(p["steps"]), ctx.base)


@scenario("bell-entropies", grid={"kind": ["psi-", "psi+", "phi+", "phi-"]})
def _bell(p, ctx):
    """Entropies and concurrence of a Bell pair."""
    base = ctx.base
    psi = qc.bell_state(p["kind"])
    rho = qc.density_from_state(psi)
    return [
        {
            "S_A": qc.von_neumann_entropy(qc.partial_trace(rho, [0]), base),
            "S_B": qc.von_neumann_entropy(qc.partial_trace(rho, [1]), base),
            "S_AB": qc.von_neumann_entropy(rho, base),
            "S_A_given_B": qc.conditional_q_entropy(rho, base),
            "S_A_B": qc.mutual_q_entropy(rho, base),
            "concurrence": qc.concurrence(rho),
        }
    ]


@scenario("pointer", defaults={"system_dim": 2, "pointer_dim": 2}, grid={"superposed": [1, 2]})
def _pointer(p, ctx):
    """Von Neumann measurement of an equal superposition of ``superposed`` basis states."""
    base = ctx.base
    n, d, k = int(p["system_dim"]), int(p["pointer_dim"]), int(p["superposed"])
    if not 1 <= k <= n:
        raise ValidationError("superposed must lie in 1..system_dim")
    amps = np.zeros(n)
    amps[:k] = 1 / math.sqrt(k)
    out = qc.pointer_measurement(qc.StateVector(amps), d)
    rho = qc.density_from_state(out)
    classical = np.zeros(d)
    classical[:k] = 1 / math.sqrt(k)
    product = qc.StateVector(np.kron(amps, classical), (n, d))
    return [
        {
            "S_pointer": qc.von_neumann_entropy(qc.partial_trace(out, [1]), base),
            "S_Q_given_A": qc.conditional_q_entropy(rho, base),
            "S_Q_A": qc.mutual_q_entropy(rho, base),
            "fidelity_vs_classical_copy": qc.fidelity(out, product),
            "norm": float(np.linalg.norm(out.amplitudes)),
        }
    ]


@scenario(
    "capacity",
    defaults={"bandwidth": 1.0, "snr": 3.0},
    grid={"beta": [0.0, 0.2, 0.4, 0.6, 0.8, 0.9, 0.99, 0.999]},
)
def _capacity(p, ctx):
    """Doppler-degraded Gaussian channel capacity."""
    alpha = kinematics.doppler_factor(p["beta"])
    return [{"alpha": alpha, "capacity": kinematics.channel_capacity(p["bandwidth"], p["snr"], alpha)}]


@scenario(
    "temperature",
    defaults={"T": 1.0, "beta": 0.5, "acceleration": 2 * math.pi},
    grid={"theta": [round(k * math.pi / 8, 12) for k in range(9)]},
)
def _temperature(p, ctx):
    """Direction-dependent blackbody temperature, plus the Unruh temperature."""
    return [
        {
            "T_prime": kinematics.boosted_temperature(p["T"], p["beta"], p["theta"]),
            "T_unruh_natural": kinematics.unruh_temperature(p["acceleration"]),
            "T_unruh_SI_K": kinematics.unruh_temperature(p["acceleration"], "SI"),
        }
    ]


@scenario(
    "gas-mi",
    defaults={"kind": "uniform-disk", "samples": 100_000, "v_max": 0.9, "method": "ksg", "common_sample": True},
    grid={"beta": [0.0, 0.3, 0.6, 0.9]},
    base="e",
)
def _gas_mi(p, ctx):
    """Velocity-component mutual information of a boosted 2-D gas (nats)."""
    # common random numbers across the sweep unless asked otherwise
    seed = ctx.base_seed if p["common_sample"] else ctx.seed
    spec = gas.GasSpec(p["kind"], float(p["v_max"]), int(p["samples"]), seed)
    est = gas.gas_mutual_info(spec, kinematics.Boost.from_beta(p["beta"], (1.0, 0.0, 0.0)), p["method"])
    scale = math.log(resolve_base(ctx.base))
    return [
        {
            "mi": est.value / scale,
            "mi_stderr": est.stderr / scale,
            "converged": est.converged,
            "rest_disk_value": gas.REST_DISK_MI / scale,
        }
    ]


@scenario(
    "boost-single",
    defaults={"sigma_over_m": 1.0, "grid_res": 15},
    grid={"xi": [0.0, 0.5, 1.0, 2.0, 4.0]},
)
def _boost_single(p, ctx):
    """Spin entropy of a single boosted wave packet (spin up along x)."""
    grid = spin.MomentumGrid(1.0, float(p["sigma_over_m"]), int(p["grid_res"]))
    spin.check_grid_resolution(grid)
    s0 = spin.SpinMomentumState.product([1, 1], grid)
    s1 = spin.boost_state(s0, kinematics.Boost(p["xi"], (0.0, 0.0, 1.0)))
    sv = np.linalg.svd(s1.amplitudes, compute_uv=False)
    return [
        {
            "S_spin": spin.spin_entropy(s1, ctx.base),
            "S_momentum": entropy_of(sv**2, ctx.base),
            "norm": float(np.linalg.norm(s1.amplitudes)),
        }
    ]


@scenario(
    "boost-pair",
    defaults={"grid_res": 15},
    grid={"sigma_over_m": [1.0, 4.0], "xi": [k * 0.5 for k in range(9)]},
)
def _boost_pair(p, ctx):
    """Spin concurrence of a boosted singlet pair with product Gaussian momenta."""
    grid = spin.MomentumGrid(1.0, float(p["sigma_over_m"]), int(p["grid_res"]))
    spin.check_grid_resolution(grid)
    boost = kinematics.Boost(p["xi"], (0.0, 0.0, 1.0))
    rho = spin.boosted_pair_spin_density(qc.bell_state("psi-").amplitudes, grid, boost)
    return [{"concurrence": qc.concurrence(rho), "S_spins": qc.von_neumann_entropy(rho, ctx.base)}]


@scenario("fig2", grid={"p": [0.5, 1.0, 2.0], "xi": [0.0, 0.5, 1.0, 2.0, 4.0, 8.0]})
def _fig2(p, ctx):
    """Crossed Phi-/Phi+ pair: numeric concurrence against the closed form."""
    a = spin.fig2_concurrence_analytic(p["p"], p["xi"])
    n = spin.fig2_concurrence_numeric(p["p"], p["xi"])
    return [{"analytic": a, "numeric": n, "abs_diff": abs(a - n), "agree": abs(a - n) <= ctx.tol.get("fig2", 1e-3)}]


@scenario(
    "bh-accrete",
    defaults={"omega": 0.1, "mass": 1.0, "equal": True, "alpha": 1.0, "keep_elastic": False},
    grid={"n_modes": [0, 1, 2, 3]},
)
def _bh_accrete(p, ctx):
    """Accrete modes onto a pure black hole and report the M/R entropy ledger."""
    n = int(p["n_modes"])
    if p["equal"]:
        modes = bh.equal_amplitude_modes(n, p["omega"])
    else:
        modes = [bh.ModeSpec(f"k{i + 1}", p["omega"], p["alpha"]) for i in range(n)]
    s = bh.accrete_modes(bh.TripartiteState.vacuum(p["mass"]), modes, bool(p["keep_elastic"]))
    ent = bh.tripartite_entropies(s, ctx.base)
    row = dict(ent)
    row["S_QMR"] = bh.global_entropy(s, ctx.base) if s.amplitudes.size <= 4096 else float("nan")
    row["branches"] = int(np.count_nonzero(bh.branch_probabilities(s) > 1e-15))
    return [row]


DEFAULT_TRAJECTORY = [
    {"type": "absorb", "omega": 0.05},
    {"type": "absorb", "omega": 0.05},
    {"type": "emit", "omega": 0.02},
    {"type": "absorb", "omega": 0.05},
    {"type": "emit", "omega": 0.03},
]


@scenario("bh-ledger", defaults={"M0": 1.0, "events": DEFAULT_TRAJECTORY, "modes": []})
def _bh_ledger(p, ctx):
    """Second-law ledger along an absorb/emit trajectory; one row per event."""
    modes = [bh.ModeSpec(m["label"], m["omega"], complex(m.get("alpha", 1.0))) for m in p["modes"]]
    rows = bh.entropy_ledger(p["events"], p["M0"], modes, ctx.base)
    return [{k: r[k] for k in bh.LEDGER_COLUMNS} for r in rows]


@scenario("replica-check", defaults={"dim": 4, "count": 50}, grid={"dim": [2, 4, 8]})
def _replica(p, ctx):
    """Replica-trick entropy against the spectral von Neumann entropy on random states."""
    rng = np.random.default_rng(ctx.seed)
    base = ctx.base
    worst = 0.0
    for _ in range(int(p["count"])):
        rho = qc.DensityMatrix(qc.random_density_matrix(int(p["dim"]), rng))
        worst = max(worst, abs(qc.replica_entropy(rho, base) - qc.von_neumann_entropy(rho, base)))
    return [{"max_abs_diff": worst, "agree": worst <= ctx.tol.get("replica", 1e-9)}]


def point_seed(seed: int, index: int) -> int:
    """Deterministic per-point seed, independent of worker count."""
    return int(np.random.SeedSequence([int(seed), int(index)]).generate_state(1)[0])


def _run_point(args):
    name, index, params, seed, base, tol, base_seed = args
    spec = SCENARIOS[name]
    t0 = time.perf_counter()
    try:
        rows = spec.func(params, RunContext(seed, base_seed, base, tol))
    except (InfoPhysError, ValueError, ArithmeticError) as exc:
        return index, None, f"{type(exc).__name__}: {exc}", 0.0
    except KeyError as exc:
        return index, None, f"missing parameter {exc}", 0.0
    return index, rows, None, (time.perf_counter() - t0) * 1e3


class ScenarioError(InfoPhysError):
    """One or more grid points failed; ``records`` holds the successful ones."""

    def __init__(self, failures, records):
        self.failures = failures
        self.records = records
        lines = [f"point {i} ({params}): {msg}" for i, params, msg in failures]
        super().__init__("scenario failed at %d point(s):\n  " % len(failures) + "\n  ".join(lines))


def run_scenario(cfg: ScenarioConfig) -> list[ExperimentRecord]:
    spec = SCENARIOS[cfg.scenario]
    base = cfg.base if cfg.base is not None else spec.default_base
    points = cfg.points()
    jobs = [
        (cfg.scenario, i, pt, point_seed(cfg.seed, i), base, dict(cfg.tolerances), cfg.seed)
        for i, pt in enumerate(points)
    ]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_run_point, jobs))
    else:
        results = [_run_point(j) for j in jobs]
    results.sort(key=lambda r: r[0])
    records, failures = [], []
    for (index, rows, err, ms), job in zip(results, jobs):
        if err is not None:
            failures.append((index, job[2], err))
            continue
        for row in rows:
            stderr = row.pop("stderr", None)
            records.append(ExperimentRecord(cfg.scenario, index, job[2], row, job[3], ms, stderr))
    if failures:
        raise ScenarioError(failures, records)
    return records


def records_as_rows(records: list[ExperimentRecord], base_used=None, timing: bool = False) -> list[dict]:
    rows = [r.flat(timing) for r in records]
    if base_used is not None:
        for row in rows:
            row["base"] = base_label(base_used)
    return rows
