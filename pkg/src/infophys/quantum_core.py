"""Finite-dimensional quantum information primitives.

States carry a ``dims`` tuple partitioning the Hilbert space into
subsystems, ordered so that subsystem 0 is the most significant tensor
factor (``np.kron`` order).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ValidationError
from .units import DEFAULT_BASE, entropy_of, resolve_base

STATE_TOL = 1e-10
EIG_CLIP = 1e-10


def _check_dims(dims, size: int) -> tuple:
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims) or math.prod(dims) != size:
        raise ValidationError(f"dims {dims} do not factor a space of dimension {size}")
    return dims


@dataclass(frozen=True)
class StateVector:
    amplitudes: np.ndarray = field(repr=False)
    dims: tuple

    def __init__(self, amplitudes, dims: Sequence[int] | None = None, normalize: bool = False):
        a = np.array(amplitudes, dtype=complex).ravel()
        dims = (a.size,) if dims is None else dims
        dims = _check_dims(dims, a.size)
        norm = np.linalg.norm(a)
        if normalize:
            if norm == 0:
                raise ValidationError("cannot normalize the zero vector")
            a = a / norm
        elif abs(norm - 1.0) > STATE_TOL:
            raise ValidationError(f"state has norm {norm!r}, expected 1")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)
        object.__setattr__(self, "dims", dims)

    @classmethod
    def basis(cls, index: Sequence[int], dims: Sequence[int]) -> "StateVector":
        """Computational basis state ``|i_0, i_1, ...>``."""
        a = np.zeros(math.prod(dims), dtype=complex)
        a[np.ravel_multi_index(tuple(index), tuple(dims))] = 1.0
        return cls(a, dims)

    def tensor(self, other: "StateVector") -> "StateVector":
        return StateVector(np.kron(self.amplitudes, other.amplitudes), self.dims + other.dims)

    def inner(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def as_tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims)


@dataclass(frozen=True)
class DensityMatrix:
    entries: np.ndarray = field(repr=False)
    dims: tuple

    def __init__(self, entries, dims: Sequence[int] | None = None, check: bool = True):
        r = np.array(entries, dtype=complex)
        if r.ndim != 2 or r.shape[0] != r.shape[1]:
            raise ValidationError(f"density matrix must be square, got shape {r.shape}")
        dims = (r.shape[0],) if dims is None else dims
        dims = _check_dims(dims, r.shape[0])
        if check:
            if not np.allclose(r, r.conj().T, atol=STATE_TOL, rtol=0):
                raise ValidationError("density matrix is not Hermitian")
            tr = np.trace(r).real
            if abs(tr - 1.0) > STATE_TOL:
                raise ValidationError(f"density matrix has trace {tr!r}, expected 1")
            if np.linalg.eigvalsh(r).min() < -EIG_CLIP:
                raise ValidationError("density matrix has a negative eigenvalue")
        r.setflags(write=False)
        object.__setattr__(self, "entries", r)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Spectrum with round-off negatives clamped to zero."""
        h = (self.entries + self.entries.conj().T) / 2
        w = np.linalg.eigvalsh(h)
        return np.where((w < 0) & (w >= -EIG_CLIP), 0.0, w)

    def tensor(self, other: "DensityMatrix") -> "DensityMatrix":
        return DensityMatrix(np.kron(self.entries, other.entries), self.dims + other.dims)

    @classmethod
    def maximally_mixed(cls, dims: Sequence[int]) -> "DensityMatrix":
        n = math.prod(dims)
        return cls(np.eye(n) / n, dims)

    @classmethod
    def diagonal(cls, probs, dims: Sequence[int] | None = None) -> "DensityMatrix":
        return cls(np.diag(np.asarray(probs, dtype=complex)), dims)


def _keep_indices(keep, nsub: int) -> list[int]:
    keep = [keep] if isinstance(keep, (int, np.integer)) else list(keep)
    if not keep:
        raise ValidationError("must keep at least one subsystem")
    if len(set(keep)) != len(keep):
        raise ValidationError(f"subsystem indices {keep} are not distinct")
    for k in keep:
        if not 0 <= k < nsub:
            raise ValidationError(f"subsystem index {k} out of range for {nsub} subsystems")
    return sorted(keep)


def density_from_state(s: StateVector) -> DensityMatrix:
    """Projector |psi><psi|."""
    a = s.amplitudes
    if abs(np.linalg.norm(a) - 1.0) > STATE_TOL:
        raise ValidationError("state is not normalized")
    return DensityMatrix(np.outer(a, a.conj()), s.dims, check=False)


def partial_trace(rho: DensityMatrix | StateVector, keep) -> DensityMatrix:
    """Reduced density matrix on the subsystems listed in ``keep``.

    A ``StateVector`` is traced directly, without forming the full
    projector, which keeps large pure states tractable.
    """
    nsub = len(rho.dims)
    keep = _keep_indices(keep, nsub)
    drop = [k for k in range(nsub) if k not in keep]
    dk = math.prod(rho.dims[k] for k in keep)
    if isinstance(rho, StateVector):
        psi = np.transpose(rho.as_tensor(), keep + drop).reshape(dk, -1)
        red = psi @ psi.conj().T
    else:
        t = rho.entries.reshape(rho.dims + rho.dims)
        perm = keep + drop
        t = np.transpose(t, perm + [nsub + k for k in perm])
        dd = rho.dim // dk
        red = np.einsum("aibi->ab", t.reshape(dk, dd, dk, dd))
    red = (red + red.conj().T) / 2
    return DensityMatrix(red, [rho.dims[k] for k in keep], check=False)


def von_neumann_entropy(rho: DensityMatrix | StateVector, base=DEFAULT_BASE) -> float:
    """S = -Tr rho log rho from the clamped spectrum."""
    if isinstance(rho, StateVector):
        return 0.0
    return entropy_of(rho.eigenvalues(), base)


def _bipartite(rho: DensityMatrix) -> None:
    if len(rho.dims) != 2:
        raise ValidationError(f"expected a two-subsystem state, got dims {rho.dims}")


def conditional_q_entropy(rho_ab: DensityMatrix, base=DEFAULT_BASE) -> float:
    """S(A|B) = S(AB) - S(B); negative for entangled states."""
    _bipartite(rho_ab)
    return von_neumann_entropy(rho_ab, base) - von_neumann_entropy(partial_trace(rho_ab, [1]), base)


def mutual_q_entropy(rho_ab: DensityMatrix, base=DEFAULT_BASE) -> float:
    """S(A:B) = S(A) + S(B) - S(AB)."""
    _bipartite(rho_ab)
    sa = von_neumann_entropy(partial_trace(rho_ab, [0]), base)
    sb = von_neumann_entropy(partial_trace(rho_ab, [1]), base)
    return max(0.0, sa + sb - von_neumann_entropy(rho_ab, base))


def shift_unitary(system_dim: int, pointer_dim: int) -> np.ndarray:
    """Controlled shift |x, a> -> |x, (a + x) mod d> on system (x) pointer.

    Finite-dimensional form of exp(i X_Q P_A) with a cyclic pointer.
    """
    n, d = system_dim, pointer_dim
    u = np.zeros((n * d, n * d))
    for x in range(n):
        for a in range(d):
            u[x * d + (a + x) % d, x * d + a] = 1.0
    return u


def pointer_measurement(system: StateVector, pointer_dim: int | None = None) -> StateVector:
    """Couple a pointer prepared in |0> to ``system``: |x, 0> -> |x, x>."""
    if len(system.dims) != 1:
        raise ValidationError("system must be a single subsystem")
    n = system.dims[0]
    d = n if pointer_dim is None else int(pointer_dim)
    if d < n:
        raise ValidationError(f"pointer dimension {d} cannot record {n} system states")
    ready = np.zeros(d, dtype=complex)
    ready[0] = 1.0
    joint = np.kron(system.amplitudes, ready)
    return StateVector(shift_unitary(n, d) @ joint, (n, d))


_BELL = {
    "phi+": ([1, 0, 0, 1], "Phi+"),
    "phi-": ([1, 0, 0, -1], "Phi-"),
    "psi+": ([0, 1, 1, 0], "Psi+"),
    "psi-": ([0, 1, -1, 0], "Psi-"),
}


def bell_state(kind: str = "psi-") -> StateVector:
    """One of the four Bell states; basis order |up,up>, |up,down>, |down,up>, |down,down>."""
    key = kind.lower().replace("Φ", "phi").replace("φ", "phi").replace("Ψ", "psi").replace("ψ", "psi")
    key = key.replace("plus", "+").replace("minus", "-").replace("_", "")
    if key not in _BELL:
        raise ValidationError(f"unknown Bell state {kind!r}; use one of {sorted(_BELL)}")
    return StateVector(np.array(_BELL[key][0], dtype=complex) / math.sqrt(2), (2, 2))


SIGMA_Y = np.array([[0, -1j], [1j, 0]])
_YY = np.kron(SIGMA_Y, SIGMA_Y)


def concurrence(rho: DensityMatrix | StateVector) -> float:
    """Wootters concurrence of a two-qubit state.

    C = max(0, l1 - l2 - l3 - l4), with l_k the decreasing square roots of the
    spectrum of rho (sy x sy) rho* (sy x sy).  Writing rho = X X^dag, the l_k
    are the singular values of X^T (sy x sy) X, which avoids square roots of
    round-off near rank-deficient states.
    """
    if isinstance(rho, StateVector):
        rho = density_from_state(rho)
    if rho.entries.shape != (4, 4):
        raise ValidationError(f"concurrence needs a 4x4 two-qubit state, got {rho.entries.shape}")
    w, v = np.linalg.eigh(rho.entries)
    keep = w > 1e-14
    x = v[:, keep] * np.sqrt(w[keep])
    lam = np.zeros(4)
    sv = np.linalg.svd(x.T @ _YY @ x, compute_uv=False)
    lam[: sv.size] = np.sort(sv)[::-1]
    return float(min(1.0, max(0.0, lam[0] - lam[1:].sum())))


def renyi_trace(rho: DensityMatrix, n: float) -> float:
    """Tr rho^n for real n > 0, from the spectrum."""
    lam = rho.eigenvalues()
    lam = lam[lam > 0]
    return float(np.sum(lam**n))


def replica_entropy(rho: DensityMatrix, base=DEFAULT_BASE) -> float:
    """-(d/dn) Tr rho^n at n = 1.

    Differentiating term by term, d/dn lambda^n = lambda^n ln lambda, so at
    n = 1 the derivative is sum lambda ln lambda; zero eigenvalues contribute
    nothing since lambda^n ln lambda -> 0.
    """
    lam = rho.eigenvalues()
    lam = lam[lam > 0]
    deriv = float(np.sum(lam**1.0 * np.log(lam)))
    return (0.0 - deriv) / math.log(resolve_base(base))


def geometric_entropy(s: StateVector, inside_mask: Sequence[bool], base=DEFAULT_BASE) -> float:
    """Entropy of the contiguous "inside" block of a pure state on a chain."""
    mask = [bool(m) for m in inside_mask]
    if len(mask) != len(s.dims):
        raise ValidationError(f"mask has {len(mask)} entries for {len(s.dims)} subsystems")
    inside = [i for i, m in enumerate(mask) if m]
    if not inside:
        raise ValidationError("inside region is empty")
    if inside != list(range(inside[0], inside[-1] + 1)):
        raise ValidationError("inside region must be contiguous")
    if len(inside) == len(mask):
        return 0.0
    return von_neumann_entropy(partial_trace(s, inside), base)


def ghz_state(n: int) -> StateVector:
    a = np.zeros(2**n, dtype=complex)
    a[0] = a[-1] = 1 / math.sqrt(2)
    return StateVector(a, (2,) * n)


def fidelity(a: StateVector, b: StateVector) -> float:
    """|<a|b>|^2 for pure states."""
    return abs(a.inner(b)) ** 2


def random_density_matrix(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Ginibre-distributed mixed state; returns the raw matrix."""
    k = dim if rank is None else rank
    g = rng.normal(size=(dim, k)) + 1j * rng.normal(size=(dim, k))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar unitary from the QR decomposition of a complex Ginibre matrix."""
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def state_to_json(s: StateVector | DensityMatrix) -> dict:
    """Row-major ``[re, im]`` pairs plus dims."""
    if isinstance(s, StateVector):
        return {
            "kind": "state",
            "dims": list(s.dims),
            "amplitudes": [[float(z.real), float(z.imag)] for z in s.amplitudes],
        }
    return {
        "kind": "density",
        "dims": list(s.dims),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in s.entries],
    }


def state_from_json(obj: dict) -> StateVector | DensityMatrix:
    kind = obj.get("kind")
    if kind == "state" or (kind is None and "amplitudes" in obj):
        amps = np.array([complex(re, im) for re, im in obj["amplitudes"]])
        return StateVector(amps, obj.get("dims"))
    if kind == "density" or "entries" in obj:
        ent = np.array([[complex(re, im) for re, im in row] for row in obj["entries"]])
        return DensityMatrix(ent, obj.get("dims"))
    raise ValidationError("JSON object is neither a state nor a density matrix")
