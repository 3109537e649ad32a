"""Dense state vectors over sites of arbitrary dimension.

Flattening convention: site 0 is the most significant digit of the flat index
(mixed radix over ``dims``), i.e. plain C-order reshaping to ``dims``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph, induced_edge_count
from .pauli import PauliString

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-10

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
D = (X + Z) / np.sqrt(2)


class SimulationLimitError(MemoryError):
    pass


def max_qubits() -> int:
    """Graph-state size cap, overridable through ``GRAPH_SELFTEST_MAX_QUBITS``."""
    return int(os.environ.get("GRAPH_SELFTEST_MAX_QUBITS", "14"))


def max_amplitudes() -> int:
    # joint spaces (extraction, embedded sites) get 8 extra qubits of headroom
    return 1 << (max_qubits() + 8)


@dataclass(frozen=True, eq=False)
class StateVector:
    amplitudes: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if amps.size != int(np.prod(self.dims, dtype=np.int64)):
            raise ValueError(f"{amps.size} amplitudes do not fit dims {self.dims}")

    @property
    def n_sites(self) -> int:
        return len(self.dims)

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm() - 1.0) <= tol

    def kron(self, other: "StateVector") -> "StateVector":
        return StateVector(np.kron(self.amplitudes, other.amplitudes), self.dims + other.dims)


@dataclass(frozen=True, eq=False)
class LocalOperator:
    site: int
    matrix: np.ndarray

    def is_involution(self, tol: float = NORM_TOL) -> bool:
        m = np.asarray(self.matrix)
        eye = np.eye(m.shape[0])
        return bool(np.allclose(m, m.conj().T, atol=tol) and np.allclose(m @ m, eye, atol=tol))


def check_size(dims: Sequence[int]) -> None:
    total = int(np.prod(dims, dtype=np.int64))
    if total > max_amplitudes():
        raise SimulationLimitError(f"joint dimension {total} exceeds cap {max_amplitudes()}")


def apply_site(tensor: np.ndarray, site: int, matrix: np.ndarray) -> np.ndarray:
    """Apply ``matrix`` to axis ``site`` of a state tensor."""
    out = np.tensordot(matrix, tensor, axes=([1], [site]))
    return np.moveaxis(out, 0, site)


def apply_local_ops(state: StateVector, ops: Iterable[LocalOperator]) -> StateVector:
    t = state.tensor()
    seen = set()
    for op in ops:
        if op.site in seen:
            raise ValueError(f"two operators on site {op.site}")
        seen.add(op.site)
        if not 0 <= op.site < state.n_sites:
            raise ValueError(f"site {op.site} out of range")
        d = state.dims[op.site]
        if np.shape(op.matrix) != (d, d):
            raise ValueError(f"operator on site {op.site} has shape {np.shape(op.matrix)}, site dim {d}")
        t = apply_site(t, op.site, np.asarray(op.matrix, dtype=complex))
    return StateVector(t, state.dims)


def expectation(state: StateVector, ops: Iterable[LocalOperator]) -> float:
    """Real expectation of a tensor product of local Hermitian operators."""
    out = apply_local_ops(state, ops)
    val = np.vdot(state.amplitudes, out.amplitudes)
    if abs(val.imag) > HERMITIAN_TOL:
        raise ValueError(f"expectation has imaginary part {val.imag:.3g}; operators not Hermitian?")
    return float(val.real)


def pauli_local_ops(p: PauliString) -> tuple[complex, list[LocalOperator]]:
    """Split ``p`` into a global phase and per-site X^x Z^z matrices."""
    ops = []
    for v in range(p.n):
        xb, zb = (p.x >> v) & 1, (p.z >> v) & 1
        if xb or zb:
            m = (X if xb else I2) @ (Z if zb else I2)
            ops.append(LocalOperator(v, m))
    return p.phase, ops


def apply_pauli_string(state: StateVector, p: PauliString) -> StateVector:
    if any(d != 2 for d in state.dims) or state.n_sites != p.n:
        raise ValueError("Pauli strings act on qubit states of matching size")
    phase, ops = pauli_local_ops(p)
    out = apply_local_ops(state, ops)
    return StateVector(phase * out.amplitudes, out.dims)


def pauli_expectation(state: StateVector, p: PauliString) -> float:
    phase, ops = pauli_local_ops(p)
    out = apply_local_ops(state, ops)
    val = phase * np.vdot(state.amplitudes, out.amplitudes)
    if abs(val.imag) > HERMITIAN_TOL:
        raise ValueError("non-Hermitian Pauli string")
    return float(val.real)


def build_graph_state(g: Graph) -> StateVector:
    """|+>^n followed by CZ on every edge."""
    if g.n > max_qubits():
        raise SimulationLimitError(f"{g.n} qubits exceeds cap {max_qubits()}")
    t = np.full((2,) * g.n, 2.0 ** (-g.n / 2), dtype=complex)
    for u, v in g.sorted_edges():
        idx: list = [slice(None)] * g.n
        idx[u] = 1
        idx[v] = 1
        t[tuple(idx)] *= -1
    return StateVector(t, (2,) * g.n)


def basis_bits(index: int, n: int) -> list[int]:
    """Vertices set to 1 in basis state ``index`` (site 0 most significant)."""
    return [v for v in range(n) if (index >> (n - 1 - v)) & 1]


def graph_state_closed_form(g: Graph) -> StateVector:
    """Amplitude ``(-1)**e(x) / sqrt(2**n)`` where ``e(x)`` counts edges inside ``x``."""
    if g.n > max_qubits():
        raise SimulationLimitError(f"{g.n} qubits exceeds cap {max_qubits()}")
    amps = np.array(
        [(-1) ** induced_edge_count(g, basis_bits(i, g.n)) for i in range(2**g.n)], dtype=complex
    )
    return StateVector(amps * 2.0 ** (-g.n / 2), (2,) * g.n)


def embed(matrix: np.ndarray, d: int, pad: float = 1.0) -> np.ndarray:
    """Direct sum ``matrix (+) pad * I`` on a ``d``-dimensional site."""
    k = matrix.shape[0]
    out = np.zeros((d, d), dtype=complex)
    out[:k, :k] = matrix
    out[k:, k:] = pad * np.eye(d - k)
    return out


def ry(theta: float) -> np.ndarray:
    """``exp(-i theta Y / 2)``: rotates the Bloch vector about Y by ``theta``."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)
