"""The local extraction isometry and the equivalence distances it certifies.

Per site ``v`` an ancilla qubit is prepared in ``|0>`` and the circuit
``H(anc); controlled-Z'_v; H(anc); controlled-X'_v`` is applied, the ancilla
acting as control. For genuine qubit Paulis this is a SWAP, so the reference
graph state ends up on the ancillas. Output order: all physical sites, then
all ancillas, each in site order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import dense
from .bounds import BoundInputs, delta_generic, delta_refined, is_vacuous
from .certificates import Certificate, SITE_MATRICES
from .devices import QuantumBoxSet, compute_epsilon
from .graph import induced_edge_count, neighbourhood_parity

JUNK_DEGENERATE = 1e-9
# distances at or below this are numerical zero when comparing against delta
DIST_TOL = 1e-9


class DegenerateJunkError(ValueError):
    pass


def _controlled(t: np.ndarray, control: int, target: int, m: np.ndarray) -> np.ndarray:
    """Apply ``m`` on axis ``target`` where axis ``control`` (a qubit) is 1."""
    out = t.copy()
    idx = [slice(None)] * t.ndim
    idx[control] = 1
    sub = out[tuple(idx)]
    tgt = target if target < control else target - 1
    out[tuple(idx)] = dense.apply_site(sub, tgt, m)
    return out


def isometry(box: QuantumBoxSet, phi: dense.StateVector) -> dense.StateVector:
    """Apply the extraction isometry built from ``box``'s X' and Z' to ``phi``."""
    n = box.n
    if phi.dims != box.state.dims:
        raise ValueError("input state does not live on the device's sites")
    dims = phi.dims + (2,) * n
    dense.check_size(dims)
    t = np.zeros(dims, dtype=complex)
    t[(Ellipsis,) + (0,) * n] = phi.tensor()
    for v in range(n):
        xv, zv = box.observable(v, "X"), box.observable(v, "Z")
        anc = n + v
        t = dense.apply_site(t, anc, dense.H)
        t = _controlled(t, anc, v, zv)
        t = dense.apply_site(t, anc, dense.H)
        t = _controlled(t, anc, v, xv)
    return dense.StateVector(t, dims)


def apply_isometry(box: QuantumBoxSet) -> dense.StateVector:
    return isometry(box, box.state)


def compute_junk(box: QuantumBoxSet) -> dense.StateVector:
    """``2^(-n/2) prod_v (I + Z'_v) psi'``; unit norm exactly when X'/Z' anti-commute on psi'."""
    ops = [dense.LocalOperator(v, np.eye(d) + box.observable(v, "Z")) for v, d in enumerate(box.state.dims)]
    out = dense.apply_local_ops(box.state, ops)
    return dense.StateVector(out.amplitudes * 2.0 ** (-box.n / 2), out.dims)


@dataclass
class ExtractionReport:
    state_distance: float
    rows: list[tuple[str, float]]
    junk_norm_residual: float
    epsilon: float
    delta_generic: Optional[float]
    delta_refined: Optional[float]

    @property
    def delta_bound(self) -> Optional[float]:
        vals = [d for d in (self.delta_generic, self.delta_refined) if d is not None]
        return min(vals) if vals else None

    @property
    def max_distance(self) -> float:
        return max([self.state_distance] + [d for _, d in self.rows])

    @property
    def bound_satisfied(self) -> bool:
        b = self.delta_bound
        return b is not None and self.max_distance <= b + DIST_TOL

    def to_dict(self) -> dict:
        b = self.delta_bound
        return {
            "state_distance": self.state_distance,
            "rows": [{"settings": s, "distance": d} for s, d in self.rows],
            "junk_norm_residual": self.junk_norm_residual,
            "epsilon": self.epsilon,
            "delta_generic": self.delta_generic,
            "delta_refined": self.delta_refined,
            "delta_bound": b,
            "vacuous": b is not None and is_vacuous(b),
            "bound_satisfied": self.bound_satisfied,
        }


def _single_site(n: int, v: int, label: str) -> str:
    return "I" * v + label + "I" * (n - v - 1)


def equivalence_distances(
    box: QuantumBoxSet, c: Certificate, epsilon: Optional[float] = None
) -> ExtractionReport:
    """Distances ``||Phi(M' psi') - junk (x) M psi||`` for the state and every
    local observable the certificate uses, with junk normalized and a single
    global phase fixed by the state overlap."""
    if box.n != c.n:
        raise ValueError("device and certificate sizes differ")
    junk = compute_junk(box)
    jnorm = junk.norm()
    if jnorm < JUNK_DEGENERATE:
        raise DegenerateJunkError(f"junk vector has norm {jnorm:.3g}")
    jhat = dense.StateVector(junk.amplitudes / jnorm, junk.dims)
    psi = dense.build_graph_state(c.graph)

    out = apply_isometry(box)
    target = jhat.kron(psi)
    overlap = np.vdot(target.amplitudes, out.amplitudes)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    state_distance = float(np.linalg.norm(out.amplitudes - phase * target.amplitudes))

    rows = []
    for v, labels in enumerate(c.settings_by_site()):
        for label in sorted(labels, key="XZD".index):
            moved = dense.apply_local_ops(box.state, [dense.LocalOperator(v, box.observable(v, label))])
            ref = dense.apply_local_ops(psi, [dense.LocalOperator(v, SITE_MATRICES[label])])
            diff = isometry(box, moved).amplitudes - phase * jhat.kron(ref).amplitudes
            rows.append((_single_site(c.n, v, label), float(np.linalg.norm(diff))))

    if epsilon is None:
        epsilon = compute_epsilon(box, c).epsilon
    generic = refined = None
    if c.kind == 1 or epsilon <= 1:
        b = BoundInputs.for_certificate(c, epsilon)
        generic, refined = delta_generic(b), delta_refined(b)
    return ExtractionReport(state_distance, rows, abs(jnorm - 1.0), epsilon, generic, refined)


def anticommutator_residuals(box: QuantumBoxSet) -> list[float]:
    """``||(X'Z' + Z'X')_v psi'||`` for every site ``v``."""
    out = []
    for v in range(box.n):
        xv, zv = box.observable(v, "X"), box.observable(v, "Z")
        moved = dense.apply_local_ops(box.state, [dense.LocalOperator(v, xv @ zv + zv @ xv)])
        out.append(moved.norm())
    return out


def exchange_residual(box: QuantumBoxSet, c: Certificate, s: Iterable[int]) -> float:
    """``||(-1)^e(s) X'^s psi' - Z'^N(s) psi'||`` for a vertex set ``s``."""
    s = sorted(set(s))
    sign = (-1) ** induced_edge_count(c.graph, s)
    xs = dense.apply_local_ops(box.state, [dense.LocalOperator(v, box.observable(v, "X")) for v in s])
    zs = dense.apply_local_ops(
        box.state, [dense.LocalOperator(v, box.observable(v, "Z")) for v in sorted(neighbourhood_parity(c.graph, s))]
    )
    return float(np.linalg.norm(sign * xs.amplitudes - zs.amplitudes))
