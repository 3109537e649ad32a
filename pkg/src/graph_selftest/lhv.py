"""A local hidden variable model for X/Z measurements on graph states.

Each vertex draws a uniform ``z_v = +-1``; its X outcome is then fixed to
``x_v = prod_{u in N_v} z_u``. On bipartite graphs this reproduces every
X/Z-only correlation of the graph state; on graphs with an odd cycle it gets
the sign of the cycle observable wrong.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .certificates import Certificate, MeasurementSetting, make_certificate
from .devices import IncompatibleProviderError
from .graph import Graph, GraphError, find_odd_induced_cycle, is_bipartite, is_connected, neighbourhood_parity
from .pauli import PauliString
from .stabilizer import StabilizerGroup


class LHVSettingError(ValueError):
    """The model only assigns values to idle, X and Z settings."""


def _split(setting: MeasurementSetting) -> tuple[list[int], list[int]]:
    if "D" in setting.labels:
        raise LHVSettingError(f"setting {setting} uses D; the model covers X and Z only")
    xs = [v for v, lab in setting.active() if lab == "X"]
    zs = [v for v, lab in setting.active() if lab == "Z"]
    return xs, zs


@dataclass(frozen=True)
class HiddenAssignment:
    g: Graph
    z_values: tuple[int, ...]
    sign: int = 1  # global convention x_v = sign * prod z_u

    @cached_property
    def x_values(self) -> tuple[int, ...]:
        return tuple(
            self.sign * int(np.prod([self.z_values[u] for u in self.g.neighbours(v)])) for v in range(self.g.n)
        )

    def outcome(self, setting: MeasurementSetting) -> int:
        out = 1
        for v, lab in setting.active():
            if lab == "X":
                out *= self.x_values[v]
            elif lab == "Z":
                out *= self.z_values[v]
            else:
                raise LHVSettingError("D is not modelled")
        return out


def lhv_expectation(g: Graph, setting: MeasurementSetting) -> int:
    """Exact model expectation of ``X^S Z^T``.

    Substituting ``x_v`` turns the outcome into ``prod z`` over the symmetric
    difference of ``N(S)`` and ``T``: deterministic ``+1`` if it is empty,
    otherwise a product of independent fair coins with mean 0.
    """
    xs, zs = _split(setting)
    return 1 if neighbourhood_parity(g, xs) == frozenset(zs) else 0


def enumerate_lhv_expectation(g: Graph, setting: MeasurementSetting, sign: int = 1) -> float:
    """Average over all ``2^n`` hidden assignments."""
    _split(setting)
    total = 0
    for zv in itertools.product((1, -1), repeat=g.n):
        total += HiddenAssignment(g, zv, sign).outcome(setting)
    return total / 2**g.n


def lhv_sample_expectation(g: Graph, setting: MeasurementSetting, trials: int, seed: int) -> float:
    """Monte Carlo mean of the model's outcome; deterministic for a given seed."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    xs, zs = _split(setting)
    rng = np.random.default_rng(seed)
    z = rng.choice(np.array([1, -1], dtype=np.int8), size=(trials, g.n))
    out = np.ones(trials, dtype=np.int64)
    for v in xs:
        for u in g.neighbours(v):
            out *= z[:, u]
    for v in zs:
        out *= z[:, v]
    return float(out.mean())


@dataclass
class LHVProvider:
    """The model as an expectation provider; sampled when ``trials`` is set."""

    g: Graph
    trials: Optional[int] = None
    seed: int = 0
    name: str = "lhv"

    @property
    def n(self) -> int:
        return self.g.n

    def expectation(self, setting: MeasurementSetting) -> float:
        try:
            if self.trials is None:
                return float(lhv_expectation(self.g, setting))
            return lhv_sample_expectation(self.g, setting, self.trials, self.seed)
        except LHVSettingError as exc:
            raise IncompatibleProviderError(str(exc)) from None


def all_xz_settings(n: int):
    for labels in itertools.product("IXZ", repeat=n):
        yield MeasurementSetting("".join(labels))


def quantum_xz_expectation(group: StabilizerGroup, setting: MeasurementSetting) -> int:
    xs, zs = _split(setting)
    return group.pauli_expectation(PauliString.from_sites(setting.n, xs=xs, zs=zs))


@dataclass
class CompletenessReport:
    complete: bool
    settings_checked: int
    mismatches: list[str]

    def to_dict(self) -> dict:
        return {"bipartite": True, "complete": self.complete, "settings_checked": self.settings_checked,
                "mismatches": self.mismatches}


MAX_EXHAUSTIVE_N = 9
MAX_ENUMERATION_N = 16


def bipartite_completeness_check(g: Graph) -> CompletenessReport:
    """Compare the model with the graph state on all ``3^n`` X/Z/idle settings."""
    if not is_bipartite(g):
        raise GraphError("graph is not bipartite")
    if not is_connected(g):
        raise GraphError("graph is not connected")
    if g.n > MAX_EXHAUSTIVE_N:
        raise GraphError(f"exhaustive check limited to n <= {MAX_EXHAUSTIVE_N}")
    group = StabilizerGroup(g)
    mismatches = []
    count = 0
    for s in all_xz_settings(g.n):
        count += 1
        if lhv_expectation(g, s) != quantum_xz_expectation(group, s):
            mismatches.append(s.labels)
    return CompletenessReport(not mismatches, count, mismatches)


@dataclass
class ViolationReport:
    row: str
    lhv: float
    quantum: float
    both_signs_fail: bool

    @property
    def gap(self) -> float:
        return abs(self.lhv - self.quantum)

    def to_dict(self) -> dict:
        return {"bipartite": False, "complete": False, "violation_row": self.row, "lhv": self.lhv,
                "quantum": self.quantum, "gap": self.gap, "both_sign_conventions_fail": self.both_signs_fail}


def _worst_row(g: Graph, cert: Certificate, sign: int) -> tuple[str, float, float]:
    group = StabilizerGroup(g)
    best = None
    for row in cert.rows:
        lhv = enumerate_lhv_expectation(g, row.setting, sign)
        q = float(quantum_xz_expectation(group, row.setting))
        if best is None or abs(lhv - q) > abs(best[1] - best[2]):
            best = (row.setting.labels, lhv, q)
    return best  # type: ignore[return-value]


def nonbipartite_violation(g: Graph) -> ViolationReport:
    """Find the experiment-1 row this model gets wrong.

    The LHV side is computed by enumerating every hidden assignment, not from
    the parity shortcut. Both global sign conventions for ``x_v`` are tried;
    each leaves some certificate row off by 2.
    """
    if find_odd_induced_cycle(g) is None:
        raise GraphError("graph is bipartite; the model is complete there")
    if g.n > MAX_ENUMERATION_N:
        raise GraphError("graph too large for exhaustive enumeration")
    cert = make_certificate(g, 1)
    row, lhv, q = _worst_row(g, cert, 1)
    flipped = _worst_row(g, cert, -1)
    both = abs(lhv - q) > 0 and abs(flipped[1] - flipped[2]) > 0
    return ViolationReport(row, lhv, q, both)
