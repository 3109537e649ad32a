"""Untrusted-device models and the epsilon-simulation check.

A device model only has to answer "what is the expectation of this product
setting?" (:class:`ExpectationProvider`). Quantum models
(:class:`QuantumBoxSet`) additionally expose the joint state and local
observables, which the extraction isometry needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Protocol, Sequence

import numpy as np

from . import dense
from .certificates import Certificate, MeasurementSetting


class IncompatibleProviderError(ValueError):
    """The device model cannot answer the certificate's settings."""


class ExpectationProvider(Protocol):
    name: str

    @property
    def n(self) -> int: ...

    def expectation(self, setting: MeasurementSetting) -> float: ...


@dataclass(eq=False)
class QuantumBoxSet:
    """Joint pure state plus, per site, a map from setting label to observable."""

    state: dense.StateVector
    observables: list[dict[str, np.ndarray]]
    name: str = "quantum"
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.observables) != self.state.n_sites:
            raise ValueError("need one observable map per site")
        for v, obs in enumerate(self.observables):
            for label, m in obs.items():
                op = dense.LocalOperator(v, m)
                if m.shape != (self.state.dims[v],) * 2 or not op.is_involution():
                    raise ValueError(f"observable {label} on site {v} is not a Hermitian involution")

    @property
    def n(self) -> int:
        return self.state.n_sites

    def observable(self, site: int, label: str) -> np.ndarray:
        if label == "I":
            return np.eye(self.state.dims[site], dtype=complex)
        try:
            return self.observables[site][label]
        except KeyError:
            raise IncompatibleProviderError(f"site {site} has no setting {label!r}") from None

    def local_ops(self, setting: MeasurementSetting) -> list[dense.LocalOperator]:
        if setting.n != self.n:
            raise IncompatibleProviderError(f"setting has {setting.n} sites, device has {self.n}")
        return [dense.LocalOperator(v, self.observable(v, lab)) for v, lab in setting.active()]

    def expectation(self, setting: MeasurementSetting) -> float:
        return dense.expectation(self.state, self.local_ops(setting))

    def conjugated(self, unitaries: Sequence[np.ndarray], name: str, **params) -> "QuantumBoxSet":
        """Same state, every observable replaced by ``U M U^dagger`` site-wise."""
        obs = [
            {lab: u @ m @ u.conj().T for lab, m in site_obs.items()}
            for u, site_obs in zip(unitaries, self.observables)
        ]
        return QuantumBoxSet(self.state, obs, name, {**self.params, **params})


def _qubit_observables(c: Certificate) -> list[dict[str, np.ndarray]]:
    obs = [{"X": dense.X, "Z": dense.Z} for _ in range(c.n)]
    if c.kind == 2:
        obs[c.distinguished]["D"] = dense.D
    return obs


def honest_experiment(c: Certificate) -> QuantumBoxSet:
    return QuantumBoxSet(dense.build_graph_state(c.graph), _qubit_observables(c), "honest")


def embedded_experiment(c: Certificate, d: int, pad: float = 1.0) -> QuantumBoxSet:
    """Honest experiment living in the first two levels of ``d``-level sites.

    Observables act as ``M (+) pad * I`` on the extra levels.
    """
    if d < 2:
        raise ValueError("site dimension must be at least 2")
    if pad not in (1.0, -1.0):
        raise ValueError("padding must be +1 or -1 to keep observables involutive")
    if d == 2:
        return honest_experiment(c)
    dims = (d,) * c.n
    dense.check_size(dims)
    t = np.zeros(dims, dtype=complex)
    t[(slice(0, 2),) * c.n] = dense.build_graph_state(c.graph).tensor()
    obs = [{lab: dense.embed(m, d, pad) for lab, m in site.items()} for site in _qubit_observables(c)]
    return QuantumBoxSet(dense.StateVector(t, dims), obs, "embedded", {"dim": d, "pad": pad})


def _site_rotation(theta: float, d: int) -> np.ndarray:
    return dense.embed(dense.ry(theta), d, 1.0)


def rotated_experiment(c: Certificate, theta: float, d: int = 2) -> QuantumBoxSet:
    """Every observable rotated by ``theta`` about the local Y axis.

    The state is left alone, so X' and Z' still anti-commute but no longer
    match the reference frame of the graph state.
    """
    base = embedded_experiment(c, d)
    return base.conjugated([_site_rotation(theta, d)] * c.n, "rotated", theta=theta)


def skewed_experiment(c: Certificate, theta: float, d: int = 2) -> QuantumBoxSet:
    """Z' rotated by ``theta`` towards X, D' by ``theta / 2``, X' untouched.

    X' and Z' then fail to anti-commute by ``2 sin(theta)``, which exercises
    the anti-commutation estimates non-trivially.
    """
    base = embedded_experiment(c, d)
    obs = []
    for site in base.observables:
        new = dict(site)
        rz = _site_rotation(theta, d)
        new["Z"] = rz @ site["Z"] @ rz.conj().T
        if "D" in site:
            rd = _site_rotation(theta / 2, d)
            new["D"] = rd @ site["D"] @ rd.conj().T
        obs.append(new)
    return QuantumBoxSet(base.state, obs, "skew", {**base.params, "theta": theta})


NOISE_MODELS: dict[str, Callable[..., QuantumBoxSet]] = {
    "rotated": rotated_experiment,
    "skew": skewed_experiment,
}


def parse_noise(text: str) -> tuple[str, float]:
    """``'rotated:0.05'`` -> ``('rotated', 0.05)``."""
    name, _, arg = text.partition(":")
    if name not in NOISE_MODELS:
        raise ValueError(f"unknown noise model {name!r}; choose from {sorted(NOISE_MODELS)}")
    try:
        return name, float(arg)
    except ValueError:
        raise ValueError(f"noise model {name!r} needs a numeric angle, e.g. {name}:0.05") from None


def build_quantum_box(c: Certificate, noise: str | None = None, d: int = 2, pad: float = 1.0) -> QuantumBoxSet:
    if noise is None:
        return embedded_experiment(c, d, pad)
    name, theta = parse_noise(noise)
    if pad != 1.0:
        raise ValueError("noise models use +I padding")
    return NOISE_MODELS[name](c, theta, d)


# -- epsilon-simulation ------------------------------------------------------


@dataclass
class RowResult:
    settings: str
    expected: float
    measured: float

    @property
    def dev(self) -> float:
        return abs(self.measured - self.expected)


@dataclass
class SimulationReport:
    rows: list[RowResult]
    provider: str

    @property
    def epsilon(self) -> float:
        return max((r.dev for r in self.rows), default=0.0)

    def worst_row(self) -> RowResult:
        return max(self.rows, key=lambda r: r.dev)

    def to_dict(self) -> dict:
        return {
            "provider": self.provider,
            "rows": [
                {"settings": r.settings, "expected": r.expected, "measured": r.measured, "dev": r.dev}
                for r in self.rows
            ],
            "epsilon": self.epsilon,
        }


def compute_epsilon(p: ExpectationProvider, c: Certificate) -> SimulationReport:
    """Per-row deviation of the device from the certificate, and their max."""
    if p.n != c.n:
        raise IncompatibleProviderError(f"device has {p.n} sites, certificate {c.n}")
    rows = [RowResult(r.setting.labels, r.expected.value_float, p.expectation(r.setting)) for r in c.rows]
    return SimulationReport(rows, p.name)
