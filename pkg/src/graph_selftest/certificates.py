"""Reference experiments for connected graph states.

Kind 1 (graphs with an odd induced cycle): every stabilizer ``S_v`` plus the
cycle observable ``X^C Z^N(C)``, whose graph-state value is ``-1``.

Kind 2 (any connected graph with an edge ``(u, v)``): every stabilizer plus
``Z_u Z^N_u`` (value 0), ``D_u Z^N_u`` and ``D_u X_v Z^(N_v - u)`` (both
``1/sqrt 2``) with ``D = (X + Z)/sqrt 2``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Optional, Sequence

from . import dense
from .graph import (
    Graph,
    GraphError,
    find_odd_induced_cycle,
    is_connected,
    is_induced_cycle,
    neighbourhood_parity,
)
from .pauli import INV_SQRT2, ObservableExpr
from .stabilizer import StabilizerGroup

LABELS = "IXZD"


class CertificateError(ValueError):
    """The requested certificate cannot be built for this graph/anchor."""


class Expected(enum.Enum):
    PLUS_ONE = "+1"
    MINUS_ONE = "-1"
    ZERO = "0"
    INV_SQRT2 = "1/sqrt2"

    @property
    def value_float(self) -> float:
        return {"+1": 1.0, "-1": -1.0, "0": 0.0, "1/sqrt2": INV_SQRT2}[self.value]


_SITE_TERMS = {
    "I": ((1.0, "I"),),
    "X": ((1.0, "X"),),
    "Z": ((1.0, "Z"),),
    "D": ((INV_SQRT2, "X"), (INV_SQRT2, "Z")),
}

SITE_MATRICES = {"I": dense.I2, "X": dense.X, "Z": dense.Z, "D": dense.D}


@dataclass(frozen=True)
class MeasurementSetting:
    """One local setting label per site; ``I`` means the site is idle."""

    labels: str

    def __post_init__(self) -> None:
        bad = set(self.labels) - set(LABELS)
        if bad:
            raise ValueError(f"unknown setting labels {sorted(bad)}")

    @classmethod
    def build(cls, n: int, **by_label: Sequence[int]) -> "MeasurementSetting":
        """``MeasurementSetting.build(3, X=[0], Z=[1, 2])`` -> ``'XZZ'``."""
        labels = ["I"] * n
        for label, sites in by_label.items():
            for v in sites:
                if labels[v] != "I":
                    raise ValueError(f"site {v} assigned twice")
                labels[v] = label
        return cls("".join(labels))

    @property
    def n(self) -> int:
        return len(self.labels)

    def active(self) -> list[tuple[int, str]]:
        return [(v, lab) for v, lab in enumerate(self.labels) if lab != "I"]

    def observable(self) -> ObservableExpr:
        return ObservableExpr.tensor([_SITE_TERMS[lab] for lab in self.labels])

    def local_ops(self) -> list[dense.LocalOperator]:
        return [dense.LocalOperator(v, SITE_MATRICES[lab]) for v, lab in self.active()]

    def __str__(self) -> str:
        return self.labels


@dataclass(frozen=True)
class CertificateRow:
    setting: MeasurementSetting
    expected: Expected


@dataclass(frozen=True)
class Certificate:
    graph: Graph
    kind: int
    anchor: tuple[int, ...]
    rows: tuple[CertificateRow, ...]

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def distinguished(self) -> Optional[int]:
        """The vertex carrying ``D`` (kind 2 only)."""
        return self.anchor[0] if self.kind == 2 else None

    def settings_by_site(self) -> list[set[str]]:
        """Non-idle labels used on each site across all rows."""
        out: list[set[str]] = [set() for _ in range(self.n)]
        for row in self.rows:
            for v, lab in row.setting.active():
                out[v].add(lab)
        return out

    def to_dict(self) -> dict:
        return {
            "n": self.graph.n,
            "edges": [list(e) for e in self.graph.sorted_edges()],
            "kind": self.kind,
            "anchor": list(self.anchor),
            "rows": [{"settings": r.setting.labels, "expected": r.expected.value} for r in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        g = Graph.from_edges([tuple(e) for e in data["edges"]], data["n"])
        cert = make_certificate(g, data["kind"], data["anchor"])
        stored = tuple(
            CertificateRow(MeasurementSetting(r["settings"]), Expected(r["expected"])) for r in data["rows"]
        )
        if stored != cert.rows:
            raise CertificateError("certificate rows do not match the graph and anchor")
        return cert


def stabilizer_setting(g: Graph, v: int) -> MeasurementSetting:
    return MeasurementSetting.build(g.n, X=[v], Z=sorted(g.neighbours(v)))


def default_anchor(g: Graph, kind: int) -> tuple[int, ...]:
    if kind == 1:
        cyc = find_odd_induced_cycle(g)
        if cyc is None:
            raise CertificateError("graph is bipartite: no odd induced cycle for experiment 1")
        return cyc
    if not g.edges:
        raise CertificateError("experiment 2 needs an edge")
    return g.sorted_edges()[0]


def make_certificate(g: Graph, kind: int, anchor: Optional[Sequence[int]] = None) -> Certificate:
    if not is_connected(g):
        raise GraphError("graph is not connected")
    if kind not in (1, 2):
        raise CertificateError(f"unknown experiment kind {kind}")
    if kind == 2 and g.n < 2:
        raise CertificateError("experiment 2 needs at least two vertices")
    anchor = default_anchor(g, kind) if anchor is None else tuple(int(a) for a in anchor)

    rows = [CertificateRow(stabilizer_setting(g, v), Expected.PLUS_ONE) for v in range(g.n)]
    if kind == 1:
        if not is_induced_cycle(g, anchor) or len(anchor) % 2 == 0:
            raise CertificateError(f"anchor {list(anchor)} is not an odd induced cycle")
        parity = neighbourhood_parity(g, anchor)
        # chordless odd cycle: every cycle vertex has two cycle neighbours
        assert not parity & set(anchor)
        rows.append(
            CertificateRow(MeasurementSetting.build(g.n, X=anchor, Z=sorted(parity)), Expected.MINUS_ONE)
        )
    else:
        if len(anchor) != 2 or anchor[1] not in g.neighbours(anchor[0]):
            raise CertificateError(f"anchor {list(anchor)} is not an edge")
        u, v = anchor
        nu = sorted(g.neighbours(u))
        nv = sorted(g.neighbours(v) - {u})
        rows += [
            CertificateRow(MeasurementSetting.build(g.n, Z=[u] + nu), Expected.ZERO),
            CertificateRow(MeasurementSetting.build(g.n, D=[u], Z=nu), Expected.INV_SQRT2),
            CertificateRow(MeasurementSetting.build(g.n, D=[u], X=[v], Z=nv), Expected.INV_SQRT2),
        ]
    return Certificate(g, kind, anchor, tuple(rows))


@dataclass
class RowCheck:
    settings: str
    expected: float
    oracle: float
    dense: float

    @property
    def residual(self) -> float:
        return max(abs(self.oracle - self.expected), abs(self.dense - self.expected))


@dataclass
class VerificationReport:
    rows: list[RowCheck]
    tol: float

    @property
    def passed(self) -> bool:
        return all(r.residual <= self.tol for r in self.rows)

    @property
    def max_residual(self) -> float:
        return max(r.residual for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "max_residual": self.max_residual,
            "rows": [
                {"settings": r.settings, "expected": r.expected, "oracle": r.oracle,
                 "dense": r.dense, "residual": r.residual}
                for r in self.rows
            ],
        }


def verify_certificate(c: Certificate, tol: float = 1e-10) -> VerificationReport:
    """Recompute every row with the stabilizer oracle and the dense simulator."""
    group = StabilizerGroup(c.graph)
    psi = dense.build_graph_state(c.graph)
    checks = []
    for row in c.rows:
        checks.append(
            RowCheck(
                settings=row.setting.labels,
                expected=row.expected.value_float,
                oracle=group.expectation(row.setting.observable()),
                dense=dense.expectation(psi, row.setting.local_ops()),
            )
        )
    return VerificationReport(checks, tol)

