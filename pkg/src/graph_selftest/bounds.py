"""Closed-form delta(epsilon) robustness bounds.

``delta_generic`` uses only the vertex count. ``delta_refined`` also uses the
edge count ``E``, the anchor eccentricity ``l`` and (experiment 1) the cycle
length ``c``. Bounds above 2 are vacuous for unit vectors and are flagged as
such by :func:`is_vacuous`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .certificates import Certificate
from .graph import distance_params


class BoundError(ValueError):
    pass


@dataclass(frozen=True)
class BoundInputs:
    n: int
    E: int
    epsilon: float
    kind: int
    l: Optional[int] = None
    c: Optional[int] = None

    def __post_init__(self) -> None:
        if self.epsilon < 0:
            raise BoundError("epsilon must be nonnegative")
        if self.kind not in (1, 2):
            raise BoundError(f"unknown experiment kind {self.kind}")
        if self.kind == 2 and self.epsilon > 1:
            raise BoundError("experiment 2 bounds hold only for epsilon <= 1")

    @classmethod
    def for_certificate(cls, cert: Certificate, epsilon: float) -> "BoundInputs":
        if cert.kind == 1:
            l, c = distance_params(cert.graph, cert.anchor, cycle=True)
        else:
            l, c = distance_params(cert.graph, [cert.anchor[0]], cycle=False)
        return cls(cert.n, cert.graph.num_edges, epsilon, cert.kind, l, c)


def delta_generic(b: BoundInputs) -> float:
    n, r = b.n, math.sqrt(b.epsilon)
    if b.kind == 1:
        return n / 2 * (5 * n**2 + 11 * n + 4) * r
    return (2 * n**3 + 4 * n**2 + n) * r + 13 * (n**2 / 2 + n) * b.epsilon**0.25


def delta_refined(b: BoundInputs) -> float:
    if b.l is None or (b.kind == 1 and b.c is None):
        raise BoundError("refined bound needs l (and c for experiment 1)")
    n, E, l, r = b.n, b.E, b.l, math.sqrt(b.epsilon)
    if b.kind == 1:
        return ((4 * l + b.c + 1) * (n + E / 2) + n) * r
    return (2 * l * (2 * n + E) + n) * r + 13 * (n + E / 2) * b.epsilon**0.25


def delta_legacy(n: int, epsilon: float) -> float:
    """The ``(15 n^2 + 5 n)/2 sqrt(eps)`` constant quoted alongside the
    delta-equivalence definition; kept for comparison only."""
    return (15 * n**2 + 5 * n) / 2 * math.sqrt(epsilon)


SPECIAL_CASES = ("triangle-lattice", "cluster-all-D")


def delta_special(case: str, n: int, epsilon: float) -> float:
    """Graph-family bounds: triangle lattices (experiment 1) and cluster states
    with ``D`` measured on every vertex."""
    if epsilon < 0:
        raise BoundError("epsilon must be nonnegative")
    if case == "triangle-lattice":
        return 17 * n * math.sqrt(epsilon)
    if case == "cluster-all-D":
        if epsilon > 1:
            raise BoundError("cluster-state bound holds only for epsilon <= 1")
        return n * math.sqrt(epsilon) + 39 * n * epsilon**0.25
    raise BoundError(f"unknown special case {case!r}; expected one of {SPECIAL_CASES}")


def is_vacuous(delta: float) -> bool:
    return delta > 2.0


# -- intermediate bounds ------------------------------------------------------


def anticommutator_bound(b: BoundInputs) -> float:
    """Bound on ``||(X'Z' + Z'X')_v psi'||`` valid for every vertex ``v``.

    Experiment 1: ``2(4l + c + 1) sqrt(eps)``. Experiment 2: the ``D``-vertex
    bound ``26 eps^(1/4)`` plus ``8 sqrt(eps)`` per chaining step.
    """
    r = math.sqrt(b.epsilon)
    if b.l is None:
        raise BoundError("need l")
    if b.kind == 1:
        return 2 * (4 * b.l + b.c + 1) * r
    return distinguished_anticommutator_bound(b.epsilon) + 8 * b.l * r


def distinguished_anticommutator_bound(epsilon: float) -> float:
    if not 0 <= epsilon <= 1:
        raise BoundError("valid for 0 <= epsilon <= 1")
    return 26 * epsilon**0.25


def exchange_bound(b: BoundInputs, size: int, internal_edges: int) -> float:
    """Bound on ``||(-1)^e(s) X'^s psi' - Z'^N(s) psi'||`` for a vertex set of
    ``size`` vertices spanning ``internal_edges`` edges."""
    return 2 * size * math.sqrt(b.epsilon) + internal_edges * anticommutator_bound(b)
