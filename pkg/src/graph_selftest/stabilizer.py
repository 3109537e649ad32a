"""Exact graph-state expectation values from stabilizer-group membership."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .graph import Graph, _members
from .pauli import ObservableExpr, PauliString, commutation_phase, product_over_set, stabilizer_generator


def gf2_rank(rows: list[int]) -> int:
    """Rank over GF(2) of integer-encoded bit vectors."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


@dataclass(frozen=True)
class StabilizerGroup:
    """The stabilizer group of the graph state of ``g``.

    Construction checks that the generators commute pairwise and are
    independent, so a bad graph object fails loudly instead of giving
    wrong expectations later.
    """

    g: Graph

    def __post_init__(self) -> None:
        gens = self.generators
        for a, b in combinations(gens, 2):
            if commutation_phase(a, b) != 1:
                raise AssertionError(f"generators {a} and {b} anti-commute")
        # symplectic vectors (x | z) packed into one int
        if gf2_rank([p.x | (p.z << self.g.n) for p in gens]) != self.g.n:
            raise AssertionError("generators are not independent")

    @cached_property
    def generators(self) -> tuple[PauliString, ...]:
        return tuple(stabilizer_generator(self.g, v) for v in range(self.g.n))

    def pauli_expectation(self, p: PauliString) -> int:
        """``<psi|p|psi>`` in {-1, 0, +1} for a Hermitian string ``p``.

        Every generator carries its X on one distinct vertex, so the only
        group element that can match ``p`` is the product over the X-support
        of ``p``.
        """
        if p.n != self.g.n:
            raise ValueError("site count does not match the graph")
        if not p.is_hermitian:
            raise ValueError(f"{p} is not Hermitian")
        q = product_over_set(self.g, _members(p.x))
        if q.z != p.z:
            return 0
        # p = i**(p.k - q.k) * q and q stabilizes psi
        return 1 if (p.k - q.k) % 4 == 0 else -1

    def expectation(self, e: ObservableExpr) -> float:
        return float(sum(c * self.pauli_expectation(p) for c, p in e.terms))
