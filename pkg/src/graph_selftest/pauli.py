"""Signed Pauli strings over bit masks.

A :class:`PauliString` denotes ``i**k * prod_v X_v**x_v Z_v**z_v`` with the X
factor written before the Z factor on every site. ``Y`` is therefore stored as
``i * X Z``, and the phase exponent ``k`` lives in ``Z/4``. Bit ``v`` of a mask
refers to site ``v``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph, _mask

_PHASE_TEXT = {0: "+", 1: "+i", 2: "-", 3: "-i"}


def _popcount(m: int) -> int:
    return bin(m).count("1")


@dataclass(frozen=True)
class PauliString:
    n: int
    x: int = 0
    z: int = 0
    k: int = 0  # phase exponent: phase = i**k

    def __post_init__(self) -> None:
        limit = 1 << self.n
        if self.x >= limit or self.z >= limit or self.x < 0 or self.z < 0:
            raise ValueError(f"mask wider than {self.n} sites")
        object.__setattr__(self, "k", self.k % 4)

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n)

    @classmethod
    def from_sites(
        cls, n: int, xs: Iterable[int] = (), zs: Iterable[int] = (), sign: int = 1
    ) -> "PauliString":
        """``sign * X^xs Z^zs`` in X-before-Z order."""
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        return cls(n, _mask(xs), _mask(zs), 0 if sign == 1 else 2)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse the canonical rendering, e.g. ``'-XYZ'`` or ``'+iZZ'``.

        A missing phase prefix means ``+``. Letters are site 0 first.
        """
        phase = 0
        for prefix, k in (("+i", 1), ("-i", 3), ("+", 0), ("-", 2)):
            if label.startswith(prefix):
                phase, label = k, label[len(prefix):]
                break
        x = z = 0
        for v, ch in enumerate(label):
            if ch == "X":
                x |= 1 << v
            elif ch == "Z":
                z |= 1 << v
            elif ch == "Y":
                x |= 1 << v
                z |= 1 << v
                phase += 1
            elif ch != "I":
                raise ValueError(f"bad Pauli letter {ch!r}")
        return cls(len(label), x, z, phase)

    @property
    def phase(self) -> complex:
        return (1, 1j, -1, -1j)[self.k]

    @property
    def num_y(self) -> int:
        return _popcount(self.x & self.z)

    @property
    def is_hermitian(self) -> bool:
        # (XZ)^dagger = -XZ, so Hermiticity needs k = #Y (mod 2)
        return (self.k - self.num_y) % 2 == 0

    @property
    def sign(self) -> int:
        """The real sign in front of the I/X/Y/Z letters of a Hermitian string."""
        if not self.is_hermitian:
            raise ValueError(f"{self} is not Hermitian")
        return 1 if (self.k - self.num_y) % 4 == 0 else -1

    def letters(self) -> str:
        out = []
        for v in range(self.n):
            xb, zb = (self.x >> v) & 1, (self.z >> v) & 1
            out.append("IZXY"[2 * xb + zb])
        return "".join(out)

    def __str__(self) -> str:
        return _PHASE_TEXT[(self.k - self.num_y) % 4] + self.letters()

    def __mul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)

    def __neg__(self) -> "PauliString":
        return PauliString(self.n, self.x, self.z, self.k + 2)


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """Exact product ``a @ b``.

    Bringing ``b``'s X factors left past ``a``'s Z factors costs one ``-1``
    per site where both are present.
    """
    if a.n != b.n:
        raise ValueError("site counts differ")
    crossings = _popcount(a.z & b.x)
    return PauliString(a.n, a.x ^ b.x, a.z ^ b.z, a.k + b.k + 2 * crossings)


def commutation_phase(a: PauliString, b: PauliString) -> int:
    """+1 if the strings commute, -1 if they anti-commute."""
    if a.n != b.n:
        raise ValueError("site counts differ")
    return -1 if (_popcount(a.x & b.z) + _popcount(a.z & b.x)) % 2 else 1


def stabilizer_generator(g: Graph, v: int) -> PauliString:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    return PauliString(g.n, 1 << v, g.adjacency[v], 0)


def product_over_set(g: Graph, s: Iterable[int]) -> PauliString:
    """Ordered product of the generators ``S_v`` for ``v`` in ``s`` (ascending)."""
    acc = PauliString.identity(g.n)
    for v in sorted(set(s)):
        acc = multiply(acc, stabilizer_generator(g, v))
    return acc


# -- real linear combinations ------------------------------------------------


@dataclass(frozen=True)
class ObservableExpr:
    """Real linear combination of Hermitian Pauli strings."""

    terms: tuple[tuple[float, PauliString], ...]

    def __post_init__(self) -> None:
        for coef, p in self.terms:
            if not p.is_hermitian:
                raise ValueError(f"term {p} is not Hermitian")
            if isinstance(coef, complex):
                raise TypeError("coefficients must be real")

    @property
    def n(self) -> int:
        return self.terms[0][1].n if self.terms else 0

    @classmethod
    def single(cls, p: PauliString, coef: float = 1.0) -> "ObservableExpr":
        return cls(((coef, p),))

    @classmethod
    def tensor(cls, factors: Sequence[Sequence[tuple[float, str]]]) -> "ObservableExpr":
        """Expand a tensor product of single-site sums.

        ``factors[v]`` lists ``(coefficient, letter)`` pairs for site ``v``;
        letters are from ``I X Y Z``.
        """
        n = len(factors)
        terms: list[tuple[float, str]] = [(1.0, "")]
        for site in factors:
            terms = [(c * c2, lab + l2) for c, lab in terms for c2, l2 in site]
        return cls(tuple((c, PauliString.from_label(lab)) for c, lab in terms if n))


INV_SQRT2 = 1.0 / math.sqrt(2.0)


def d_observable(n: int, u: int) -> ObservableExpr:
    """``D_u = (X_u + Z_u) / sqrt(2)``."""
    return ObservableExpr(
        (
            (INV_SQRT2, PauliString.from_sites(n, xs=[u])),
            (INV_SQRT2, PauliString.from_sites(n, zs=[u])),
        )
    )
