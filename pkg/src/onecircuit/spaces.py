"""Data models for the three operator families under study.

* ``CircuitSpace`` -- a discrete measure space on a one-circuit directed
  graph: a cycle ``x_1 <- x_2 <- ... <- x_kappa <- x_1`` with finitely many
  infinite in-branches ``... -> x_{i,2} -> x_{i,1} -> x_kappa`` attached, and
  a strictly positive measure on every point.  The self-map ``phi`` is
  implied by the graph and never stored.
* ``UnilateralShift`` -- a weighted shift described exactly through either
  its squared weights or the running products of squared weights (the
  squared norms of the orbit of the first basis vector).  Products are the
  canonical object because interesting shifts (e.g. the Dirichlet shift)
  have geo-polynomial products but not geo-polynomial squared weights.
* ``TreeShift`` -- a weighted shift on a rooted directed tree with one
  branching vertex: a finite trunk, a fan of branch entry weights, and one
  positive profile sequence per branch fixing the interior weight ratios.

All values are exact rationals; objects are immutable and validated eagerly
at construction (positivity, boundedness), never repaired.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exactseq import EvSeq, Poly, evseq_scale, positivity_on_range


@dataclass(frozen=True, order=True)
class Circuit:
    """The circuit point x_r, 1 <= r <= kappa."""

    r: int


@dataclass(frozen=True, order=True)
class Branch:
    """The branch point x_{i,j}: branch i at depth j >= 1."""

    i: int
    j: int


VertexId = Union[Circuit, Branch]


def vertex_key(x: VertexId) -> tuple[int, int, int]:
    """Deterministic sort key: circuit points first, then branches by (i, j)."""
    if isinstance(x, Circuit):
        return (0, x.r, 0)
    return (1, x.i, x.j)


def format_vertex(x: VertexId) -> str:
    if isinstance(x, Circuit):
        return f"x_{x.r}"
    return f"x_{x.i},{x.j}"


@dataclass(frozen=True)
class CircuitSpace:
    """One-circuit graph space: circuit measures plus one EvSeq per branch.

    ``circuit[r-1]`` is the measure of x_r and ``branches[i-1].value(j)`` the
    measure of x_{i,j}.  Every measure must be strictly positive, which for
    the branch tails is certified exactly through the positivity decision
    procedure.  The implied self-map sends x_{i,j} to x_{i,j-1} for j >= 2,
    both x_{i,1} and x_1 to x_kappa, and x_r to x_{r-1} for 2 <= r <= kappa.
    """

    circuit: tuple[Fraction, ...]
    branches: tuple[EvSeq, ...]

    def __post_init__(self):
        object.__setattr__(self, "circuit", tuple(Fraction(v) for v in self.circuit))
        object.__setattr__(self, "branches", tuple(self.branches))
        if not self.circuit:
            raise ValueError("the circuit needs at least one point")
        if any(v <= 0 for v in self.circuit):
            raise ValueError("every circuit measure must be positive")
        if not self.branches:
            raise ValueError("at least one branch is required")
        for i, b in enumerate(self.branches, start=1):
            if b.start != 1:
                raise ValueError(f"branch {i} must have domain starting at 1")
            if not b.is_positive_on_domain():
                raise ValueError(f"branch {i} measures are not strictly positive")

    @property
    def kappa(self) -> int:
        return len(self.circuit)

    @property
    def eta(self) -> int:
        return len(self.branches)

    def branch(self, i: int) -> EvSeq:
        if not 1 <= i <= self.eta:
            raise ValueError(f"no branch {i}")
        return self.branches[i - 1]

    def check_vertex(self, x: VertexId) -> None:
        if isinstance(x, Circuit):
            if not 1 <= x.r <= self.kappa:
                raise ValueError(f"invalid circuit index {x.r}")
        elif isinstance(x, Branch):
            if not (1 <= x.i <= self.eta and x.j >= 1):
                raise ValueError(f"invalid branch point ({x.i},{x.j})")
        else:
            raise TypeError(f"not a vertex: {x!r}")

    def mu(self, x: VertexId) -> Fraction:
        self.check_vertex(x)
        if isinstance(x, Circuit):
            return self.circuit[x.r - 1]
        return self.branches[x.i - 1].value(x.j)

    def circuit_vertices(self) -> list[Circuit]:
        return [Circuit(r) for r in range(1, self.kappa + 1)]

    def vertices_upto(self, depth: int) -> list[VertexId]:
        """All circuit points plus branch points with j <= depth, in order."""
        out: list[VertexId] = list(self.circuit_vertices())
        for i in range(1, self.eta + 1):
            out.extend(Branch(i, j) for j in range(1, depth + 1))
        return out


def measure_at(space: CircuitSpace, x: VertexId) -> Fraction:
    return space.mu(x)


def apply_phi(space: CircuitSpace, x: VertexId) -> VertexId:
    """The implied self-map of the one-circuit graph."""
    space.check_vertex(x)
    if isinstance(x, Branch):
        if x.j >= 2:
            return Branch(x.i, x.j - 1)
        return Circuit(space.kappa)
    if x.r == 1:
        return Circuit(space.kappa)
    return Circuit(x.r - 1)


def preimage(space: CircuitSpace, x: VertexId) -> tuple[VertexId, ...]:
    """Exactly { y : phi(y) = x }, in deterministic order."""
    space.check_vertex(x)
    if isinstance(x, Branch):
        return (Branch(x.i, x.j + 1),)
    if x.r == space.kappa:
        return (Circuit(1),) + tuple(Branch(i, 1) for i in range(1, space.eta + 1))
    return (Circuit(x.r + 1),)


# ---------------------------------------------------------------------------
# Unilateral weighted shifts
# ---------------------------------------------------------------------------

PRODUCTS = "products"
SQUARED = "squared"


@dataclass(frozen=True)
class UnilateralShift:
    """Unilateral weighted shift with positive weights, described exactly.

    ``form == "products"``: ``seq.value(n)`` is the product of the first n
    squared weights (so ``seq.value(0) == 1``); the squared weights are the
    consecutive ratios.  ``form == "squared"``: ``seq.value(n)`` is the
    squared weight s_n^2 itself; boundedness then forces a constant tail
    polynomial when ``q == 1``.
    """

    form: str
    seq: EvSeq

    def __post_init__(self):
        if self.form not in (PRODUCTS, SQUARED):
            raise ValueError(f"unknown shift description {self.form!r}")
        if self.seq.start != 0:
            raise ValueError("shift sequences are indexed from 0")
        if not self.seq.is_positive_on_domain():
            raise ValueError("shift data must be strictly positive")
        if self.form == PRODUCTS and self.seq.value(0) != 1:
            raise ValueError("weight products must start at 1")
        if self.form == SQUARED and self.seq.q == 1 and self.seq.poly.degree() > 0:
            raise ValueError("unbounded squared weights: polynomial tail of positive degree")

    @classmethod
    def from_products(cls, seq: EvSeq) -> "UnilateralShift":
        return cls(PRODUCTS, seq)

    @classmethod
    def from_product_poly(cls, p: Poly) -> "UnilateralShift":
        if p(0) != 1:
            raise ValueError("weight products must start at 1")
        if not positivity_on_range(p, 0):
            raise ValueError("weight products must stay positive")
        return cls(PRODUCTS, EvSeq(0, (), Fraction(1), p))

    @classmethod
    def from_squared_weights(cls, seq: EvSeq) -> "UnilateralShift":
        return cls(SQUARED, seq)

    def product(self, n: int) -> Fraction:
        """Product of the first n squared weights (1 for n == 0)."""
        if self.form == PRODUCTS:
            return self.seq.value(n)
        out = Fraction(1)
        for i in range(n):
            out *= self.seq.value(i)
        return out

    def squared_weight(self, n: int) -> Fraction:
        if self.form == SQUARED:
            return self.seq.value(n)
        return self.seq.value(n + 1) / self.seq.value(n)


def dirichlet_shift() -> UnilateralShift:
    """The shift with squared weights (n+2)/(n+1); weight products n+1."""
    return UnilateralShift.from_product_poly(Poly((Fraction(1), Fraction(1))))


# ---------------------------------------------------------------------------
# Weighted shifts on a rooted tree with one branching vertex
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TreeShift:
    """Weighted shift on the tree with trunk length kappa_t and eta_t branches.

    The trunk is x_{kappa_t} -> ... -> x_1 with squared weights
    ``trunk_sq[r-1]`` on the edge into x_r; at x_1 the tree fans out into
    eta_t branches with squared entry weights ``fan_sq[i-1]`` on the edges
    into x_{i,1}.  Interior branch weights are fixed by the positive profile
    sequences: squared weight into x_{i,j} equals Q_i(j)/Q_i(j-1) for j >= 2.
    Profiles are stored rather than per-edge weights because the interesting
    (polynomially growing) branches have geo-polynomial profiles but not
    geo-polynomial weight sequences.
    """

    trunk_sq: tuple[Fraction, ...]
    fan_sq: tuple[Fraction, ...]
    profiles: tuple[EvSeq, ...]

    def __post_init__(self):
        object.__setattr__(self, "trunk_sq", tuple(Fraction(v) for v in self.trunk_sq))
        object.__setattr__(self, "fan_sq", tuple(Fraction(v) for v in self.fan_sq))
        object.__setattr__(self, "profiles", tuple(self.profiles))
        if any(v <= 0 for v in self.trunk_sq):
            raise ValueError("trunk weights must be positive")
        if not self.fan_sq or any(v <= 0 for v in self.fan_sq):
            raise ValueError("fan weights must be positive and nonempty")
        if len(self.fan_sq) != len(self.profiles):
            raise ValueError("one profile per branch is required")
        for i, p in enumerate(self.profiles, start=1):
            if p.start != 1:
                raise ValueError(f"profile {i} must have domain starting at 1")
            if not p.is_positive_on_domain():
                raise ValueError(f"profile {i} is not strictly positive")

    @property
    def kappa_t(self) -> int:
        return len(self.trunk_sq) + 1

    @property
    def eta_t(self) -> int:
        return len(self.fan_sq)

    def branch_products(self, i: int) -> EvSeq:
        """B_i(n) = product of the first n squared weights along branch i.

        Defined for n >= 1; B_i(1) is the fan weight itself.
        """
        if not 1 <= i <= self.eta_t:
            raise ValueError(f"no branch {i}")
        prof = self.profiles[i - 1]
        return evseq_scale(prof, self.fan_sq[i - 1] / prof.value(1))
