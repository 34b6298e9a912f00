"""Closed-form Radon-Nikodym derivatives of the iterated circuit map.

For the composition operator of a one-circuit graph space, the density of
the pushforward of the measure under the n-fold inverse map has exact closed
forms: on a branch point it is the ratio of two branch measures, and on the
circuit it reduces through the index split ``n = phi1*kappa + phi2`` (with
remainder ``phi2`` in 1..kappa) to a finite double sum anchored at x_1.
These formulas never touch graph traversal; the traversal route lives in the
independent :mod:`onecircuit.oracle` so the two stay cross-checkable.

The operator norm obeys ``norm^2 = sup h`` and left invertibility is
equivalent to ``inf h > 0``; both extrema are computed exactly through the
ratio-bound machinery on each branch plus the finitely many circuit values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactseq import ratio_bounds
from .spaces import Branch, Circuit, CircuitSpace, VertexId


@dataclass(frozen=True)
class PhiDecomposition:
    """The unique split n = phi1*kappa + phi2 with 1 <= phi2 <= kappa."""

    phi1: int
    phi2: int


def phi_decompose(n: int, kappa: int) -> PhiDecomposition:
    if kappa < 1:
        raise ValueError("kappa must be a positive integer")
    phi2 = ((n - 1) % kappa) + 1
    phi1 = (n - phi2) // kappa
    return PhiDecomposition(phi1, phi2)


def _h_at_x1(space: CircuitSpace, m: int) -> Fraction:
    """The n-step density at x_1 for n = m >= 0."""
    d = phi_decompose(m + 1, space.kappa)
    total = space.circuit[d.phi2 - 1]
    for b in space.branches:
        for l in range(d.phi1):
            total += b.value(l * space.kappa + d.phi2)
    return total / space.circuit[0]


def h_n(space: CircuitSpace, x: VertexId, n: int) -> Fraction:
    """Exact n-step Radon-Nikodym derivative at the point x.

    Branch points give a ratio of branch measures; circuit points transfer
    to x_1 through ``h_n(x_r) = (mu(x_1)/mu(x_r)) * h_{n+r-1}(x_1)``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    space.check_vertex(x)
    if n == 0:
        return Fraction(1)
    if isinstance(x, Branch):
        b = space.branch(x.i)
        return b.value(n + x.j) / b.value(x.j)
    return space.circuit[0] / space.mu(x) * _h_at_x1(space, n + x.r - 1)


def _branch_h_bounds(space: CircuitSpace, i: int) -> tuple[Fraction, Fraction]:
    return ratio_bounds(space.branch(i))


def sup_h(space: CircuitSpace) -> Fraction:
    """Exact supremum of the one-step density over the whole space."""
    vals = [h_n(space, Circuit(r), 1) for r in range(1, space.kappa + 1)]
    for i in range(1, space.eta + 1):
        hi, _ = _branch_h_bounds(space, i)
        vals.append(hi)
    return max(vals)


def inf_h(space: CircuitSpace) -> Fraction:
    """Exact infimum of the one-step density; positive for every valid space."""
    vals = [h_n(space, Circuit(r), 1) for r in range(1, space.kappa + 1)]
    for i in range(1, space.eta + 1):
        _, lo = _branch_h_bounds(space, i)
        vals.append(lo)
    return min(vals)


def norm_sq(space: CircuitSpace) -> Fraction:
    """Squared operator norm of the composition operator: sup of the density."""
    return sup_h(space)


def lower_bound_sq(space: CircuitSpace) -> Fraction:
    """Squared lower bound of the composition operator: inf of the density."""
    return inf_h(space)
