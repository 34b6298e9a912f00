"""Brute-force graph-traversal oracle for cross-checking every closed form.

This module recomputes the quantities of :mod:`onecircuit.radon`,
:mod:`onecircuit.classify` and :mod:`onecircuit.dual` purely from the
definitions: iterated preimage sets are enumerated vertex by vertex, and
densities, alternating sums and orbit norms are obtained by summing measures
over those sets.  It is deliberately slow and deliberately independent --
the oracle imports only the space model, never the closed-form modules, so
the two computation paths share no code.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

from .spaces import CircuitSpace, VertexId, apply_phi, preimage, vertex_key


class FiniteFunction:
    """Finitely supported rational-valued function on the vertex set."""

    def __init__(self, values: Mapping[VertexId, Fraction] | Iterable[tuple[VertexId, Fraction]]):
        items = values.items() if isinstance(values, Mapping) else values
        self.values = {x: Fraction(v) for x, v in items if Fraction(v) != 0}

    @classmethod
    def indicator(cls, x: VertexId) -> "FiniteFunction":
        return cls({x: Fraction(1)})

    @classmethod
    def zero(cls) -> "FiniteFunction":
        return cls({})

    @property
    def support(self) -> list[VertexId]:
        return sorted(self.values, key=vertex_key)

    def __call__(self, x: VertexId) -> Fraction:
        return self.values.get(x, Fraction(0))


def preimage_n(space: CircuitSpace, x: VertexId, n: int) -> frozenset[VertexId]:
    """The full n-fold preimage set of x, by repeated one-step expansion."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    frontier: set[VertexId] = {x}
    for _ in range(n):
        nxt: set[VertexId] = set()
        for y in frontier:
            nxt.update(preimage(space, y))
        frontier = nxt
    return frozenset(frontier)


def _set_mass(space: CircuitSpace, vertices: Iterable[VertexId]) -> Fraction:
    return sum((space.mu(y) for y in vertices), Fraction(0))


def h_n_bruteforce(space: CircuitSpace, x: VertexId, n: int) -> Fraction:
    """n-step density from the definition: mass of the preimage over mass of x."""
    return _set_mass(space, preimage_n(space, x, n)) / space.mu(x)


def beta_diag(space: CircuitSpace, x: VertexId, m: int) -> Fraction:
    """Diagonal alternating sum sum_k (-1)^k C(m,k) h_k(x), all by traversal."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return sum(
        ((-1) ** k * comb(m, k) * h_n_bruteforce(space, x, k) for k in range(m + 1)),
        Fraction(0),
    )


def window_sum_bruteforce(space: CircuitSpace, x: VertexId, m: int, shift: int) -> Fraction:
    """Shifted alternating window sum_k (-1)^k C(m,k) h_{shift+k}(x)."""
    return sum(
        ((-1) ** k * comb(m, k) * h_n_bruteforce(space, x, shift + k) for k in range(m + 1)),
        Fraction(0),
    )


def gamma_seq(space: CircuitSpace, f: FiniteFunction, n_max: int) -> list[Fraction]:
    """Squared orbit norms ||C^n f||^2 for n = 0..n_max, computed exactly.

    The n-fold preimage fibers of distinct support points are disjoint, so
    the norm splits into per-point masses; each fiber is grown one step at a
    time.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    fibers: dict[VertexId, set[VertexId]] = {y: {y} for y in f.support}
    out: list[Fraction] = []
    for _ in range(n_max + 1):
        total = Fraction(0)
        for y, fiber in fibers.items():
            total += f(y) ** 2 * _set_mass(space, fiber)
        out.append(total)
        for y, fiber in fibers.items():
            nxt: set[VertexId] = set()
            for z in fiber:
                nxt.update(preimage(space, z))
            fibers[y] = nxt
    return out


def _h1_bruteforce(space: CircuitSpace, x: VertexId) -> Fraction:
    return _set_mass(space, preimage(space, x)) / space.mu(x)


def dual_h_bruteforce(space: CircuitSpace, x: VertexId, n: int) -> Fraction:
    """n-step density of the dual-weighted measure, from the definitions.

    The dual weight at a point is the reciprocal one-step density at its
    image; its n-fold running product along the forward orbit reweights the
    measure before the preimage mass is collected.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = Fraction(0)
    for y in preimage_n(space, x, n):
        w = Fraction(1)
        z = y
        for _ in range(n):
            w /= _h1_bruteforce(space, apply_phi(space, z))
            z = apply_phi(space, z)
        total += w * w * space.mu(y)
    return total / space.mu(x)
