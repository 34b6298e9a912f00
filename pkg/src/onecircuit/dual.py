"""Cauchy dual analysis: moments, representing measures, operator identities.

The Cauchy dual of a left-invertible composition operator is the weighted
composition operator with weight ``1 / (h o phi)`` where h is the one-step
density.  For a 2-isometric one-point circuit (constant branch measures of
total mass c) everything is explicit with ``alpha = mu1 / (mu1 + c)``:

* the n-step dual density at x_1 equals
  ``alpha^(2n) + (c/mu1) * sum_{k=1..n} alpha^(2k)`` and 1 elsewhere;
* that sequence is the moment sequence of the two-atom measure with mass
  ``(mu1+c)/(2mu1+c)`` at ``alpha^2`` and mass ``mu1/(2mu1+c)`` at 0, which
  certifies subnormality of the dual.

Moment positivity is decided exactly: a finite prefix is a plausible
Stieltjes moment sequence iff both shifted Hankel matrices are positive
semidefinite, tested by symmetric fraction-free elimination with explicit
handling of zero pivots.  The module also decides the kernel condition
(one-step density constant on each preimage fiber) and the multiplication
form of Delta-regularity through a squared pointwise identity that avoids
irrational square roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .classify import is_m_isometry_circuit
from .exactseq import evseq_is_zero_from, evseq_mul, evseq_shift, evseq_sub
from .radon import h_n, inf_h
from .spaces import Branch, Circuit, CircuitSpace, VertexId, apply_phi


@dataclass(frozen=True)
class AtomicMeasure:
    """Finite positive measure on [0, oo) with finitely many atoms."""

    atoms: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        atoms = tuple(
            (Fraction(loc), Fraction(mass)) for loc, mass in sorted(self.atoms)
        )
        object.__setattr__(self, "atoms", atoms)
        locations = [loc for loc, _ in atoms]
        if len(set(locations)) != len(locations):
            raise ValueError("atom locations must be distinct")
        if any(loc < 0 for loc in locations):
            raise ValueError("atoms must sit on the nonnegative axis")
        if any(mass <= 0 for _, mass in atoms):
            raise ValueError("atom masses must be positive")

    def total_mass(self) -> Fraction:
        return sum((mass for _, mass in self.atoms), Fraction(0))

    def moment(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("moment order must be nonnegative")
        return sum((mass * loc**n for loc, mass in self.atoms), Fraction(0))

    def moments(self, n_max: int) -> list[Fraction]:
        return [self.moment(n) for n in range(n_max + 1)]


@dataclass(frozen=True)
class MomentPrefix:
    """A finite initial segment s_0..s_N of a would-be moment sequence."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)


# ---------------------------------------------------------------------------
# Exact positive-semidefiniteness and the Stieltjes test
# ---------------------------------------------------------------------------


def _is_psd(matrix: list[list[Fraction]]) -> bool:
    """Exact PSD test by symmetric elimination with zero-pivot handling.

    Repeatedly pivots on a positive diagonal entry and passes to the Schur
    complement.  When no positive diagonal entry remains, the matrix is PSD
    iff it is zero: a negative diagonal entry fails outright, and a zero
    diagonal with a nonzero row violates the two-by-two minor bound.
    """
    m = [row[:] for row in matrix]
    active = list(range(len(m)))
    while active:
        pivot = next((k for k in active if m[k][k] > 0), None)
        if pivot is None:
            for i in active:
                if m[i][i] < 0:
                    return False
                if any(m[i][j] != 0 for j in active):
                    return False
            return True
        active.remove(pivot)
        pv = m[pivot][pivot]
        for i in active:
            if m[i][pivot] == 0:
                continue
            f = m[i][pivot] / pv
            for j in active:
                m[i][j] -= f * m[pivot][j]
    return True


def hankel_matrices(values: Sequence[Fraction]) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
    """The two maximal Hankel matrices [s_{i+j}] and [s_{i+j+1}] of a prefix."""
    s = [Fraction(v) for v in values]
    n = len(s) - 1
    if n < 1:
        raise ValueError("at least two moment values are required")
    k0 = n // 2
    k1 = (n - 1) // 2
    h0 = [[s[i + j] for j in range(k0 + 1)] for i in range(k0 + 1)]
    h1 = [[s[i + j + 1] for j in range(k1 + 1)] for i in range(k1 + 1)]
    return h0, h1


def stieltjes_check(prefix: MomentPrefix | Sequence[Fraction]) -> bool:
    """Necessary Stieltjes test at the available order.

    True iff both Hankel matrices built from the prefix are positive
    semidefinite -- exactly the condition every genuine moment sequence of a
    positive measure on [0, oo) satisfies at every truncation order.
    """
    values = prefix.values if isinstance(prefix, MomentPrefix) else prefix
    h0, h1 = hankel_matrices(values)
    return _is_psd(h0) and _is_psd(h1)


# ---------------------------------------------------------------------------
# Closed forms for the one-point circuit
# ---------------------------------------------------------------------------


def _dual_parameters(space: CircuitSpace) -> tuple[Fraction, Fraction, Fraction]:
    """(mu1, c, alpha) for a verified 2-isometric one-point circuit."""
    if space.kappa != 1:
        raise ValueError("closed dual forms require a one-point circuit")
    if not is_m_isometry_circuit(space, 2).is_m_isometry:
        raise ValueError("closed dual forms require a 2-isometric space")
    mu1 = space.circuit[0]
    c = sum((b.value(1) for b in space.branches), Fraction(0))
    return mu1, c, mu1 / (mu1 + c)


def dual_weight(space: CircuitSpace, x: VertexId) -> Fraction:
    """The dual weight at x: reciprocal one-step density at the image of x.

    Left invertibility is automatic for these spaces (the density infimum is
    a minimum of finitely many positive ratios and the positive tail limits).
    """
    return 1 / h_n(space, apply_phi(space, x), 1)


def is_left_invertible(space: CircuitSpace) -> bool:
    return inf_h(space) > 0


def dual_moment_closed_form(space: CircuitSpace, x: VertexId, n: int) -> Fraction:
    """n-step dual density at x for a 2-isometric one-point circuit.

    Equals ``alpha^(2n) + (c/mu1) sum_{k=1..n} alpha^(2k)`` at the circuit
    point and 1 everywhere else.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    mu1, c, alpha = _dual_parameters(space)
    space.check_vertex(x)
    if not isinstance(x, Circuit):
        return Fraction(1)
    a2 = alpha * alpha
    return alpha ** (2 * n) + c / mu1 * sum((a2**k for k in range(1, n + 1)), Fraction(0))


def dual_representing_measure(space: CircuitSpace) -> AtomicMeasure:
    """The two-atom measure whose moments are the dual densities at x_1."""
    mu1, c, alpha = _dual_parameters(space)
    return AtomicMeasure(
        (
            (Fraction(0), mu1 / (2 * mu1 + c)),
            (alpha * alpha, (mu1 + c) / (2 * mu1 + c)),
        )
    )


def dual_moment_prefix(space: CircuitSpace, n_max: int) -> MomentPrefix:
    return MomentPrefix(tuple(dual_moment_closed_form(space, Circuit(1), n) for n in range(n_max + 1)))


# ---------------------------------------------------------------------------
# Kernel condition and Delta-regularity
# ---------------------------------------------------------------------------


def kernel_condition(space: CircuitSpace) -> bool:
    """Whether the one-step density is constant on every preimage fiber.

    Only the fiber over the branching vertex has more than one point: it
    consists of x_1 and the first point of every branch, so the test is a
    finite exact comparison.
    """
    reference = h_n(space, Circuit(1), 1)
    return all(
        h_n(space, Branch(i, 1), 1) == reference for i in range(1, space.eta + 1)
    )


def delta_regular(space: CircuitSpace, require_2iso: bool = True) -> bool:
    """Decide the multiplication form of Delta-regularity exactly.

    Squaring the defining operator identity for the multiplication-type
    defect ``h - 1`` gives the rational pointwise criterion
    ``(h(x)-1) * (h(x) - h(phi(x))) == 0`` for every x.  Circuit points and
    the branch entry points are finitely many; along a branch interior the
    criterion says that pointwise either consecutive measures agree or
    consecutive ratios agree, which collapses to one product sequence being
    identically zero -- decidable on the EvSeq level.
    """
    if require_2iso and not is_m_isometry_circuit(space, 2).is_m_isometry:
        raise ValueError("the space is not a 2-isometry; pass require_2iso=False to force")
    for r in range(1, space.kappa + 1):
        x = Circuit(r)
        hx = h_n(space, x, 1)
        hpx = h_n(space, apply_phi(space, x), 1)
        if (hx - 1) * (hx - hpx) != 0:
            return False
    h_branching = h_n(space, Circuit(space.kappa), 1)
    for i in range(1, space.eta + 1):
        entry = h_n(space, Branch(i, 1), 1)
        if (entry - 1) * (entry - h_branching) != 0:
            return False
    for i in range(1, space.eta + 1):
        b = space.branch(i)
        up = evseq_shift(b, 1)
        down = evseq_shift(b, -1)
        flat = evseq_sub(up, b)  # zero at j iff mu(x_{i,j+1}) == mu(x_{i,j})
        balanced = evseq_sub(evseq_mul(up, down), evseq_mul(b, b))
        if not evseq_is_zero_from(evseq_mul(flat, balanced), 2):
            return False
    return True
