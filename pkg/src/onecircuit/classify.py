"""Classification predicates for circuit spaces, shifts and tree shifts.

A bounded operator T is an m-isometry when the alternating binomial sum
``sum_k (-1)^k C(m,k) T*^k T^k`` vanishes, m-expansive when that sum is <= 0,
and completely hyperexpansive when it is <= 0 for every m >= 1.  For
composition operators on a one-circuit graph space all of these reduce to
exact statements about the measure data:

* m-isometry (m >= 2) holds iff every branch measure sequence is one
  polynomial of degree at most m-2 and kappa circuit balance equations hold;
  an isometry (m = 1) would force the one-step density to equal 1
  everywhere, which the branching vertex makes impossible.
* the pointwise alternating sums on a branch are the m-th forward
  differences of the branch sequence divided by a positive measure, so
  "for all points" quantifiers are discharged exactly on the EvSeq level,
  never sampled.

Shifts are classified through their weight-product sequences (polynomial of
degree <= m-1 iff m-isometric) and tree shifts through the squared orbit
norms of every basis vector, which collapse to finitely many polynomial
window checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .exactseq import (
    DIVERGENT,
    EvSeq,
    Poly,
    as_polynomial,
    first_nonzero_index,
    forward_difference,
    is_polynomial_of_degree_at_most,
    nonnegativity_on_range,
    nonpositivity_on_range,
    tail_series_sum,
)
from .radon import h_n, phi_decompose
from .spaces import (
    PRODUCTS,
    Branch,
    Circuit,
    CircuitSpace,
    TreeShift,
    UnilateralShift,
    VertexId,
)

LE = "<="
GE = ">="


class ContradictionError(RuntimeError):
    """An exact internal cross-check failed; a theorem would be falsified."""


@dataclass(frozen=True)
class IsometryReport:
    """Outcome of an m-isometry query.

    ``least_order`` is the smallest order up to the search limit at which the
    operator is an m-isometry (orders are hereditary upward), and ``strict``
    is true when the queried order is that least order.  ``witnesses`` lists
    (point, failing value) pairs when the verdict is negative: a nonzero
    branch difference, a nonzero circuit balance sum, or for an exactly
    too-high-degree branch its nonzero leading difference constant.
    """

    order: int
    is_m_isometry: bool
    strict: bool
    least_order: int | None
    witnesses: tuple[tuple[object, Fraction], ...] = field(default=())


# ---------------------------------------------------------------------------
# Circuit spaces
# ---------------------------------------------------------------------------


def circuit_balance_sum(space: CircuitSpace, r: int, m: int) -> Fraction:
    """The r-th circuit balance sum for order m.

    ``sum_p (-1)^p C(m,p) [ mu(x_{phi2(p+r)}) + sum_i sum_{l<phi1(p+r)}
    mu(x_{i, l*kappa + phi2(p+r)}) ]`` -- zero for every r exactly when the
    circuit measures are compatible with an m-isometry.
    """
    total = Fraction(0)
    for p in range(m + 1):
        d = phi_decompose(p + r, space.kappa)
        term = space.circuit[d.phi2 - 1]
        for b in space.branches:
            for l in range(d.phi1):
                term += b.value(l * space.kappa + d.phi2)
        total += (-1) ** p * comb(m, p) * term
    return total


def _isometry_verdict(space: CircuitSpace, m: int) -> tuple[bool, list[tuple[object, Fraction]]]:
    witnesses: list[tuple[object, Fraction]] = []
    if m == 1:
        for r in range(1, space.kappa + 1):
            v = h_n(space, Circuit(r), 1)
            if v != 1:
                witnesses.append((Circuit(r), v - 1))
        for i in range(1, space.eta + 1):
            b = space.branch(i)
            if not is_polynomial_of_degree_at_most(b, 0):
                d = forward_difference(b, 1)
                j = first_nonzero_index(d)
                witnesses.append((Branch(i, j), d.value(j)))
        return (not witnesses), witnesses
    for i in range(1, space.eta + 1):
        b = space.branch(i)
        if is_polynomial_of_degree_at_most(b, m - 2):
            continue
        d = forward_difference(b, m)
        j = first_nonzero_index(d)
        if j is not None:
            witnesses.append((Branch(i, j), d.value(j)))
        else:
            # branch is a polynomial of degree exactly m-1: the (m-1)-st
            # difference is a nonzero constant, the obstruction itself
            d1 = forward_difference(b, m - 1)
            witnesses.append((Branch(i, b.start), d1.value(d1.start)))
    for r in range(1, space.kappa + 1):
        s = circuit_balance_sum(space, r, m)
        if s != 0:
            witnesses.append((Circuit(r), s))
    return (not witnesses), witnesses


def is_m_isometry_circuit(space: CircuitSpace, m: int, m_max: int | None = None) -> IsometryReport:
    """Decide m-isometry of the circuit composition operator exactly."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    ok, witnesses = _isometry_verdict(space, m)
    limit = max(m, m_max or m)
    least = None
    for mm in range(1, limit + 1):
        verdict = ok if mm == m else _isometry_verdict(space, mm)[0]
        if verdict:
            least = mm
            break
    strict = ok and least == m
    return IsometryReport(m, ok, strict, least, tuple(witnesses))


def _evseq_sign_ok(s: EvSeq, side: str) -> bool:
    if side == GE:
        if any(v < 0 for v in s.prefix):
            return False
        return nonnegativity_on_range(s.poly, s.tail_start)
    if side == LE:
        if any(v > 0 for v in s.prefix):
            return False
        return nonpositivity_on_range(s.poly, s.tail_start)
    raise ValueError(f"side must be {LE!r} or {GE!r}")


def is_m_expansive(space: CircuitSpace, m: int, side: str) -> bool:
    """Decide a one-sided alternating inequality at every point, exactly.

    The tested quantity at x is ``(-1)^m sum_k (-1)^k C(m,k) h_k(x)``; the
    call returns True when it satisfies ``side`` (``"<="`` or ``">="``
    against zero) for all x.  On a branch the quantity is the m-th forward
    difference of the branch sequence over a positive measure, so the
    infinite quantifier reduces to exact sign tests of an EvSeq; the circuit
    contributes finitely many values.  ``side == "<="`` with even m (resp.
    ``">="`` with odd m) expresses m-expansivity.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    for r in range(1, space.kappa + 1):
        x = Circuit(r)
        val = (-1) ** m * sum(
            ((-1) ** k * comb(m, k) * h_n(space, x, k) for k in range(m + 1)), Fraction(0)
        )
        if side == LE and val > 0:
            return False
        if side == GE and val < 0:
            return False
    for i in range(1, space.eta + 1):
        if not _evseq_sign_ok(forward_difference(space.branch(i), m), side):
            return False
    return True


def _beta_m_nonpositive(space: CircuitSpace, m: int) -> bool:
    # beta_m <= 0 pointwise; the sign of (-1)^m converts between conventions
    return is_m_expansive(space, m, LE if m % 2 == 0 else GE)


def is_completely_hyperexpansive(space: CircuitSpace, certify_depth: int = 8) -> bool:
    """Complete hyperexpansivity; equivalent to 2-isometricity on this class.

    The verdict is the exact 2-isometry test.  Additionally the alternating
    inequalities are certified pointwise up to ``certify_depth``; any
    disagreement with the verdict is raised as a :class:`ContradictionError`
    since it cannot happen for correct arithmetic.
    """
    if certify_depth < 2:
        raise ValueError("certification depth must be at least 2")
    verdict = is_m_isometry_circuit(space, 2).is_m_isometry
    certified = all(_beta_m_nonpositive(space, n) for n in range(1, certify_depth + 1))
    if certified != verdict:
        raise ContradictionError(
            f"hyperexpansivity certificate ({certified}) disagrees with "
            f"2-isometry verdict ({verdict})"
        )
    return verdict


def is_analytic(space: CircuitSpace) -> bool:
    """True when no residue class supports a summable union of branch series."""
    for r in range(1, space.kappa + 1):
        if not any(
            tail_series_sum(space.branch(i), space.kappa, r) is DIVERGENT
            for i in range(1, space.eta + 1)
        ):
            return False
    return True


@dataclass(frozen=True)
class RngInfReport:
    """Dimension of the joint range intersection with a basis description.

    Each residue class r carries an indicator function supported on x_r and
    the branch points at depths congruent to r; the intersection of all
    forward ranges is spanned by those indicators of finite squared norm.
    """

    dimension: int
    residues: tuple[tuple[int, Fraction], ...]


def ranginf_dimension(space: CircuitSpace) -> RngInfReport:
    finite: list[tuple[int, Fraction]] = []
    for r in range(1, space.kappa + 1):
        norm = space.circuit[r - 1]
        ok = True
        for i in range(1, space.eta + 1):
            part = tail_series_sum(space.branch(i), space.kappa, r)
            if part is DIVERGENT:
                ok = False
                break
            norm += part
        if ok:
            finite.append((r, norm))
    return RngInfReport(len(finite), tuple(finite))


# ---------------------------------------------------------------------------
# Unilateral shifts
# ---------------------------------------------------------------------------


def _shift_products_evseq(shift: UnilateralShift) -> EvSeq | None:
    """The weight-product sequence as an EvSeq, when geo-polynomial.

    For squared-weight data the products are geo-polynomial precisely when
    the squared weights are eventually 1 (eventually-constant c != 1 or a
    decaying tail both force non-polynomial products); in that case the
    products are an eventually constant sequence.
    """
    if shift.form == PRODUCTS:
        return shift.seq
    sq = shift.seq
    tail = sq.tail_start
    if sq.q == 1 and sq.poly.coeff(0) == 1:
        prefix = tuple(shift.product(n) for n in range(tail))
        return EvSeq(0, prefix, Fraction(1), Poly((shift.product(tail),)))
    return None


def shift_is_m_isometry(shift: UnilateralShift, m: int, m_max: int | None = None) -> IsometryReport:
    """Decide m-isometry of a unilateral weighted shift exactly.

    The shift is an m-isometry iff its weight-product sequence is one
    polynomial of degree at most m-1.  Both supported descriptions decide
    this outright: product data is already an EvSeq, and squared-weight data
    either reduces to one (weights eventually 1) or is refuted by an explicit
    nonzero alternating window.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    products = _shift_products_evseq(shift)

    def verdict(order: int) -> tuple[bool, list[tuple[object, Fraction]]]:
        if products is not None:
            if is_polynomial_of_degree_at_most(products, order - 1):
                return True, []
            # a non-polynomial product sequence always has a nonzero window
            d = forward_difference(products, order)
            j = first_nonzero_index(d)
            return False, [(j, d.value(j))]
        # squared-weight data whose products are not geo-polynomial: scan for
        # a nonzero alternating window, guaranteed to exist
        n = 0
        while True:
            w = sum(
                ((-1) ** k * comb(order, k) * shift.product(n + k) for k in range(order + 1)),
                Fraction(0),
            )
            if w != 0:
                return False, [(n, w)]
            n += 1

    ok, witnesses = verdict(m)
    limit = max(m, m_max or m)
    least = None
    for mm in range(1, limit + 1):
        v = ok if mm == m else verdict(mm)[0]
        if v:
            least = mm
            break
    strict = ok and least == m
    return IsometryReport(m, ok, strict, least, tuple(witnesses))


# ---------------------------------------------------------------------------
# Tree shifts
# ---------------------------------------------------------------------------


def tree_is_m_isometry(tree: TreeShift, m: int) -> bool:
    """Decide m-isometry of a weighted shift on the one-branching-point tree.

    Distinct basis vectors have orthogonal orbits, so the operator is an
    m-isometry iff every basis vector's squared orbit norm sequence is one
    polynomial of degree at most m-1.  Branch vectors require each branch
    product sequence to be polynomial; the branching vertex requires the sum
    of those polynomials to extrapolate to 1 at 0; each trunk vertex pins the
    same polynomial against the finite trunk products.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    branch_polys = []
    for i in range(1, tree.eta_t + 1):
        products = tree.branch_products(i)
        if not is_polynomial_of_degree_at_most(products, m - 1):
            return False
        branch_polys.append(as_polynomial(products))
    total = branch_polys[0]
    for p in branch_polys[1:]:
        total = total + p
    if total(0) != 1:
        return False
    acc = Fraction(1)
    for r in range(2, tree.kappa_t + 1):
        acc *= tree.trunk_sq[r - 2]
        for n in range(r - 1):
            lhs = Fraction(1)
            for t in range(r - n, r):
                lhs *= tree.trunk_sq[t - 1]
            if acc * total(n - r + 1) != lhs:
                return False
    return True
