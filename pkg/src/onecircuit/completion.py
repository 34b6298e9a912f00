"""Completion solvers: extend prescribed data to m-isometric operators.

Four problems are solved exactly:

* ``complete_shift`` -- extend a finite list of squared shift weights to an
  m-isometric shift, or prove no extension exists.  Short prefixes yield a
  one-parameter family of strict completions; long prefixes force the
  weight-product polynomial through Lagrange interpolation, leaving only
  window identities and positivity to check.
* ``complete_circuit_from_branches`` -- given the branch measures (positive
  polynomials of degree <= m-2) on a circuit longer than m, solve the
  circulant balance system exactly; the solution set is a line in direction
  (1,...,1) and the admissible parameters form an open ray.
* ``complete_circuit_from_circuit`` -- given the circuit measures, decide
  the 2-isometric completion: possible iff their difference sequence is a
  positive constant, in which case constant branches of total mass
  kappa*(difference) work; for two or more branches a reweighting transform
  produces further solutions.
* ``complete_branch_prefix`` -- prescribe the first branch measures on a
  single-point circuit with one branch; a minimal-degree positive polynomial
  extension is preferred, otherwise the certified interpolation family
  extends the prefix with degree len(prefix).

``construct_2_3_isometry`` builds the explicit two-parameter polynomial
family of 2- and 3-isometric circuit spaces (linear branch measures, a
quadratic circuit measure polynomial with free additive parameter t).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .classify import is_m_isometry_circuit
from .radon import phi_decompose
from .exactseq import (
    EvSeq,
    ExtensionFamily,
    Poly,
    completion_extend,
    evseq_add,
    evseq_scale,
    first_nonpositive,
    lagrange_fit,
    positivity_on_range,
    ratio_bounds,
)
from .spaces import CircuitSpace, UnilateralShift

SOLVED = "solved"
NO_SOLUTION = "no-solution"
FAMILY = "family"


# ---------------------------------------------------------------------------
# Exact linear algebra (fraction arithmetic, small dense systems)
# ---------------------------------------------------------------------------


def solve_linear_system(
    matrix: list[list[Fraction]], rhs: list[Fraction]
) -> tuple[int, bool, list[Fraction] | None, list[list[Fraction]]]:
    """Gaussian elimination over the rationals.

    Returns (rank, consistent, particular solution with free variables set
    to zero or None when inconsistent, kernel basis).
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    aug = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pv = aug[r][c]
        aug[r] = [v / pv for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    rank = len(pivots)
    consistent = all(row[cols] == 0 for row in aug[rank:])
    particular = None
    if consistent:
        particular = [Fraction(0)] * cols
        for i, c in enumerate(pivots):
            particular[c] = aug[i][cols]
    free = [c for c in range(cols) if c not in pivots]
    kernel: list[list[Fraction]] = []
    for fc in free:
        vec = [Fraction(0)] * cols
        vec[fc] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -aug[i][fc]
        kernel.append(vec)
    return rank, consistent, particular, kernel


def circulant_matrix(kappa: int, m: int) -> list[list[Fraction]]:
    """The kappa x kappa circulant with symbol coefficients (-1)^p C(m,p).

    Row r, column c carries the coefficient with index (c - r) mod kappa;
    the associated polynomial is (1-x)^m, so for kappa > m the rank is
    kappa-1 and the kernel is spanned by the all-ones vector.
    """
    a = [Fraction((-1) ** p * comb(m, p)) if p <= m else Fraction(0) for p in range(kappa)]
    return [[a[(c - r) % kappa] for c in range(kappa)] for r in range(kappa)]


# ---------------------------------------------------------------------------
# Result and family types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShiftFamily:
    """Strict m-isometric shift completions ``w_t = base + t*direction``.

    For every t on the closed ray ``[threshold, oo)`` the weight products
    ``w_t`` match the prescribed prefix, stay positive, and have degree
    exactly m-1, so the associated shift is a strict m-isometry.
    """

    order: int
    extension: ExtensionFamily

    @property
    def threshold(self) -> Fraction:
        return self.extension.threshold

    def products_at(self, t) -> Poly:
        return self.extension.at(t)

    def shift_at(self, t) -> UnilateralShift:
        return UnilateralShift.from_product_poly(self.products_at(t))


@dataclass(frozen=True)
class CircuitFamily:
    """m-isometric circuit completions ``mu_t = base + t*(1,...,1)``.

    The branch measures are fixed polynomials; the circuit measures move
    along the all-ones kernel direction.  Members exist exactly for
    ``t > threshold`` (open endpoint), the positivity boundary.
    """

    order: int
    base: tuple[Fraction, ...]
    branch_polys: tuple[Poly, ...]
    threshold: Fraction

    @property
    def kappa(self) -> int:
        return len(self.base)

    def space_at(self, t) -> CircuitSpace:
        t = Fraction(t)
        if t <= self.threshold:
            raise ValueError(f"parameter {t} outside the open ray ({self.threshold}, oo)")
        circuit = tuple(v + t for v in self.base)
        branches = tuple(EvSeq(1, (), Fraction(1), w) for w in self.branch_polys)
        return CircuitSpace(circuit, branches)


@dataclass(frozen=True)
class CompletionResult:
    """Outcome of a completion problem.

    ``status`` is one of ``solved``, ``family``, ``no-solution``.  Solved
    shift problems carry the forced weight-product polynomial ``poly`` and a
    strictness flag; solved circuit problems carry the completed ``space``.
    Families carry their parameterisation.  ``witness`` explains a negative
    verdict as (kind, index, value): a failed window identity or the first
    integer where positivity breaks.
    """

    status: str
    poly: Poly | None = None
    strict: bool | None = None
    family: ShiftFamily | CircuitFamily | None = None
    space: CircuitSpace | None = None
    witness: tuple[str, int, Fraction] | None = None


# ---------------------------------------------------------------------------
# Unilateral shift completion
# ---------------------------------------------------------------------------


def complete_shift(
    squared_prefix: list[Fraction], m: int, intermediates: list[Fraction] | None = None
) -> CompletionResult:
    """Extend squared weights a_0..a_k to an m-isometric shift, if possible.

    With k+3 <= m the data underdetermines the weight products: the gap
    weights up to index m-3 may be chosen freely (``intermediates``, default
    all 1) and the result is a one-parameter family of strict m-isometries.
    Otherwise the first m product values force the candidate polynomial; the
    completion exists iff the remaining known products satisfy the
    alternating window identities and the polynomial stays positive from m
    on.  Strict exactly when the forced polynomial has degree m-1.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    a = [Fraction(v) for v in squared_prefix]
    if not a or any(v <= 0 for v in a):
        raise ValueError("squared weights must be positive and nonempty")
    k = len(a) - 1
    if k + 3 <= m:
        gap = [Fraction(1)] * (m - 3 - k) if intermediates is None else [Fraction(v) for v in intermediates]
        if len(gap) != m - 3 - k:
            raise ValueError(f"expected {m - 3 - k} intermediate weights, got {len(gap)}")
        if any(v <= 0 for v in gap):
            raise ValueError("intermediate weights must be positive")
        weights = a + gap
        products = [Fraction(1)]
        for w in weights:
            products.append(products[-1] * w)
        family = ShiftFamily(m, completion_extend(products))
        return CompletionResult(FAMILY, family=family)
    if intermediates:
        raise ValueError("intermediate weights apply only when k+3 <= m")
    products = [Fraction(1)]
    for w in a:
        products.append(products[-1] * w)
    for n in range(len(products) - m):
        window = sum(
            ((-1) ** j * comb(m, j) * products[n + j] for j in range(m + 1)), Fraction(0)
        )
        if window != 0:
            return CompletionResult(NO_SOLUTION, witness=("window-identity", n, window))
    w = lagrange_fit(list(enumerate(products[:m])))
    if not positivity_on_range(w, m):
        n0 = first_nonpositive(w, m)
        return CompletionResult(NO_SOLUTION, witness=("nonpositive-product", n0, w(n0)))
    return CompletionResult(SOLVED, poly=w, strict=w.degree() == m - 1)


# ---------------------------------------------------------------------------
# Circuit completion from prescribed branches
# ---------------------------------------------------------------------------


def branch_balance_rhs(kappa: int, m: int, branch_polys: list[Poly]) -> list[Fraction]:
    """Right-hand side of the circulant balance system for given branches."""
    rhs = []
    for r in range(1, kappa + 1):
        total = Fraction(0)
        for p in range(m + 1):
            d = phi_decompose(p + r, kappa)
            inner = Fraction(0)
            for w in branch_polys:
                for l in range(d.phi1):
                    inner += w(l * kappa + d.phi2)
            total += (-1) ** (p + 1) * comb(m, p) * inner
        rhs.append(total)
    return rhs


def complete_circuit_from_branches(
    kappa: int, branch_polys: list[Poly], m: int, bound: Fraction | None = None
) -> CompletionResult:
    """Solve the m-isometric circuit completion for prescribed branch measures.

    Requires kappa > m >= 2 and positive branch polynomials of degree at
    most m-2; when ``bound`` is given the branch mass and weight-ratio
    supremum are checked against it.  The circulant system is solved
    exactly, its rank kappa-1 and all-ones kernel are verified, and the
    family of completions is returned with the exact positivity threshold.
    """
    if not kappa > m >= 2:
        raise ValueError("the circuit must be longer than the order: kappa > m >= 2")
    if not branch_polys:
        raise ValueError("at least one branch is required")
    polys = list(branch_polys)
    for w in polys:
        if w.degree() > m - 2:
            raise ValueError(f"branch polynomial degree {w.degree()} exceeds m-2 = {m - 2}")
        if not positivity_on_range(w, 1):
            raise ValueError("branch polynomials must be positive at all depths")
    if bound is not None:
        bound = Fraction(bound)
        mass = sum((w(1) for w in polys), Fraction(0))
        ratio_sup = max(ratio_bounds(EvSeq(1, (), Fraction(1), w))[0] for w in polys)
        if max(mass, ratio_sup) > bound:
            raise ValueError("branch data violates the prescribed bound")
    matrix = circulant_matrix(kappa, m)
    rhs = branch_balance_rhs(kappa, m, polys)
    rank, consistent, particular, kernel = solve_linear_system(matrix, rhs)
    if rank != kappa - 1:
        raise ArithmeticError(f"circulant rank {rank}, expected {kappa - 1}")
    if len(kernel) != 1 or len(set(kernel[0])) != 1 or kernel[0][0] == 0:
        raise ArithmeticError("kernel is not the all-ones line")
    if not consistent:
        raise ArithmeticError("balance system inconsistent despite admissible branches")
    # renormalise the particular solution so the free direction is (1,...,1)
    base = tuple(particular)
    threshold = max(-v for v in base)
    family = CircuitFamily(m, base, tuple(polys), threshold)
    return CompletionResult(FAMILY, family=family)


def construct_2_3_isometry(
    kappa: int, c_list: list[Fraction], d_list: list[Fraction], t: Fraction
) -> CircuitSpace:
    """Build the explicit 2-/3-isometric circuit space for parameters (c, d, t).

    Branch i carries the linear measures c_i + d_i*(j-1); the circuit
    measures are the values of the quadratic
    ``(d/2k) x^2 + (c/k - (k+2)d/2k) x - c + d + t`` at 1..kappa, where c and
    d are the branch totals.  The result is always a 3-isometry and is a
    2-isometry exactly when every d_i vanishes.  Raises when some circuit
    measure would be nonpositive.
    """
    if kappa < 2:
        raise ValueError("kappa must be at least 2; a one-point circuit needs no balancing")
    cs = [Fraction(v) for v in c_list]
    ds = [Fraction(v) for v in d_list]
    if not cs or len(cs) != len(ds):
        raise ValueError("c and d lists must be nonempty and of equal length")
    if any(v <= 0 for v in cs) or any(v < 0 for v in ds):
        raise ValueError("branch parameters need c_i > 0 and d_i >= 0")
    t = Fraction(t)
    c = sum(cs)
    d = sum(ds)
    k = Fraction(kappa)
    w = Poly((-c + d + t, c / k - Fraction(kappa + 2, 2 * kappa) * d, d / (2 * k)))
    circuit = tuple(w(i) for i in range(1, kappa + 1))
    if any(v <= 0 for v in circuit):
        bad = next(i for i, v in enumerate(circuit, start=1) if v <= 0)
        raise ValueError(f"nonpositive circuit measure at x_{bad}: {circuit[bad - 1]}")
    branches = tuple(
        EvSeq(1, (), Fraction(1), Poly((ci - di, di))) for ci, di in zip(cs, ds)
    )
    return CircuitSpace(circuit, branches)


# ---------------------------------------------------------------------------
# Circuit completion from prescribed circuit measures
# ---------------------------------------------------------------------------


def complete_circuit_from_circuit(kappa: int, a: list[Fraction], eta: int) -> CompletionResult:
    """2-isometric completion with the circuit measures prescribed.

    Solvable iff the difference sequence of the circuit measures is constant
    and positive; then constant branches of individual mass
    ``(kappa/eta) * (difference)`` complete the space, and the result is
    re-verified through the classifier.
    """
    if kappa < 2:
        raise ValueError("kappa must be at least 2")
    if eta < 1:
        raise ValueError("eta must be a positive integer")
    vals = [Fraction(v) for v in a]
    if len(vals) != kappa or any(v <= 0 for v in vals):
        raise ValueError("exactly kappa positive circuit measures are required")
    diffs = [vals[n + 1] - vals[n] for n in range(kappa - 1)]
    for n, dv in enumerate(diffs[1:], start=2):
        if dv != diffs[0]:
            return CompletionResult(NO_SOLUTION, witness=("difference-not-constant", n, dv))
    if diffs[0] <= 0:
        return CompletionResult(NO_SOLUTION, witness=("difference-not-positive", 1, diffs[0]))
    mass = Fraction(kappa, eta) * diffs[0]
    branches = tuple(EvSeq(1, (), Fraction(1), Poly((mass,))) for _ in range(eta))
    space = CircuitSpace(tuple(vals), branches)
    report = is_m_isometry_circuit(space, 2)
    if not report.is_m_isometry:
        raise ArithmeticError("constructed completion failed re-verification")
    return CompletionResult(SOLVED, space=space)


def reweighted_solution(space: CircuitSpace, t: Fraction) -> CircuitSpace:
    """Mix the first two branches: a distinct solution with the same totals.

    For 0 < t < 1 the first branch gains t times the second and the second
    keeps the rest; every per-depth total is unchanged, so all classification
    verdicts that depend only on depth totals survive while the space itself
    differs from the original.
    """
    t = Fraction(t)
    if space.eta < 2:
        raise ValueError("reweighting needs at least two branches")
    if not 0 < t < 1:
        raise ValueError("the mixing parameter must lie strictly between 0 and 1")
    b1, b2 = space.branches[0], space.branches[1]
    new1 = evseq_add(b1, evseq_scale(b2, t))
    new2 = evseq_scale(b2, 1 - t)
    return CircuitSpace(space.circuit, (new1, new2) + space.branches[2:])


# ---------------------------------------------------------------------------
# Branch-prefix completion on a one-point circuit
# ---------------------------------------------------------------------------


def complete_branch_prefix(prefix: list[Fraction]) -> CircuitSpace:
    """Single-circuit single-branch space starting with the given measures.

    The minimal-degree interpolating polynomial is used whenever it stays
    positive at every depth (so an already-polynomial prefix keeps its low
    order); otherwise the certified extension family continues the prefix
    with a polynomial of degree len(prefix).  Either way the space is an
    m-isometry with m = degree + 2.
    """
    vals = [Fraction(v) for v in prefix]
    if not vals or any(v <= 0 for v in vals):
        raise ValueError("the prescribed measures must be positive and nonempty")
    fit = lagrange_fit([(j, v) for j, v in enumerate(vals, start=1)])
    if positivity_on_range(fit, 1):
        branch_poly = fit
    else:
        family = completion_extend(vals)
        w = family.at(family.threshold)
        branch_poly = w.shift(-1)
    return CircuitSpace((Fraction(1),), (EvSeq(1, (), Fraction(1), branch_poly),))
