"""Exact arithmetic core: rational polynomials and geo-polynomial sequences.

Every scalar in this package is a ``fractions.Fraction``; no floating point
enters any computation.  Three layers live here:

* ``Poly`` -- univariate polynomials with rational coefficients.
* ``EvSeq`` -- *eventually geo-polynomial* sequences: an explicit finite
  prefix followed by the tail ``value(n) = q**(n - tail_start) * poly(n)``
  with a rational ratio ``0 < q <= 1``.  With ``q == 1`` the tail is a plain
  polynomial sequence; with ``q < 1`` it decays geometrically, so
  arithmetic-progression subseries admit exact closed-form sums.
* decision procedures -- forward-difference calculus on sequences,
  polynomial-degree tests, Lagrange interpolation, sign of a polynomial on
  an integer ray (Cauchy root bound plus a finite scan), an
  interpolate-and-stay-positive extension family, and exact series
  summation with an explicit ``DIVERGENT`` marker.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

Rational = Fraction


def rational(value) -> Fraction:
    """Coerce ints, strings like ``"3/4"``, or Fractions to a Fraction."""
    return Fraction(value)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Poly:
    """Polynomial with Fraction coefficients, stored low power to high."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(tuple(out))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (other * Fraction(-1))

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.is_zero or other.is_zero:
                return Poly()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Poly(tuple(out))
        c = Fraction(other)
        return Poly(tuple(a * c for a in self.coeffs))

    __rmul__ = __mul__

    def compose_affine(self, a, b) -> "Poly":
        """Return the polynomial x |-> self(a + b*x)."""
        a, b = Fraction(a), Fraction(b)
        arg = Poly((a, b))
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * arg + Poly((c,))
        return acc

    def shift(self, k) -> "Poly":
        """Return the polynomial x |-> self(x + k)."""
        return self.compose_affine(k, 1)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(format_rational(c))
            elif i == 1:
                parts.append(f"{format_rational(c)}*x")
            else:
                parts.append(f"{format_rational(c)}*x^{i}")
        return " + ".join(parts)


X = Poly((0, 1))


def poly(coeffs: Iterable) -> Poly:
    return Poly(tuple(Fraction(c) for c in coeffs))


def poly_eval(p: Poly, n) -> Fraction:
    """Exact Horner evaluation of ``p`` at the rational point ``n``."""
    return p(n)


def poly_forward_difference(p: Poly) -> Poly:
    """The polynomial x |-> p(x + 1) - p(x)."""
    return p.shift(1) - p


# ---------------------------------------------------------------------------
# Sign of a polynomial on an integer ray
# ---------------------------------------------------------------------------


def cauchy_root_bound(p: Poly) -> Fraction:
    """A bound B with every real root of ``p`` in [-B, B] (degree >= 1)."""
    if p.degree() < 1:
        raise ValueError("root bound needs degree >= 1")
    lead = abs(p.leading())
    return 1 + max(abs(c) / lead for c in p.coeffs[:-1])


def _scan_limit(p: Poly, start: int) -> int:
    return max(start, math.floor(cauchy_root_bound(p)) + 1)


def positivity_on_range(p: Poly, start: int) -> bool:
    """Decide exactly whether p(n) > 0 for every integer n >= start.

    All integer points up to the Cauchy root bound are checked one by one;
    beyond the bound the sign is the sign of the leading coefficient.  The
    zero polynomial is reported False.
    """
    if p.is_zero:
        return False
    if p.degree() == 0:
        return p.coeff(0) > 0
    if p.leading() < 0:
        return False
    hi = _scan_limit(p, start)
    return all(p(n) > 0 for n in range(start, hi + 1))


def nonnegativity_on_range(p: Poly, start: int) -> bool:
    """Decide exactly whether p(n) >= 0 for every integer n >= start."""
    if p.is_zero:
        return True
    if p.degree() == 0:
        return p.coeff(0) > 0
    if p.leading() < 0:
        return False
    hi = _scan_limit(p, start)
    return all(p(n) >= 0 for n in range(start, hi + 1))


def nonpositivity_on_range(p: Poly, start: int) -> bool:
    return nonnegativity_on_range(p * Fraction(-1), start)


def first_nonpositive(p: Poly, start: int) -> int | None:
    """Smallest integer n >= start with p(n) <= 0, or None when positive."""
    if positivity_on_range(p, start):
        return None
    n = start
    while p(n) > 0:
        n += 1
    return n


# ---------------------------------------------------------------------------
# Eventually geo-polynomial sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EvSeq:
    """Sequence with finite prefix and tail ``q**(n - tail_start) * poly(n)``.

    The domain is ``n >= start``; the prefix stores the values at
    ``start .. start + len(prefix) - 1`` and the tail formula takes over at
    ``tail_start = start + len(prefix)``.  A zero tail polynomial is
    canonicalised to ``q == 1`` so that ``q < 1`` implies a nonzero tail.
    """

    start: int
    prefix: tuple[Fraction, ...] = ()
    q: Fraction = Fraction(1)
    poly: Poly = Poly()

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(Fraction(v) for v in self.prefix))
        q = Fraction(self.q)
        if not 0 < q <= 1:
            raise ValueError(f"tail ratio must satisfy 0 < q <= 1, got {q}")
        if self.poly.is_zero:
            q = Fraction(1)
        object.__setattr__(self, "q", q)

    @property
    def tail_start(self) -> int:
        return self.start + len(self.prefix)

    def value(self, n: int) -> Fraction:
        if n < self.start:
            raise ValueError(f"sequence undefined at {n} (domain starts at {self.start})")
        if n < self.tail_start:
            return self.prefix[n - self.start]
        return self.q ** (n - self.tail_start) * self.poly(n)

    def values(self, lo: int, hi: int) -> list[Fraction]:
        return [self.value(n) for n in range(lo, hi + 1)]

    def is_positive_on_domain(self) -> bool:
        """True when value(n) > 0 for every n in the domain, decided exactly."""
        if any(v <= 0 for v in self.prefix):
            return False
        return positivity_on_range(self.poly, self.tail_start)


def constant_seq(start: int, value) -> EvSeq:
    return EvSeq(start, (), Fraction(1), Poly((Fraction(value),)))


def evseq_shift(s: EvSeq, k: int) -> EvSeq:
    """The sequence n |-> s(n + k); domain becomes n >= start - k."""
    return EvSeq(s.start - k, s.prefix, s.q, s.poly.shift(k))


def evseq_scale(s: EvSeq, c) -> EvSeq:
    c = Fraction(c)
    return EvSeq(s.start, tuple(c * v for v in s.prefix), s.q, s.poly * c)


def _aligned_tail(s: EvSeq, tail_start: int) -> Poly:
    if s.poly.is_zero:
        return s.poly
    return s.poly * (s.q ** (tail_start - s.tail_start))


def evseq_add(s1: EvSeq, s2: EvSeq) -> EvSeq:
    """Pointwise sum; the tail ratios must agree unless one tail is zero."""
    if s1.poly.is_zero:
        q = s2.q
    elif s2.poly.is_zero:
        q = s1.q
    elif s1.q == s2.q:
        q = s1.q
    else:
        raise ValueError("cannot add sequences with different tail ratios")
    start = max(s1.start, s2.start)
    tail = max(s1.tail_start, s2.tail_start, start)
    prefix = tuple(s1.value(n) + s2.value(n) for n in range(start, tail))
    return EvSeq(start, prefix, q, _aligned_tail(s1, tail) + _aligned_tail(s2, tail))


def evseq_sub(s1: EvSeq, s2: EvSeq) -> EvSeq:
    return evseq_add(s1, evseq_scale(s2, -1))


def evseq_mul(s1: EvSeq, s2: EvSeq) -> EvSeq:
    """Pointwise product; tails multiply to ratio q1*q2 <= 1."""
    start = max(s1.start, s2.start)
    tail = max(s1.tail_start, s2.tail_start, start)
    prefix = tuple(s1.value(n) * s2.value(n) for n in range(start, tail))
    return EvSeq(start, prefix, s1.q * s2.q, _aligned_tail(s1, tail) * _aligned_tail(s2, tail))


def evseq_is_zero_from(s: EvSeq, n0: int) -> bool:
    """True when value(n) == 0 for every n >= n0 in the domain."""
    lo = max(n0, s.start)
    if any(s.value(n) != 0 for n in range(lo, s.tail_start)):
        return False
    # A nonzero polynomial cannot vanish at infinitely many integers.
    return s.poly.is_zero


def forward_difference(s: EvSeq, m: int) -> EvSeq:
    """The m-th forward difference n |-> sum_k (-1)^(m-k) C(m,k) s(n+k).

    The result is again an EvSeq on the same domain: for ``q == 1`` the tail
    polynomial is the m-th polynomial difference, for ``q < 1`` the tail is
    ``q**j`` times an explicitly computed polynomial.
    """
    if m < 0:
        raise ValueError("difference order must be nonnegative")
    out = s
    for _ in range(m):
        out = evseq_sub(evseq_shift(out, 1), out)
    return out


def is_polynomial_of_degree_at_most(s: EvSeq, d: int) -> bool:
    """True when the whole sequence is one polynomial of degree <= d."""
    if s.q != 1 or s.poly.degree() > d:
        return False
    return all(v == s.poly(s.start + k) for k, v in enumerate(s.prefix))


def as_polynomial(s: EvSeq) -> Poly | None:
    """The polynomial agreeing with ``s`` on its whole domain, if any."""
    if s.q != 1:
        return None
    if all(v == s.poly(s.start + k) for k, v in enumerate(s.prefix)):
        return s.poly
    return None


def first_nonzero_index(s: EvSeq) -> int | None:
    """Smallest n in the domain with value(n) != 0, or None if none exists."""
    for k, v in enumerate(s.prefix):
        if v != 0:
            return s.start + k
    if s.poly.is_zero:
        return None
    n = s.tail_start
    # a nonzero polynomial of degree d has at most d integer roots
    while s.poly(n) == 0:
        n += 1
    return n


def ratio_bounds(s: EvSeq) -> tuple[Fraction, Fraction]:
    """Exact (supremum, infimum) of value(n+1)/value(n) over the domain.

    Requires a pointwise positive sequence.  Beyond the Cauchy bound of the
    monotonicity numerator ``p(x+2)p(x) - p(x+1)^2`` the ratio sequence is
    monotone with limit ``q``, so a finite scan plus the limit is exact.
    The extremum may be the unattained limit ``q`` itself.
    """
    if not s.is_positive_on_domain():
        raise ValueError("ratio bounds need a positive sequence")
    p, tail = s.poly, s.tail_start
    if p.degree() <= 0:
        mono_from = tail
    else:
        disc = p.shift(2) * p - p.shift(1) * p.shift(1)
        if disc.is_zero:
            mono_from = tail
        else:
            mono_from = max(tail, math.floor(cauchy_root_bound(disc)) + 1)
    vals = [s.value(j + 1) / s.value(j) for j in range(s.start, mono_from + 2)]
    vals.append(s.q)
    return max(vals), min(vals)


# ---------------------------------------------------------------------------
# Interpolation
# ---------------------------------------------------------------------------


def lagrange_fit(points: Sequence[tuple[int, Fraction]]) -> Poly:
    """The unique polynomial of degree < len(points) through the points.

    Computed in Newton form with exact divided differences.  Raises on a
    duplicate abscissa.
    """
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    if not pts:
        raise ValueError("at least one interpolation point required")
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissa in interpolation points")
    coef = [y for _, y in pts]
    for level in range(1, len(pts)):
        for i in range(len(pts) - 1, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    acc = Poly()
    basis = Poly((Fraction(1),))
    for i, c in enumerate(coef):
        acc = acc + basis * c
        basis = basis * Poly((-xs[i], Fraction(1)))
    return acc


# ---------------------------------------------------------------------------
# Interpolate-and-stay-positive extension
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtensionFamily:
    """Family ``w_t = base + t*direction`` of degree-(l+1) extensions.

    ``w_t`` interpolates the prescribed values at 0..l, takes the free value
    ``t`` at ``node = l+1``, and satisfies ``w_t(n) > 0`` for every integer
    ``n >= node + 1`` whenever ``t >= threshold``.  Certification for the
    whole ray follows from ``direction(n) > 0`` at integers ``n > l`` (so
    values only grow with t) plus one exact positivity check at the
    threshold; the threshold also exceeds the unique t at which the leading
    coefficient would vanish, so the degree is exactly l+1 on the ray.
    """

    base: Poly
    direction: Poly
    threshold: Fraction
    node: int

    def at(self, t) -> Poly:
        t = Fraction(t)
        if t < self.threshold:
            raise ValueError(f"parameter {t} below certified threshold {self.threshold}")
        return self.base + self.direction * t


def completion_extend(values: Sequence) -> ExtensionFamily:
    """Extend positive values b_0..b_l to the certified family above.

    The threshold is found by doubling search from 1; it is the first
    certified parameter, not the infimum of admissible ones.
    """
    b = [Fraction(v) for v in values]
    if not b or any(v <= 0 for v in b):
        raise ValueError("a nonempty positive prefix is required")
    l = len(b) - 1
    node = l + 1
    base = lagrange_fit([(n, v) for n, v in enumerate(b)] + [(node, Fraction(0))])
    denom = Fraction(math.factorial(node))
    direction = Poly((Fraction(1),))
    for j in range(node):
        direction = direction * Poly((Fraction(-j), Fraction(1)))
    direction = direction * (1 / denom)
    # unique parameter where the degree would drop below l+1
    t_star = -base.coeff(node) / direction.coeff(node)
    t = Fraction(1)
    while t <= t_star or not positivity_on_range(base + direction * t, node + 1):
        t *= 2
    return ExtensionFamily(base, direction, t, node)


# ---------------------------------------------------------------------------
# Series summation along arithmetic progressions
# ---------------------------------------------------------------------------


class Divergent:
    """Marker for a series whose terms do not tend to zero."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "DIVERGENT"


DIVERGENT = Divergent()


def _geo_poly_sum(g: Poly, ratio: Fraction) -> Fraction:
    """Exact sum of ``g(t) * ratio**t`` over t >= 0, for 0 < ratio < 1.

    Expands g in the binomial basis C(t, j) via forward differences at 0 and
    uses ``sum_t C(t,j) r**t = r**j / (1-r)**(j+1)``.
    """
    total = Fraction(0)
    gg = g
    j = 0
    while not gg.is_zero:
        total += gg(0) * ratio**j / (1 - ratio) ** (j + 1)
        gg = poly_forward_difference(gg)
        j += 1
    return total


def tail_series_sum(s: EvSeq, kappa: int, r: int):
    """Exact value of ``sum_{l>=0} s(l*kappa + r)`` or the DIVERGENT marker.

    The series diverges exactly when the tail is a nonzero polynomial
    (``q == 1``): its terms do not tend to zero.  For ``q < 1`` the prefix
    part is summed directly and the tail part in closed form.
    """
    if kappa < 1:
        raise ValueError("kappa must be a positive integer")
    if r < s.start:
        raise ValueError(f"first term index {r} below sequence domain {s.start}")
    tail = s.tail_start
    if s.q == 1:
        if not s.poly.is_zero:
            return DIVERGENT
        total = Fraction(0)
        n = r
        while n < tail:
            total += s.value(n)
            n += kappa
        return total
    total = Fraction(0)
    n = r
    while n < tail:
        total += s.value(n)
        n += kappa
    n0 = n
    g = s.poly.compose_affine(n0, kappa)
    ratio = s.q**kappa
    return total + s.q ** (n0 - tail) * _geo_poly_sum(g, ratio)
