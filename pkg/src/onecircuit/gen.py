"""Seeded random generators for spaces, shifts and trees.

Used by the test suite, the bundled verification fixtures and the demo
scripts.  All outputs are exact rational objects; positivity is built in by
construction (binomial-basis polynomials with a positive constant term are
positive at every nonnegative integer) rather than by rejection sampling.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .completion import complete_circuit_from_branches, construct_2_3_isometry
from .exactseq import EvSeq, Poly
from .spaces import CircuitSpace, TreeShift


def random_rational(rng: random.Random, lo: int = 1, hi: int = 8, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def _binomial_basis_poly(coeffs: list[Fraction]) -> Poly:
    """sum_k coeffs[k] * C(x, k) expanded into monomials."""
    out = Poly()
    basis = Poly((Fraction(1),))
    for k, c in enumerate(coeffs):
        if k > 0:
            basis = basis * Poly((Fraction(-(k - 1)), Fraction(1))) * Fraction(1, k)
        out = out + basis * c
    return out


def random_positive_poly(rng: random.Random, degree: int, exact_degree: bool = False) -> Poly:
    """Random polynomial positive at every integer >= 0.

    Binomial-basis coefficients C(x,k) are nonnegative at nonnegative
    integers, so a positive constant term plus nonnegative higher terms stays
    positive; with ``exact_degree`` the top coefficient is forced positive.
    """
    coeffs = [random_rational(rng)]
    for k in range(1, degree + 1):
        top = k == degree
        if exact_degree and top:
            coeffs.append(random_rational(rng))
        else:
            coeffs.append(Fraction(0) if rng.random() < 0.4 else random_rational(rng))
    return _binomial_basis_poly(coeffs)


def random_evseq(
    rng: random.Random,
    start: int,
    max_prefix: int = 2,
    max_degree: int = 2,
    allow_decay: bool = True,
) -> EvSeq:
    """Random positive eventually geo-polynomial sequence."""
    prefix = tuple(random_rational(rng) for _ in range(rng.randint(0, max_prefix)))
    if allow_decay and rng.random() < 0.5:
        q = Fraction(rng.randint(1, 3), rng.randint(4, 6))
    else:
        q = Fraction(1)
    poly = random_positive_poly(rng, rng.randint(0, max_degree))
    return EvSeq(start, prefix, q, poly)


def random_circuit_space(
    rng: random.Random,
    kappa_max: int = 6,
    eta_max: int = 4,
    allow_decay: bool = True,
) -> CircuitSpace:
    kappa = rng.randint(1, kappa_max)
    eta = rng.randint(1, eta_max)
    circuit = tuple(random_rational(rng) for _ in range(kappa))
    branches = tuple(random_evseq(rng, 1, allow_decay=allow_decay) for _ in range(eta))
    return CircuitSpace(circuit, branches)


def random_2_isometric_space(rng: random.Random, kappa_max: int = 5, eta_max: int = 4) -> CircuitSpace:
    kappa = rng.randint(1, kappa_max)
    eta = rng.randint(1, eta_max)
    cs = [random_rational(rng) for _ in range(eta)]
    if kappa == 1:
        circuit = (random_rational(rng),)
        branches = tuple(EvSeq(1, (), Fraction(1), Poly((c,))) for c in cs)
        return CircuitSpace(circuit, branches)
    zeros = [Fraction(0)] * eta
    return construct_2_3_isometry(kappa, cs, zeros, _safe_t(kappa, cs, zeros, rng))


def random_strict_3_isometric_space(rng: random.Random, kappa_max: int = 5, eta_max: int = 4) -> CircuitSpace:
    kappa = rng.randint(2, max(2, kappa_max))
    eta = rng.randint(1, eta_max)
    cs = [random_rational(rng) for _ in range(eta)]
    ds = [Fraction(0) if rng.random() < 0.3 else random_rational(rng) for _ in range(eta)]
    if all(d == 0 for d in ds):
        ds[rng.randrange(eta)] = random_rational(rng)
    return construct_2_3_isometry(kappa, cs, ds, _safe_t(kappa, cs, ds, rng))


def _safe_t(kappa: int, cs: list[Fraction], ds: list[Fraction], rng: random.Random) -> Fraction:
    """A parameter certainly above the positivity threshold of the family."""
    c, d = sum(cs), sum(ds)
    w0 = Poly(
        (
            -c + d,
            c / Fraction(kappa) - Fraction(kappa + 2, 2 * kappa) * d,
            d / Fraction(2 * kappa),
        )
    )
    floor_t = max(-w0(i) for i in range(1, kappa + 1))
    return max(Fraction(0), floor_t) + random_rational(rng)


def random_m_isometric_space(rng: random.Random, m: int, kappa: int | None = None) -> CircuitSpace:
    """Random m-isometric space: one-point circuit, or a balanced long circuit."""
    if m < 2:
        raise ValueError("m-isometric generation needs m >= 2")
    if kappa is None:
        kappa = rng.choice([1, 1, m + 1, m + rng.randint(1, 3)])
    eta = rng.randint(1, 3)
    exact = rng.random() < 0.7
    polys = [random_positive_poly(rng, max(0, m - 2), exact_degree=exact and i == 0) for i in range(eta)]
    if kappa == 1:
        circuit = (random_rational(rng),)
        branches = tuple(EvSeq(1, (), Fraction(1), w) for w in polys)
        return CircuitSpace(circuit, branches)
    if kappa <= m:
        raise ValueError("balanced circuits need kappa > m; pass kappa=1 or kappa > m")
    result = complete_circuit_from_branches(kappa, polys, m)
    family = result.family
    return family.space_at(family.threshold + random_rational(rng))


def random_tree(
    rng: random.Random,
    eta: int,
    max_profile_degree: int = 2,
    max_trunk: int = 2,
) -> TreeShift:
    trunk = tuple(random_rational(rng) for _ in range(rng.randint(0, max_trunk)))
    fan = tuple(random_rational(rng) for _ in range(eta))
    profiles = tuple(
        EvSeq(1, (), Fraction(1), random_positive_poly(rng, rng.randint(0, max_profile_degree)))
        for _ in range(eta)
    )
    return TreeShift(trunk, fan, profiles)


def dirichlet_tree() -> TreeShift:
    """Single-branch tree equivalent to the shift with weight products n+1."""
    profile = EvSeq(1, (), Fraction(1), Poly((Fraction(1), Fraction(1))))
    return TreeShift((), (Fraction(2),), (profile,))
