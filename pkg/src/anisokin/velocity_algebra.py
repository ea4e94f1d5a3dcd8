"""Three-velocity domain and its composition algebra.

Velocities live in the open region where the four linear factors
``1 + e_A . s`` are positive (one per sign pattern).  Writing
``w_A = 1 + e_A . s`` for these characteristic weights (they always sum
to 4), the entire algebra is componentwise on weights:

* composition multiplies weights and renormalizes their sum back to 4,
* subtraction divides them,
* the reciprocal velocity replaces each weight by the product of the
  other three (a reciprocal, up to overall scale, without dividing).

The public operations are evaluated through the weight route, which stays
accurate arbitrarily close to the domain boundary.  The direct polynomial
and ratio forms are kept alongside (`invert_direct`, `compose_direct`,
`subtract_via_inverse`) as independent twins; the test suite cross-checks
them in floating point and the :mod:`anisokin.oracle` proves the forms
identical over exact rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from . import oracle as _oracle
from .errors import DegenerateDenominatorError, DomainError, SingularInversionError
from .signs import EPS, FACTOR_NAMES, SIGN_PATTERNS, SignPattern, velocity_weights, weights_to_components
from .tolerances import DEGENERATE_DENOMINATOR_EPS, SINGULAR_K_EPS

__all__ = [
    "Velocity3",
    "SignPattern",
    "SIGN_PATTERNS",
    "CandidateVerdict",
    "InvariantVelocityTable",
    "a_factor",
    "k_factor",
    "invert",
    "invert_direct",
    "compose",
    "compose_direct",
    "subtract",
    "subtract_via_inverse",
    "sample_domain",
    "sample_velocities",
    "invariant_velocity_audit",
]


@dataclass(frozen=True)
class Velocity3:
    """A relative three-velocity in units of the light speed.

    ``Velocity3(s1, s2, s3)`` validates the four positivity factors and
    raises :class:`DomainError` naming the first violated one.  Boundary
    studies (light-speed triples and the like) use the unvalidated carrier
    ``Velocity3.unchecked(...)`` instead; every operation accepts both.
    """

    s1: float
    s2: float
    s3: float
    validated: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "s1", float(self.s1))
        object.__setattr__(self, "s2", float(self.s2))
        object.__setattr__(self, "s3", float(self.s3))
        if self.validated:
            for name, w in zip(FACTOR_NAMES, self.factors()):
                if not w > 0.0:
                    raise DomainError(f"velocity outside domain: {name} <= 0 (value {w!r})")

    @classmethod
    def unchecked(cls, s1: float, s2: float, s3: float) -> "Velocity3":
        """Construct without domain validation (boundary-study carrier)."""
        return cls(s1, s2, s3, validated=False)

    @property
    def components(self) -> Tuple[float, float, float]:
        return (self.s1, self.s2, self.s3)

    def factors(self) -> Tuple[float, float, float, float]:
        """The four characteristic weights 1 + e_A . s (sum exactly 4)."""
        return velocity_weights(self.s1, self.s2, self.s3)

    def __iter__(self):
        return iter(self.components)


def _from_weights(w, validated: bool) -> Velocity3:
    s1, s2, s3 = weights_to_components(w)
    if validated:
        return Velocity3(s1, s2, s3)
    return Velocity3.unchecked(s1, s2, s3)


def a_factor(s: Velocity3) -> float:
    """Fourth root of the product of the four domain factors.

    Zero when a factor vanishes; refuses negative factors rather than
    returning a complex root.
    """
    w = s.factors()
    for name, x in zip(FACTOR_NAMES, w):
        if x < 0.0:
            raise DomainError(f"kinematic factor is negative: {name} < 0 (value {x!r})")
    return (w[0] * w[1] * w[2] * w[3]) ** 0.25


def k_factor(s: Velocity3) -> float:
    """The cubic 1 - s1^2 - s2^2 - s3^2 + 2 s1 s2 s3.

    This is the denominator of the reciprocal velocity.  It equals one
    quarter of the sum of triple products of the characteristic weights,
    hence is strictly positive on the whole open domain and vanishes only
    where two weights vanish (light-speed sign triples).
    """
    s1, s2, s3 = s.components
    return 1.0 - s1 * s1 - s2 * s2 - s3 * s3 + 2.0 * s1 * s2 * s3


def _triple_products(w):
    # w replaced componentwise by the product of the other three entries;
    # equivalent to reciprocation up to scale but defined on the boundary.
    return (
        w[1] * w[2] * w[3],
        w[0] * w[2] * w[3],
        w[0] * w[1] * w[3],
        w[0] * w[1] * w[2],
    )


def invert(s: Velocity3) -> Velocity3:
    """Reciprocal velocity: the unique f with compose(s, f) = 0.

    Simple negation does not do this outside the collinear case; the
    reciprocal reciprocates characteristic weights instead.
    """
    k = k_factor(s)
    if abs(k) < SINGULAR_K_EPS:
        raise SingularInversionError(
            f"reciprocal velocity undefined: |K(s)| = {abs(k)!r} < {SINGULAR_K_EPS} at s = {s.components}"
        )
    return _from_weights(_triple_products(s.factors()), s.validated)


def invert_direct(s: Velocity3) -> Velocity3:
    """Reciprocal velocity evaluated from the explicit cubic-over-K form.

    Same rational function as :func:`invert`; kept as an independently
    coded twin for cross-checking.
    """
    k = k_factor(s)
    if abs(k) < SINGULAR_K_EPS:
        raise SingularInversionError(
            f"reciprocal velocity undefined: |K(s)| = {abs(k)!r} < {SINGULAR_K_EPS} at s = {s.components}"
        )
    s1, s2, s3 = s.components
    f1 = -(s1 - 2.0 * s2 * s3 - s1**3 + s1 * (s2 * s2 + s3 * s3)) / k
    f2 = -(s2 - 2.0 * s1 * s3 - s2**3 + s2 * (s1 * s1 + s3 * s3)) / k
    f3 = -(s3 - 2.0 * s1 * s2 - s3**3 + s3 * (s1 * s1 + s2 * s2)) / k
    if s.validated:
        return Velocity3(f1, f2, f3)
    return Velocity3.unchecked(f1, f2, f3)


def _compose_guard(a: Velocity3, b: Velocity3) -> float:
    den = 1.0 + a.s1 * b.s1 + a.s2 * b.s2 + a.s3 * b.s3
    if den <= DEGENERATE_DENOMINATOR_EPS:
        raise DegenerateDenominatorError(
            f"composition denominator degenerate: 1 + a.b = {den!r} <= {DEGENERATE_DENOMINATOR_EPS}"
        )
    return den


def compose(a: Velocity3, b: Velocity3) -> Velocity3:
    """Velocity composition; commutative and associative."""
    _compose_guard(a, b)
    wa, wb = a.factors(), b.factors()
    w = (wa[0] * wb[0], wa[1] * wb[1], wa[2] * wb[2], wa[3] * wb[3])
    return _from_weights(w, a.validated and b.validated)


def compose_direct(a: Velocity3, b: Velocity3) -> Velocity3:
    """Composition evaluated from the explicit component formulas."""
    den = _compose_guard(a, b)
    a1, a2, a3 = a.components
    b1, b2, b3 = b.components
    out = (
        (a1 + b1 + a2 * b3 + a3 * b2) / den,
        (a2 + b2 + a1 * b3 + a3 * b1) / den,
        (a3 + b3 + a1 * b2 + a2 * b1) / den,
    )
    if a.validated and b.validated:
        return Velocity3(*out)
    return Velocity3.unchecked(*out)


def subtract(minuend: Velocity3, subtrahend: Velocity3) -> Velocity3:
    """Velocity subtraction: the s1 with compose(s1, subtrahend) = minuend.

    The subtrahend's four factors appear as denominators and must be
    strictly positive.
    """
    wm, ws = minuend.factors(), subtrahend.factors()
    for name, x in zip(FACTOR_NAMES, ws):
        if x <= SINGULAR_K_EPS:
            raise DomainError(
                f"subtraction undefined: subtrahend factor {name} = {x!r} <= {SINGULAR_K_EPS}"
            )
    r = (wm[0] / ws[0], wm[1] / ws[1], wm[2] / ws[2], wm[3] / ws[3])
    total = r[0] + r[1] + r[2] + r[3]
    if not total > 0.0:
        raise DomainError(f"subtraction undefined: ratio sum H = {total!r} <= 0")
    return _from_weights(r, minuend.validated and subtrahend.validated)


def subtract_via_inverse(minuend: Velocity3, subtrahend: Velocity3) -> Velocity3:
    """Subtraction as compose(minuend, invert(subtrahend)); cross-check twin."""
    return compose(minuend, invert(subtrahend))


def sample_velocities(seed: int, count: int, min_weight: float = 0.01) -> list[Velocity3]:
    """Deterministic batch of velocities, uniform on the trimmed weight simplex.

    Weights are Dirichlet(1,1,1,1) scaled to sum 4, redrawn until every
    weight is at least ``min_weight``.  The trim keeps floating-point
    verification sweeps conditioned (the boundary is a genuine pole of the
    algebra); set ``min_weight=0`` for the untrimmed distribution.
    """
    rng = np.random.default_rng(seed)
    rows: list[np.ndarray] = []
    need = count
    while need > 0:
        draw = rng.dirichlet((1.0, 1.0, 1.0, 1.0), size=max(need, 16)) * 4.0
        good = draw[draw.min(axis=1) > max(min_weight, 1e-300)]
        rows.extend(good[:need])
        need = count - len(rows)
    return [_from_weights(tuple(w), True) for w in rows[:count]]


def sample_domain(seed: int, min_weight: float = 0.01) -> Velocity3:
    """One deterministic velocity per seed; see :func:`sample_velocities`."""
    return sample_velocities(seed, 1, min_weight=min_weight)[0]


@dataclass(frozen=True)
class CandidateVerdict:
    """Exact-arithmetic audit record for one boundary sign triple."""

    candidate: Tuple[int, int, int]
    in_published_table: bool
    absorbing: bool
    neutral: bool
    reciprocal_defined: bool
    reciprocal: Optional[Tuple[str, str, str]]
    reciprocal_is_negation: Optional[bool]
    reciprocal_is_candidate: Optional[bool]
    counterexample: Optional[dict]


@dataclass(frozen=True)
class InvariantVelocityTable:
    """Audit of the eight light-speed sign triples, reproducible per seed.

    ``candidates`` holds all eight triples +-e_A.  The published table of
    would-be invariant velocities lists the negated patterns; the audit
    records what actually holds: the non-negated triples absorb under
    composition (c + s = c), none of the eight is neutral, and the
    reciprocal fixes the published triples while being undefined (K = 0)
    on the absorbing ones.
    """

    seed: int
    samples: int
    verdicts: Tuple[CandidateVerdict, ...]

    @property
    def candidates(self) -> Tuple[Tuple[int, int, int], ...]:
        return tuple(v.candidate for v in self.verdicts)


def invariant_velocity_audit(seed: int, samples: int = 32) -> InvariantVelocityTable:
    """Audit the eight boundary sign triples over exact rational samples."""
    records = _oracle.audit_boundary_candidates(seed=seed, samples=samples)
    verdicts = tuple(CandidateVerdict(**record) for record in records)
    return InvariantVelocityTable(seed=seed, samples=samples, verdicts=verdicts)
