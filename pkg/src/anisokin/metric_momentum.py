"""Fourth-root kinematic length, Hamiltonian, momentum map and dispersion.

The length of a forward-cone four-vector is the fourth root of the product
of its characteristic coordinates; it replaces the quadratic interval and
is invariant under every boost.  Covariant momenta carry the mirrored
structure: the four combinations ``p0 + e_A . (p1,p2,p3)`` multiply to the
fourth power of the Hamiltonian, and for a particle of mass m moving along
four-velocity V they come out as ``m F(V) / g_A(V)`` — which is why the
mass shell closes exactly and why the relative momentum equals the
reciprocal of the relative velocity.

The dispersion solver finds the unique energy above the largest null
threshold at which the four-factor product reaches m^4; the product is
strictly increasing there, so a bracketed Newton iteration with bisection
safeguard always converges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

from .errors import DomainError
from .signs import EPS, char_combos
from .transforms import CharCoords, FourVector, char_coords
from .velocity_algebra import Velocity3

__all__ = [
    "CoMomentum",
    "MassShellQuery",
    "IsotropicVector",
    "kinematic_length",
    "hamiltonian",
    "isotropic_vector",
    "momentum_from_velocity",
    "relative_velocity",
    "relative_momentum",
    "dispersion_energy",
]

# Strictly-inside margin for the momentum map's characteristic coordinates.
_CONE_EPS = 1e-12

_COMBO_NAMES = (
    "x0 + x1 + x2 + x3",
    "x0 - x1 + x2 - x3",
    "x0 + x1 - x2 - x3",
    "x0 - x1 - x2 + x3",
)


@dataclass(frozen=True)
class CoMomentum:
    """Covariant momentum components, units of mass (light speed = 1).

    Kept distinct from :class:`FourVector` on purpose: the only bridge
    between the two is the contraction, which is the boost invariant.
    """

    p0: float
    p1: float
    p2: float
    p3: float

    def __post_init__(self):
        for name in ("p0", "p1", "p2", "p3"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @property
    def components(self) -> Tuple[float, float, float, float]:
        return (self.p0, self.p1, self.p2, self.p3)

    def factors(self) -> Tuple[float, float, float, float]:
        """The four combinations p0 + e_A . (p1, p2, p3)."""
        return char_combos(*self.components)

    def contract(self, y: FourVector) -> float:
        """Covector/vector pairing p_q y^q; invariant under boosts."""
        p = self.components
        return p[0] * y.y0 + p[1] * y.y1 + p[2] * y.y2 + p[3] * y.y3

    def __iter__(self):
        return iter(self.components)


@dataclass(frozen=True)
class MassShellQuery:
    """Mass and spatial covariant momentum for a dispersion solve."""

    mass: float
    p1: float
    p2: float
    p3: float

    def __post_init__(self):
        for name in ("mass", "p1", "p2", "p3"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not self.mass > 0.0:
            raise DomainError(f"mass must be positive: mass = {self.mass!r} <= 0")

    @property
    def spatial(self) -> Tuple[float, float, float]:
        return (self.p1, self.p2, self.p3)


@dataclass(frozen=True)
class IsotropicVector:
    """A four-vector on one of the four null hyperplanes, tagged by index."""

    index: int
    vector: FourVector


def _real_fourth_root(combos, what: str) -> float:
    product = combos[0] * combos[1] * combos[2] * combos[3]
    if product < 0.0:
        negative = next(f"{name} = {g!r}" for name, g in zip(_COMBO_NAMES, combos) if g < 0.0)
        raise DomainError(f"{what} undefined: coordinate product is negative ({negative} < 0)")
    return product**0.25


def kinematic_length(y: FourVector) -> float:
    """Fourth root of the product of characteristic coordinates.

    Zero whenever one coordinate vanishes; null vectors carry negative
    individual coordinates, so only a negative product is refused (rather
    than complexified).
    """
    return _real_fourth_root(char_combos(*y.components), "kinematic length")


def hamiltonian(p: CoMomentum) -> float:
    """Fourth root of the product of the four momentum combinations."""
    return _real_fourth_root(p.factors(), "hamiltonian")


def isotropic_vector(index: int, spatial: Tuple[float, float, float]) -> IsotropicVector:
    """Null vector on the index-th hyperplane with the given spatial part.

    The time component is -e_A . spatial, which zeroes the A-th
    characteristic coordinate, so the kinematic length is exactly 0.
    """
    if index not in (1, 2, 3, 4):
        raise ValueError(f"null-plane index must be 1..4, got {index!r}")
    e = EPS[index - 1]
    x1, x2, x3 = (float(c) for c in spatial)
    y0 = -(e[0] * x1 + e[1] * x2 + e[2] * x3)
    return IsotropicVector(index=index, vector=FourVector(y0, x1, x2, x3))


def momentum_from_velocity(mass: float, v4: FourVector) -> CoMomentum:
    """Covariant momentum of a particle of the given mass on four-velocity v4.

    Computed as mass times the length gradient, which is homogeneous of
    degree 0 in v4 (any positive rescaling of the four-velocity gives the
    same momentum) and lands exactly on the mass shell.
    """
    if not mass > 0.0:
        raise DomainError(f"mass must be positive: mass = {mass!r} <= 0")
    g = char_combos(*v4.components)
    for name, x in zip(_COMBO_NAMES, g):
        if x <= _CONE_EPS:
            raise DomainError(
                f"momentum map needs a strictly forward four-velocity: {name} = {x!r} <= {_CONE_EPS}"
            )
    f = (g[0] * g[1] * g[2] * g[3]) ** 0.25
    scale = 0.25 * mass * f
    inv = (1.0 / g[0], 1.0 / g[1], 1.0 / g[2], 1.0 / g[3])
    return CoMomentum(
        scale * (inv[0] + inv[1] + inv[2] + inv[3]),
        scale * (inv[0] - inv[1] + inv[2] - inv[3]),
        scale * (inv[0] + inv[1] - inv[2] - inv[3]),
        scale * (inv[0] - inv[1] - inv[2] + inv[3]),
    )


def relative_velocity(v4: FourVector) -> Velocity3:
    """Three-velocity v_a = V^a / V^0 of a four-velocity."""
    if v4.y0 == 0.0:
        raise DomainError("relative velocity undefined: V^0 = 0")
    s = (v4.y1 / v4.y0, v4.y2 / v4.y0, v4.y3 / v4.y0)
    if all(w > 0.0 for w in char_combos(1.0, *s)):
        return Velocity3(*s)
    return Velocity3.unchecked(*s)


def relative_momentum(p: CoMomentum) -> Tuple[float, float, float]:
    """Normalized spatial momentum p_a / p_0.

    For an on-shell momentum this equals the reciprocal of the relative
    velocity componentwise — simple negation fails off the collinear case.
    """
    if p.p0 == 0.0:
        raise DomainError("relative momentum undefined: P_0 = 0")
    return (p.p1 / p.p0, p.p2 / p.p0, p.p3 / p.p0)


def _shell_product(energy: float, spatial: Tuple[float, float, float]) -> float:
    p1, p2, p3 = spatial
    return (
        (energy + p1 + p2 + p3)
        * (energy - p1 + p2 - p3)
        * (energy + p1 - p2 - p3)
        * (energy - p1 - p2 + p3)
    )


def _shell_derivative(energy: float, spatial: Tuple[float, float, float]) -> float:
    h = char_combos(energy, *spatial)
    return (
        h[1] * h[2] * h[3]
        + h[0] * h[2] * h[3]
        + h[0] * h[1] * h[3]
        + h[0] * h[1] * h[2]
    )


def dispersion_energy(query: MassShellQuery) -> float:
    """Energy solving the four-factor mass-shell product = mass^4.

    The root is the unique one above the largest null threshold
    max_A(-e_A . spatial); there the product grows monotonically from 0,
    so a growing bracket plus safeguarded Newton cannot miss it.  The
    returned root's residual is at most 1e-12 * mass^4.
    """
    m4 = query.mass**4
    spatial = query.spatial
    e_min = max(-(e[0] * spatial[0] + e[1] * spatial[1] + e[2] * spatial[2]) for e in EPS)
    e_min = max(e_min, 0.0)

    lo = e_min
    span = max(math.sqrt(query.mass**2 + sum(x * x for x in spatial)) - e_min, query.mass)
    hi = e_min + span
    while _shell_product(hi, spatial) < m4:
        span *= 2.0
        hi = e_min + span

    target = 1e-13 * m4
    energy = min(hi, max(math.sqrt(query.mass**2 + sum(x * x for x in spatial)), lo + 0.5 * span))
    best, best_resid = energy, abs(_shell_product(energy, spatial) - m4)
    for _ in range(120):
        f = _shell_product(energy, spatial) - m4
        if abs(f) < best_resid:
            best, best_resid = energy, abs(f)
        if abs(f) <= target:
            return energy
        if f > 0.0:
            hi = energy
        else:
            lo = energy
        df = _shell_derivative(energy, spatial)
        candidate = energy - f / df if df > 0.0 else lo
        if not lo < candidate < hi:
            candidate = 0.5 * (lo + hi)
        energy = candidate
        if hi - lo <= 4.0 * math.ulp(max(abs(hi), 1.0)):
            break
    return best
