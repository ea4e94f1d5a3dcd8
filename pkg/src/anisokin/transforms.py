"""Boost matrices, characteristic coordinates and the group structure.

A boost is the symmetric unit-determinant 4x4 matrix whose diagonal is
1/A(s) and whose off-diagonal entries pair each velocity component with
the complementary index pattern.  In characteristic coordinates
``g_A = y0 + e_A . (y1,y2,y3)`` every boost acts diagonally, with
eigenvalue ``(1 + e_A . s)/A(s)`` on the A-th coordinate; the vectors
``(1, e_A)`` are the common eigenvectors of the whole family.  That
diagonal picture is the internal canonical path for composition-heavy
work; the public API exposes both it and the matrix form.

Covariant momenta transform with the reciprocal velocity, which is what
keeps the covector/vector contraction invariant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Tuple

import numpy as np

from .signs import EPS, char_combos, combos_to_vector, weights_to_components
from .velocity_algebra import Velocity3, a_factor, compose, invert

if TYPE_CHECKING:  # pragma: no cover
    from .metric_momentum import CoMomentum

__all__ = [
    "FourVector",
    "CharCoords",
    "BoostMatrix",
    "EigenFactors",
    "MatrixGroupReport",
    "boost_matrix",
    "transform",
    "char_coords",
    "inv_char_coords",
    "eigenfactors",
    "momentum_transform",
    "compose_matrices_check",
]


@dataclass(frozen=True)
class FourVector:
    """Contravariant event/interval components, light speed = 1."""

    y0: float
    y1: float
    y2: float
    y3: float

    def __post_init__(self):
        for name in ("y0", "y1", "y2", "y3"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @property
    def components(self) -> Tuple[float, float, float, float]:
        return (self.y0, self.y1, self.y2, self.y3)

    def in_forward_cone(self) -> bool:
        """True when all four characteristic coordinates are positive."""
        return all(g > 0.0 for g in char_combos(*self.components))

    def __iter__(self):
        return iter(self.components)


@dataclass(frozen=True)
class CharCoords:
    """The four characteristic (null-plane) coordinates of a four-vector."""

    g1: float
    g2: float
    g3: float
    g4: float

    @property
    def components(self) -> Tuple[float, float, float, float]:
        return (self.g1, self.g2, self.g3, self.g4)

    def __iter__(self):
        return iter(self.components)


@dataclass(frozen=True)
class EigenFactors:
    """Boost eigenvalues on the four characteristic coordinates."""

    l1: float
    l2: float
    l3: float
    l4: float

    @property
    def components(self) -> Tuple[float, float, float, float]:
        return (self.l1, self.l2, self.l3, self.l4)

    def product(self) -> float:
        return self.l1 * self.l2 * self.l3 * self.l4


@dataclass(frozen=True)
class BoostMatrix:
    """4x4 kinematic matrix; symmetric with unit determinant."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=float)
        if m.shape != (4, 4):
            raise ValueError(f"boost matrix must be 4x4, got shape {m.shape}")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)

    def apply(self, y: FourVector) -> FourVector:
        return FourVector(*(self.entries @ np.asarray(y.components)))

    def det(self) -> float:
        return float(np.linalg.det(self.entries))


def _entries_from_components(s1: float, s2: float, s3: float, inv_a: float) -> np.ndarray:
    return inv_a * np.array(
        [
            [1.0, s1, s2, s3],
            [s1, 1.0, s3, s2],
            [s2, s3, 1.0, s1],
            [s3, s2, s1, 1.0],
        ]
    )


def boost_matrix(s: Velocity3) -> BoostMatrix:
    """Boost for velocity s: diagonal 1/A, first row/column s_a/A, and the
    spatial off-diagonal pairs carrying the complementary component."""
    inv_a = 1.0 / a_factor(s)
    return BoostMatrix(_entries_from_components(s.s1, s.s2, s.s3, inv_a))


def _boost_from_weights(w) -> BoostMatrix:
    # Build A and the components from one accurate weight tuple; going
    # through rounded components first loses the small weights' relative
    # precision near the domain boundary.
    total = w[0] + w[1] + w[2] + w[3]
    g = tuple(4.0 * x / total for x in w)
    inv_a = (g[0] * g[1] * g[2] * g[3]) ** -0.25
    s1, s2, s3 = weights_to_components(g)
    return BoostMatrix(_entries_from_components(s1, s2, s3, inv_a))


def transform(s: Velocity3, y: FourVector) -> FourVector:
    """Apply the boost for s to a four-vector (closed form, no matrix)."""
    inv_a = 1.0 / a_factor(s)
    s1, s2, s3 = s.components
    y0, y1, y2, y3 = y.components
    return FourVector(
        (y0 + s1 * y1 + s2 * y2 + s3 * y3) * inv_a,
        (s1 * y0 + y1 + s3 * y2 + s2 * y3) * inv_a,
        (s2 * y0 + s3 * y1 + y2 + s1 * y3) * inv_a,
        (s3 * y0 + s2 * y1 + s1 * y2 + y3) * inv_a,
    )


def char_coords(y: FourVector) -> CharCoords:
    """Characteristic coordinates of a four-vector."""
    return CharCoords(*char_combos(*y.components))


def inv_char_coords(g: CharCoords) -> FourVector:
    """Four-vector from characteristic coordinates."""
    return FourVector(*combos_to_vector(g.components))


def eigenfactors(s: Velocity3) -> EigenFactors:
    """Eigenvalues (1 + e_A . s)/A(s); their product is exactly 1."""
    inv_a = 1.0 / a_factor(s)
    w = s.factors()
    return EigenFactors(w[0] * inv_a, w[1] * inv_a, w[2] * inv_a, w[3] * inv_a)


def momentum_transform(s: Velocity3, p: "CoMomentum") -> "CoMomentum":
    """Transform covariant momentum components between the same two frames.

    Covectors ride with the reciprocal velocity: the same matrix pattern is
    applied with f = invert(s), which preserves the contraction with any
    transformed four-vector.  Propagates the singular-inversion error at
    light-speed sign triples.
    """
    from .metric_momentum import CoMomentum

    f = invert(s)
    inv_a = 1.0 / a_factor(f)
    f1, f2, f3 = f.components
    p0, p1, p2, p3 = p.components
    return CoMomentum(
        (p0 + f1 * p1 + f2 * p2 + f3 * p3) * inv_a,
        (f1 * p0 + p1 + f3 * p2 + f2 * p3) * inv_a,
        (f2 * p0 + f3 * p1 + p2 + f1 * p3) * inv_a,
        (f3 * p0 + f2 * p1 + f1 * p2 + p3) * inv_a,
    )


@dataclass(frozen=True)
class MatrixGroupReport:
    """Entrywise deviations for the three matrix group properties."""

    group_law_dev: float
    commutation_dev: float
    inverse_dev: float
    tolerance: float

    @property
    def group_law_pass(self) -> bool:
        return self.group_law_dev <= self.tolerance

    @property
    def commutation_pass(self) -> bool:
        return self.commutation_dev <= self.tolerance

    @property
    def inverse_pass(self) -> bool:
        return self.inverse_dev <= self.tolerance

    @property
    def passed(self) -> bool:
        return self.group_law_pass and self.commutation_pass and self.inverse_pass

    @property
    def max_dev(self) -> float:
        return max(self.group_law_dev, self.commutation_dev, self.inverse_dev)


def compose_matrices_check(a: Velocity3, b: Velocity3, tolerance: float = 1e-12) -> MatrixGroupReport:
    """Verify the boost group law, commutativity, and inverse-by-reciprocal.

    The composed-velocity boost is built from the composed weights so the
    comparison measures the group property rather than representation
    round-off.
    """
    la = boost_matrix(a).entries
    lb = boost_matrix(b).entries
    wa, wb = a.factors(), b.factors()
    lab = _boost_from_weights((wa[0] * wb[0], wa[1] * wb[1], wa[2] * wb[2], wa[3] * wb[3])).entries

    group_dev = float(np.max(np.abs(la @ lb - lab)))
    commute_dev = float(np.max(np.abs(la @ lb - lb @ la)))
    eye = np.eye(4)
    inverse_dev = max(
        float(np.max(np.abs(boost_matrix(invert(v)).entries @ boost_matrix(v).entries - eye)))
        for v in (a, b)
    )
    return MatrixGroupReport(
        group_law_dev=group_dev,
        commutation_dev=commute_dev,
        inverse_dev=inverse_dev,
        tolerance=tolerance,
    )
