"""The four sign patterns and the characteristic (weight) maps built on them.

The patterns (+,+,+), (-,+,-), (+,-,-), (-,-,+) index everything in this
package: the four linear factors of the velocity domain, the eigenvalues of
a boost, the null hyperplanes, and the factors of the dispersion relation.
Together with componentwise multiplication they form a Klein four-group,
and each pattern has component product +1.

Appending a leading +1 to each pattern gives four mutually orthogonal
vectors (rows of a 4x4 Hadamard-type matrix); the induced linear maps
between (time, space) components and the four "characteristic" combinations
``x0 + e . x`` are the workhorses below.  They are written for plain number
tuples so the same code paths serve floats and exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

__all__ = [
    "SignPattern",
    "SIGN_PATTERNS",
    "EPS",
    "FACTOR_NAMES",
    "velocity_weights",
    "weights_to_components",
    "char_combos",
    "combos_to_vector",
]

# Raw sign triples, in the fixed indexing order A = 1..4.
EPS: Tuple[Tuple[int, int, int], ...] = (
    (1, 1, 1),
    (-1, 1, -1),
    (1, -1, -1),
    (-1, -1, 1),
)

# Human-readable forms of the four domain factors, used in error messages.
FACTOR_NAMES: Tuple[str, ...] = (
    "1 + s1 + s2 + s3",
    "1 - s1 + s2 - s3",
    "1 + s1 - s2 - s3",
    "1 - s1 - s2 + s3",
)


@dataclass(frozen=True)
class SignPattern:
    """One of the four sign triples, with its 1-based index."""

    index: int
    eps: Tuple[int, int, int]

    def __mul__(self, other: "SignPattern") -> "SignPattern":
        product = tuple(a * b for a, b in zip(self.eps, other.eps))
        return _BY_EPS[product]

    def dot(self, v: Sequence) -> float:
        e1, e2, e3 = self.eps
        return e1 * v[0] + e2 * v[1] + e3 * v[2]


SIGN_PATTERNS: Tuple[SignPattern, ...] = tuple(
    SignPattern(index=i + 1, eps=e) for i, e in enumerate(EPS)
)

_BY_EPS = {p.eps: p for p in SIGN_PATTERNS}


def velocity_weights(s1, s2, s3):
    """Four weights 1 + e_A . s of a velocity triple; they sum to 4."""
    return (
        1 + s1 + s2 + s3,
        1 - s1 + s2 - s3,
        1 + s1 - s2 - s3,
        1 - s1 - s2 + s3,
    )


def weights_to_components(w):
    """Velocity components from weights, invariant under rescaling of w.

    Componentwise this is a weighted average of +-1, which is what makes
    the weight route numerically robust arbitrarily close to the domain
    boundary.
    """
    total = w[0] + w[1] + w[2] + w[3]
    return (
        (w[0] - w[1] + w[2] - w[3]) / total,
        (w[0] + w[1] - w[2] - w[3]) / total,
        (w[0] - w[1] - w[2] + w[3]) / total,
    )


def char_combos(x0, x1, x2, x3):
    """The four characteristic combinations x0 + e_A . (x1,x2,x3)."""
    return (
        x0 + x1 + x2 + x3,
        x0 - x1 + x2 - x3,
        x0 + x1 - x2 - x3,
        x0 - x1 - x2 + x3,
    )


def combos_to_vector(g):
    """Inverse of :func:`char_combos`; exact up to rounding."""
    quarter = (g[0] + g[1] + g[2] + g[3]) / 4
    return (
        quarter,
        (g[0] - g[1] + g[2] - g[3]) / 4,
        (g[0] + g[1] - g[2] - g[3]) / 4,
        (g[0] - g[1] - g[2] + g[3]) / 4,
    )
