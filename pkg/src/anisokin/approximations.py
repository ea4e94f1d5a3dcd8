"""Low-velocity and low-momentum series, reduction checks, order fitting.

Every truncated series here is evaluated exactly as its source states it,
including two whose printed coefficients do not match the exact laws:

* the reciprocal-velocity truncation (`invert_series`) carries spurious
  squared terms and already deviates at second order, and
* the printed dispersion-energy expansion (`energy_series`) has the wrong
  quartic coefficients, leaving a fourth-order remainder.

`remainder_order_check` is the arbiter: it scales the base input down and
fits the decay exponent of |exact - series|.  `energy_series_corrected`
carries the re-derived quartic coefficients and meets the fifth-order
remainder the expansion is supposed to have; the exact-rational oracle
records both verdicts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError
from .metric_momentum import MassShellQuery, dispersion_energy, kinematic_length
from .transforms import FourVector, transform
from .velocity_algebra import Velocity3, a_factor, compose, invert, subtract

__all__ = [
    "SeriesResult",
    "LorentzReductionReport",
    "RemainderOrderReport",
    "a_series",
    "a_inv_series",
    "invert_series",
    "subtract_series",
    "compose_series",
    "energy_series",
    "energy_series_corrected",
    "lorentz_reduction_check",
    "remainder_order_check",
    "sync_check",
    "SERIES_OPS",
]


@dataclass(frozen=True)
class SeriesResult:
    """A truncated series value with its named contributions."""

    value: float
    parts: Dict[str, float]
    order: int

    def __post_init__(self):
        total = math.fsum(self.parts.values())
        if abs(total - self.value) > 1e-12 * max(1.0, abs(self.value)):
            raise ValueError(f"series parts sum to {total!r}, not {self.value!r}")


def _symmetric_functions(x1: float, x2: float, x3: float):
    sum_sq = x1 * x1 + x2 * x2 + x3 * x3
    triple = x1 * x2 * x3
    sum_quartic = x1**4 + x2**4 + x3**4
    pair_sq = (x1 * x2) ** 2 + (x2 * x3) ** 2 + (x1 * x3) ** 2
    return sum_sq, triple, sum_quartic, pair_sq


def a_series(s: Velocity3) -> SeriesResult:
    """Fourth-order truncation of the dilation factor A (remainder O(5))."""
    sum_sq, triple, sum_quartic, pair_sq = _symmetric_functions(*s.components)
    isotropic = 1.0 - 0.5 * sum_sq - 0.125 * sum_quartic
    anisotropic = 2.0 * triple - 1.25 * pair_sq
    return SeriesResult(
        value=isotropic + anisotropic,
        parts={"isotropic": isotropic, "anisotropic": anisotropic},
        order=5,
    )


def a_inv_series(s: Velocity3) -> SeriesResult:
    """Fourth-order truncation of 1/A (remainder O(5))."""
    sum_sq, triple, sum_quartic, pair_sq = _symmetric_functions(*s.components)
    isotropic = 1.0 + 0.5 * sum_sq + 0.375 * sum_quartic
    anisotropic = -2.0 * triple + 1.75 * pair_sq
    return SeriesResult(
        value=isotropic + anisotropic,
        parts={"isotropic": isotropic, "anisotropic": anisotropic},
        order=5,
    )


def invert_series(s: Velocity3) -> Velocity3:
    """Quadratic truncation of the reciprocal velocity, as printed.

    The printed squared terms do not belong to the exact law's expansion
    (which has only the doubled cross terms at second order), so this
    approximation deviates from `invert` already at O(2); the order check
    and the oracle ledger record that.
    """
    s1, s2, s3 = s.components
    return Velocity3.unchecked(
        -s1 - s1 * s1 - (s2 - s3) ** 2,
        -s2 - s2 * s2 - (s1 - s3) ** 2,
        -s3 - s3 * s3 - (s1 - s2) ** 2,
    )


def subtract_series(minuend: Velocity3, subtrahend: Velocity3) -> Velocity3:
    """Bilinear truncation of velocity subtraction (remainder O(3))."""
    x1, x2, x3 = minuend.components
    y1, y2, y3 = subtrahend.components
    return Velocity3.unchecked(
        x1 - y1 + 2.0 * y2 * y3 - y2 * x3 - x2 * y3,
        x2 - y2 + 2.0 * y1 * y3 - y1 * x3 - x1 * y3,
        x3 - y3 + 2.0 * y1 * y2 - y1 * x2 - x1 * y2,
    )


def compose_series(a: Velocity3, b: Velocity3) -> Velocity3:
    """Bilinear truncation of velocity composition (remainder O(3))."""
    a1, a2, a3 = a.components
    b1, b2, b3 = b.components
    return Velocity3.unchecked(
        a1 + b1 + a2 * b3 + a3 * b2,
        a2 + b2 + a1 * b3 + a3 * b1,
        a3 + b3 + a1 * b2 + a2 * b1,
    )


def energy_series(query: MassShellQuery) -> SeriesResult:
    """Low-momentum dispersion energy with the printed quartic coefficients.

    The +1/8 quartic and -5/4 pair coefficients do not match the exact
    quartic mass-shell expansion (see `energy_series_corrected`), leaving a
    fourth-order remainder; kept verbatim so the discrepancy stays on
    record.
    """
    m = query.mass
    sum_sq, triple, sum_quartic, pair_sq = _symmetric_functions(*query.spatial)
    isotropic = m + sum_sq / (2.0 * m) + sum_quartic / (8.0 * m**3)
    anisotropic = -2.0 * triple / m**2 - 1.25 * pair_sq / m**3
    return SeriesResult(
        value=isotropic + anisotropic,
        parts={"isotropic": isotropic, "anisotropic": anisotropic},
        order=4,
    )


def energy_series_corrected(query: MassShellQuery) -> SeriesResult:
    """Low-momentum dispersion energy with corrected quartic coefficients.

    Derived by expanding the mass-shell quartic: the quartic single-component
    coefficient is -1/8 (matching sqrt(m^2 + p^2) in the collinear case) and
    the pair coefficient is +3/4.  Remainder O(5).
    """
    m = query.mass
    sum_sq, triple, sum_quartic, pair_sq = _symmetric_functions(*query.spatial)
    isotropic = m + sum_sq / (2.0 * m) - sum_quartic / (8.0 * m**3)
    anisotropic = -2.0 * triple / m**2 + 0.75 * pair_sq / m**3
    return SeriesResult(
        value=isotropic + anisotropic,
        parts={"isotropic": isotropic, "anisotropic": anisotropic},
        order=5,
    )


@dataclass(frozen=True)
class LorentzReductionReport:
    """Max deviations of collinear inputs from the two-dimensional formulas."""

    samples: int
    seed: int
    transform_dev: float
    length_dev: float
    subtract_dev: float
    compose_dev: float
    invert_dev: float

    @property
    def max_dev(self) -> float:
        return max(
            self.transform_dev,
            self.length_dev,
            self.subtract_dev,
            self.compose_dev,
            self.invert_dev,
        )


def lorentz_reduction_check(samples: int = 1000, seed: int = 0) -> LorentzReductionReport:
    """Collinear inputs must reproduce the familiar two-dimensional formulas.

    Velocities with vanishing second and third components compose, subtract
    and invert exactly like one-dimensional special-relativistic velocities,
    and the boost reduces to the usual 2x2 action on the (0,1) block.
    """
    rng = np.random.default_rng(seed)
    t_dev = f_dev = s_dev = c_dev = i_dev = 0.0
    for _ in range(samples):
        v, v2, v3 = rng.uniform(-0.9, 0.9, size=3)
        gamma_like = 1.0 / math.sqrt((1.0 + v) * (1.0 - v))
        y0 = rng.uniform(0.5, 2.0)
        y1 = y0 * rng.uniform(-0.9, 0.9)
        sv = Velocity3(v, 0.0, 0.0)

        out = transform(sv, FourVector(y0, y1, 0.0, 0.0))
        expected = ((y0 + v * y1) * gamma_like, (v * y0 + y1) * gamma_like, 0.0, 0.0)
        t_dev = max(t_dev, max(abs(o - e) for o, e in zip(out.components, expected)))

        f_dev = max(
            f_dev,
            abs(kinematic_length(FourVector(y0, y1, 0.0, 0.0)) - math.sqrt((y0 + y1) * (y0 - y1))),
        )

        diff = subtract(Velocity3(v3, 0.0, 0.0), Velocity3(v2, 0.0, 0.0))
        s_dev = max(s_dev, max(abs(x - e) for x, e in zip(diff.components, ((v3 - v2) / (1.0 - v2 * v3), 0.0, 0.0))))

        comp = compose(Velocity3(v2, 0.0, 0.0), Velocity3(v3, 0.0, 0.0))
        c_dev = max(c_dev, max(abs(x - e) for x, e in zip(comp.components, ((v2 + v3) / (1.0 + v2 * v3), 0.0, 0.0))))

        rec = invert(sv)
        i_dev = max(i_dev, max(abs(x - e) for x, e in zip(rec.components, (-v, 0.0, 0.0))))
    return LorentzReductionReport(
        samples=samples,
        seed=seed,
        transform_dev=t_dev,
        length_dev=f_dev,
        subtract_dev=s_dev,
        compose_dev=c_dev,
        invert_dev=i_dev,
    )


def _scale_velocity(s: Velocity3, t: float) -> Velocity3:
    return Velocity3(s.s1 * t, s.s2 * t, s.s3 * t)


def _max_component_error(x: Velocity3, y: Velocity3) -> float:
    return max(abs(a - b) for a, b in zip(x.components, y.components))


# op tag -> (claimed remainder order, error at one scaled input)
SERIES_OPS: Dict[str, Tuple[int, Callable]] = {
    "a_series": (5, lambda base, t, m: abs(a_factor(_scale_velocity(base, t)) - a_series(_scale_velocity(base, t)).value)),
    "a_inv_series": (5, lambda base, t, m: abs(1.0 / a_factor(_scale_velocity(base, t)) - a_inv_series(_scale_velocity(base, t)).value)),
    "invert_series": (3, lambda base, t, m: _max_component_error(invert(_scale_velocity(base, t)), invert_series(_scale_velocity(base, t)))),
    "subtract_series": (3, lambda base, t, m: _max_component_error(
        subtract(_scale_velocity(base[0], t), _scale_velocity(base[1], t)),
        subtract_series(_scale_velocity(base[0], t), _scale_velocity(base[1], t)))),
    "compose_series": (3, lambda base, t, m: _max_component_error(
        compose(_scale_velocity(base[0], t), _scale_velocity(base[1], t)),
        compose_series(_scale_velocity(base[0], t), _scale_velocity(base[1], t)))),
    "energy_series": (5, lambda base, t, m: abs(
        dispersion_energy(MassShellQuery(m, *(x * t for x in base)))
        - energy_series(MassShellQuery(m, *(x * t for x in base))).value)),
    "energy_series_corrected": (5, lambda base, t, m: abs(
        dispersion_energy(MassShellQuery(m, *(x * t for x in base)))
        - energy_series_corrected(MassShellQuery(m, *(x * t for x in base))).value)),
}


@dataclass(frozen=True)
class RemainderOrderReport:
    """Fitted decay order of |exact - series| under input halving."""

    op: str
    levels: int
    errors: Tuple[float, ...]
    slope: float
    claimed_order: int

    @property
    def passed(self) -> bool:
        return self.slope >= self.claimed_order - 0.2


def remainder_order_check(op: str, base, levels: int = 5, mass: float = 1.0) -> RemainderOrderReport:
    """Scale the base input by 2^-k, k = 0..levels, and fit the error decay.

    The fitted log-log slope estimates the remainder order of the series;
    `passed` compares it against the claimed order minus 0.2.  Zero errors
    (series exact at that scale) are excluded from the fit; an all-zero
    sweep counts as unbounded order.
    """
    if op not in SERIES_OPS:
        raise KeyError(f"unknown series op {op!r}; known: {sorted(SERIES_OPS)}")
    claimed, error_at = SERIES_OPS[op]
    errors = tuple(error_at(base, 0.5**k, mass) for k in range(levels + 1))
    points = [(k, e) for k, e in enumerate(errors) if e > 0.0]
    if len(points) < 2:
        slope = math.inf
    else:
        ks = np.array([k for k, _ in points], dtype=float) * math.log(2.0)
        logs = np.log([e for _, e in points])
        slope = float(-np.polyfit(ks, logs, 1)[0])
    return RemainderOrderReport(op=op, levels=levels, errors=errors, slope=slope, claimed_order=claimed)


def _clock_rate_ratio(u: Velocity3, s: Velocity3) -> float:
    # Rate ratio of a clock carried at velocity u, observed from the frame
    # reached by boost s; algebraically constant in s, which is the content
    # of slow-transport synchronization.
    dot = u.s1 * s.s1 + u.s2 * s.s2 + u.s3 * s.s3
    return a_factor(compose(u, s)) * (1.0 + dot) / a_factor(s)


def sync_check(u: Velocity3, h: float = 1e-5, richardson: bool = False) -> Tuple[float, float, float]:
    """Central-difference gradient of the clock-rate ratio at zero transport.

    All three components must vanish (to finite-difference noise): moving a
    clock slowly does not perturb synchronization at first order.  With
    ``richardson=True`` a second halved-step evaluation cancels the leading
    truncation term.
    """
    if not 1e-6 <= h <= 1e-3:
        raise DomainError(f"finite-difference step must lie in [1e-6, 1e-3]: h = {h!r}")

    def grad(step: float) -> Tuple[float, float, float]:
        out = []
        for axis in range(3):
            plus = [0.0, 0.0, 0.0]
            plus[axis] = step
            minus = [0.0, 0.0, 0.0]
            minus[axis] = -step
            out.append(
                (_clock_rate_ratio(u, Velocity3(*plus)) - _clock_rate_ratio(u, Velocity3(*minus)))
                / (2.0 * step)
            )
        return tuple(out)

    g = grad(h)
    if richardson:
        g_half = grad(0.5 * h)
        g = tuple((4.0 * gh - gf) / 3.0 for gh, gf in zip(g_half, g))
    return g
