"""Numeric comparison policy shared across the package.

All quantities handled here are O(1) on the sampled domain, so a single
mixed absolute/relative tolerance is appropriate for generic comparisons.
Checks with their own stated tolerance (the verification suites) pass it
explicitly instead of using these defaults.
"""

DEFAULT_ATOL = 1e-14
DEFAULT_RTOL = 1e-12

# |K| below this is treated as a genuine pole of the reciprocal velocity.
SINGULAR_K_EPS = 1e-14

# 1 + a.b at or below this refuses composition.
DEGENERATE_DENOMINATOR_EPS = 1e-14


def is_close(x: float, y: float, atol: float = DEFAULT_ATOL, rtol: float = DEFAULT_RTOL) -> bool:
    """Mixed-tolerance comparison: |x-y| <= atol + rtol*max(|x|,|y|)."""
    return abs(x - y) <= atol + rtol * max(abs(x), abs(y))


def max_abs_diff(xs, ys) -> float:
    """Largest componentwise absolute difference between two sequences."""
    return max(abs(x - y) for x, y in zip(xs, ys))
