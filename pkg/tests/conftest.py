"""Shared helpers: cached field construction (building a field re-runs
root finding and torsion search, so tests share instances)."""

from functools import lru_cache

import mpmath

from arakelov.field import build_field

# reference values in the tests are computed with mpmath directly; run the
# whole suite at a precision comfortably above the library's default
mpmath.mp.prec = 160


@lru_cache(maxsize=None)
def field(*poly, precision=128):
    return build_field(list(poly), precision=precision)


def quadratic_field(d, precision=128):
    """The quadratic field of fundamental discriminant d."""
    if d % 4 == 1:
        return field((1 - d) // 4, -1, 1, precision=precision)
    assert d % 4 == 0
    return field(-d // 4, 0, 1, precision=precision)
