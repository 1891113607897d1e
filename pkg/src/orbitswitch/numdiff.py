"""Central finite-difference stencils used as independent oracles.

The helpers are written against plain arithmetic, so they work unchanged for
floats and for ``mpmath`` numbers.
"""

FIRST_STEP = 1e-5
SECOND_STEP = 1e-4


def d1(f, x, h=FIRST_STEP, order=4):
    """Derivative of a one-argument function at ``x``."""
    if order == 2:
        return (f(x + h) - f(x - h)) / (2 * h)
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)


def d2(f, x, h=SECOND_STEP, order=4):
    if order == 2:
        return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h)
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h)
            - f(x - 2 * h)) / (12 * h * h)


def partial_x(f, x, y, h=FIRST_STEP, order=4):
    return d1(lambda s: f(s, y), x, h, order)


def partial_y(f, x, y, h=FIRST_STEP, order=4):
    return d1(lambda s: f(x, s), y, h, order)


def hessian(f, x, y, h=SECOND_STEP, order=4):
    """``(f_xx, f_yy, f_xy)``; the mixed term is a product of first-derivative stencils."""
    fxx = d2(lambda s: f(s, y), x, h, order)
    fyy = d2(lambda s: f(x, s), y, h, order)
    fxy = d1(lambda s: d1(lambda q: f(s, q), y, h, order), x, h, order)
    return fxx, fyy, fxy
