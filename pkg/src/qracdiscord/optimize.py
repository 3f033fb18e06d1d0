"""Derivative-free search helpers on intervals and the unit sphere.

Golden-section search is used instead of gradient methods because the
objectives here have absolute-value kinks at spectrum degeneracies. All
routines are deterministic.
"""

from __future__ import annotations

import numpy as np

INV_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def golden_section_min(f, lo: float, hi: float, tol: float):
    """Golden-section minimum of ``f`` on [lo, hi].

    Returns (x, f(x), evaluations). The bracket is shrunk until its width
    drops below ``tol``; ``f`` is assumed unimodal on the bracket, and on a
    flat stretch any interior point is an acceptable answer.
    """
    a, b = float(lo), float(hi)
    c = b - INV_GOLDEN * (b - a)
    d = a + INV_GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    evals = 2
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_GOLDEN * (b - a)
            fd = f(d)
        evals += 1
    if fc < fd:
        return c, fc, evals
    return d, fd, evals


def sphere_point(theta: float, phi: float) -> np.ndarray:
    """Unit vector at polar angle ``theta`` (from +z) and azimuth ``phi``."""
    st = np.sin(theta)
    return np.array([st * np.cos(phi), st * np.sin(phi), np.cos(theta)])


def sphere_grid(thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    """All (theta, phi) combinations as unit vectors, polar index major.

    The flattened row order matches C order over (theta, phi), so the
    first occurrence of an extremum is the lexicographically smallest
    angle pair.
    """
    t = np.asarray(thetas, dtype=float)[:, None]
    p = np.asarray(phis, dtype=float)[None, :]
    st = np.sin(t) * np.ones_like(p)
    grid = np.stack(
        [st * np.cos(p), st * np.sin(p), np.cos(t) * np.ones_like(p)], axis=-1
    )
    return grid.reshape(-1, 3)


def refine_on_sphere(f, theta, phi, dtheta, dphi, tol, max_evals):
    """Coordinate-wise golden-section refinement of ``f(theta, phi)``.

    Starting from a grid point, alternately line-searches each angle over
    a bracket of the given half-width, halving the brackets each cycle
    until both drop below ``tol``. Angles are left unclamped; the sphere
    map is periodic and smooth, so out-of-range angles are harmless.

    Returns (theta, phi, value, evaluations). Raises RuntimeError if the
    evaluation budget is exhausted before convergence, which signals a
    pathological objective.
    """
    best = f(theta, phi)
    evals = 1
    ht, hp = float(dtheta), float(dphi)
    while ht > tol or hp > tol:
        theta, best, n1 = golden_section_min(
            lambda t: f(t, phi), theta - ht, theta + ht, tol
        )
        phi, best, n2 = golden_section_min(
            lambda p: f(theta, p), phi - hp, phi + hp, tol
        )
        evals += n1 + n2
        if evals > max_evals:
            raise RuntimeError(
                f"sphere refinement did not converge within {max_evals} evaluations"
            )
        ht *= 0.5
        hp *= 0.5
    return theta, phi, best, evals
