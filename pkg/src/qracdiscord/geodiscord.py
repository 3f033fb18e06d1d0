"""Geometric discord through the saturated 2 x n Bloch-decomposition bound.

With the measurement on the qubit (m = 2) and the four-dimensional
register as the other side (n = 4), the geometric discord of the
classical-quantum state is determined by its Bloch decomposition: the
qubit marginal vector x, and the 3x3 block of correlations against the
three diagonal SU(4) generators. States diagonal in the register basis
have zero overlap with the twelve off-diagonal generators, so that block
is the whole correlation matrix. Writing

    G = x x^t + T T^t / 2,

the geometric discord is (tr G - lambda_max(G)) / 8, one eighth of the
sum of the two smaller eigenvalues of G. For four pure encodings
tr G = (1/4) sum_a |r_a|^2 = 1.

Correlation entries follow from the generator diagonals: with r_a the
four Bloch vectors (register order) and i the Pauli axis,

    T_i1 = (r_0i - r_1i) / 2
    T_i2 = (r_0i + r_1i - 2 r_2i) / (2 sqrt 3)
    T_i3 = (r_0i + r_1i + r_2i - 3 r_3i) / (2 sqrt 6).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .encoding import BASE_ANGLES, EncodingSet, as_bloch
from .linalg import eigvalsh3, eigvalsh3_components

_SQRT3 = np.sqrt(3.0)
_SQRT6 = np.sqrt(6.0)


@dataclass(frozen=True)
class BlochDecomposition:
    """Local vector, correlation block and their positive combination."""

    x: np.ndarray     # (3,) qubit Bloch marginal
    corr: np.ndarray  # (3, 3) correlations against the diagonal generators
    gram: np.ndarray  # (3, 3) symmetric PSD, x x^t + corr corr^t / 2


def bloch_decompose(enc) -> BlochDecomposition:
    """Bloch decomposition of the classical-quantum state."""
    bloch = as_bloch(enc)
    x = bloch.mean(axis=0)
    r0, r1, r2, r3 = bloch
    corr = np.empty((3, 3))
    corr[:, 0] = 0.5 * (r0 - r1)
    corr[:, 1] = (r0 + r1 - 2.0 * r2) / (2.0 * _SQRT3)
    corr[:, 2] = (r0 + r1 + r2 - 3.0 * r3) / (2.0 * _SQRT6)
    gram = np.outer(x, x) + 0.5 * (corr @ corr.T)
    return BlochDecomposition(x=x, corr=corr, gram=gram)


def geometric_discord(enc) -> float:
    """Geometric discord: one eighth of the two smaller eigenvalues of G."""
    lam = eigvalsh3(bloch_decompose(enc).gram)
    return float(lam[1] + lam[2]) / 8.0


def planar_gd_closed(delta) -> tuple[np.ndarray, float]:
    """Closed-form G spectrum and geometric discord for planar encodings.

    ``delta`` is the four half-angle offsets (an EncodingSet is accepted
    if its phases are exactly zero). The spectrum is

        { (4 + s)/8, (4 - s)/8, 0 },   s = sqrt(2 D),
        D = 2 + cos 4(d1-d4) + cos 4(d2-d3) - cos 4(d1-d2)
              - cos 4(d1-d3) - cos 4(d2-d4) - cos 4(d3-d4),

    with D clamped to [0, 8] against roundoff. Returns the eigenvalues
    sorted nonincreasing and D_G = (4 - s)/64. For the symmetric rotation
    (d, -d, -d, d) this reduces to D_G = (1 - |sin 4d|)/16.
    """
    if isinstance(delta, EncodingSet):
        if np.any(delta.phi != 0.0):
            raise ValueError("closed form requires planar encodings (zero phases)")
        delta = delta.delta
    d1, d2, d3, d4 = np.asarray(delta, dtype=float)
    disc = (
        2.0
        + np.cos(4.0 * (d1 - d4))
        + np.cos(4.0 * (d2 - d3))
        - np.cos(4.0 * (d1 - d2))
        - np.cos(4.0 * (d1 - d3))
        - np.cos(4.0 * (d2 - d4))
        - np.cos(4.0 * (d3 - d4))
    )
    disc = min(max(disc, 0.0), 8.0)
    s = np.sqrt(2.0 * disc)
    lam = np.array([(4.0 + s) / 8.0, (4.0 - s) / 8.0, 0.0])
    return lam, float(lam[1]) / 8.0


def gd8_batch(d1, d2, d3, d4, p1, p2) -> np.ndarray:
    """Normalised geometric discord 8 D_G over broadcastable angle arrays.

    The six arguments are the four offsets and two phases; any
    broadcast-compatible shapes work. This is the hot kernel of the grid
    search, so the Bloch vectors are expanded componentwise instead of
    materialising stacked (..., 4, 3) arrays.
    """
    t1 = 2.0 * (BASE_ANGLES[0] + np.asarray(d1, dtype=float))
    t2 = 2.0 * (BASE_ANGLES[1] + np.asarray(d2, dtype=float))
    t3 = 2.0 * (BASE_ANGLES[2] + np.asarray(d3, dtype=float))
    t4 = 2.0 * (BASE_ANGLES[3] + np.asarray(d4, dtype=float))
    s3, s4 = np.sin(t3), np.sin(t4)
    rx = (np.sin(t1), np.sin(t2), s3 * np.cos(p1), s4 * np.cos(p2))
    ry = (0.0, 0.0, s3 * np.sin(p1), s4 * np.sin(p2))
    rz = (np.cos(t1), np.cos(t2), np.cos(t3), np.cos(t4))

    x = []
    corr = []
    for comp in (rx, ry, rz):
        a, b, c, d = comp
        x.append(0.25 * (a + b + c + d))
        corr.append(
            (
                0.5 * (a - b),
                (a + b - 2.0 * c) / (2.0 * _SQRT3),
                (a + b + c - 3.0 * d) / (2.0 * _SQRT6),
            )
        )

    def gram(i, j):
        ci, cj = corr[i], corr[j]
        return x[i] * x[j] + 0.5 * (ci[0] * cj[0] + ci[1] * cj[1] + ci[2] * cj[2])

    g11, g22, g33 = gram(0, 0), gram(1, 1), gram(2, 2)
    lam_max, _, _ = eigvalsh3_components(
        g11, g22, g33, gram(0, 1), gram(0, 2), gram(1, 2)
    )
    return (g11 + g22 + g33) - lam_max
