"""Quantum discord of the register-qubit state, measured on the qubit.

A projective measurement (I +- a . sigma)/2 on the qubit collapses the
register to one of two conditional ensembles. The discord before
optimisation is

    S(qubit marginal) - S(joint) + sum_k p_k S(register | outcome k),

and the discord proper is its minimum over the unit sphere of directions.
The post-measurement arithmetic reduces to Bloch algebra: the outcome
probabilities are p_+- = (1 +- a . rbar)/2 and the unnormalised register
weights are (1 +- a . r_a)/8. A dense 8x8 route through explicit
projectors and partial traces is kept as an independent cross-check of
that fast path (:func:`conditional_ensemble_dense`).

The minimisation runs over unit-norm directions only. Subunit vectors
correspond to noisy measurements whose outcomes are a classical
post-processing of the unit-vector measurement, so they can only raise
the conditional entropy; the test suite checks this monotonicity rather
than assuming it silently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .encoding import as_bloch, cq_state, qubit_density, reduced_qubit
from .linalg import ZERO_EIG, density_spectrum, partial_trace, shannon_entropy, vn_entropy
from .optimize import refine_on_sphere, sphere_grid, sphere_point
from .witness import unit_direction


@dataclass(frozen=True)
class OptimizerSettings:
    """Controls for the measurement-sphere minimisation.

    The default grid has polar step pi/180 and azimuth step pi/45, which
    places the in-plane minimisers of planar encodings (polar pi/4 and
    3pi/4 at azimuth 0 or pi) exactly on the lattice.
    """

    polar_points: int = 181    # over [0, pi], poles included
    azimuth_points: int = 91   # over [0, 2pi]
    refine_tol: float = 1e-9   # terminal bracket width, radians
    max_refine_evals: int = 10_000


@dataclass(frozen=True)
class ConditionalEnsemble:
    """Post-measurement register ensemble for one measurement direction.

    ``spec_plus`` and ``spec_minus`` are the spectra of the conditional
    register states, each sorted nonincreasing and summing to 1. A branch
    of zero probability carries the uniform spectrum by convention, which
    is neutral in every entropy average.
    """

    p_plus: float
    p_minus: float
    spec_plus: np.ndarray
    spec_minus: np.ndarray


def _xlog2x(w: np.ndarray) -> np.ndarray:
    """Elementwise w log2 w, continued by 0 at w <= 0.

    No positive cutoff here: a threshold would carve a spurious dip into
    the objective near spectrum degeneracies, which the minimiser would
    then chase.
    """
    w = np.maximum(w, 0.0)
    out = np.zeros_like(w)
    mask = w > 0.0
    out[mask] = w[mask] * np.log2(w[mask])
    return out


def _branch_spectrum(weights: np.ndarray, p: float) -> np.ndarray:
    if p <= ZERO_EIG:
        return np.full(4, 0.25)
    return np.sort(np.maximum(weights, 0.0) / p)[::-1]


def conditional_ensemble(enc, a) -> ConditionalEnsemble:
    """Conditional register ensemble via Bloch arithmetic (fast path)."""
    bloch = as_bloch(enc)
    a = unit_direction(a)
    dots = bloch @ a
    w_plus = 0.125 * (1.0 + dots)
    w_minus = 0.125 * (1.0 - dots)
    p_plus = float(w_plus.sum())
    p_minus = float(w_minus.sum())
    return ConditionalEnsemble(
        p_plus=p_plus,
        p_minus=p_minus,
        spec_plus=_branch_spectrum(w_plus, p_plus),
        spec_minus=_branch_spectrum(w_minus, p_minus),
    )


def conditional_ensemble_dense(enc, a) -> ConditionalEnsemble:
    """Conditional ensemble through the explicit 8x8 state.

    Applies (I (x) projector) to the joint density matrix, partial-traces
    out the qubit and diagonalises the conditional register states.
    Deliberately literal; exists as the oracle for the fast path.
    """
    rho = cq_state(enc)
    a = unit_direction(a)
    eye4 = np.eye(4, dtype=complex)
    out = []
    for sign in (+1.0, -1.0):
        proj = np.kron(eye4, qubit_density(sign * a))
        collapsed = proj @ rho @ proj
        p = float(np.trace(collapsed).real)
        if p > ZERO_EIG:
            spec = density_spectrum(partial_trace(collapsed / p, (4, 2), keep=0))
        else:
            spec = np.full(4, 0.25)
        out.append((p, spec))
    return ConditionalEnsemble(
        p_plus=out[0][0], p_minus=out[1][0], spec_plus=out[0][1], spec_minus=out[1][1]
    )


def conditional_entropy(enc, a) -> float:
    """Average register entropy after measuring along ``a``, in bits."""
    ens = conditional_ensemble(enc, a)
    return ens.p_plus * shannon_entropy(ens.spec_plus) + ens.p_minus * shannon_entropy(
        ens.spec_minus
    )


def conditional_entropy_grid(bloch: np.ndarray, dirs: np.ndarray) -> np.ndarray:
    """Conditional entropies for many directions at once.

    ``bloch`` has shape (..., 4, 3) and ``dirs`` shape (m, 3); returns an
    array of shape (..., m). Uses p S(w/p) = -sum w log2 w + p log2 p,
    which avoids dividing by vanishing branch probabilities.
    """
    dots = np.asarray(bloch, dtype=float) @ np.asarray(dirs, dtype=float).T
    w_plus = 0.125 * (1.0 + dots)
    w_minus = 0.125 * (1.0 - dots)
    p_plus = w_plus.sum(axis=-2)
    p_minus = w_minus.sum(axis=-2)
    ent = -_xlog2x(w_plus).sum(axis=-2) - _xlog2x(w_minus).sum(axis=-2)
    return ent + _xlog2x(p_plus) + _xlog2x(p_minus)


def _entropy_offset(bloch: np.ndarray) -> float:
    """S(qubit marginal) - S(joint), the direction-independent part."""
    return vn_entropy(reduced_qubit(bloch)) - vn_entropy(cq_state(bloch))


def discord_pre_opt(enc, a) -> float:
    """Discord before optimisation, for a fixed measurement direction."""
    bloch = as_bloch(enc)
    return _entropy_offset(bloch) + conditional_entropy(bloch, a)


def quantum_discord(enc, settings: OptimizerSettings | None = None):
    """Quantum discord and the minimising measurement direction.

    Scans a polar-azimuth grid (ties resolve to the smallest angle pair in
    lexicographic order), then polishes the best point with coordinate-wise
    golden-section refinement. Returns (value, unit direction).
    """
    opts = settings or OptimizerSettings()
    bloch = as_bloch(enc)
    offset = _entropy_offset(bloch)
    thetas = np.linspace(0.0, np.pi, opts.polar_points)
    phis = np.linspace(0.0, 2.0 * np.pi, opts.azimuth_points)
    ent = conditional_entropy_grid(bloch, sphere_grid(thetas, phis))
    k = int(np.argmin(ent))
    i, j = divmod(k, len(phis))

    def objective(theta, phi):
        return float(conditional_entropy_grid(bloch, sphere_point(theta, phi)[None, :])[0])

    theta, phi, cond, _ = refine_on_sphere(
        objective,
        thetas[i],
        phis[j],
        dtheta=thetas[1] - thetas[0] if len(thetas) > 1 else np.pi / 2,
        dphi=phis[1] - phis[0] if len(phis) > 1 else np.pi / 2,
        tol=opts.refine_tol,
        max_evals=opts.max_refine_evals,
    )
    # Refinement assumes a locally unimodal objective; keep the grid point
    # if it somehow did not improve on it.
    if cond <= float(ent[k]):
        return offset + cond, sphere_point(theta, phi)
    return offset + float(ent[k]), sphere_point(thetas[i], phis[j])


def mutual_information(enc) -> float:
    """Quantum mutual information of the register-qubit state, in bits."""
    rho = cq_state(enc)
    return (
        vn_entropy(partial_trace(rho, (4, 2), keep=0))
        + vn_entropy(partial_trace(rho, (4, 2), keep=1))
        - vn_entropy(rho)
    )


def classical_correlation(enc, settings: OptimizerSettings | None = None) -> float:
    """Classical correlation: register entropy minus minimised conditional
    entropy. Equals mutual_information - quantum_discord."""
    bloch = as_bloch(enc)
    discord, _ = quantum_discord(bloch, settings)
    min_cond = discord - _entropy_offset(bloch)
    register_entropy = vn_entropy(partial_trace(cq_state(bloch), (4, 2), keep=0))
    return register_entropy - min_cond
