import numpy as np
import pytest
from numpy.testing import assert_allclose

from qracdiscord.encoding import cq_state, planar_rotation, qubit_density
from qracdiscord.linalg import (
    PAULI,
    W_DIAG,
    eigvalsh3,
    eigvalsh3_components,
    partial_trace,
    shannon_entropy,
    tensor,
    vn_entropy,
)


def random_density(rng, dim):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(rng, dim):
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r))).conj()


# ---------------------------------------------------------------- tensor


def test_tensor_identity():
    assert_allclose(tensor(np.eye(2), np.eye(4)), np.eye(8))


def test_tensor_projector_block():
    rng = np.random.default_rng(1)
    rho = random_density(rng, 2)
    proj = np.zeros((2, 2))
    proj[0, 0] = 1.0
    out = tensor(proj, rho)
    assert_allclose(out[:2, :2], rho)
    assert np.abs(out[2:, :]).max() == 0.0
    assert np.abs(out[:, 2:]).max() == 0.0


def test_tensor_pauli_xx_hand_expanded():
    expected = np.array(
        [
            [0, 0, 0, 1],
            [0, 0, 1, 0],
            [0, 1, 0, 0],
            [1, 0, 0, 0],
        ],
        dtype=complex,
    )
    assert_allclose(tensor(PAULI[0], PAULI[0]), expected)


# ---------------------------------------------------------- partial trace


def test_partial_trace_of_products():
    rng = np.random.default_rng(2)
    for da, db in [(2, 4), (4, 2), (2, 2)]:
        a = random_density(rng, da)
        b = random_density(rng, db)
        joint = tensor(a, b)
        assert_allclose(partial_trace(joint, (da, db), keep=0), a, atol=1e-13)
        assert_allclose(partial_trace(joint, (da, db), keep=1), b, atol=1e-13)


def test_partial_trace_preserves_trace():
    rng = np.random.default_rng(3)
    for _ in range(10):
        rho = random_density(rng, 8)
        for keep in (0, 1):
            red = partial_trace(rho, (4, 2), keep)
            assert np.isclose(np.trace(red).real, 1.0, atol=1e-12)


def test_partial_trace_optimal_encoding_qubit_marginal():
    rho = cq_state(planar_rotation(0.0))
    assert_allclose(partial_trace(rho, (4, 2), keep=1), np.eye(2) / 2, atol=1e-14)


def test_partial_trace_dimension_mismatch():
    with pytest.raises(ValueError):
        partial_trace(np.eye(6), (4, 2), keep=0)


# ---------------------------------------------------------------- entropy


def test_vn_entropy_reference_states():
    assert vn_entropy(np.eye(2) / 2) == 1.0
    assert vn_entropy(qubit_density([0.0, 0.0, 1.0])) == 0.0
    assert np.isclose(vn_entropy(cq_state(planar_rotation(0.0))), 2.0, atol=1e-12)


def test_vn_entropy_unitary_invariance():
    rng = np.random.default_rng(4)
    for dim in (2, 4, 8):
        rho = random_density(rng, dim)
        u = random_unitary(rng, dim)
        assert np.isclose(vn_entropy(u @ rho @ u.conj().T), vn_entropy(rho), atol=1e-10)


def test_vn_entropy_rejects_bad_operators():
    with pytest.raises(ValueError):
        vn_entropy(np.array([[0.5, 0.1], [0.0, 0.5]]))  # not Hermitian
    with pytest.raises(ValueError):
        vn_entropy(np.diag([1.5, -0.5]))  # negative spectrum


@pytest.mark.parametrize(
    "p, expected",
    [
        ([0.25, 0.25, 0.25, 0.25], 2.0),
        ([0.5, 0.25, 0.25, 0.0], 1.5),
        ([1.0, 0.0, 0.0, 0.0], 0.0),
    ],
)
def test_shannon_entropy_values(p, expected):
    assert shannon_entropy(p) == expected


@pytest.mark.parametrize("k", [1, 2, 4])
def test_shannon_entropy_uniform_is_log2k(k):
    assert shannon_entropy(np.full(k, 1.0 / k)) == np.log2(k)


def test_shannon_entropy_rejects_unnormalised():
    with pytest.raises(ValueError):
        shannon_entropy([0.5, 0.6])
    with pytest.raises(ValueError):
        shannon_entropy([1.1, -0.1])


# -------------------------------------------------------- 3x3 eigenvalues


def test_eigvalsh3_known_matrix():
    lam = eigvalsh3(0.5 * np.diag([1.0, 0.0, 1.0]))
    assert_allclose(lam, [0.5, 0.5, 0.0], atol=1e-15)


def test_eigvalsh3_diagonal():
    lam = eigvalsh3(np.diag([0.3, -1.2, 0.9]))
    assert_allclose(lam, [0.9, 0.3, -1.2], atol=1e-14)


def test_eigvalsh3_against_characteristic_polynomial():
    rng = np.random.default_rng(5)
    for _ in range(200):
        m = rng.standard_normal((3, 3))
        g = (m + m.T) / 2
        lam = eigvalsh3(g)
        # coefficients of det(g - x I) = -x^3 + tr x^2 - c1 x + det
        c1 = (
            g[0, 0] * g[1, 1] + g[0, 0] * g[2, 2] + g[1, 1] * g[2, 2]
            - g[0, 1] ** 2 - g[0, 2] ** 2 - g[1, 2] ** 2
        )
        roots = np.sort(np.roots([1.0, -np.trace(g), c1, -np.linalg.det(g)]))[::-1]
        assert_allclose(lam, roots.real, atol=1e-10)
        assert np.all(np.diff(lam) <= 0.0)
        assert np.isclose(lam.sum(), np.trace(g), atol=1e-12)


def test_eigvalsh3_psd_stays_nonnegative():
    rng = np.random.default_rng(6)
    for _ in range(100):
        m = rng.standard_normal((3, 3))
        lam = eigvalsh3(m @ m.T)
        assert lam[2] >= -1e-10


def test_eigvalsh3_components_matches_numpy():
    rng = np.random.default_rng(7)
    m = rng.standard_normal((500, 3, 3))
    g = (m + np.transpose(m, (0, 2, 1))) / 2
    hi, mid, lo = eigvalsh3_components(
        g[:, 0, 0], g[:, 1, 1], g[:, 2, 2], g[:, 0, 1], g[:, 0, 2], g[:, 1, 2]
    )
    ref = np.linalg.eigvalsh(g)
    assert_allclose(hi, ref[:, 2], atol=1e-11)
    assert_allclose(mid, ref[:, 1], atol=1e-11)
    assert_allclose(lo, ref[:, 0], atol=1e-11)


def test_eigvalsh3_rejects_asymmetric():
    with pytest.raises(ValueError):
        eigvalsh3(np.array([[1.0, 0.5, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]))


# -------------------------------------------------------------- generators


def test_w_generators_orthonormality():
    for i in range(3):
        for j in range(3):
            assert np.isclose(np.trace(W_DIAG[i] @ W_DIAG[j]), 2.0 * (i == j), atol=1e-15)


def test_generators_traceless():
    for s in PAULI:
        assert np.isclose(np.trace(s), 0.0)
    for w in W_DIAG:
        assert np.isclose(np.trace(w), 0.0, atol=1e-15)


def test_pauli_anticommutators():
    for i in range(3):
        for j in range(3):
            anti = PAULI[i] @ PAULI[j] + PAULI[j] @ PAULI[i]
            assert_allclose(anti, 2.0 * (i == j) * np.eye(2), atol=1e-15)
