import numpy as np
import pytest

from qdiscord.states import binary_entropy

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def bell_diagonal_cc_oracle(rho):
    """Independent classical-correlation oracle for Bell-diagonal states:
    1 - h((1+c)/2) with c the largest |Tr rho (sigma_i x sigma_i)|."""
    c = max(
        abs(np.trace(rho @ np.kron(s, s)).real) for s in PAULI.values()
    )
    return 1.0 - binary_entropy((1 + c) / 2)


def random_unitary(rng):
    """Haar-ish 2x2 unitary from a QR decomposition of a Ginibre matrix."""
    z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
