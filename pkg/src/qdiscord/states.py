"""Two-qubit density matrices: validation, parametrized families, entropies,
Schmidt decomposition, and seeded random-state generation.

Basis order is fixed as |00>, |01>, |10>, |11> throughout.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERM_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
EIG_CLIP = 1e-12


class StateError(ValueError):
    """Base class for state-construction and validation failures."""

    def __init__(self, message, deviation=None):
        super().__init__(message)
        self.deviation = deviation


class NotHermitian(StateError):
    pass


class TraceNotOne(StateError):
    pass


class NotPositive(StateError):
    pass


class NotNormalized(StateError):
    pass


class ParamOutOfRange(StateError):
    pass


def hermiticity_deviation(m):
    return float(np.max(np.abs(m - m.conj().T)))


def validate_state(raw):
    """Check that `raw` is a valid two-qubit density matrix.

    Returns a complex 4x4 copy, or raises NotHermitian / TraceNotOne /
    NotPositive carrying the measured deviation.
    """
    m = np.asarray(raw, dtype=complex)
    if m.shape != (4, 4):
        raise StateError(f"expected a 4x4 matrix, got shape {m.shape}")
    dev = hermiticity_deviation(m)
    if dev > HERM_TOL:
        raise NotHermitian(f"matrix is not Hermitian (deviation {dev:.3e})", dev)
    tr_dev = abs(np.trace(m).real - 1.0) + abs(np.trace(m).imag)
    if tr_dev > TRACE_TOL:
        raise TraceNotOne(f"trace differs from 1 by {tr_dev:.3e}", tr_dev)
    lo = float(np.linalg.eigvalsh((m + m.conj().T) / 2).min())
    if lo < -PSD_TOL:
        raise NotPositive(f"minimum eigenvalue {lo:.3e} is negative", -lo)
    return m.copy()


def partial_trace(rho, keep):
    """Trace out one qubit; `keep` is 'A' or 'B'.

    The contraction pairs conjugate entries term by term, so the result is
    Hermitian exactly and the trace is preserved to round-off.
    """
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("abcb->ac", r)
    if keep == "B":
        return np.einsum("abad->bd", r)
    raise ValueError("keep must be 'A' or 'B'")


def spectrum(m):
    """Eigenvalues of a Hermitian 2x2 or 4x4 matrix, descending.

    Round-off negatives down to -1e-10 are clipped to zero so the values can
    feed entropies directly.
    """
    m = np.asarray(m, dtype=complex)
    dev = hermiticity_deviation(m)
    if dev > HERM_TOL:
        raise NotHermitian(f"matrix is not Hermitian (deviation {dev:.3e})", dev)
    ev = np.linalg.eigvalsh(m)[::-1].copy()
    ev[(ev < 0) & (ev >= -PSD_TOL)] = 0.0
    return ev


def von_neumann_entropy(m):
    """S(rho) = -Tr{rho log2 rho} in bits, with 0 log 0 = 0."""
    ev = spectrum(m)
    ev = ev[ev > EIG_CLIP]
    return float(-np.sum(ev * np.log2(ev)))


def binary_entropy(x):
    """h(x) = -x log2 x - (1-x) log2 (1-x)."""
    if x < -1e-12 or x > 1 + 1e-12:
        raise ValueError(f"binary_entropy argument {x} outside [0, 1]")
    x = min(max(float(x), 0.0), 1.0)
    out = 0.0
    if x > 0.0:
        out -= x * np.log2(x)
    if x < 1.0:
        out -= (1 - x) * np.log2(1 - x)
    return float(out)


def purity(rho):
    rho = np.asarray(rho, dtype=complex)
    return float(np.real(np.trace(rho @ rho)))


def linear_entropy(rho):
    """S_L = (4/3)(1 - Tr rho^2), normalized to [0, 1] for two qubits."""
    s = (4.0 / 3.0) * (1.0 - purity(rho))
    return float(min(max(s, 0.0), 1.0))


FAMILY_KINDS = ("werner", "alpha", "beta", "twoparam", "pure")


@dataclass(frozen=True)
class Family:
    """Tagged parametrized state family.

    kind: one of 'werner' (xi), 'alpha', 'beta', 'pure' (Schmidt eigenvalue),
    each with a single parameter p1, or 'twoparam' with (p1, p2) = (a, b).
    """

    kind: str
    p1: float
    p2: float | None = None

    def __post_init__(self):
        k, x = self.kind, self.p1
        if k not in FAMILY_KINDS:
            raise ParamOutOfRange(f"unknown family kind {k!r}")
        if k == "werner" and not (-1 / 3 <= x <= 1):
            raise ParamOutOfRange(f"werner xi={x} out of range [-1/3,1]")
        if k in ("alpha", "beta", "pure") and not (0 <= x <= 1):
            raise ParamOutOfRange(f"{k}={x} out of range [0,1]")
        if k == "twoparam":
            if self.p2 is None:
                raise ParamOutOfRange("twoparam requires two parameters (a, b)")
            a, b = x, self.p2
            # 1e-12 slack absorbs round-off at the |b| = 1-a edge
            if not (0 <= a <= 1) or not (a - 1 - 1e-12 <= b <= 1 - a + 1e-12):
                raise ParamOutOfRange(
                    f"twoparam (a={a}, b={b}) outside 0<=a<=1, a-1<=b<=1-a"
                )
        if k != "twoparam" and self.p2 is not None:
            raise ParamOutOfRange(f"{k} takes a single parameter")


PSI_MINUS = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)
PHI_PLUS = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)


def make_family(fam):
    """Build the density matrix of a parametrized family member."""
    k = fam.kind
    if k == "werner":
        xi = fam.p1
        return (1 - xi) * np.eye(4, dtype=complex) / 4 + xi * np.outer(
            PSI_MINUS, PSI_MINUS.conj()
        )
    if k == "alpha":
        a = fam.p1
        m = np.zeros((4, 4), dtype=complex)
        m[0, 0] = m[3, 3] = m[0, 3] = m[3, 0] = a / 2
        m[1, 1] = m[2, 2] = (1 - a) / 2
        return m
    if k == "beta":
        b = fam.p1
        m = np.zeros((4, 4), dtype=complex)
        m[0, 0] = m[3, 3] = m[0, 3] = m[3, 0] = b / 2
        m[1, 1] = m[2, 2] = m[1, 2] = m[2, 1] = (1 - b) / 2
        return m
    if k == "twoparam":
        a, b = fam.p1, fam.p2
        m = np.zeros((4, 4), dtype=complex)
        m[0, 0] = m[3, 3] = m[0, 3] = m[3, 0] = a / 2
        m[1, 1] = (1 - a - b) / 2
        m[2, 2] = (1 - a + b) / 2
        return m
    if k == "pure":
        lam = fam.p1
        v = np.array([np.sqrt(lam), 0, 0, np.sqrt(1 - lam)], dtype=complex)
        return np.outer(v, v.conj())
    raise ParamOutOfRange(f"unknown family kind {k!r}")


def random_state(seed):
    """rho = T T^dag / Tr{T T^dag} with T a 4x4 standard complex Gaussian.

    Deterministic for a fixed seed; PSD and unit trace by construction.
    """
    rng = np.random.default_rng(seed)
    t = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    m = t @ t.conj().T
    return m / np.trace(m).real


def random_pure_state(seed):
    """Haar-like random pure two-qubit state vector (normalized Gaussian)."""
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    return v / np.linalg.norm(v)


@dataclass(frozen=True)
class SchmidtForm:
    """Schmidt data of a pure two-qubit state.

    eigvalue_major/minor are the reduced-state eigenvalues (minor = 1 - major
    by construction); basis_a / basis_b hold the Schmidt vectors as columns.
    """

    eigvalue_major: float
    eigvalue_minor: float
    basis_a: np.ndarray
    basis_b: np.ndarray

    def reconstruct(self):
        amps = (np.sqrt(self.eigvalue_major), np.sqrt(self.eigvalue_minor))
        v = np.zeros(4, dtype=complex)
        for i, amp in enumerate(amps):
            v += amp * np.kron(self.basis_a[:, i], self.basis_b[:, i])
        return v


def schmidt(vec):
    """Schmidt decomposition of a normalized 4-component pure state."""
    v = np.asarray(vec, dtype=complex).reshape(4)
    nrm = np.linalg.norm(v)
    if abs(nrm - 1.0) > 1e-10:
        raise NotNormalized(f"state norm {nrm} differs from 1", abs(nrm - 1.0))
    u, s, vh = np.linalg.svd(v.reshape(2, 2))
    major = float(min(s[0] ** 2, 1.0))
    return SchmidtForm(
        eigvalue_major=major,
        eigvalue_minor=1.0 - major,
        basis_a=u,
        basis_b=vh.T,
    )


def state_to_json_obj(rho):
    """State-file form: {"rho": [[[re, im] x4] x4]}."""
    m = np.asarray(rho, dtype=complex)
    return {
        "rho": [[[float(m[i, j].real), float(m[i, j].imag)] for j in range(4)]
                for i in range(4)]
    }


def state_from_json_obj(obj):
    """Inverse of state_to_json_obj; validates the resulting matrix."""
    if not isinstance(obj, dict) or "rho" not in obj:
        raise StateError("state file must be a JSON object with a 'rho' key")
    rows = obj["rho"]
    try:
        m = np.array(
            [[complex(c[0], c[1]) for c in row] for row in rows], dtype=complex
        )
    except (TypeError, IndexError, ValueError) as exc:
        raise StateError(f"malformed 'rho' entries: {exc}") from exc
    return validate_state(m)
