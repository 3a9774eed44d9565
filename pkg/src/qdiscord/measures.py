"""Correlation measures for two-qubit states: mutual information, numerically
optimized discord, classical correlation, Wootters concurrence, entanglement
of formation, and closed-form family results.

Measurements are two-element projective sets on subsystem B, parametrized by
(theta, phi) with |psi> = cos(theta)|0> + e^{i phi} sin(theta)|1>.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .states import (
    Family,
    ParamOutOfRange,
    StateError,
    binary_entropy,
    linear_entropy,
    partial_trace,
    von_neumann_entropy,
)

SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SYSY = np.kron(SIGMA_Y, SIGMA_Y)

P_FLOOR = 1e-14  # measurement outcomes below this probability are dropped


class UnsupportedFamily(StateError):
    pass


class OptimizerDidNotConverge(RuntimeError):
    pass


@dataclass(frozen=True)
class OptimizerConfig:
    """Settings for the discord angle search (coarse grid + simplex refine)."""

    grid_theta: int = 60
    grid_phi: int = 120
    refine_tol: float = 1e-12
    restarts: int = 3
    max_iter: int = 500


DEFAULT_OPT = OptimizerConfig()


@dataclass(frozen=True)
class CorrelationRecord:
    """All scalar measures of one state plus the optimizing angles."""

    mutual_info: float
    classical_corr: float
    discord: float
    concurrence: float
    eof: float
    linear_entropy: float
    theta_opt: float
    phi_opt: float


@dataclass(frozen=True)
class AnalyticDiscordTrace:
    """Closed-form discord value with its diagnostic intermediates."""

    value: float
    branch: str
    zeta: float | None = None  # alpha family only
    q: float | None = None  # two-parameter family only


def measurement_pair(theta, phi):
    """Orthogonal rank-1 projector pair on one qubit for angles (theta, phi)."""
    ph = np.exp(1j * phi)
    v1 = np.array([np.cos(theta), ph * np.sin(theta)], dtype=complex)
    v2 = np.array([-np.sin(theta), ph * np.cos(theta)], dtype=complex)
    return np.outer(v1, v1.conj()), np.outer(v2, v2.conj())


def apply_measurement(rho, theta, phi):
    """Project subsystem B onto the (theta, phi) basis.

    Returns [(p_1, rho_1), (p_2, rho_2)]; an outcome with probability below
    1e-14 carries None in place of a normalized state.
    """
    rho = np.asarray(rho, dtype=complex)
    outcomes = []
    for b in measurement_pair(theta, phi):
        pk = np.kron(np.eye(2, dtype=complex), b)
        m = pk @ rho @ pk
        p = float(np.trace(m).real)
        outcomes.append((p, m / p if p > P_FLOOR else None))
    return outcomes


def mutual_information(rho):
    """I(rho) = S(rho_A) + S(rho_B) - S(rho) in bits."""
    return (
        von_neumann_entropy(partial_trace(rho, "A"))
        + von_neumann_entropy(partial_trace(rho, "B"))
        - von_neumann_entropy(rho)
    )


def conditional_information(rho, theta, phi):
    """Measurement-induced mutual information S(rho_A) - sum_k p_k S(rho_k)."""
    s_a = von_neumann_entropy(partial_trace(rho, "A"))
    acc = 0.0
    for p, rho_k in apply_measurement(rho, theta, phi):
        if rho_k is not None:
            acc += p * von_neumann_entropy(rho_k)
    return s_a - acc


def _xlog2(x):
    out = np.zeros_like(x)
    mask = x > 1e-18
    out[mask] = x[mask] * np.log2(x[mask])
    return out


def _cond_info_batch(rho4, s_a, thetas, phis):
    """Vectorized conditional information over arrays of angles.

    Uses the rank-2 structure of the post-measurement states: each outcome k
    is (conditional A state) x (projector), so p_k S(rho_k) reduces to the
    entropy of a 2x2 block M_k = <psi_k| rho |psi_k>_B.
    """
    ct, st = np.cos(thetas), np.sin(thetas)
    ph = np.exp(1j * phis)
    acc = np.zeros(len(thetas))
    for v in (
        np.stack([ct + 0j, ph * st], axis=1),
        np.stack([-st + 0j, ph * ct], axis=1),
    ):
        m = np.einsum("nb,abcd,nd->nac", v.conj(), rho4, v, optimize=True)
        p = np.real(m[:, 0, 0] + m[:, 1, 1])
        det = np.real(m[:, 0, 0] * m[:, 1, 1] - m[:, 0, 1] * m[:, 1, 0])
        disc = np.sqrt(np.maximum(p * p - 4 * det, 0.0))
        hi = np.maximum((p + disc) / 2, 0.0)
        lo = np.maximum((p - disc) / 2, 0.0)
        # p_k S(rho_k) = -hi log2 hi - lo log2 lo + p log2 p
        acc += -_xlog2(hi) - _xlog2(lo) + _xlog2(p)
    return s_a - acc


def _make_point_objective(rho, s_a):
    """Scalar-math conditional information, built once per state.

    Same reduction as _cond_info_batch but in plain Python complex
    arithmetic; the simplex refinement calls this thousands of times.
    """
    r = [[complex(rho[i, j]) for j in range(4)] for i in range(4)]

    def xl2(x):
        return x * math.log2(x) if x > 1e-18 else 0.0

    def f(theta, phi):
        ct, st = math.cos(theta), math.sin(theta)
        e = complex(math.cos(phi), math.sin(phi))
        acc = 0.0
        for v0, v1 in ((ct, e * st), (-st, e * ct)):
            w00 = (v0.conjugate() * v0).real if isinstance(v0, complex) else v0 * v0
            w01 = (v0.conjugate() if isinstance(v0, complex) else v0) * v1
            w11 = (v1.conjugate() * v1).real
            w10 = w01.conjugate()
            m00 = (w00 * r[0][0] + w01 * r[0][1] + w10 * r[1][0] + w11 * r[1][1]).real
            m11 = (w00 * r[2][2] + w01 * r[2][3] + w10 * r[3][2] + w11 * r[3][3]).real
            m01 = w00 * r[0][2] + w01 * r[0][3] + w10 * r[1][2] + w11 * r[1][3]
            p = m00 + m11
            det = m00 * m11 - (m01 * m01.conjugate()).real
            disc = math.sqrt(max(p * p - 4 * det, 0.0))
            hi = max((p + disc) / 2, 0.0)
            lo = max((p - disc) / 2, 0.0)
            acc += -xl2(hi) - xl2(lo) + xl2(p)
        return s_a - acc

    return f


def canonical_angles(theta, phi):
    """Reduce (theta, phi) to theta in [0, pi/2], phi in [0, 2 pi).

    The projector pair is invariant under theta -> -theta with phi -> phi+pi
    and under theta -> pi - theta with phi -> phi + pi, so every pair has a
    representative in this domain.
    """
    theta = theta % np.pi
    if theta > np.pi / 2:
        theta = np.pi - theta
        phi = phi + np.pi
    return float(theta), float(phi % (2 * np.pi))


def classical_correlation(rho, cfg=DEFAULT_OPT):
    """Maximum of conditional_information over projective bases on B.

    Returns (value, theta_opt, phi_opt); the value is the objective evaluated
    at the returned angles. Raises OptimizerDidNotConverge if no refinement
    start terminates.
    """
    rho = np.asarray(rho, dtype=complex)
    rho4 = rho.reshape(2, 2, 2, 2)
    s_a = von_neumann_entropy(partial_trace(rho, "A"))

    th = np.linspace(0.0, np.pi / 2, cfg.grid_theta)
    ph = np.linspace(0.0, 2 * np.pi, cfg.grid_phi, endpoint=False)
    tt, pp = np.meshgrid(th, ph, indexing="ij")
    tt, pp = tt.ravel(), pp.ravel()
    vals = _cond_info_batch(rho4, s_a, tt, pp)

    order = np.argsort(vals)[::-1][: max(cfg.restarts, 1)]

    point = _make_point_objective(rho, s_a)

    def neg(x):
        return -point(x[0], x[1])

    best_val = float(vals[order[0]])
    best_x = (float(tt[order[0]]), float(pp[order[0]]))
    any_success = False
    for idx in order:
        res = minimize(
            neg,
            x0=np.array([tt[idx], pp[idx]]),
            method="Nelder-Mead",
            options={
                "xatol": 1e-10,
                "fatol": cfg.refine_tol,
                "maxiter": cfg.max_iter,
                "maxfev": 2 * cfg.max_iter,
            },
        )
        any_success = any_success or bool(res.success)
        if -res.fun > best_val:
            best_val = float(-res.fun)
            best_x = (float(res.x[0]), float(res.x[1]))
    if not any_success:
        raise OptimizerDidNotConverge(
            "no simplex refinement start terminated within the iteration budget"
        )
    theta, phi = canonical_angles(*best_x)
    value = float(
        _cond_info_batch(rho4, s_a, np.array([theta]), np.array([phi]))[0]
    )
    return value, theta, phi


def spin_flip_spectrum(rho):
    """Eigenvalues, descending and clipped at 0, of rho * rho_tilde with
    rho_tilde = (sy x sy) conj(rho) (sy x sy)."""
    rho = np.asarray(rho, dtype=complex)
    r = rho @ SYSY @ rho.conj() @ SYSY
    lam = np.real(np.linalg.eigvals(r))
    lam[lam < 0] = 0.0
    return np.sort(lam)[::-1]


def concurrence(rho):
    """Wootters concurrence max{0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)}."""
    s = np.sqrt(spin_flip_spectrum(rho))
    return float(max(0.0, s[0] - s[1] - s[2] - s[3]))


def eof_from_concurrence(c):
    """Entanglement of formation h((1 + sqrt(1 - C^2)) / 2) in bits."""
    c = min(max(float(c), 0.0), 1.0)
    return binary_entropy((1 + np.sqrt(max(0.0, 1 - c * c))) / 2)


def eof(rho):
    return eof_from_concurrence(concurrence(rho))


def discord_numeric(rho, cfg=DEFAULT_OPT):
    """Full numerically optimized correlation record for one state."""
    rho = np.asarray(rho, dtype=complex)
    mi = mutual_information(rho)
    cc, theta, phi = classical_correlation(rho, cfg)
    q = float(np.clip(mi - cc, -1e-9, 2.0))
    return CorrelationRecord(
        mutual_info=mi,
        classical_corr=cc,
        discord=q,
        concurrence=concurrence(rho),
        eof=eof(rho),
        linear_entropy=linear_entropy(rho),
        theta_opt=theta,
        phi_opt=phi,
    )


def _plog2(x):
    return x * np.log2(x) if x > 0 else 0.0


def alpha_discord(a):
    """Closed-form discord of the alpha family."""
    zeta = max(abs(a), abs(2 * a - 1))
    val = (
        _plog2(1 - a)
        + _plog2(a)
        + (1 + a)
        - _plog2(1 - zeta) / 2
        - _plog2(1 + zeta) / 2
    )
    return float(max(val, 0.0)), float(zeta)


def beta_discord(b):
    """Closed-form discord of the beta family: 1 - h(beta)."""
    return float(max(1.0 - binary_entropy(b), 0.0))


def _two_param_q_edge(a):
    """Finite limit of the q branch on the edge |b| = 1 - a, 0 < a < 1.

    The log-divergent parts of the four terms cancel exactly there, leaving
    this closed form (q is even in b, so one sign covers both edges).
    """
    b0 = -(1.0 - a)
    s = np.sqrt(a * a + b0 * b0)
    return (
        -(b0 / 2) * np.log2((1 + b0) / (1 - b0))
        - b0 * np.log2(1 - a - b0)
        + (a / 2) * np.log2(4 * a * a)
        - (s / 2) * np.log2((1 + s) / (1 - s))
        + 1.0
        - 0.5 * np.log2((1 - b0 * b0) * (1 - a * a - b0 * b0))
    )


def two_param_q(a, b):
    """The q branch of the two-parameter family discord, elementwise.

    On the edge |b| = 1 - a the divergences cancel and the finite limit is
    used; at the remaining singular points (a = 1 with b = 0, |b| = 1, or a
    log argument driven to 0 by round-off) q is mapped to +inf, where
    min{a, q} stays correct.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a, b = np.broadcast_arrays(a, b)
    s = np.sqrt(a * a + b * b)
    with np.errstate(divide="ignore", invalid="ignore"):
        arg1 = (1 + b) * (1 - a - b) / ((1 - b) * (1 - a + b))
        arg2 = 4 * a * a / ((1 - a) ** 2 - b * b)
        arg3 = (1 + s) / (1 - s)
        arg4 = 4 * ((1 - a) ** 2 - b * b) / ((1 - b * b) * (1 - a * a - b * b))
        t1 = np.where(b == 0, 0.0, -(b / 2) * np.log2(arg1))
        t2 = np.where(a == 0, 0.0, (a / 2) * np.log2(arg2))
        t3 = -(s / 2) * np.log2(arg3)
        t4 = 0.5 * np.log2(arg4)
        q = t1 + t2 + t3 + t4
    bad = (
        ((arg1 <= 0) & (b != 0))
        | ((arg2 <= 0) & (a != 0))
        | (arg3 <= 0)
        | (arg4 <= 0)
        | (np.abs((1 - b) * (1 - a + b)) < 1e-300)
        | (np.abs((1 - a) ** 2 - b * b) < 1e-300)
        | (np.abs(1 - s) < 1e-300)
        | (np.abs((1 - b * b) * (1 - a * a - b * b)) < 1e-300)
        | ~np.isfinite(q)
    )
    q = np.where(bad, np.inf, q)
    edge = (np.abs(np.abs(b) - (1 - a)) <= 1e-12) & (a > 1e-12) & (a < 1 - 1e-12)
    if np.any(edge):
        q = np.where(edge, _two_param_q_edge(np.where(edge, a, 0.5)), q)
    return q if q.shape else float(q)


def discord_analytic(fam):
    """Closed-form discord for the alpha, beta, and two-parameter families."""
    if not isinstance(fam, Family):
        raise UnsupportedFamily("expected a Family value")
    if fam.kind == "alpha":
        val, zeta = alpha_discord(fam.p1)
        branch = "2a-1" if abs(2 * fam.p1 - 1) >= abs(fam.p1) else "a"
        return AnalyticDiscordTrace(value=val, branch=f"zeta={branch}", zeta=zeta)
    if fam.kind == "beta":
        return AnalyticDiscordTrace(value=beta_discord(fam.p1), branch="1-h(beta)")
    if fam.kind == "twoparam":
        a, b = fam.p1, fam.p2
        q = float(two_param_q(a, b))
        if abs(a - q) <= 1e-12:
            branch = "a = q (pimple)"
        elif a < q:
            branch = "a"
        else:
            branch = "q"
        return AnalyticDiscordTrace(value=float(min(a, q)), branch=branch, q=q)
    raise UnsupportedFamily(
        f"no closed-form discord implemented for family {fam.kind!r}"
    )


def concurrence_analytic(fam):
    """Closed-form concurrence for the alpha, beta, and two-parameter families."""
    if not isinstance(fam, Family):
        raise UnsupportedFamily("expected a Family value")
    if fam.kind == "alpha":
        return float(max(0.0, 2 * fam.p1 - 1))
    if fam.kind == "beta":
        return float(abs(2 * fam.p1 - 1))
    if fam.kind == "twoparam":
        a, b = fam.p1, fam.p2
        inner = (1 - a) ** 2 - b * b
        return float(max(0.0, abs(a) - np.sqrt(max(inner, 0.0))))
    raise UnsupportedFamily(
        f"no closed-form concurrence implemented for family {fam.kind!r}"
    )
