"""Probabilistic unital channels in measure-and-prepare form.

A map here is a list of branches (effect E_i, prepared state phi_i) with
sum_i E_i below the identity and sum_i Tr(E_i) phi_i proportional to the
identity.  This file provides validation, application, the explicit
entanglement-extraction example, the general ratio-based transformation
synthesis, and deterministic completion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .states import (
    EIG_CLAMP,
    Dims,
    DensityMatrix,
    density_matrix,
    make_named_state,
    make_omega_t,
    maximally_mixed,
    spectral_ratio,
    spectrum,
)

PSD_TOL = 1e-10
SUBPOVM_TOL = 1e-10
UNITALITY_TOL = 1e-9
RATIO_SLACK = 1e-12


class SubPovmViolation(ValueError):
    """The branch effects do not form a sub-POVM."""


class NotUnital(ValueError):
    """The map does not send the identity to a multiple of the identity."""


class RatioTooSmall(ValueError):
    """Full-rank input with spectral ratio below the target's: the
    transformation is impossible with nonzero probability."""


class InputIsCAS(ValueError):
    """Input ratio within the CAS threshold: no probabilistic unital channel
    can extract entanglement from it."""


@dataclass(frozen=True)
class MeasurePrepareMap:
    """Stochastic unital instrument: branches of (effect, prepared state)."""

    dims: Dims
    branches: tuple
    unitality_factor: float


@dataclass(frozen=True)
class TransformPlan:
    """Parameters realizing a ratio-feasible state transformation."""

    alpha: float
    beta: float
    k: float
    c: float
    theta: float
    x: np.ndarray
    y: np.ndarray
    phi1: DensityMatrix
    phi2: DensityMatrix


def make_map(dims, branches):
    """Validate the branch list and wrap it with its unitality factor."""
    dims = dims if isinstance(dims, Dims) else Dims(tuple(dims))
    big_d = dims.total
    checked = []
    for effect, output in branches:
        e = np.asarray(effect, dtype=complex)
        if e.shape != (big_d, big_d):
            raise SubPovmViolation("effect shape %r does not match dims" % (e.shape,))
        if np.abs(e - e.conj().T).max() > 1e-10 * max(np.abs(e).max(), 1.0):
            raise SubPovmViolation("effect is not Hermitian")
        e = 0.5 * (e + e.conj().T)
        if float(np.linalg.eigvalsh(e).min()) < -PSD_TOL:
            raise SubPovmViolation("effect has a negative eigenvalue")
        if output.dims.total != big_d:
            raise SubPovmViolation("output state dimension mismatch")
        checked.append((e, output))
    total = sum(e for e, _ in checked)
    if float(np.linalg.eigvalsh(total).max()) > 1.0 + SUBPOVM_TOL:
        raise SubPovmViolation("sum of effects exceeds the identity")
    image = sum(float(e.trace().real) * out.matrix for e, out in checked)
    q = float(image.trace().real) / big_d
    if q <= 0:
        raise NotUnital("map annihilates the identity")
    if np.abs(image - q * np.eye(big_d)).max() > UNITALITY_TOL:
        raise NotUnital("image of the identity is not proportional to the identity")
    return MeasurePrepareMap(dims=dims, branches=tuple(checked), unitality_factor=q)


def validate_map(m):
    """Re-check both invariants; returns the unitality factor q > 0."""
    return make_map(m.dims, m.branches).unitality_factor


def apply_to_operator(m, x):
    """Raw action sum_i Tr(E_i X) phi_i on an arbitrary operator."""
    big_d = m.dims.total
    out = np.zeros((big_d, big_d), dtype=complex)
    for effect, output in m.branches:
        out += np.trace(effect @ x) * output.matrix
    return out


def apply_map(m, rho):
    """Apply to a state: returns (unnormalized output, success probability)."""
    if m.dims.total != rho.dims.total:
        raise ValueError("map dims %r do not match state dims %r"
                         % (m.dims.locals, rho.dims.locals))
    out = apply_to_operator(m, rho.matrix)
    prob = float(out.trace().real)
    if not (-1e-10 <= prob <= 1.0 + 1e-10):
        raise ValueError("success probability %.17g outside [0, 1]" % prob)
    return out, max(prob, 0.0)


def normalized_output(m, rho):
    """Post-selected output state; success probability must be nonzero."""
    out, prob = apply_map(m, rho)
    if prob <= 1e-12:
        raise ValueError("success probability is numerically zero")
    return density_matrix(out / prob, rho.dims), prob


def make_sec_c_example():
    """The explicit two-qubit instrument extracting a Werner state from the
    rank-3 diagonal seed state, with unitality factor 5/12."""
    dims = Dims((2, 2))
    werner = make_named_state("werner")
    # Complement branch: prepares (5/2 * identity/4 - werner), normalized.
    sigma_hat = (2.0 / 3.0) * ((5.0 / 2.0) * np.eye(4) / 4.0 - werner.matrix)
    sigma_hat = density_matrix(sigma_hat, dims)
    e_sigma = np.diag([0.0, 0.0, 0.0, 1.0]).astype(complex)
    e_w = np.diag([2 / 9, 2 / 9, 2 / 9, 0.0]).astype(complex)
    return make_map(dims, [(e_sigma, sigma_hat), (e_w, werner)])


def _bisect_interpolation(rho_vals, v_max, v_min, target):
    """Unit vector y(theta) between the extreme eigenvectors of rho with
    <y|rho|y> = target, found by bisection on theta in [0, pi/2]."""
    lam_max, lam_min = rho_vals
    if target >= lam_max:
        return v_max, 0.0
    if target <= lam_min:
        return v_min, math.pi / 2
    lo, hi = 0.0, math.pi / 2  # <y|rho|y> decreases from lam_max to lam_min
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        val = lam_max * math.cos(mid) ** 2 + lam_min * math.sin(mid) ** 2
        if val > target:
            lo = mid
        else:
            hi = mid
        if abs(val - target) <= 1e-15 * max(target, 1e-300):
            break
    theta = 0.5 * (lo + hi)
    y = math.cos(theta) * v_max + math.sin(theta) * v_min
    return y / np.linalg.norm(y), theta


def construct_transformation(rho, sigma, c_choice=None):
    """Stochastic unital map carrying rho to sigma with nonzero probability.

    Feasible whenever rho is singular, or both states are full rank with
    spectral ratio R(rho) >= R(sigma).  A maximally mixed target yields the
    depolarizing channel.  Returns (map, plan).
    """
    if rho.dims.total != sigma.dims.total:
        raise ValueError("input and target dimensions differ")
    big_d = rho.dims.total
    eye = np.eye(big_d, dtype=complex)

    if np.abs(sigma.matrix - eye / big_d).max() <= 1e-12:
        depol = make_map(rho.dims, [(eye, maximally_mixed(rho.dims))])
        plan = TransformPlan(alpha=1.0, beta=1.0, k=0.0, c=1.0, theta=0.0,
                             x=np.zeros(big_d), y=np.zeros(big_d),
                             phi1=maximally_mixed(rho.dims), phi2=maximally_mixed(rho.dims))
        return depol, plan

    rho_vals, rho_vecs = np.linalg.eigh(rho.matrix)
    lam_min_rho = float(rho_vals[0])
    lam_max_rho = float(rho_vals[-1])
    v_min, v_max = rho_vecs[:, 0], rho_vecs[:, -1]
    singular = lam_min_rho <= EIG_CLAMP

    sig_spec = spectrum(sigma)
    lam_max_sig = float(sig_spec.values[0])
    lam_min_sig = float(sig_spec.values[-1])

    if singular:
        # Any alpha above D * lambda_max(sigma) works; take a unit margin.
        alpha = big_d * lam_max_sig + 1.0
        beta = math.inf
        phi1 = sigma
        phi2 = density_matrix((alpha * eye / big_d - sigma.matrix) / (alpha - 1.0), rho.dims)
        k = alpha - 1.0
        x, y = v_max, v_min  # y lies in ker(rho)
        theta = math.pi / 2
    else:
        if lam_min_sig <= EIG_CLAMP:
            raise RatioTooSmall(
                "full-rank input cannot reach a singular target (ratio monotone)"
            )
        ratio_rho = lam_max_rho / lam_min_rho
        ratio_sig = lam_max_sig / lam_min_sig
        if ratio_rho < ratio_sig - RATIO_SLACK:
            raise RatioTooSmall(
                "R(rho) = %.12g < R(sigma) = %.12g" % (ratio_rho, ratio_sig)
            )
        alpha = big_d * lam_max_sig
        beta = 1.0 / (big_d * lam_min_sig)
        phi1 = density_matrix(
            (sigma.matrix - eye / (beta * big_d)) / (1.0 - 1.0 / beta), rho.dims
        )
        phi2 = density_matrix((alpha * eye / big_d - sigma.matrix) / (alpha - 1.0), rho.dims)
        k = (alpha - 1.0) / (1.0 - 1.0 / beta)
        x = v_max
        target = lam_max_rho / (alpha * beta)
        y, theta = _bisect_interpolation((lam_max_rho, lam_min_rho), v_max, v_min, target)

    c_max = 1.0 / (1.0 + k)
    c = c_max if c_choice is None else float(c_choice)
    if not (0.0 < c <= c_max + 1e-15):
        raise ValueError("c must lie in (0, %.17g]" % c_max)

    m1 = c * np.outer(x, x.conj())
    m2 = c * k * np.outer(y, y.conj())
    instrument = make_map(rho.dims, [(m1, phi1), (m2, phi2)])
    plan = TransformPlan(alpha=alpha, beta=beta, k=k, c=c, theta=theta,
                         x=x, y=y, phi1=phi1, phi2=phi2)
    return instrument, plan


def entangle_from(rho, c_choice=None):
    """Instrument extracting entanglement from a non-CAS bipartite state.

    Targets the identity-depleted family at t = d (R-1)/(R+1) (any interior
    t for singular inputs), whose partial transpose has the negative
    eigenvalue (1-t)/(D-t).  Raises InputIsCAS when the ratio is within the
    CAS threshold.
    """
    d_a, d_b = rho.dims.bipartite()
    d = min(d_a, d_b)
    s = spectrum(rho)
    ratio = spectral_ratio(s)
    threshold = (d + 1) / (d - 1)
    if math.isfinite(ratio):
        if ratio <= threshold + RATIO_SLACK:
            raise InputIsCAS(
                "spectral ratio %.12g within CAS threshold %.12g" % (ratio, threshold)
            )
        t = d * (ratio - 1.0) / (ratio + 1.0)
    else:
        t = (1.0 + d) / 2.0
    target = make_omega_t(d_a, d_b, t)
    instrument, _ = construct_transformation(rho, target, c_choice=c_choice)
    return instrument, target


def complete_to_deterministic(m):
    """Append the failure branch (identity remainder -> maximally mixed).

    The completed instrument is trace preserving and unital (q = 1).
    """
    q = validate_map(m)
    if q > 1.0 + 1e-10:
        raise NotUnital("unitality factor %.17g exceeds 1; cannot complete" % q)
    big_d = m.dims.total
    e_fail = np.eye(big_d, dtype=complex) - sum(e for e, _ in m.branches)
    # Clamp tiny negative remainders from sub-POVM slack.
    vals, vecs = np.linalg.eigh(e_fail)
    vals = np.clip(vals, 0.0, None)
    e_fail = (vecs * vals) @ vecs.conj().T
    branches = list(m.branches) + [(e_fail, maximally_mixed(m.dims))]
    return make_map(m.dims, branches)
