"""Entanglement witnesses: construction, evaluation and a block-positivity
oracle based on alternating minimization over product vectors."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .states import (
    Dims,
    DensityMatrix,
    bipartite_dims,
    max_entangled_ket,
    partial_transpose,
    rho_tilde_projector,
)

HERMITICITY_TOL = 1e-10
SEESAW_CONVERGENCE = 1e-12


@dataclass(frozen=True)
class Witness:
    """Hermitian operator with bipartite dimension metadata."""

    dims: Dims
    matrix: np.ndarray
    trace: float

    def __post_init__(self):
        self.matrix.flags.writeable = False


def make_witness(matrix, dims):
    m = np.asarray(matrix, dtype=complex)
    dims = dims if isinstance(dims, Dims) else Dims(tuple(dims))
    dims.bipartite()
    if m.shape != (dims.total, dims.total):
        raise ValueError("witness shape %r does not match dims %r" % (m.shape, dims.locals))
    scale = max(np.abs(m).max(), 1.0)
    if np.abs(m - m.conj().T).max() > HERMITICITY_TOL * scale:
        raise ValueError("witness must be Hermitian")
    m = 0.5 * (m + m.conj().T)
    return Witness(dims=dims, matrix=m, trace=float(m.trace().real))


def evaluate(w, rho):
    """Tr(W rho).  Dims must match; the imaginary residue is checked."""
    if w.dims.locals != rho.dims.locals:
        raise ValueError("witness dims %r do not match state dims %r"
                         % (w.dims.locals, rho.dims.locals))
    val = np.trace(w.matrix @ rho.matrix)
    if abs(val.imag) > 1e-10:
        raise ValueError("expectation has imaginary residue %.3e" % val.imag)
    return float(val.real)


def make_ppt_witness(dims):
    """Partial transpose of the maximally entangled projector.

    Trace 1, spectrum in [-1/d, 1/d], block positive; detects every NPT
    state that a maximally-entangled-fidelity test can see.
    """
    dims = dims if isinstance(dims, Dims) else Dims(tuple(dims))
    d_a, d_b = dims.bipartite()
    psi = max_entangled_ket(d_a, d_b)
    proj = DensityMatrix(dims=dims, matrix=np.outer(psi, psi.conj()))
    return make_witness(partial_transpose(proj), dims)


def separating_witness_condition(d_a, d_b):
    """Value pair (lhs, rhs) of the separation condition
    (R-1) sqrt((D-1) p q) > p + q R; the witness is strictly negative on
    rho_tilde exactly when lhs > rhs."""
    big_d = d_a * d_b
    ratio = (d_a + 1) / (d_a - 1)
    p = big_d // 2
    q = big_d - p
    lhs = (ratio - 1.0) * math.sqrt((big_d - 1) * p * q)
    rhs = p + q * ratio
    return lhs, rhs


def make_separating_witness(d_a, d_b):
    """Witness separating rho_tilde from the convex hull of the two known
    spectral regions (requires 2 <= d_a < d_b).

    Built as identity/D plus a normalized traceless step operator aligned
    with rho_tilde's eigenbasis; nonnegative on both regions, strictly
    negative on rho_tilde whenever the separation condition holds.
    """
    if not (2 <= d_a < d_b):
        raise ValueError("separating witness requires 2 <= d_a < d_b")
    dims = bipartite_dims(d_a, d_b)
    big_d = dims.total
    p = big_d // 2
    q = big_d - p
    proj = rho_tilde_projector(d_a, d_b)
    z = proj / p - (np.eye(big_d) - proj) / q
    z_norm = math.sqrt(big_d / (p * q))  # Hilbert-Schmidt norm of z
    m = np.eye(big_d, dtype=complex) / big_d + math.sqrt((big_d - 1) / big_d) * z / z_norm
    return make_witness(m, dims)


def make_decomposable_witness(sigma):
    """Partial transpose of a state: guaranteed block positive with trace 1.

    Used as a generator of witnesses for exercising the trace-norm bound.
    """
    return make_witness(partial_transpose(sigma), sigma.dims)


def trace_norm(w):
    """Sum of absolute eigenvalues of the witness."""
    return float(np.abs(np.linalg.eigvalsh(w.matrix)).sum())


def _random_unit(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def seesaw_minimize(w, b0, iters=100):
    """Alternating minimization of <a x b|W|a x b> from a fixed B-side start.

    Fixing one side, the optimal other side is the minimal eigenvector of
    the contracted local operator; the objective is therefore non-increasing.
    Returns (best value, per-iteration objective history).
    """
    d_a, d_b = w.dims.bipartite()
    tensor = w.matrix.reshape(d_a, d_b, d_a, d_b)
    b = b0
    history = []
    best = math.inf
    for _ in range(iters):
        m_a = np.einsum("ijkl,j,l->ik", tensor, b.conj(), b)
        vals, vecs = np.linalg.eigh(m_a)
        a = vecs[:, 0]
        m_b = np.einsum("ijkl,i,k->jl", tensor, a.conj(), a)
        vals, vecs = np.linalg.eigh(m_b)
        b = vecs[:, 0]
        value = float(vals[0])
        history.append(value)
        if best - value < SEESAW_CONVERGENCE:
            best = min(best, value)
            break
        best = value
    return best, history


def min_product_expectation(w, restarts=32, iters=100, seed=0):
    """Best (smallest) product-vector expectation found by the see-saw.

    An upper bound on the true minimum over product states; a value below
    zero disproves block positivity.  Deterministic for a fixed seed.
    """
    if restarts < 1 or iters < 1:
        raise ValueError("restarts and iters must be >= 1")
    _, d_b = w.dims.bipartite()
    best = math.inf
    for r in range(restarts):
        rng = np.random.default_rng(seed + r)
        value, _ = seesaw_minimize(w, _random_unit(rng, d_b), iters=iters)
        best = min(best, value)
    return best
