"""Independent brute-force verification machinery.

Nothing in here shares code paths with the criteria or channel
constructions it cross-checks: PPT tests go through an explicit
eigendecomposition, unitary-orbit searches sample Haar unitaries, and the
rearrangement minimizer works on sorted eigenvalue lists alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .states import partial_transpose, spectral_ratio, spectrum

NPT_THRESHOLD = -1e-9


@dataclass(frozen=True)
class FalsificationResult:
    """Outcome of a Haar-random search for an entangling unitary."""

    found: bool
    unitary_seed: int | None
    min_pt_eigenvalue: float
    samples_used: int


def ppt_min_eigenvalue(rho):
    """Smallest eigenvalue of the partial transpose; below -1e-9 certifies
    entanglement."""
    return float(np.linalg.eigvalsh(partial_transpose(rho)).min())


def haar_unitary(dim, seed):
    """Haar-distributed unitary via QR of a complex Gaussian matrix with the
    phase-corrected diagonal; deterministic per seed."""
    if dim < 1:
        raise ValueError("dimension must be >= 1")
    rng = np.random.default_rng(seed)
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    return q * phases


def _pt_min_eig_of_rotated(diag_vals, d_a, d_b, u):
    rho = (u * diag_vals) @ u.conj().T
    t = rho.reshape(d_a, d_b, d_a, d_b).transpose(0, 3, 2, 1).reshape(d_a * d_b, d_a * d_b)
    return float(np.linalg.eigvalsh(t).min())


def as_falsify_search(s, dims, samples, seed):
    """Sample Haar unitaries and PPT-test each rotation of the spectrum.

    Stops at the first NPT hit.  A not-found result is inconclusive: it
    never certifies absolute separability.  Per-sample seeds are
    ``seed + index`` so any hit is reproducible in isolation.
    """
    d_a, d_b = dims.bipartite()
    if len(s.values) != dims.total:
        raise ValueError("spectrum length does not match dims")
    vals = s.values
    overall_min = math.inf
    for i in range(samples):
        min_eig = _pt_min_eig_of_rotated(vals, d_a, d_b, haar_unitary(dims.total, seed + i))
        overall_min = min(overall_min, min_eig)
        if min_eig < NPT_THRESHOLD:
            return FalsificationResult(found=True, unitary_seed=seed + i,
                                       min_pt_eigenvalue=min_eig, samples_used=i + 1)
    return FalsificationResult(found=False, unitary_seed=None,
                               min_pt_eigenvalue=overall_min, samples_used=samples)


def rearrangement_min(a_eigs, b_eigs):
    """min over unitaries U of Tr[A U B U^dag] for Hermitian A, B given by
    their eigenvalues: ascending of one against descending of the other."""
    a = np.sort(np.asarray(a_eigs, dtype=float))
    b = np.sort(np.asarray(b_eigs, dtype=float))[::-1]
    if len(a) != len(b):
        raise ValueError("eigenvalue lists must have equal length")
    return float(np.dot(a, b))


def pure_state_pt_spectrum(p, ambient):
    """Spectrum of the partial transpose of a pure-state projector with
    Schmidt weights p: the weights themselves plus +-sqrt(p_i p_j) for
    i < j, zero-padded to the ambient dimension."""
    p = np.asarray(p, dtype=float)
    if p.min() < -1e-12 or abs(p.sum() - 1.0) > 1e-10:
        raise ValueError("Schmidt weights must be nonnegative and sum to 1")
    p = np.clip(p, 0.0, None)
    n = len(p)
    if ambient < n * n:
        raise ValueError("ambient dimension must be at least len(p)^2")
    out = list(p)
    for i in range(n):
        for j in range(i + 1, n):
            root = math.sqrt(p[i] * p[j])
            out.extend((root, -root))
    out.extend([0.0] * (ambient - len(out)))
    return np.array(out)


def thm2_violation_value(s, d_a, d_bprime):
    """Minimal overlap of the ancilla-extended state with a rotated
    partial-transposed maximally entangled projector.

    A negative value certifies that the state tensored with a maximally
    mixed d_B'-dimensional ancilla is not absolutely PPT.  Requires
    d_B' >= d_A (d_A + 1) / 2 so the rearrangement pairing has enough room.
    Computed analytically from the spectra, never materializing the
    extended matrix.
    """
    needed = d_a * (d_a + 1) // 2
    if d_bprime < needed:
        raise ValueError("d_bprime must be >= d_A(d_A+1)/2 = %d" % needed)
    extended = np.repeat(s.values, d_bprime) / d_bprime
    pt_spec = pure_state_pt_spectrum(np.full(d_a, 1.0 / d_a), len(extended))
    return rearrangement_min(extended, pt_spec)


def verify_ratio_monotone(m, rho):
    """Spectral-ratio monotonicity of a validated map on a full-rank input:
    either the success probability vanishes or the normalized output's ratio
    does not exceed the input's (within 1e-9)."""
    from .channels import apply_map  # local import to avoid a cycle

    out, prob = apply_map(m, rho)
    if prob <= 1e-12:
        return True
    out_vals = np.linalg.eigvalsh(out / prob)
    lo, hi = float(out_vals.min()), float(out_vals.max())
    out_ratio = math.inf if lo <= 1e-15 else hi / max(lo, 1e-300)
    return out_ratio <= spectral_ratio(spectrum(rho)) + 1e-9
