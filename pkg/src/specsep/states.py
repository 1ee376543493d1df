"""Density matrices, spectra and the elementary state transformations.

Everything downstream (criteria, witnesses, channels, oracles) consumes the
two value types defined here: ``DensityMatrix`` for explicit matrices and
``Spectrum`` for eigenvalue lists.  All constructors validate their
invariants; all operations are pure functions over immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Validation tolerances.  Eigenvalues in (-EIG_CLAMP, 0) are treated as
# numerical noise and clamped to zero; anything more negative is a genuine
# invariant violation.
HERMITICITY_TOL = 1e-10
PSD_TOL = 1e-10
TRACE_TOL = 1e-10
EIG_CLAMP = 1e-12


class InvalidStateError(ValueError):
    """A matrix or spectrum fails the density-matrix invariants."""


@dataclass(frozen=True)
class Dims:
    """Local dimensions d_1..d_N of a multipartite system."""

    locals: tuple

    def __post_init__(self):
        locs = tuple(int(d) for d in self.locals)
        if not locs or any(d < 1 for d in locs):
            raise ValueError("local dimensions must be positive integers")
        object.__setattr__(self, "locals", locs)

    @property
    def total(self):
        return int(np.prod(self.locals))

    @property
    def n_parties(self):
        return len(self.locals)

    @property
    def is_bipartite(self):
        return len(self.locals) == 2

    def bipartite(self):
        """Return (d_A, d_B), raising if not a two-party system."""
        if not self.is_bipartite:
            raise ValueError("operation requires bipartite dims, got %r" % (self.locals,))
        return self.locals

    @property
    def min_local(self):
        return min(self.locals)


def bipartite_dims(d_a, d_b):
    """Dims for a two-party system; both local dimensions must be >= 2."""
    if d_a < 2 or d_b < 2:
        raise ValueError("bipartite local dimensions must be >= 2")
    return Dims((d_a, d_b))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, PSD, unit-trace matrix with dimension metadata."""

    dims: Dims
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix.flags.writeable = False


@dataclass(frozen=True)
class Spectrum:
    """Descending-sorted eigenvalue list of a state."""

    values: np.ndarray
    dims: Dims

    def __post_init__(self):
        self.values.flags.writeable = False


def density_matrix(matrix, dims, tol_scale=1.0):
    """Validate ``matrix`` against the density-matrix invariants and wrap it.

    Raises InvalidStateError on non-Hermitian, non-PSD (below -1e-10) or
    non-unit-trace input.  ``tol_scale`` loosens all tolerances uniformly
    (used by the CLI --tol-override escape hatch only).
    """
    m = np.asarray(matrix, dtype=complex)
    dims = dims if isinstance(dims, Dims) else Dims(tuple(dims))
    d = dims.total
    if m.shape != (d, d):
        raise InvalidStateError(
            "matrix shape %r does not match dims %r (total %d)" % (m.shape, dims.locals, d)
        )
    scale = max(np.abs(m).max(), 1.0)
    herm_residual = np.abs(m - m.conj().T).max()
    if herm_residual > HERMITICITY_TOL * scale * tol_scale:
        raise InvalidStateError("matrix is not Hermitian (residual %.3e)" % herm_residual)
    m = 0.5 * (m + m.conj().T)
    tr = m.trace().real
    if abs(m.trace() - 1.0) > TRACE_TOL * tol_scale:
        raise InvalidStateError("trace is %.17g, expected 1" % tr)
    min_eig = float(np.linalg.eigvalsh(m).min())
    if min_eig < -PSD_TOL * tol_scale:
        raise InvalidStateError("matrix is not PSD (min eigenvalue %.3e)" % min_eig)
    return DensityMatrix(dims=dims, matrix=m)


def spectrum_from_values(values, dims, tol_scale=1.0):
    """Validate an eigenvalue list (clamp tiny negatives, check the sum)."""
    v = np.sort(np.asarray(values, dtype=float))[::-1].copy()
    dims = dims if isinstance(dims, Dims) else Dims(tuple(dims))
    if len(v) != dims.total:
        raise InvalidStateError(
            "spectrum has %d values, dims %r require %d" % (len(v), dims.locals, dims.total)
        )
    if v.min() < -EIG_CLAMP * tol_scale:
        raise InvalidStateError("negative eigenvalue %.3e below clamp threshold" % v.min())
    v[v < 0.0] = 0.0
    if abs(v.sum() - 1.0) > TRACE_TOL * tol_scale:
        raise InvalidStateError("spectrum sums to %.17g, expected 1" % v.sum())
    return Spectrum(values=v, dims=dims)


def spectrum(rho):
    """Eigenvalues of a state, descending, with tiny negatives clamped."""
    vals = np.linalg.eigvalsh(rho.matrix)
    return spectrum_from_values(vals, rho.dims)


def is_singular(s):
    """True if the smallest eigenvalue is (numerically) zero."""
    return float(s.values[-1]) <= EIG_CLAMP


def spectral_ratio(s):
    """lambda_max / lambda_min; +inf for singular spectra."""
    lo = float(s.values[-1])
    hi = float(s.values[0])
    if lo <= EIG_CLAMP:
        return math.inf
    return hi / lo


def purity(s):
    """Sum of squared eigenvalues, Tr(rho^2)."""
    return float(np.dot(s.values, s.values))


def partial_transpose(rho, subsystem=1):
    """Transpose one tensor factor of a bipartite state.

    Returns a plain Hermitian ndarray (generally not PSD).  Defaults to
    transposing the second subsystem.
    """
    d_a, d_b = rho.dims.bipartite()
    if subsystem not in (0, 1):
        raise ValueError("subsystem index must be 0 or 1")
    t = rho.matrix.reshape(d_a, d_b, d_a, d_b)
    if subsystem == 0:
        t = t.transpose(2, 1, 0, 3)
    else:
        t = t.transpose(0, 3, 2, 1)
    return np.ascontiguousarray(t.reshape(d_a * d_b, d_a * d_b))


def _basis_ket(index, dim):
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def max_entangled_ket(d_a, d_b):
    """|Phi+> over the smaller dimension, embedded in the leading basis
    vectors of each side."""
    d = min(d_a, d_b)
    psi = np.zeros(d_a * d_b, dtype=complex)
    for i in range(d):
        psi += np.kron(_basis_ket(i, d_a), _basis_ket(i, d_b))
    return psi / math.sqrt(d)


def maximally_mixed(dims):
    dims = dims if isinstance(dims, Dims) else Dims(tuple(dims))
    d = dims.total
    return DensityMatrix(dims=dims, matrix=np.eye(d, dtype=complex) / d)


def make_named_state(name, **params):
    """Construct one of the named reference states.

    Names: ``maximally_mixed``, ``seed_state``, ``werner``, ``phi_plus``,
    ``omega_t``, ``rho_tilde``.  Parameters: ``d_a``, ``d_b`` where
    applicable and ``t`` for ``omega_t``.
    """
    if name == "maximally_mixed":
        return maximally_mixed(bipartite_dims(params.get("d_a", 2), params.get("d_b", 2)))

    if name == "seed_state":
        # Rank-3 two-qubit diagonal state (1/3, 1/3, 1/3, 0).
        m = np.diag([1 / 3, 1 / 3, 1 / 3, 0]).astype(complex)
        return density_matrix(m, bipartite_dims(2, 2))

    if name == "werner":
        # Half singlet plus identity/8: full rank and NPT.
        psi = (np.kron(_basis_ket(0, 2), _basis_ket(1, 2))
               - np.kron(_basis_ket(1, 2), _basis_ket(0, 2))) / math.sqrt(2)
        m = 0.5 * np.outer(psi, psi.conj()) + np.eye(4, dtype=complex) / 8
        return density_matrix(m, bipartite_dims(2, 2))

    if name == "phi_plus":
        d_a = params.get("d_a", 2)
        d_b = params.get("d_b", 2)
        psi = max_entangled_ket(d_a, d_b)
        return density_matrix(np.outer(psi, psi.conj()), bipartite_dims(d_a, d_b))

    if name == "omega_t":
        d_a = params.get("d_a", 2)
        d_b = params.get("d_b", 2)
        t = float(params["t"])
        return make_omega_t(d_a, d_b, t)

    if name == "rho_tilde":
        return make_rho_tilde(params["d_a"], params["d_b"])

    raise ValueError("unknown state name %r" % name)


def make_omega_t(d_a, d_b, t):
    """Identity depleted along the partial transpose of |Phi+><Phi+|.

    Entangled exactly when t > 1; spectral ratio (1 + t/d)/(1 - t/d) with
    d the smaller local dimension.  Requires 0 <= t < d.
    """
    dims = bipartite_dims(d_a, d_b)
    d = dims.min_local
    if not (0 <= t < d):
        raise ValueError("omega_t requires 0 <= t < d = %d, got t = %r" % (d, t))
    big_d = dims.total
    psi = max_entangled_ket(d_a, d_b)
    proj = DensityMatrix(dims=dims, matrix=np.outer(psi, psi.conj()))
    w = partial_transpose(proj)
    m = (np.eye(big_d, dtype=complex) - t * w) / (big_d - t)
    return density_matrix(m, dims)


def make_rho_tilde(d_a, d_b):
    """Two-level diagonal state sitting exactly on the ratio threshold
    (d_a + 1)/(d_a - 1), built for unequal local dimensions 2 <= d_a < d_b."""
    if not (2 <= d_a < d_b):
        raise ValueError("rho_tilde requires 2 <= d_a < d_b")
    dims = bipartite_dims(d_a, d_b)
    big_d = dims.total
    ratio = (d_a + 1) / (d_a - 1)
    p = big_d // 2
    q = big_d - p  # ceil(D/2)
    ell = 1.0 / (p + q * ratio)
    diag = np.concatenate([np.full(p, ell), np.full(q, ratio * ell)])
    return density_matrix(np.diag(diag).astype(complex), dims)


def rho_tilde_projector(d_a, d_b):
    """Projector onto the low-eigenvalue block of rho_tilde (first
    floor(D/2) computational basis states)."""
    big_d = d_a * d_b
    p = big_d // 2
    proj = np.zeros((big_d, big_d), dtype=complex)
    proj[:p, :p] = np.eye(p)
    return proj


def tensor_product(a, b):
    """Kronecker product with concatenated dimension metadata."""
    dims = Dims(a.dims.locals + b.dims.locals)
    return DensityMatrix(dims=dims, matrix=np.kron(a.matrix, b.matrix))


def attach_mixed_ancilla(rho, d_bprime):
    """rho tensor (identity / d_B') with bipartition A : BB'.

    Leaves the spectral ratio unchanged; divides purity by d_B'.
    """
    if d_bprime < 1:
        raise ValueError("ancilla dimension must be >= 1")
    d_a, d_b = rho.dims.bipartite()
    if d_bprime == 1:
        return rho
    m = np.kron(rho.matrix, np.eye(d_bprime, dtype=complex) / d_bprime)
    return DensityMatrix(dims=Dims((d_a, d_b * d_bprime)), matrix=m)


def gibbs_spectrum(energies, temperature, k_b=1.0, locals=None):
    """Thermal spectrum exp(-E_i/(k_B T)) / Z, descending.

    ``locals`` defaults to a single party of the full dimension; pass the
    actual local dimensions when feeding multipartite criteria.
    """
    if temperature <= 0:
        raise ValueError("temperature must be positive")
    e = np.asarray(energies, dtype=float)
    w = np.exp(-(e - e.min()) / (k_b * temperature))
    w /= w.sum()
    dims = Dims(tuple(locals)) if locals is not None else Dims((len(e),))
    return spectrum_from_values(w, dims)
