"""Spectral separability criteria and closed-form bounds.

Every criterion consumes a ``Spectrum`` (never a matrix) and produces a
``CriterionVerdict`` carrying the computed quantities behind the verdict.
Boundary comparisons get a 1e-12 tolerance on the Detected side: the sets
involved are closed, so boundary states must be detected.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .states import Dims, is_singular, purity, spectral_ratio

BOUNDARY_TOL = 1e-12


class Status(enum.Enum):
    DETECTED = "detected"
    NOT_DETECTED = "not-detected"
    INAPPLICABLE = "inapplicable"


class CriterionInapplicable(ValueError):
    """Criterion preconditions cannot be met for this input."""


@dataclass(frozen=True)
class CriterionVerdict:
    name: str
    status: Status
    computed: dict = field(default_factory=dict)
    reason: str = ""


@dataclass(frozen=True)
class CriterionReport:
    dims: Dims
    spectrum: "np.ndarray"
    verdicts: tuple


def _verdict(name, detected, computed, reason=""):
    status = Status.DETECTED if detected else Status.NOT_DETECTED
    return CriterionVerdict(name=name, status=status, computed=computed, reason=reason)


def ratio_criterion(s, d, mode="cas"):
    """Eigenvalue-ratio test R <= (d+1)/(d-1).

    mode "cas": complete absolute separability (iff condition; singular
    spectra are never CAS since CAS states are full rank).
    mode "separability": sufficient condition for plain separability.
    """
    if d < 2:
        raise ValueError("smaller local dimension must be >= 2")
    if mode not in ("cas", "separability"):
        raise ValueError("mode must be 'cas' or 'separability'")
    threshold = (d + 1) / (d - 1)
    ratio = spectral_ratio(s)
    name = "ratio_%s" % mode
    if is_singular(s):
        reason = "singular spectrum" + (": CAS states are full rank" if mode == "cas" else "")
        return _verdict(name, False, {"ratio": math.inf, "threshold": threshold}, reason)
    detected = ratio <= threshold + BOUNDARY_TOL
    return _verdict(name, detected, {"ratio": ratio, "threshold": threshold})


def purity_ball(s, dims):
    """Largest separable ball: Tr(rho^2) <= 1/(D-1) certifies (absolute)
    separability."""
    big_d = dims.total
    p = purity(s)
    bound = 1.0 / (big_d - 1)
    return _verdict("purity_ball", p <= bound + BOUNDARY_TOL, {"purity": p, "bound": bound})


def region_checks(s, dims):
    """Endpoint checks for the convex-hull criterion conv(A u B).

    Region A: lambda_min >= 1/(D+2).  Region B: the purity ball.  Full
    membership in the convex hull is not decided here; non-membership can be
    certified with a separating witness.
    """
    big_d = dims.total
    lam_min = float(s.values[-1])
    bound_a = 1.0 / (big_d + 2)
    verdict_a = _verdict(
        "region_a", lam_min >= bound_a - BOUNDARY_TOL, {"lambda_min": lam_min, "bound": bound_a}
    )
    verdict_b = purity_ball(s, dims)
    verdict_b = CriterionVerdict(
        name="region_b", status=verdict_b.status, computed=verdict_b.computed
    )
    return verdict_a, verdict_b


def appt_spectral_necessary(s):
    """Necessary spectral inequality for absolutely PPT states:
    lambda_1 <= lambda_{D-1} + 2 sqrt(lambda_D lambda_{D-2}).

    NotDetected certifies the spectrum is not absolutely PPT (hence not
    absolutely separable) for any dims.
    """
    v = s.values
    big_d = len(v)
    if big_d < 3:
        raise ValueError("APPT spectral inequality needs dimension >= 3")
    rhs = v[-2] + 2.0 * math.sqrt(v[-1] * v[-3])
    detected = v[0] <= rhs + BOUNDARY_TOL
    return _verdict(
        "appt_necessary", detected, {"lambda_max": float(v[0]), "bound": float(rhs)}
    )


def _filippov_condition(p, big_d):
    """Purity-window condition of the Filippov bound, evaluated with
    k = ceil(1/p) so the hypothesis 1/k <= p <= 1/(k-1) holds."""
    k = math.ceil(1.0 / p - BOUNDARY_TOL)
    if k <= 1:
        # Pure state window: the radical term vanishes.
        lhs = 1.0
        k = 1
        rhs = 3.0 * math.sqrt(p / (big_d + 8))
    else:
        lhs = 1.0 + math.sqrt(max(k * p - 1.0, 0.0) / (k - 1))
        rhs = 3.0 * k * math.sqrt(p / (big_d + 8))
    return k, lhs, rhs


def purity_bound_report(s, dims):
    """The three purity-based necessary conditions, as a list of verdicts.

    (i)  CAS purity:  Tr(rho^2) <= (d_A/d_B)/(d_A^2 - 1)  (d_A <= d_B).
    (ii) AS purity:   Tr(rho^2) <= 2/D for D > 4; exactly 3/8 at D = 4.
    (iii) Filippov:   window condition at k = ceil(1/purity).

    Detected means "consistent with" the respective set; NotDetected
    certifies exclusion.
    """
    d_a, d_b = sorted(dims.bipartite())
    big_d = dims.total
    p = purity(s)

    cas_bound = (d_a / d_b) / (d_a**2 - 1)
    v_cas = _verdict(
        "cas_purity", p <= cas_bound + BOUNDARY_TOL, {"purity": p, "bound": cas_bound}
    )

    as_bound = 3.0 / 8.0 if big_d == 4 else 2.0 / big_d
    v_as = _verdict("as_purity", p <= as_bound + BOUNDARY_TOL, {"purity": p, "bound": as_bound})

    k, lhs, rhs = _filippov_condition(p, big_d)
    v_fil = _verdict(
        "filippov", lhs <= rhs + BOUNDARY_TOL, {"purity": p, "k": k, "lhs": lhs, "rhs": rhs}
    )
    return [v_cas, v_as, v_fil]


def multipartite_guarantee(s, locals, l):
    """Bipartitions guaranteed separable by the multipartite ratio bound.

    If R <= (l+1)/(l-1), returns every bipartition of the parties whose
    smaller side has Hilbert dimension at most l (as pairs of index tuples,
    first side containing party 0).  Otherwise returns [].
    """
    if l < 2:
        raise ValueError("l must be >= 2")
    locals = tuple(int(d) for d in locals)
    if int(np.prod(locals)) != len(s.values):
        raise ValueError("product of locals must equal the spectrum length")
    if spectral_ratio(s) > (l + 1) / (l - 1) + BOUNDARY_TOL:
        return []
    n = len(locals)
    parties = tuple(range(n))
    out = []
    for r in range(1, n):
        for side in combinations(range(1, n), r - 1):
            left = (0,) + side
            right = tuple(i for i in parties if i not in left)
            dim_left = int(np.prod([locals[i] for i in left]))
            dim_right = int(np.prod([locals[i] for i in right]))
            if min(dim_left, dim_right) <= l:
                out.append((left, right))
    return out


def gibbs_threshold(h_inf_norm, l, k_b=1.0):
    """Temperature above which a Gibbs state is separable across every
    bipartition with smaller side dimension <= l:
    T* = 2 ||H||_inf / (k_B ln((l+1)/(l-1)))."""
    if l < 2:
        raise ValueError("l must be >= 2")
    if h_inf_norm < 0 or k_b <= 0:
        raise ValueError("need h_inf_norm >= 0 and k_b > 0")
    return 2.0 * h_inf_norm / (k_b * math.log((l + 1) / (l - 1)))


def copy_bound(ratio):
    """Smallest n with R^n > R + 2 sqrt(R): that many tensor copies are
    certified to leave the absolutely-PPT (hence AS) set."""
    if not math.isfinite(ratio) or ratio <= 1.0:
        raise CriterionInapplicable(
            "copy bound needs a finite ratio > 1 (the maximally mixed state never leaves AS)"
        )
    bound = math.log(ratio + 2.0 * math.sqrt(ratio)) / math.log(ratio)
    return int(math.floor(bound)) + 1


def run_all(s, dims):
    """Evaluate every registered criterion once and bundle the verdicts."""
    d = dims.min_local
    verdicts = [ratio_criterion(s, d, mode="cas"),
                ratio_criterion(s, d, mode="separability"),
                purity_ball(s, dims)]
    verdicts.extend(region_checks(s, dims))
    if dims.total >= 3:
        verdicts.append(appt_spectral_necessary(s))
    verdicts.extend(purity_bound_report(s, dims))
    return CriterionReport(dims=dims, spectrum=s.values, verdicts=tuple(verdicts))
