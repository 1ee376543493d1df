"""End-to-end acceptance gate.

Each test exercises one headline capability at its stated tolerance and
prints a single PASS/FAIL line (visible even under pytest capture).
"""

import math

import numpy as np

from specsep import (
    density_matrix,
    make_named_state,
    purity,
    spectral_ratio,
    spectrum,
    spectrum_from_values,
)
from specsep.channels import (
    apply_map,
    apply_to_operator,
    construct_transformation,
    entangle_from,
    make_sec_c_example,
    validate_map,
)
from specsep.criteria import (
    _filippov_condition,
    appt_spectral_necessary,
    Status,
)
from specsep.oracles import (
    as_falsify_search,
    thm2_violation_value,
    verify_ratio_monotone,
)
from specsep.states import bipartite_dims, make_rho_tilde
from specsep.witnesses import (
    evaluate,
    make_decomposable_witness,
    make_ppt_witness,
    make_separating_witness,
    min_product_expectation,
    trace_norm,
)

from conftest import rand_full_rank_state, rand_state, region_a_sample, region_b_sample


def _finish(capsys, num, desc, ok):
    with capsys.disabled():
        print("acceptance %2d %s: %s" % (num, "PASS" if ok else "FAIL", desc))
    assert ok, "acceptance criterion %d failed: %s" % (num, desc)


def test_acceptance_01_instrument_example(capsys):
    m = make_sec_c_example()
    image = apply_to_operator(m, np.eye(4, dtype=complex))
    ok = np.abs(image - (5 / 12) * np.eye(4)).max() < 1e-12
    seed = make_named_state("seed_state")
    out, prob = apply_map(m, seed)
    werner = make_named_state("werner")
    ok = ok and abs(prob - 2 / 9) <= 1e-12
    ok = ok and np.abs(out - (2 / 9) * werner.matrix).max() < 1e-12
    from specsep.oracles import ppt_min_eigenvalue

    normalized = density_matrix(out / prob, (2, 2))
    ok = ok and abs(ppt_min_eigenvalue(normalized) + 1 / 8) <= 1e-9
    _finish(capsys, 1, "worked instrument example reproduced exactly", ok)


def test_acceptance_02_extraction_matches_formula(capsys):
    from specsep.oracles import ppt_min_eigenvalue

    rng = np.random.default_rng(2)
    ok = True
    produced = 0
    while produced < 100:
        vals = np.sort(rng.dirichlet(np.ones(4)))[::-1]
        r = vals[0] / vals[-1]
        if not (r > 3.0 and vals[-1] > 1e-4):
            continue
        produced += 1
        rho = density_matrix(np.diag(vals).astype(complex), (2, 2))
        instrument, target = entangle_from(rho)
        ok = ok and validate_map(instrument) > 0
        t = 2.0 * (r - 1.0) / (r + 1.0)
        expected = (1.0 - t) / (4.0 - t)
        out, prob = apply_map(instrument, rho)
        ok = ok and prob > 0
        measured = ppt_min_eigenvalue(density_matrix(out / prob, (2, 2)))
        ok = ok and abs(measured - expected) <= 1e-9
        ok = ok and measured < -1e-9
    _finish(capsys, 2, "extraction maps hit the predicted negativity on 100 spectra", ok)


def test_acceptance_03_ratio_threshold_equivalence(capsys):
    rng = np.random.default_rng(3)
    dims = bipartite_dims(2, 3)
    ok = True
    safe = []
    spectra = [rng.dirichlet(np.ones(6)) for _ in range(8000)]
    spectra += [rng.dirichlet(np.full(6, 40.0)) for _ in range(2000)]
    for vals in spectra:
        s = spectrum_from_values(np.sort(vals)[::-1], dims)
        r = spectral_ratio(s)
        value = thm2_violation_value(s, 2, 3)
        if r > 3.0 + 1e-9:
            ok = ok and value < -1e-12
        elif r < 3.0 - 1e-9:
            ok = ok and value >= -1e-12
        if r <= 3.0:
            safe.append(s)
    ok = ok and len(safe) > 500
    for i, s in enumerate(safe):
        result = as_falsify_search(s, dims, samples=100, seed=30_000 + 100 * i)
        ok = ok and not result.found
    _finish(capsys, 3,
            "ratio threshold matches the ancilla-extension value on 10^4 spectra; "
            "no false entangling unitary found", ok)


def test_acceptance_04_witness_separation(capsys):
    rng = np.random.default_rng(4)
    ok = True
    for d_a, d_b in [(2, 3), (2, 4)]:
        big_d = d_a * d_b
        rho = make_rho_tilde(d_a, d_b)
        s = spectrum(rho)
        ok = ok and purity(s) > 1.0 / (big_d - 1)
        ok = ok and float(s.values[-1]) < 1.0 / (big_d + 2)
        w = make_separating_witness(d_a, d_b)
        value = evaluate(w, rho)
        ok = ok and value < -1e-6
        if (d_a, d_b) == (2, 3):
            ok = ok and abs(value + 0.0197) <= 1e-4
        for i in range(10_000):
            ok = ok and evaluate(w, region_a_sample(rng, d_a, d_b, 400_000 + i)) >= -1e-9
            ok = ok and evaluate(w, region_b_sample(rng, d_a, d_b, 800_000 + i)) >= -1e-9
            if not ok:
                break
    _finish(capsys, 4,
            "ratio-detected state separated from both guaranteed-separable regions", ok)


def test_acceptance_05_witness_trace_norm_bound(capsys):
    rng = np.random.default_rng(5)
    ok = True
    for dims in [(2, 2), (2, 3), (2, 4), (3, 3)]:
        d = min(dims)
        for _ in range(1000):
            w = make_decomposable_witness(rand_state(rng, dims))
            ok = ok and trace_norm(w) <= d + 1e-9
    for d in (2, 3):
        w = make_ppt_witness(bipartite_dims(d, d))
        ok = ok and abs(trace_norm(w) - d) <= 1e-10
    _finish(capsys, 5, "decomposable witnesses respect the trace-norm bound; "
                       "swap-type witnesses saturate it", ok)


def test_acceptance_06_purity_chain(capsys):
    rng = np.random.default_rng(6)
    shapes = {6: (2, 3), 9: (3, 3), 12: (3, 4), 16: (4, 4)}
    ok = True
    for big_d, dims in shapes.items():
        passed = 0
        spectra = [rng.dirichlet(np.ones(big_d)) for _ in range(7000)]
        spectra += [rng.dirichlet(np.full(big_d, 6.0 * big_d)) for _ in range(3000)]
        for vals in spectra:
            s = spectrum_from_values(np.sort(vals)[::-1], dims)
            if appt_spectral_necessary(s).status is Status.DETECTED:
                passed += 1
                ok = ok and purity(s) <= 2.0 / big_d + 1e-12
        ok = ok and passed > 100
        _, lhs, rhs = _filippov_condition(2.0 / big_d, big_d)
        ok = ok and lhs < rhs
    _finish(capsys, 6, "spectra consistent with the PT-invariance inequality stay "
                       "inside the 2/D purity cap, which sits inside the window bound", ok)


def test_acceptance_07_ratio_inside_purity_bounds(capsys):
    rng = np.random.default_rng(7)
    ok = True
    for d_a, d_b in [(2, 2), (3, 3)]:
        big_d = d_a * d_b
        threshold = (d_a + 1) / (d_a - 1)
        cas_bound = (d_a / d_b) / (d_a**2 - 1)
        inside = 0
        spectra = [rng.dirichlet(np.ones(big_d)) for _ in range(7000)]
        spectra += [rng.dirichlet(np.full(big_d, 8.0 * big_d)) for _ in range(3000)]
        for vals in spectra:
            s = spectrum_from_values(np.sort(vals)[::-1], (d_a, d_b))
            if spectral_ratio(s) <= threshold:
                inside += 1
                p = purity(s)
                ok = ok and p <= 1.0 / (big_d - 1) + 1e-12
                ok = ok and p <= cas_bound + 1e-12
        ok = ok and inside > 100
    _finish(capsys, 7, "ratio-certified spectra always sit inside both purity bounds", ok)


def test_acceptance_08_copy_bound(capsys):
    from specsep.criteria import copy_bound

    ok = True
    for r in (2.0, 3.0, 5.0):
        n = copy_bound(r)
        one = np.array([r, 1.0, 1.0, 1.0]) / (r + 3.0)
        vals = one.copy()
        for _ in range(n - 1):
            vals = np.outer(vals, one).ravel()
        dims_n = (2**n, 2**n)
        s = spectrum_from_values(np.sort(vals)[::-1], dims_n)
        ok = ok and appt_spectral_necessary(s).status is Status.NOT_DETECTED
        # one copy fewer does not yet trigger the sufficient-violation formula
        ok = ok and r ** (n - 1) <= r + 2.0 * math.sqrt(r) + 1e-12
    _finish(capsys, 8, "copy counts push ratio-R spectra past the PT-invariance "
                       "inequality, and not a copy earlier", ok)


def test_acceptance_09_transformation_round_trip(capsys):
    rng = np.random.default_rng(9)
    ok = True
    for _ in range(1000):
        a = rand_full_rank_state(rng, (2, 2))
        b = rand_full_rank_state(rng, (2, 2))
        if spectral_ratio(spectrum(a)) < spectral_ratio(spectrum(b)):
            a, b = b, a
        instrument, _ = construct_transformation(a, b)
        out, prob = apply_map(instrument, a)
        ok = ok and prob > 0
        ok = ok and np.abs(out / prob - b.matrix).max() < 1e-9
        ok = ok and validate_map(instrument) > 0
        ok = ok and verify_ratio_monotone(instrument, a)
        if not ok:
            break
    _finish(capsys, 9, "1000 random ratio-ordered pairs transform exactly", ok)


def _bloch_features(step_deg=1):
    """Real coordinates (P00, P11, Re P01, Im P01) of every 1-degree grid
    projector |a><a| with a = (cos(t/2), e^{i p} sin(t/2))."""
    theta = np.deg2rad(np.arange(0, 181, step_deg, dtype=float))
    phi = np.deg2rad(np.arange(0, 360, step_deg, dtype=float))
    t, p = np.meshgrid(theta, phi, indexing="ij")
    c, s = np.cos(t / 2), np.sin(t / 2)
    return np.stack([(c * c).ravel(), (s * s).ravel(),
                     (c * s * np.cos(p)).ravel(), (-c * s * np.sin(p)).ravel()], axis=1)


def _grid_min_product_expectation(w):
    """Exhaustive minimum of <a b|W|a b> over the two 1-degree Bloch grids,
    via the bilinear form of W in the real projector coordinates."""
    e = [np.zeros((2, 2), dtype=complex) for _ in range(4)]
    e[0][0, 0] = 1
    e[1][1, 1] = 1
    e[2][0, 1] = e[2][1, 0] = 1
    e[3][0, 1] = 1j
    e[3][1, 0] = -1j
    k = np.empty((4, 4))
    for m in range(4):
        for n in range(4):
            k[m, n] = np.trace(w.matrix @ np.kron(e[m], e[n])).real
    f = _bloch_features()
    left = f @ k
    best = math.inf
    for j in range(0, len(f), 256):
        best = min(best, float((left @ f[j:j + 256].T).min()))
    return best


def test_acceptance_10_block_positivity_oracle(capsys):
    w = make_ppt_witness(bipartite_dims(2, 2))
    seesaw = min_product_expectation(w, restarts=32, iters=100, seed=0)
    ok = -1e-6 <= seesaw <= 1e-6
    brute = _grid_min_product_expectation(w)
    ok = ok and abs(brute - seesaw) <= 1e-4
    _finish(capsys, 10, "alternating minimizer agrees with the exhaustive grid", ok)
