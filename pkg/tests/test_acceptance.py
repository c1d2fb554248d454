"""Acceptance gate: one test per criterion, each at its stated tolerance.

Every test records a PASS/FAIL line; the lines are repeated in the terminal
summary.  Run alone with ``pytest tests/test_acceptance.py``.
"""

import time

import numpy as np

from helpers import random_minphase, verdict
from helixfact.cepstral import Region, cepstrum_of_spectrum, power_spectrum
from helixfact.cli import EXIT_MARGINAL, EXIT_OK, EXIT_PROPERTY, main
from helixfact.factorize import (
    SweepConfig,
    backprop_experiment,
    compare,
    factorize_autocorrelation,
    factorize_helical,
    factorize_nd,
    sweep_equivalence,
)
from helixfact.grid import Field
from helixfact.synth import (
    PlaneWaveParams,
    RickerParams,
    plane_wave_lattice,
    ricker_response,
    synth_data,
    white_excitation,
)
from helixfact.zoracle import classify, helical_pz, match_roots, minphase_oracle_1d, numeric_roots, plane_wave_pz

SEED = 20240607


def _rel_up_to_scale(x, ref):
    scale = np.dot(x, ref) / np.dot(x, x)
    return np.linalg.norm(scale * x - ref) / np.linalg.norm(ref)


def _separable_set(n_fields, size, rmax=0.7):
    rng = np.random.default_rng(SEED)
    out = []
    for _ in range(n_fields):
        u = random_minphase(rng, int(rng.integers(1, 7)), rmax=rmax)
        v = random_minphase(rng, int(rng.integers(1, 7)), rmax=rmax)
        f = np.zeros((size, size))
        f[: len(u), : len(v)] = np.outer(u, v)
        out.append((u, v, Field(f)))
    return out


def test_c1_oracle_equivalence():
    rng = np.random.default_rng(SEED)
    N, worst = 4096, 0.0
    t0 = time.perf_counter()
    for _ in range(50):
        a = random_minphase(rng, int(rng.integers(1, 7)))
        r = np.convolve(a, a[::-1])
        oracle = minphase_oracle_1d(r)
        factor = factorize_autocorrelation(r, (N,), Region.causal()).factor.values
        worst = max(worst, _rel_up_to_scale(factor[: len(oracle)], oracle),
                    np.linalg.norm(factor[len(oracle):]) / np.linalg.norm(factor))
    elapsed = time.perf_counter() - t0
    verdict("C1 oracle equivalence", worst <= 1e-6 and elapsed < 5.0,
            f"worst rel L2 {worst:.2e} (<= 1e-6), {elapsed:.2f} s (< 5 s)")


def test_c2_separable_exactness():
    worst = 0.0
    for _, _, f in _separable_set(20, 64):
        m = compare(factorize_nd(f, Region.upper_nshp()), factorize_helical(f))
        worst = max(worst, m.e_tot / f.energy())
    verdict("C2 separable exactness", worst <= 1e-10, f"max e_tot/energy {worst:.2e} (<= 1e-10)")


def test_c3a_separable_cepstrum_on_axes():
    worst = 0.0
    for _, _, f in _separable_set(20, 64):
        c = cepstrum_of_spectrum(power_spectrum(f)).values
        off = c[1:, 1:]
        worst = max(worst, float(np.sum(off**2) / np.sum(c**2)))
    verdict("C3a off-axis cepstral energy", worst <= 1e-8, f"max relative energy {worst:.2e} (<= 1e-8)")


def _helical_cepstrum_parts(u, v, M, N):
    helix = np.zeros(M * N)
    f = np.zeros((M, N))
    f[: len(u), : len(v)] = np.outer(u, v)
    helix[:] = f.ravel(order="F")
    c = cepstrum_of_spectrum(power_spectrum(Field(helix))).values
    cu = cepstrum_of_spectrum(power_spectrum(Field(np.pad(u, (0, M * N - len(u)))))).values
    cv = cepstrum_of_spectrum(power_spectrum(Field(np.pad(v, (0, N - len(v)))))).values
    return c, cu, cv


def test_c3b_helical_cepstrum_literal_form():
    # the stated form carries a 1/M on the slow-axis term
    worst_mult, worst_low = 0.0, 0.0
    M = N = 64
    for u, v, _ in _separable_set(20, 64):
        c, cu, cv = _helical_cepstrum_parts(u, v, M, N)
        j = np.arange(1, N)
        expected = cu[j * M] + cv[j] / M
        worst_mult = max(worst_mult, np.linalg.norm(c[j * M] - expected) / np.linalg.norm(c[j * M]))
        p = np.arange(1, M)
        worst_low = max(worst_low, np.linalg.norm(c[p] - cu[p]) / np.linalg.norm(c[p]))
    ok = worst_mult <= 1e-6 and worst_low <= 1e-6
    verdict("C3b helical cepstrum u^(jM) + v^(j)/M", ok,
            f"rel err at p=jM {worst_mult:.2e}, at 0<p<M {worst_low:.2e} (<= 1e-6)")


def test_c3c_helical_cepstrum_without_scale():
    worst = 0.0
    M = N = 64
    for u, v, _ in _separable_set(20, 64):
        c, cu, cv = _helical_cepstrum_parts(u, v, M, N)
        j = np.arange(1, N)
        worst = max(worst, np.linalg.norm(c[j * M] - (cu[j * M] + cv[j])) / np.linalg.norm(c[j * M]))
    verdict("C3c helical cepstrum u^(jM) + v^(j)", worst <= 1e-6, f"rel err at p=jM {worst:.2e} (<= 1e-6)")


def _monotone(rows):
    e = [r.e_tot_norm for r in rows]
    r = [r.pearson_r for r in rows]
    ok = all(b < a for a, b in zip(e, e[1:])) and all(b > a for a, b in zip(r, r[1:])) and r[-1] > r[0]
    detail = "e_tot_norm " + ", ".join(f"{x:.3g}" for x in e) + "; pearson_r " + ", ".join(f"{x:.4f}" for x in r)
    return ok, detail


def test_c4_convergence_dirac_source():
    t0 = time.perf_counter()
    rows = sweep_equivalence(SweepConfig(M_values=(16, 32, 64, 128), N=256, seed=7, dirac=True))
    elapsed = time.perf_counter() - t0
    ok, detail = _monotone(rows)
    verdict("C4 convergence (Ricker, Dirac source)", ok and elapsed < 30.0, f"{detail}; {elapsed:.2f} s")


def test_c4_convergence_white_source():
    rows = sweep_equivalence(SweepConfig(M_values=(16, 32, 64, 128), N=256, seed=7, dirac=False))
    ok, detail = _monotone(rows)
    verdict("C4 convergence (Ricker, white source seed 7)", ok, detail)


def _conditioned(rng, dims, support):
    k = rng.standard_normal(support)
    k.flat[0] = 0.0
    k *= 0.9 / np.abs(k).sum()
    k.flat[0] = 1.0
    x = np.zeros(dims)
    x[tuple(slice(0, n) for n in support)] = k
    d = Field(x)
    S = power_spectrum(d).values
    assert S.min() / S.max() >= 1e-6
    return d


def test_c5_magnitude_reconstruction():
    rng = np.random.default_rng(SEED)
    worst, parts = 0.0, []
    for dims, support in (((4096,), (8,)), ((64, 64), (4, 4)), ((16, 16, 64), (3, 3, 3))):
        d = _conditioned(rng, dims, support)
        runs = [factorize_helical(d)] + ([factorize_nd(d)] if len(dims) > 1 else [])
        res = max(r.magnitude_residual() for r in runs)
        worst = max(worst, res)
        parts.append(f"{'x'.join(map(str, dims))} {res:.1e}")
    verdict("C5 magnitude reconstruction", worst <= 1e-8, "; ".join(parts) + " (<= 1e-8)")


def test_c6_backpropagation_cancellation():
    settings = [(0.3, 0.2), (0.5, 0.1), (1.0, 0.5), (0.1, 0.8), (2.0, 1.5)]
    parts, ok = [], True
    for k, w in settings:
        r = backprop_experiment(PlaneWaveParams(alpha=0.05, beta=0.05, k=k, omega=w), (128, 512))
        ok &= r.r_forward > r.r_backward
        parts.append(f"(k={k}, w={w}) {r.r_forward:.3f}>{r.r_backward:.3f}")
    verdict("C6 back-propagation cancellation", ok, "; ".join(parts))


def test_c7_zdomain_catalogs(tmp_path):
    p = PlaneWaveParams(alpha=0.05, beta=0.05, k=0.3, omega=0.2, dt=0.02)
    c = p.time_pole
    coeffs = np.zeros(65, dtype=complex)
    coeffs[0], coeffs[-1] = 1.0, -c
    dev = match_roots(helical_pz(p, 64).poles, numeric_roots(coeffs))
    for M, N in ((3, 4), (5, 6), (8, 5)):
        helix = plane_wave_lattice(p, M, N).ravel(order="F")
        dev = max(dev, match_roots(helical_pz(p, M, N).zeros, numeric_roots(helix)))
    fwd = [helical_pz(p, 64), helical_pz(p, 16, 8)] + list(plane_wave_pz(p, 64, None).values())
    inside = all(np.all(classify(np.concatenate([s.zeros, s.poles])) < 0) for s in fwd)
    outside = helical_pz(p, 64, direction="backward").max_modulus() > 1 and \
        plane_wave_pz(p, 64, None, "backward")["time"].max_modulus() > 1
    out = str(tmp_path / "z.csv")
    codes = (main(["zcheck", "--out", out]), main(["zcheck", "--direction", "backward", "--out", out]),
             main(["zcheck", "--alpha", "0", "--beta", "0", "--out", out]))
    ok = dev <= 1e-10 and inside and outside and codes == (EXIT_OK, EXIT_PROPERTY, EXIT_MARGINAL)
    verdict("C7 z-domain catalogs", ok,
            f"max root deviation {dev:.1e} (<= 1e-10), forward inside {inside}, backward outside {outside}, "
            f"zcheck exits {codes}")


def test_c8_three_dimensional_pipeline():
    t0 = time.perf_counter()
    h = ricker_response(RickerParams(), 32, 32, 64)
    d = synth_data(h, white_excitation(7, 32, 32, 64, steps=h.steps))
    nd = factorize_nd(d, Region.upper_nshs())
    hx = factorize_helical(d)
    mags = (nd.magnitude_residual(), hx.magnitude_residual())
    elapsed = time.perf_counter() - t0
    ok = max(mags) <= 1e-8 and elapsed < 10.0
    verdict("C8 3-D pipeline smoke", ok,
            f"magnitude residual nd {mags[0]:.1e}, helix {mags[1]:.1e} (<= 1e-8), floor fired "
            f"{nd.floor_fired}, {elapsed:.2f} s (< 10 s)")


def test_c9_determinism(tmp_path):
    outs = []
    for run in ("a", "b"):
        gen_dir = tmp_path / run
        assert main(["gen", "--out-dir", str(gen_dir)]) == EXIT_OK
        assert main(["sweep", "--out", str(gen_dir / "sweep.csv")]) == EXIT_OK
        outs.append([(gen_dir / n).read_bytes() for n in ("h.hlxf", "s.hlxf", "d.hlxf", "sweep.csv")])
    same = outs[0] == outs[1]
    verdict("C9 determinism", same, "gen (1024x1024, seed 7) and sweep reruns byte-identical" if same
            else "reruns differ")
