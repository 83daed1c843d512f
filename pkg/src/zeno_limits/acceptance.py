"""Acceptance suite: one callable per verification criterion.

Each ``criterion_*`` function returns a :class:`CriterionResult`; the
:func:`run_acceptance` driver executes all of them, prints one pass/fail
line per criterion, and reports an overall exit code.  The pytest module
``tests/test_acceptance.py`` asserts the same results, so the CLI and the
test suite cannot drift apart.

Tolerances are fixed here, not configurable: they are the contract.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .gkls import (
    GklsSystem,
    PurityOptions,
    Superoperator,
    canonicalize,
    gkls_form_check,
    hamiltonian_superoperator,
    liouvillian,
    purity_decay_rate,
    superoperator_purity_rate,
)
from .linalg import expm, sandwich_super, spectral_norm
from .models import (
    ThreeLevelParams,
    dephasing_qubit_example,
    gkls_corpus,
    gkls_pair_corpus,
    random_gkls,
    three_level_analytic_propagator,
    three_level_generators,
    three_level_peripheral,
    three_level_zeno_generator,
)
from .spectral import decompose
from .experiments import spectral_property_check
from .zeno import (
    BoundInputs,
    adiabatic_error,
    bound_adiabatic,
    bound_cptp,
    bound_simplified,
    commutator_projections,
    commutator_superoperator,
    pulsed_zeno_product,
    zeno_split,
)

__all__ = ["CriterionResult", "all_criteria", "run_acceptance"]


@dataclass
class CriterionResult:
    number: str
    name: str
    passed: bool
    detail: str
    elapsed_s: float = 0.0


def _random_params(rng) -> ThreeLevelParams:
    """Parameter draws kept away from degenerate corners (g, kappa -> 0)."""
    return ThreeLevelParams(
        omega0=float(rng.uniform(-2, 2)),
        omega1=float(rng.uniform(-2, 2)),
        omega2=float(rng.uniform(-2, 2)),
        gamma=float(rng.uniform(0.2, 3.0)),
        g=float(rng.uniform(0.5, 2.5)),
        w2=float(rng.uniform(-2, 2)),
        kappa=float(rng.uniform(0.5, 2.5)),
    )


def criterion_1() -> CriterionResult:
    """Analytic propagator of the strong three-level generator vs expm."""
    start = time.monotonic()
    rng = np.random.default_rng(101)
    worst = 0.0
    for _ in range(20):
        p = _random_params(rng)
        _, d_super = three_level_generators(p)
        for t in (0.1, 0.5, 1.0, 2.0, 5.0):
            diff = spectral_norm(three_level_analytic_propagator(p, t).mat
                                 - expm(d_super.mat, t))
            worst = max(worst, diff)
    elapsed = time.monotonic() - start
    ok = bool(worst <= 1e-8 and elapsed < 5.0)
    return CriterionResult("1", "three-level analytic propagator", ok,
                           f"max |analytic - expm| = {worst:.3e} (tol 1e-8), {elapsed:.2f}s (limit 5s)",
                           elapsed)


def criterion_2() -> CriterionResult:
    """Peripheral clusters of the strong generator: {0, -2ig, +2ig} and projections."""
    start = time.monotonic()
    rng = np.random.default_rng(202)
    worst_eig, worst_proj = 0.0, 0.0
    count_ok = True
    for p in [ThreeLevelParams()] + [_random_params(rng) for _ in range(10)]:
        _, d_super = three_level_generators(p)
        dec = decompose(d_super.mat)
        periph = dec.peripheral_clusters
        count_ok = count_ok and len(periph) == 3
        closed = three_level_peripheral(p)
        targets = {0: closed.p_0.mat, 1: closed.p_plus.mat, 2: closed.p_minus.mat}
        expect = [0.0, -2j * p.g, 2j * p.g]
        for c in periph:
            idx = int(np.argmin([abs(c.eigenvalue - e) for e in expect]))
            worst_eig = max(worst_eig, abs(c.eigenvalue - expect[idx]))
            worst_proj = max(worst_proj, spectral_norm(c.projection - targets[idx]))
    ok = bool(count_ok and worst_eig <= 1e-8 and worst_proj <= 1e-8)
    return CriterionResult("2", "three-level peripheral structure", ok,
                           f"three peripheral clusters: {count_ok}; max eigenvalue error {worst_eig:.3e}; "
                           f"max projection error {worst_proj:.3e} (tol 1e-8)",
                           time.monotonic() - start)


def criterion_3() -> CriterionResult:
    """Zeno-projected weak generator matches its closed form."""
    start = time.monotonic()
    rng = np.random.default_rng(303)
    worst = 0.0
    for _ in range(20):
        p = _random_params(rng)
        l_super, d_super = three_level_generators(p)
        split = zeno_split(d_super.mat, l_super.mat)
        worst = max(worst, spectral_norm(split.c_z - three_level_zeno_generator(p).mat))
    ok = bool(worst <= 1e-8)
    return CriterionResult("3", "three-level Zeno generator", ok,
                           f"max |C_Z - closed form| = {worst:.3e} (tol 1e-8)",
                           time.monotonic() - start)


GAMMA_GRID = (10.0, 30.0, 100.0, 300.0, 1000.0)


def _sup_error_over_t(split, gamma, t_grid) -> float:
    return max(adiabatic_error(split, gamma, t, "peripheral") for t in t_grid)


def criterion_4() -> CriterionResult:
    """O(1/gamma) convergence rate at the reference parameter set.

    Slope fitted on the top half of the gamma grid (the small-gamma points
    are pre-asymptotic; the full-grid fit is reported in the detail).
    """
    start = time.monotonic()
    t_grid = np.unique(np.concatenate([np.linspace(0.25, 2.0, 32),
                                       np.geomspace(0.25, 2.0, 32)]))
    details, ok = [], True
    for g in (1.0, 2.0):
        p = ThreeLevelParams(omega0=0.0, omega1=1.0, omega2=2.0, gamma=2.0,
                             g=g, w2=1.0, kappa=1.0)
        l_super, d_super = three_level_generators(p)
        split = zeno_split(d_super.mat, l_super.mat)
        sup = [(gam, _sup_error_over_t(split, gam, t_grid)) for gam in GAMMA_GRID]
        top = sup[len(sup) // 2:]
        slope = float(np.polyfit(np.log([g_ for g_, _ in top]),
                                 np.log([e for _, e in top]), 1)[0])
        slope_full = float(np.polyfit(np.log([g_ for g_, _ in sup]),
                                      np.log([e for _, e in sup]), 1)[0])
        ok = ok and -1.15 <= slope <= -0.85
        details.append(f"g={g}: slope {slope:.3f} (full-grid {slope_full:.3f})")
    elapsed = time.monotonic() - start
    ok = bool(ok and elapsed < 30.0)
    return CriterionResult("4", "convergence rate", ok,
                           "; ".join(details) + f" (window [-1.15, -0.85]); {elapsed:.1f}s (limit 30s)",
                           elapsed)


def criterion_5() -> CriterionResult:
    """All three bounds dominate the measured error, measured constants."""
    start = time.monotonic()
    t_grid = np.linspace(0.25, 2.0, 6)
    gammas = (10.0, 100.0, 1000.0)
    worst = -math.inf
    cases = []
    p = ThreeLevelParams()
    l_super, d_super = three_level_generators(p)
    cases.append((d_super.mat, l_super.mat))
    for strong, weak in gkls_pair_corpus(50):
        cases.append((liouvillian(strong).mat, liouvillian(weak).mat))
    for b, c in cases:
        split = zeno_split(b, c)
        inputs = BoundInputs.from_split(split, t_max=2.0, gamma_max=max(gammas))
        for gamma in gammas:
            for t in t_grid:
                err = adiabatic_error(split, gamma, t, "peripheral")
                for bound in (bound_adiabatic, bound_cptp, bound_simplified):
                    worst = max(worst, err - bound(inputs, gamma, t))
    ok = bool(worst <= 1e-9)
    return CriterionResult("5", "bound dominance", ok,
                           f"max (error - bound) over 51 instances x {len(gammas)} gammas x "
                           f"{len(t_grid)} times = {worst:.3e} (slack limit 1e-9)",
                           time.monotonic() - start)


def criterion_6() -> CriterionResult:
    """Bound curve with fixed constants dominates the error curves.

    Evaluated with M = sqrt(2), p = sqrt(2), eta = kappa/2, the bound
    must decrease in gamma and dominate the measured error on t in
    [0.1, 2] for all six panel parameter sets; the dataset is emitted
    as CSV.
    """
    start = time.monotonic()
    t_grid = np.linspace(0.1, 2.0, 12)
    gammas = GAMMA_GRID
    ok = True
    details = []
    rows = ["panel_g,panel_gamma_rate,gamma,t,error_peripheral,bound_cptp_caption"]
    for g in (0.1, 1.0, 2.0):
        for gamma_rate in (0.0, 2.0):
            p = ThreeLevelParams(omega0=0.0, omega1=1.0, omega2=2.0,
                                 gamma=gamma_rate, g=g, w2=1.0, kappa=1.0)
            l_super, d_super = three_level_generators(p)
            split = zeno_split(d_super.mat, l_super.mat)
            measured = BoundInputs.from_split(split, t_max=2.0, gamma_max=max(gammas))
            caption = BoundInputs(
                m_bound=math.sqrt(2.0), eta=p.kappa / 2.0, delta=measured.delta,
                nu=measured.nu, chi=measured.chi, dim=measured.dim,
                p_coeffs=np.array([math.sqrt(2.0)]), norm_c=measured.norm_c,
                norm_cz=measured.norm_cz, resolvent_sum=measured.resolvent_sum,
                resolvent_sum_norm=measured.resolvent_sum_norm)
            min_margin = math.inf
            prev = None
            monotone = True
            for gamma in gammas:
                bounds = np.array([bound_cptp(caption, gamma, t) for t in t_grid])
                errs = np.array([adiabatic_error(split, gamma, t, "peripheral") for t in t_grid])
                for t, e, bv in zip(t_grid, errs, bounds):
                    rows.append(f"{g},{gamma_rate},{gamma},{t},{float(e)!r},{float(bv)!r}")
                min_margin = min(min_margin, float((bounds - errs).min()))
                if prev is not None and not np.all(bounds <= prev + 1e-12):
                    monotone = False
                prev = bounds
            ok = bool(ok and monotone and min_margin >= 0.0)
            details.append(f"g={g},rate={gamma_rate}: margin {min_margin:.2e}, monotone {monotone}")
    csv_text = "\n".join(rows) + "\n"
    return CriterionResult("6", "fixed-constant bound curve", ok,
                           "; ".join(details), time.monotonic() - start,
                           ), csv_text


def criterion_7() -> CriterionResult:
    """Dephasing-qubit projected generators: closed forms and GKLS verdicts."""
    start = time.monotonic()
    ex = dephasing_qubit_example()
    comps = commutator_projections(ex.hamiltonian)
    total = sum(c.projector @ ex.l_super.mat @ c.projector for c in comps)
    kernel = next(c.projector for c in comps if abs(c.omega) <= 1e-12)
    compressed = kernel @ ex.l_super.mat @ kernel
    d_zeno = spectral_norm(total - ex.expected_zeno.mat)
    d_non = spectral_norm(compressed - ex.expected_non_gkls.mat)
    zeno_ok = gkls_form_check(ex.expected_zeno).conditionally_completely_positive
    non_ok = gkls_form_check(ex.expected_non_gkls).conditionally_completely_positive
    ok = bool(d_zeno <= 1e-10 and d_non <= 1e-10 and zeno_ok and not non_ok)
    return CriterionResult("7", "dephasing-qubit example", ok,
                           f"|sum P L P - (D_X + D_Y)/8| = {d_zeno:.3e}, "
                           f"|P0 L P0 - (D_X + D_Y - D_Z)/8| = {d_non:.3e} (tol 1e-10); "
                           f"GKLS verdicts: projected {zeno_ok} (want True), compressed {non_ok} (want False)",
                           time.monotonic() - start)


def _fast_oscillation_zeno(sys: GklsSystem, k: np.ndarray) -> Superoperator:
    full = liouvillian(sys).mat
    mat = np.zeros_like(full)
    for comp in commutator_projections(k):
        mat += comp.projector @ full @ comp.projector
    return Superoperator(sys.d, mat, "projected")


def criterion_8() -> CriterionResult:
    """No-go check: purity decay rates of L and of the projected L_Z.

    Exact for the dephasing qubit.  For generic random instances the
    projected rate comes out strictly below the original (the projection
    averages the purity functional over the K-orbit, and the maximizer is
    not orbit-invariant), so the blanket 1e-6 agreement asserted here is
    not attainable; see the decisions ledger.  The Gamma = 0 iff D = 0
    separation is asserted in criterion 8b.
    """
    start = time.monotonic()
    opts = PurityOptions(restarts=24, grid_density=100, seed=7)
    ex = dephasing_qubit_example()
    g_l = purity_decay_rate(canonicalize(ex.system), opts)
    g_z = superoperator_purity_rate(ex.expected_zeno, opts).gamma
    worst = abs(g_l - g_z)
    details = [f"dephasing: |{g_l:.8f} - {g_z:.8f}| = {worst:.2e}"]
    for i in range(10):
        sys = random_gkls(2, 1 + i % 2, seed=4000 + i)
        lz = _fast_oscillation_zeno(sys, sys.hamiltonian)
        g_l = purity_decay_rate(canonicalize(sys), opts)
        g_z = superoperator_purity_rate(lz, opts).gamma
        worst = max(worst, abs(g_l - g_z))
    details.append(f"max |Gamma(L) - Gamma(L_Z)| over 10 random instances = {worst:.3e}")
    ok = bool(worst <= 1e-6)
    return CriterionResult("8", "no-go purity-rate agreement", ok,
                           "; ".join(details) + " (tol 1e-6)",
                           time.monotonic() - start)


def criterion_8b() -> CriterionResult:
    """Gamma = 0 exactly for vanishing dissipators, bounded away otherwise."""
    start = time.monotonic()
    opts = PurityOptions(restarts=16, grid_density=60, seed=11)
    zeros, nonzeros = [], []
    for i in range(5):
        unitary = random_gkls(2 + i % 3, 0, seed=5000 + i)
        zeros.append(purity_decay_rate(canonicalize(unitary), opts))
        noisy = random_gkls(2 + i % 3, 1, seed=5100 + i)
        nonzeros.append(purity_decay_rate(canonicalize(noisy), opts))
    ok = bool(max(zeros) <= 1e-12 and min(nonzeros) >= 1e-8)
    return CriterionResult("8b", "no-go purity-rate separation", ok,
                           f"max Gamma(unitary) = {max(zeros):.2e} (tol 1e-12), "
                           f"min Gamma(noisy) = {min(nonzeros):.2e} (floor 1e-8)",
                           time.monotonic() - start)


def criterion_9() -> CriterionResult:
    """Bohr-frequency projections match the commutator's spectral clusters."""
    start = time.monotonic()
    rng = np.random.default_rng(909)
    worst_match, worst_complete = 0.0, 0.0
    for i in range(10):
        d = 2 + i % 3
        a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        k = (a + a.conj().T) / 2
        comps = commutator_projections(k)
        total = sum(c.projector for c in comps)
        worst_complete = max(worst_complete,
                             spectral_norm(total - np.eye(d * d)))
        gen = -1j * commutator_superoperator(k)
        dec = decompose(gen)
        for comp in comps:
            target = -1j * comp.omega
            idx = int(np.argmin([abs(c.eigenvalue - target) for c in dec.clusters]))
            worst_match = max(worst_match,
                              spectral_norm(dec.clusters[idx].projection - comp.projector))
    ok = bool(worst_match <= 1e-8 and worst_complete <= 1e-8)
    return CriterionResult("9", "commutator spectral projections", ok,
                           f"max projection mismatch {worst_match:.3e}; "
                           f"completeness defect {worst_complete:.3e} (tol 1e-8)",
                           time.monotonic() - start)


def criterion_10() -> CriterionResult:
    """Pulsed-Zeno distance halves (within 25%) as n doubles."""
    start = time.monotonic()
    rng = np.random.default_rng(1010)
    ok = True
    worst_dev = 0.0
    for i in range(5):
        sys = random_gkls(2, 1 + i % 3, seed=6000 + i)
        gen = liouvillian(sys).mat
        psi = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        psi /= np.linalg.norm(psi)
        p0 = np.outer(psi, psi.conj())
        proj = sandwich_super(p0, p0) + sandwich_super(np.eye(2) - p0, np.eye(2) - p0)
        dists = [pulsed_zeno_product(proj, gen, 1.0, n).distance for n in (8, 16, 32, 64)]
        for a, b in zip(dists, dists[1:]):
            ratio = b / a
            worst_dev = max(worst_dev, abs(ratio - 0.5) / 0.5)
            ok = bool(ok and 0.375 <= ratio <= 0.625)
    return CriterionResult("10", "pulsed Zeno O(1/n) halving", ok,
                           f"worst halving deviation {100 * worst_dev:.1f}% (limit 25%)",
                           time.monotonic() - start)


def criterion_11() -> CriterionResult:
    """Structural audit passes on the corpus; corrupted generator fails."""
    start = time.monotonic()
    all_ok = True
    for sys in gkls_corpus(50):
        rep = spectral_property_check(sys)
        all_ok = all_ok and rep.all_pass
    # sign-flipped dissipator pushes spectrum into the right half-plane
    sys = random_gkls(3, 2, seed=7777)
    lio = liouvillian(sys).mat
    ham = hamiltonian_superoperator(sys.hamiltonian)
    corrupted = ham - (lio - ham)
    rep = spectral_property_check(corrupted)
    ok = bool(all_ok and not rep.left_half_plane)
    return CriterionResult("11", "spectral property audit", ok,
                           f"corpus all pass: {all_ok}; corrupted generator "
                           f"left-half-plane verdict: {rep.left_half_plane} (want False)",
                           time.monotonic() - start)


def all_criteria():
    """Run every criterion; returns (results, fig2_csv_text)."""
    results = []
    for fn in (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5):
        results.append(fn())
    res6, csv_text = criterion_6()
    results.append(res6)
    for fn in (criterion_7, criterion_8, criterion_8b, criterion_9,
               criterion_10, criterion_11):
        results.append(fn())
    return results, csv_text


def run_acceptance(csv_path: str | None = None, stream=None) -> int:
    """Execute the full suite, print one line per criterion, return exit code."""
    import sys as _sys
    out = stream or _sys.stdout
    results, csv_text = all_criteria()
    if csv_path:
        from pathlib import Path
        Path(csv_path).write_text(csv_text)
    failures = 0
    for res in results:
        tag = "PASS" if res.passed else "FAIL"
        print(f"[{tag}] criterion {res.number}: {res.name} - {res.detail}", file=out)
        failures += 0 if res.passed else 1
    print(f"{len(results) - failures}/{len(results)} acceptance checks passed", file=out)
    return 0 if failures == 0 else 1
