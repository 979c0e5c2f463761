"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
lines and timings on the console.
"""

import contextlib
import math
import time

import numpy as np
import pytest

from bcrsi.codesim import SplitBits, build_secret_key_code, exact_leakage, trend_experiment
from bcrsi.fm import fm_projection_oracle
from bcrsi.gaussian import GaussianConfig, gap, inner_bound, outer_bound
from bcrsi.geometry import contains, hausdorff, subset
from bcrsi.infotools import DmcChannel, Pmf, bsc_broadcast
from bcrsi.lindet import (LinDetConfig, admits_construction, in_region,
                          integer_rate_pairs, verify_exhaustive,
                          xor_ring_scheme)
from bcrsi.markov import (SplitChainSpec, random_separable_pair,
                          random_stochastic, random_superposition_spec)
from bcrsi.regions import (joint_marton_region, joint_superposition_region,
                           marton_region, region_sweep,
                           split_superposition_region, superposition_region,
                           weak_eav_capacity)

LEAK_TOL = 1e-12


@contextlib.contextmanager
def criterion(num, label):
    start = time.time()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {num} [{label}]: FAIL ({time.time() - start:.1f}s)")
        raise
    print(f"ACCEPTANCE {num} [{label}]: PASS ({time.time() - start:.1f}s)")


def _same_vertices(a, b, tol=1e-9):
    va = sorted(a.vertices)
    vb = sorted(b.vertices)
    if len(va) != len(vb):
        return False
    return all(math.hypot(p[0] - q[0], p[1] - q[1]) <= tol
               for p, q in zip(va, vb))


def test_criterion_1_lindet_exhaustive():
    with criterion(1, "lindet exhaustive capacity check, gains <= 5"):
        for n1 in range(6):
            for n2 in range(6):
                for ne in range(6):
                    cfg = LinDetConfig(n1, n2, ne)
                    inside = set(integer_rate_pairs(cfg))
                    for r1, r2 in inside:
                        rep = verify_exhaustive(cfg, r1, r2)
                        assert rep.error_count == 0, (cfg, r1, r2)
                        assert rep.leak1_bits <= LEAK_TOL, (cfg, r1, r2)
                        assert rep.leak2_bits <= LEAK_TOL, (cfg, r1, r2)
                    for r1 in range(n1 + 2):
                        for r2 in range(n2 + 2):
                            if (r1, r2) in inside:
                                continue
                            assert not in_region(cfg, r1, r2)
                            assert not admits_construction(cfg, r1, r2), (cfg, r1, r2)


def test_criterion_2_xor_ring():
    with criterion(2, "XOR ring: rate 1, unit equivocations, joint fails"):
        for k in (2, 3, 4, 5):
            rep = xor_ring_scheme(k)
            assert rep.decode_errors == 0
            assert rep.rate_per_receiver == 1.0
            for e in rep.equivocations:
                assert abs(e - 1.0) <= LEAK_TOL
            assert abs(rep.joint_equivocation - 1.0) <= LEAK_TOL
            assert rep.joint_equivocation < k   # joint secrecy unattainable


def _degraded_channel(rng, nx, nout):
    """Informative receiver channels with Z degraded from both.

    Diagonal-dominant legs keep the mutual informations macroscopic;
    cascading random near-uniform kernels instead would produce regions
    at the 1e-8 bit scale, below the float geometry's resolution.
    """
    def leg(n_in, n_out, strength):
        base = np.full((n_in, n_out), (1.0 - strength) / n_out)
        for i in range(n_in):
            base[i, i % n_out] += strength
        mix = random_stochastic(rng, (n_in, n_out), floor=0.3)
        w = 0.7 * base + 0.3 * mix
        return w / w.sum(axis=1, keepdims=True)

    w1 = leg(nx, nout, rng.uniform(0.55, 0.9))
    w2 = w1 @ leg(nout, nout, rng.uniform(0.6, 0.9))
    wz = w2 @ leg(nout, nout, rng.uniform(0.5, 0.8))
    return DmcChannel.from_marginals(w1, w2, wz)


def test_criterion_3_reduction_equalities():
    with criterion(3, "reduction equalities on 100 seeded specs"):
        rng = np.random.Generator(np.random.Philox(301))
        checked = 0
        while checked < 100:
            nx = 2 if checked % 2 == 0 else 3
            nv = 2 if checked % 4 < 2 else 3
            ch = _degraded_channel(rng, nx, nx)
            spec = random_superposition_spec(rng, nu=2, nv=nv, nx=nx)
            sup = superposition_region(ch, spec)
            assert sup.admissible     # Z degraded from both receivers
            if sup.region.max_r1() + sup.region.max_r2() < 1e-3:
                continue              # numerically degenerate draw
            mar = marton_region(ch, spec.to_marton())
            assert mar.admissible
            assert _same_vertices(sup.region, mar.region)
            split = split_superposition_region(
                ch, SplitChainSpec.with_t_equal_v(spec))
            assert split.admissible
            assert _same_vertices(sup.region, split.region)
            js = joint_superposition_region(ch, spec)
            jm = joint_marton_region(ch, spec.to_marton())
            assert js.admissible and jm.admissible
            assert _same_vertices(js.region, jm.region)
            checked += 1


def test_criterion_4_fm_projection_oracle():
    with criterion(4, "Fourier-Motzkin oracle vs closed form, 10 specs"):
        rng = np.random.Generator(np.random.Philox(42))
        checked = 0
        while checked < 10:
            ch, spec = random_separable_pair(rng)
            res = marton_region(ch, spec)
            assert res.admissible
            oracle = fm_projection_oracle(ch, spec, 0.02)
            assert hausdorff(res.region, oracle) <= 0.03, checked
            checked += 1


def test_criterion_5_containment_suite():
    with criterion(5, "containments: joint/individual, gaussian, sweeps"):
        # joint secrecy regions sit inside the matching individual regions
        rng = np.random.Generator(np.random.Philox(501))
        checked = 0
        while checked < 30:
            ch = _degraded_channel(rng, 2, 2)
            spec = random_superposition_spec(rng)
            js = joint_superposition_region(ch, spec)
            ind = superposition_region(ch, spec.collapse_u())
            assert js.admissible and ind.admissible
            if ind.region.max_r1() + ind.region.max_r2() < 1e-3:
                continue
            assert subset(js.region, ind.region, tol=1e-9)
            checked += 1
        for _ in range(10):
            ch, spec = random_separable_pair(rng)
            jm = joint_marton_region(ch, spec)
            mar = marton_region(ch, spec.collapse_u())
            if jm.admissible and mar.admissible:
                assert subset(jm.region, mar.region, tol=1e-9)
        # inner bound inside outer bound for 50 Gaussian configs
        grng = np.random.Generator(np.random.Philox(502))
        for _ in range(50):
            s1 = grng.uniform(0.3, 1.5)
            s2 = s1 * grng.uniform(1.8, 5.0)
            se = grng.uniform(1.05 * s1, 0.95 * s2)
            cfg = GaussianConfig(grng.uniform(0.5, 80.0), s1, s2, se)
            assert subset(inner_bound(cfg, 15), outer_bound(cfg, 15), tol=1e-9)
        # refining a sweep family never shrinks the union
        ch = bsc_broadcast(0.05, 0.1, 0.3)
        srng = np.random.Generator(np.random.Philox(503))
        specs = [random_superposition_spec(srng) for _ in range(40)]
        prev = region_sweep(ch, specs, superposition_region, budget=5)
        for budget in (10, 20, 40):
            cur = region_sweep(ch, specs, superposition_region, budget=budget)
            assert subset(prev, cur, tol=1e-9)
            prev = cur


def test_criterion_6_gaussian_gap():
    with criterion(6, "gaussian gap: zero at gamma=1, <= 2e-3 on the grid"):
        cfg = GaussianConfig(1e6, 1.0, 8.0, 4.0)
        for alpha in np.linspace(0.0, 1.0, 11):
            assert gap(cfg, alpha, 1.0) == 0.0
        assert math.isclose(gap(cfg, 0.1, 0.1), 1.9471028559512097e-04,
                            rel_tol=1e-6)
        grid = np.linspace(0.1, 1.0, 46)
        worst = max(gap(cfg, a, g) for a in grid for g in grid)
        assert worst <= 2e-3
        assert worst > 0.0


def test_criterion_7_one_time_pad_exactness():
    with criterion(7, "one-time pad: zero individual leak, nR joint leak"):
        rng = np.random.Generator(np.random.Philox(701))
        for i in range(20):
            nout = 2 if i % 2 == 0 else 3
            k1 = random_stochastic(rng, (2, nout))
            k2 = random_stochastic(rng, (2, nout))
            kz = random_stochastic(rng, (2, nout))
            ch = DmcChannel.from_marginals(k1, k2, kz)
            for n in range(1, 7):
                code = build_secret_key_code(ch, n, 2, seed=1000 + 7 * i + n)
                leak = exact_leakage(code, ch)
                assert leak.leak1_bits <= LEAK_TOL
                assert leak.leak2_bits <= LEAK_TOL
        # joint leakage equals the pad width on a noiseless channel,
        # provided the random codewords are distinct
        eye = np.eye(4)
        noiseless = DmcChannel.from_marginals(eye, eye, eye)
        for n in range(1, 7):
            code = None
            for seed in range(200):
                cand = build_secret_key_code(noiseless, n, 2, seed=seed)
                if cand.is_injective():
                    code = cand
                    break
            assert code is not None
            leak = exact_leakage(code, noiseless)
            assert abs(leak.joint_bits - 2.0) <= 1e-9
            assert leak.joint_bits > 0.0
            assert leak.leak1_bits <= LEAK_TOL and leak.leak2_bits <= LEAK_TOL


def test_criterion_8_finite_blocklength_trends():
    with criterion(8, "combined-scheme trend over n in {2,4,6,8}, 3 seeds"):
        ch = bsc_broadcast(0.1, 0.1, 0.3)
        for seed in (10, 19, 29):
            rows = trend_experiment("combined", ch, [2, 4, 6, 8], [seed],
                                    lambda n: SplitBits(k=2, s1=2))
            assert not any(r.skipped for r in rows)
            leaks = [r.leak1_per_n for r in rows]
            pe1 = [r.pe1 for r in rows]
            pe2 = [r.pe2 for r in rows]
            for series in (leaks, pe1, pe2):
                assert all(b <= a + LEAK_TOL for a, b in zip(series, series[1:])), (
                    seed, series)


def test_criterion_9_rate_coupling():
    with criterion(9, "missing-corner geometry of the weak-eve region"):
        ch = bsc_broadcast(0.1, 0.2, 0.4)
        px = Pmf(np.array([0.5, 0.5]))
        from bcrsi.markov import channel_joint
        j = channel_joint(ch, px)
        iy1, iz = j.mi("X", "Y1"), j.mi("X", "Z")
        assert iz > 0
        region = weak_eav_capacity(ch, px)
        assert not contains(region, (iy1, 0.0), tol=1e-9)
        assert contains(region, (iy1, iz), tol=1e-9)
