import numpy as np
import pytest

from bcrsi.fm import fm_feasible_raw, fm_projection_oracle, fm_terms
from bcrsi.geometry import contains, hausdorff
from bcrsi.infotools import bsc_broadcast
from bcrsi.markov import (SuperpositionSpec, random_separable_pair,
                          random_superposition_spec)
from bcrsi.regions import marton_region, superposition_region


def test_all_constant_auxiliaries_origin():
    ch = bsc_broadcast(0.1, 0.2, 0.3)
    spec = SuperpositionSpec(np.array([1.0]), np.array([[1.0]]),
                             np.array([[0.5, 0.5]])).to_marton()
    r = fm_projection_oracle(ch, spec, 0.02)
    assert r.max_r1() <= 1e-9 and r.max_r2() <= 1e-9
    assert contains(r, (0.0, 0.0))


def test_collapsed_spec_matches_superposition():
    rng = np.random.Generator(np.random.Philox(41))
    ch = bsc_broadcast(0.05, 0.1, 0.3)
    for _ in range(8):
        spec = random_superposition_spec(rng)
        sup = superposition_region(ch, spec).region
        orc = fm_projection_oracle(ch, spec.to_marton(), 0.02)
        assert hausdorff(sup, orc) <= 0.02 + 1e-9


def test_separable_specs_match_closed_form():
    rng = np.random.Generator(np.random.Philox(42))
    for _ in range(6):
        ch, spec = random_separable_pair(rng)
        res = marton_region(ch, spec)
        assert res.admissible
        orc = fm_projection_oracle(ch, spec, 0.02)
        assert hausdorff(res.region, orc) <= 0.03


def test_rate_split_vector_matches_lp():
    # witness points found by the reduction satisfy every raw constraint
    from bcrsi.fm import RateSplitVector
    rng = np.random.Generator(np.random.Philox(48))
    ch, spec = random_separable_pair(rng)
    t = fm_terms(ch, spec)
    # the reduction's canonical witness for the origin
    witness = RateSplitVector(rr=t.izu, r1r=t.iz1 - min(t.iz1, t.izsum),
                              r1c=min(t.iz1, t.izsum),
                              r2r=t.iz2 - max(0.0, min(t.izsum - t.iz1, t.iz2)),
                              r2c=max(0.0, min(t.izsum - t.iz1, t.iz2)))
    assert witness.satisfies(t)
    assert witness.r1 == 0.0 and witness.r2 == 0.0
    with pytest.raises(ValueError):
        RateSplitVector(rk=-0.1)


def test_raw_lp_agrees_with_closed_form():
    rng = np.random.Generator(np.random.Philox(43))
    ch, spec = random_separable_pair(rng)
    res = marton_region(ch, spec)
    t = fm_terms(ch, spec)
    region = res.region
    # interior points feasible, outside points infeasible
    for frac in (0.25, 0.6, 0.95):
        p = (region.max_r1() * frac, 0.0)
        inside = contains(region, p, tol=0.0)
        if inside:
            assert fm_feasible_raw(t, p[0], p[1])
    assert not fm_feasible_raw(t, region.max_r1() + 0.05, 0.0)
    assert not fm_feasible_raw(t, 0.0, region.max_r2() + 0.05)
    assert fm_feasible_raw(t, 0.0, 0.0)


def test_raw_lp_and_oracle_agree_on_grid():
    rng = np.random.Generator(np.random.Philox(44))
    ch, spec = random_separable_pair(rng)
    orc = fm_projection_oracle(ch, spec, 0.02)
    t = fm_terms(ch, spec)
    rng2 = np.random.Generator(np.random.Philox(45))
    for _ in range(25):
        p = (rng2.uniform(0, orc.max_r1() * 1.3), rng2.uniform(0, orc.max_r2() * 1.3))
        lp = fm_feasible_raw(t, *p)
        hull_says = contains(orc, p, tol=1e-9)
        # allow disagreement only within two grid steps of the boundary
        if lp != hull_says:
            from bcrsi.geometry import point_region_distance
            assert point_region_distance(p, orc) <= 0.04


def test_inadmissible_spec_empty():
    # packing condition violated: correlated satellites, Z cannot separate
    rng = np.random.Generator(np.random.Philox(46))
    ch = bsc_broadcast(0.05, 0.1, 0.3)
    from bcrsi.markov import random_marton_spec
    for _ in range(10):
        spec = random_marton_spec(rng, product_satellites=False)
        res = marton_region(ch, spec)
        if not res.admissible and "I(V1;V2|V0)" in res.reason:
            assert fm_projection_oracle(ch, spec, 0.02).is_empty
            return
    pytest.skip("no packing-violating spec sampled")


def test_step_validation():
    ch = bsc_broadcast(0.1, 0.2, 0.3)
    spec = random_superposition_spec(np.random.Generator(np.random.Philox(1))).to_marton()
    with pytest.raises(ValueError):
        fm_projection_oracle(ch, spec, 0.0)


def test_oracle_refines_with_step():
    rng = np.random.Generator(np.random.Philox(47))
    ch, spec = random_separable_pair(rng)
    coarse = fm_projection_oracle(ch, spec, 0.1)
    fine = fm_projection_oracle(ch, spec, 0.02)
    res = marton_region(ch, spec).region
    assert hausdorff(res, fine) <= hausdorff(res, coarse) + 1e-9
