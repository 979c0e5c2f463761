"""Closed-form achievable and capacity regions for the BC-RSI model.

Each operation evaluates one per-distribution formula; unions over
auxiliary distributions are approximated by ``region_sweep`` with seeded
spec families (exactness is only claimed per spec).  Operations whose
formula carries admissibility side conditions return a RegionResult so an
inadmissible spec is a tagged value, not an exception.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import geometry
from .geometry import RateRegion, contains, hull_region, subset
from .infotools import DmcChannel, Pmf
from .markov import (MartonSpec, MixedSpec, SplitChainSpec,
                     SuperpositionSpec, channel_joint)

ADM_TOL = 1e-9


@dataclass
class RegionResult:
    """Region plus admissibility verdict for formulas with side conditions."""

    admissible: bool
    region: RateRegion
    reason: str = ""

    def require(self) -> RateRegion:
        if not self.admissible:
            raise ValueError(f"inadmissible spec: {self.reason}")
        return self.region


def _rectangle(x0: float, x1: float, y0: float, y1: float) -> RateRegion:
    """Axis-aligned rectangle as an explicit CCW vertex list."""
    if x1 < x0 or y1 < y0:
        return RateRegion([])
    corners = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    out = []
    for c in corners:
        if not any(abs(c[0] - o[0]) <= 1e-15 and abs(c[1] - o[1]) <= 1e-15
                   for o in out):
            out.append(c)
    return RateRegion(out)


def coupled_region(a1: float, b1: float, a2: float, b2: float) -> RateRegion:
    """Pairs with R1 <= min(a1, b1 + R2) and R2 <= min(a2, b2 + R1).

    The shape shared by the deterministic, weak-eavesdropper and
    superposition formulas: a box with corners cut by the two coupling
    half-planes.  Degenerate inputs give a segment, point or empty region.
    """
    cons = [
        (1.0, 0.0, a1),
        (1.0, -1.0, b1),
        (0.0, 1.0, a2),
        (-1.0, 1.0, b2),
        (-1.0, 0.0, 0.0),
        (0.0, -1.0, 0.0),
    ]
    return geometry.intersect_halfplanes(cons)


def secret_key_region(ch: DmcChannel, px) -> RateRegion:
    """Equal-rate segment reachable by sending the XOR of the messages."""
    j = channel_joint(ch, px)
    m = min(j.mi("X", "Y1"), j.mi("X", "Y2"))
    if m <= 0.0:
        return RateRegion([(0.0, 0.0)])
    return RateRegion([(0.0, 0.0), (m, m)])


def combined_region(ch: DmcChannel, px) -> RegionResult:
    """Rectangle [I(X;Z), I(X;Y1)] x [I(X;Z), I(X;Y2)].

    Requires I(X;Z) <= min(I(X;Y1), I(X;Y2)); pad rates below I(X;Z) are
    not covered by this construction.
    """
    j = channel_joint(ch, px)
    iy1, iy2, iz = j.mi("X", "Y1"), j.mi("X", "Y2"), j.mi("X", "Z")
    if iz > min(iy1, iy2) + ADM_TOL:
        return RegionResult(False, RateRegion([]),
                            f"I(X;Z)={iz:.6g} exceeds min(I(X;Y1), I(X;Y2))={min(iy1, iy2):.6g}")
    return RegionResult(True, _rectangle(iz, iy1, iz, iy2))


def weak_eav_capacity(ch: DmcChannel, px) -> RateRegion:
    """Capacity shape when the eavesdropper is degraded w.r.t. both receivers."""
    j = channel_joint(ch, px)
    iy1, iy2, iz = j.mi("X", "Y1"), j.mi("X", "Y2"), j.mi("X", "Z")
    return coupled_region(iy1, iy1 - iz, iy2, iy2 - iz)


def superposition_region(ch: DmcChannel, spec: SuperpositionSpec) -> RegionResult:
    """Cloud/satellite region; a singleton output alphabet marks an
    absent receiver, whose decoding condition is waived (its rate is
    already pinned to 0 by the formula)."""
    j = spec.joint(ch)
    izu = j.mi("V", "Z", given="U")
    for y, size in (("Y1", ch.y1_size), ("Y2", ch.y2_size)):
        if size <= 1:
            continue
        iyu = j.mi("V", y, given="U")
        if iyu < izu - ADM_TOL:
            return RegionResult(False, RateRegion([]),
                                f"I(V;{y}|U)={iyu:.6g} < I(V;Z|U)={izu:.6g}")
    a1, a2 = j.mi("V", "Y1"), j.mi("V", "Y2")
    b1 = j.mi("V", "Y1", given="U") - izu
    b2 = j.mi("V", "Y2", given="U") - izu
    return RegionResult(True, coupled_region(a1, b1, a2, b2))


def marton_region(ch: DmcChannel, spec: MartonSpec) -> RegionResult:
    """Two-satellite region; the min-coupling is resolved into half-planes.

    R_i <= B_i + min(R_j, cap_i) becomes R_i - R_j <= B_i and
    R_i <= B_i + cap_i, with B_i the conditional secrecy gradient and
    cap_i the one-time-pad budget of the cloud plus shared satellite.
    """
    j = spec.joint(ch)
    iz1 = j.mi("V1", "Z", given="V0")
    iz2 = j.mi("V2", "Z", given="V0")
    izsum = iz1 + iz2 - j.mi("V1,V2", "Z", given="V0")
    ivv = j.mi("V1", "V2", given="V0")
    if ivv > izsum + ADM_TOL:
        return RegionResult(False, RateRegion([]),
                            f"I(V1;V2|V0)={ivv:.6g} > I(V1;Z|V0)+I(V2;Z|V0)-I(V1,V2;Z|V0)={izsum:.6g}")
    for i, y, izi in ((1, "Y1", iz1), (2, "Y2", iz2)):
        iyi = j.mi(f"V{i}", y, given="V0")
        if iyi < izi - ADM_TOL:
            return RegionResult(False, RateRegion([]),
                                f"I(V{i};{y}|V0)={iyi:.6g} < I(V{i};Z|V0)={izi:.6g}")
        iyu = j.mi(f"V0,V{i}", y, given="U")
        izu = j.mi(f"V0,V{i}", "Z", given="U")
        if iyu < izu - ADM_TOL:
            return RegionResult(False, RateRegion([]),
                                f"I(V0,V{i};{y}|U)={iyu:.6g} < I(V0,V{i};Z|U)={izu:.6g}")
    b1 = j.mi("V0,V1", "Y1", given="U") - j.mi("V0,V1", "Z", given="U")
    b2 = j.mi("V0,V2", "Y2", given="U") - j.mi("V0,V2", "Z", given="U")
    cap1 = j.mi("U", "Y1") + j.mi("V0", "Z", given="U")
    cap2 = j.mi("U", "Y2") + j.mi("V0", "Z", given="U")
    cons = [
        (1.0, -1.0, b1),
        (1.0, 0.0, b1 + cap1),
        (-1.0, 1.0, b2),
        (0.0, 1.0, b2 + cap2),
        (-1.0, 0.0, 0.0),
        (0.0, -1.0, 0.0),
    ]
    return RegionResult(True, geometry.intersect_halfplanes(cons))


def mixed_case_region(ch: DmcChannel, spec: MixedSpec) -> RateRegion:
    """Region for an eavesdropper less noisy than receiver 2.

    The less-noisy ordering cannot be machine-verified over all auxiliary
    distributions; the caller asserts it.
    """
    j = spec.joint(ch)
    b = j.mi("V1", "Y1", given="U") - j.mi("V1", "Z", given="U")
    c2 = j.mi("U", "Y2")
    cons = [
        (1.0, -1.0, b),
        (0.0, 1.0, c2),
        (-1.0, 1.0, 0.0),
        (-1.0, 0.0, 0.0),
        (0.0, -1.0, 0.0),
    ]
    return geometry.intersect_halfplanes(cons)


def joint_superposition_region(ch: DmcChannel, spec: SuperpositionSpec) -> RegionResult:
    """Joint-secrecy rectangle by plain wiretap coding on V."""
    j = spec.joint(ch)
    iz = j.mi("V", "Z")
    for y in ("Y1", "Y2"):
        iy = j.mi("V", y)
        if iy < iz - ADM_TOL:
            return RegionResult(False, RateRegion([]),
                                f"I(V;{y})={iy:.6g} < I(V;Z)={iz:.6g}")
    c1 = max(j.mi("V", "Y1") - iz, 0.0)
    c2 = max(j.mi("V", "Y2") - iz, 0.0)
    return RegionResult(True, _rectangle(0.0, c1, 0.0, c2))


def joint_marton_region(ch: DmcChannel, spec: MartonSpec) -> RegionResult:
    """Joint-secrecy pentagon with a sum-rate constraint."""
    j = spec.joint(ch)
    iz1 = j.mi("V1", "Z", given="V0")
    iz2 = j.mi("V2", "Z", given="V0")
    ivv = j.mi("V1", "V2", given="V0")
    izj = j.mi("V1,V2", "Z", given="V0")
    if izj > iz1 + iz2 - ivv + ADM_TOL:
        return RegionResult(False, RateRegion([]),
                            f"I(V1,V2;Z|V0)={izj:.6g} > I(V1;Z|V0)+I(V2;Z|V0)-I(V1;V2|V0)={iz1 + iz2 - ivv:.6g}")
    for i, y, izi in ((1, "Y1", iz1), (2, "Y2", iz2)):
        iyi = j.mi(f"V{i}", y, given="V0")
        if izi > iyi + ADM_TOL:
            return RegionResult(False, RateRegion([]),
                                f"I(V{i};Z|V0)={izi:.6g} > I(V{i};{y}|V0)={iyi:.6g}")
    b1 = j.mi("V0,V1", "Y1", given="Q") - j.mi("V0,V1", "Z", given="Q")
    b2 = j.mi("V0,V2", "Y2", given="Q") - j.mi("V0,V2", "Z", given="Q")
    ssum = (j.mi("V0,V1", "Y1", given="Q") + j.mi("V0,V2", "Y2", given="Q")
            - 2.0 * j.mi("V0", "Z", given="Q") - j.mi("V1", "V2", given="V0,Q"))
    cons = [
        (1.0, 0.0, b1),
        (0.0, 1.0, b2),
        (1.0, 1.0, ssum),
        (-1.0, 0.0, 0.0),
        (0.0, -1.0, 0.0),
    ]
    return RegionResult(True, geometry.intersect_halfplanes(cons))


def deterministic_z_region(ch: DmcChannel, px) -> RateRegion:
    """Capacity region when Z is a deterministic function of X."""
    wz = ch.marginal("z")
    if not np.all(np.abs(wz - np.round(wz)) <= 1e-9):
        raise ValueError("eavesdropper channel is not deterministic")
    j = channel_joint(ch, px)
    a1, a2 = j.mi("X", "Y1"), j.mi("X", "Y2")
    b1 = j.mi("X", "Y1", given="Z")
    b2 = j.mi("X", "Y2", given="Z")
    return coupled_region(a1, b1, a2, b2)


def split_superposition_region(ch: DmcChannel, spec: SplitChainSpec) -> RegionResult:
    """Region for the extra secrecy layer T on top of U -> V."""
    j = spec.joint(ch)
    izv = j.mi("T", "Z", given="V")
    izu = j.mi("T", "Z", given="U")
    for y in ("Y1", "Y2"):
        if j.mi("T", y, given="V") < izv - ADM_TOL:
            return RegionResult(False, RateRegion([]),
                                f"I(T;{y}|V) < I(T;Z|V)")
        if j.mi("T", y, given="U") < izu - ADM_TOL:
            return RegionResult(False, RateRegion([]),
                                f"I(T;{y}|U) < I(T;Z|U)")
    a1 = j.mi("T", "Y1") - izv
    a2 = j.mi("T", "Y2") - izv
    b1 = j.mi("T", "Y1", given="U") - izu
    b2 = j.mi("T", "Y2", given="U") - izu
    return RegionResult(True, coupled_region(a1, b1, a2, b2))


def outer_bound_shared_key(ch: DmcChannel, r2: float, sweep=None, *,
                           degraded_grid: int = 0, receiver: int = 1) -> float:
    """Best provable cap on R1 given the partner rate acts as a shared key.

    With ``sweep`` (iterable of SuperpositionSpec) the bound is the max of
    min(I(V;Y|U) - I(V;Z|U) + r2, I(V;Y)) over the swept specs.  With
    ``degraded_grid`` > 0 the shortcut max over an input grid of
    min(I(X;Y) - I(X;Z) + r2, I(X;Y)) is used instead.
    """
    if r2 < 0:
        raise ValueError("r2 must be non-negative")
    y = "Y1" if receiver == 1 else "Y2"
    best = 0.0
    if degraded_grid:
        if ch.x_size != 2:
            raise ValueError("degraded grid sweep implemented for binary inputs")
        for p in np.linspace(0.0, 1.0, degraded_grid):
            j = channel_joint(ch, Pmf(np.array([p, 1.0 - p])))
            best = max(best, min(j.mi("X", y) - j.mi("X", "Z") + r2, j.mi("X", y)))
        return best
    if sweep is None:
        raise ValueError("either a spec sweep or degraded_grid is required")
    for spec in sweep:
        j = spec.joint(ch)
        bound = min(j.mi("V", y, given="U") - j.mi("V", "Z", given="U") + r2,
                    j.mi("V", y))
        best = max(best, bound)
    return best


def region_sweep(ch: DmcChannel, specs, region_fn, budget: int | None = None) -> RateRegion:
    """Convex hull of per-spec regions over a sampled family.

    Time sharing justifies the hull.  Inadmissible specs are skipped; the
    origin is always achievable.
    """
    points = [(0.0, 0.0)]
    for count, spec in enumerate(specs):
        if budget is not None and count >= budget:
            break
        res = region_fn(ch, spec)
        if isinstance(res, RegionResult):
            if not res.admissible:
                continue
            res = res.region
        points.extend(res.vertices)
    return hull_region(points)


__all__ = [
    "RegionResult", "coupled_region", "secret_key_region", "combined_region",
    "weak_eav_capacity", "superposition_region", "marton_region",
    "mixed_case_region", "joint_superposition_region", "joint_marton_region",
    "deterministic_z_region", "split_superposition_region",
    "outer_bound_shared_key", "region_sweep",
    "contains", "subset", "hull_region", "RateRegion",
]
