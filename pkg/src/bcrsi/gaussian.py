"""Closed-form bounds for the Gaussian broadcast model with side information.

Receivers see X plus independent Gaussian noise of variance s1sq, s2sq;
the eavesdropper sees noise variance sesq.  Receiver 1 is the stronger
one by convention (s1sq <= s2sq).  All rates in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import RateRegion, hausdorff, hull_region
from .regions import coupled_region

HIGH_SNR_FACTOR = 1e5     # exact-capacity annotation: P >= 1e5 * s2sq
LOW_SNR_FACTOR = 1e-5     # or P <= 1e-5 * s1sq


@dataclass(frozen=True)
class GaussianConfig:
    p: float
    s1sq: float
    s2sq: float
    sesq: float

    def __post_init__(self):
        if self.p < 0:
            raise ValueError("transmit power must be non-negative")
        for v in (self.s1sq, self.s2sq, self.sesq):
            if v <= 0:
                raise ValueError("noise variances must be positive")

    def swapped(self) -> "GaussianConfig":
        return GaussianConfig(self.p, self.s2sq, self.s1sq, self.sesq)


@dataclass(frozen=True)
class GaussianParams:
    """Sweep parameters; beta appears only in the converse bookkeeping."""

    alpha: float
    gamma: float
    beta: float | None = None

    def __post_init__(self):
        for v in (self.alpha, self.gamma):
            if not 0.0 <= v <= 1.0:
                raise ValueError("alpha and gamma must lie in [0, 1]")
        if self.beta is not None:
            if not 0.0 <= self.beta <= 1.0:
                raise ValueError("beta must lie in [0, 1]")
            if self.gamma * self.alpha > self.beta + 1e-12:
                raise ValueError("gamma * alpha must not exceed beta")


def cap(x: float) -> float:
    """Gaussian capacity function 0.5 * log2(1 + x)."""
    if x < 0:
        raise ValueError("cap() needs a non-negative SNR")
    return 0.5 * math.log2(1.0 + x)


def scenario(cfg: GaussianConfig, swap: bool = False) -> str:
    """Variance-ordering tag; ties go to the weaker-eavesdropper branch."""
    if cfg.s1sq > cfg.s2sq:
        if not swap:
            raise ValueError("receiver 1 must be the stronger one; pass swap=True")
        return scenario(cfg.swapped())
    if cfg.sesq >= cfg.s2sq:
        return "eve_weakest"
    if cfg.sesq >= cfg.s1sq:
        return "mixed"
    return "eve_strongest"


def _mixed_slice(c1, c2, equal_rate_floor=True):
    # parallelogram  R2 <= c2,  R2 <= R1 <= c1 + R2  (floor dropped for the
    # capacity display, which is stated without the R2 <= R1 face)
    if equal_rate_floor:
        return [(0.0, 0.0), (c1, 0.0), (c1 + c2, c2), (c2, c2)]
    return [(0.0, 0.0), (c1, 0.0), (c1 + c2, c2), (0.0, c2)]


def outer_bound(cfg: GaussianConfig, samples: int = 200) -> RateRegion:
    """Converse sweep over (alpha, gamma); hull of the per-point slices."""
    if scenario(cfg) != "mixed":
        raise ValueError("outer bound sweep applies to the mixed ordering only")
    pts = []
    for alpha in np.linspace(0.0, 1.0, samples):
        ap = alpha * cfg.p
        c1 = cap(ap / cfg.s1sq) - cap(ap / cfg.sesq)
        for gamma in np.linspace(0.0, 1.0, samples):
            ga = gamma * alpha
            c2 = cap((1.0 - ga) * cfg.p / (ga * cfg.p + cfg.s2sq))
            pts.extend(_mixed_slice(c1, c2))
    return hull_region(pts)


def inner_bound(cfg: GaussianConfig, samples: int = 200) -> RateRegion:
    """Achievable sweep; the private layer carries gamma*alpha of the power."""
    if scenario(cfg) != "mixed":
        raise ValueError("inner bound sweep applies to the mixed ordering only")
    pts = []
    for alpha in np.linspace(0.0, 1.0, samples):
        for gamma in np.linspace(0.0, 1.0, samples):
            ga = gamma * alpha
            c1 = cap(ga * cfg.p / cfg.s1sq) - cap(ga * cfg.p / cfg.sesq)
            c2 = cap((1.0 - ga) * cfg.p / (ga * cfg.p + cfg.s2sq))
            pts.extend(_mixed_slice(c1, c2))
    return hull_region(pts)


def gap(cfg: GaussianConfig, alpha: float, gamma: float) -> float:
    """Pointwise R1 gap between the converse and achievable sweeps, in bits.

    Zero at gamma = 1 and vanishing when P >> sesq or P << s1sq at fixed
    (alpha, gamma); for alpha shrinking like 1/P the pointwise gap does
    not vanish, so claims are made only for (alpha, gamma) bounded away
    from zero.
    """
    ap = alpha * cfg.p
    gap_ = cfg.p * gamma * alpha
    num = (ap + cfg.s1sq) * (gap_ + cfg.sesq)
    den = (ap + cfg.sesq) * (gap_ + cfg.s1sq)
    return 0.5 * math.log2(num / den)


@dataclass
class GaussianCapacity:
    """Capacity region when known exactly; inner/outer pair otherwise."""

    regime: str
    exact: bool
    region: RateRegion | None = None
    inner: RateRegion | None = None
    outer: RateRegion | None = None
    bound_gap_bits: float | None = None


def capacity_region(cfg: GaussianConfig, samples: int = 200) -> GaussianCapacity:
    tag = scenario(cfg)
    if tag == "eve_strongest":
        c = cap(cfg.p / cfg.s2sq)
        seg = RateRegion([(0.0, 0.0), (c, c)]) if c > 0 else RateRegion([(0.0, 0.0)])
        return GaussianCapacity(tag, True, region=seg)
    if tag == "eve_weakest":
        c1, c2 = cap(cfg.p / cfg.s1sq), cap(cfg.p / cfg.s2sq)
        ce = cap(cfg.p / cfg.sesq)
        return GaussianCapacity(tag, True,
                                region=coupled_region(c1, c1 - ce, c2, c2 - ce))
    exact = cfg.p >= HIGH_SNR_FACTOR * cfg.s2sq or cfg.p <= LOW_SNR_FACTOR * cfg.s1sq
    if exact:
        pts = []
        for gamma in np.linspace(0.0, 1.0, samples):
            gp = gamma * cfg.p
            c1 = cap(gp / cfg.s1sq) - cap(gp / cfg.sesq)
            c2 = cap((1.0 - gamma) * cfg.p / (gp + cfg.s2sq))
            pts.extend(_mixed_slice(c1, c2, equal_rate_floor=False))
        return GaussianCapacity(tag, True, region=hull_region(pts))
    inner = inner_bound(cfg, samples)
    outer = outer_bound(cfg, samples)
    return GaussianCapacity(tag, False, inner=inner, outer=outer,
                            bound_gap_bits=hausdorff(inner, outer))
