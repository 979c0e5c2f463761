"""Numeric projection oracle for the two-satellite rate-split system.

The closed-form region in :func:`bcrsi.regions.marton_region` comes from
eliminating eleven split rates from a linear constraint system.  This
module projects that raw system numerically instead, as an independent
check on the elimination algebra: it enumerates split-rate tuples on a
grid, keeps the ones satisfying every raw constraint, projects them to
(R1, R2) and returns the convex hull.

The eleven split rates are

    Rk, Rsk, R1ss, R1sm, R2ss, R2sm, Rr, R1r, R1c, R2r, R2c  >= 0

with R1 = Rk + Rsk + R1ss + R1sm and R2 = Rk + Rsk + R2ss + R2sm, subject
to (writing the mutual-information constants as in FmTerms):

    R1c + R2c            >  ivv          (strict; enumerated as >= in the
                                          closure, achievability holds there)
    R1  + Rr + R1r + R1c <= iy1
    R1 - Rk + Rr + R1r + R1c <= iy1u
    R1sm + R1r + R1c     <= iy1v0
    R2  + Rr + R2r + R2c <= iy2
    R2 - Rk + Rr + R2r + R2c <= iy2u
    R2sm + R2r + R2c     <= iy2v0
    Rsk + Rr             >= izu
    R1r + R1c            >= iz1
    R2r + R2c            >= iz2
    R1c + R2c            <= izsum

Seven of the eleven coordinates have exact dominance-optimal values, which
lets the enumeration run over a 2-D grid without changing the projection:

* Rr enters only upper-bound rows (plus Rsk + Rr >= izu), so the minimal
  choice Rr = max(0, izu - Rsk) dominates.
* R1r + R1c enters only upper-bound rows above its floor iz1, so the floor
  dominates; same for side 2.  The cover indices R1c, R2c then only need
  R1c + R2c in [ivv, izsum] with R1c <= iz1, R2c <= iz2, which is
  satisfiable iff ivv <= izsum because izsum <= iz1 + iz2.
* R1ss is unconstrained above, so R1sm = 0 dominates (its only upper bound
  beyond the shared ones is iy1v0, which then reduces to iz1 <= iy1v0, an
  admissibility fact); same for side 2.
* Rsk above izu acts exactly like adding the same amount to both R1ss and
  R2ss, so Rsk <= izu suffices.

What remains is a grid over (Rk, Rsk); for each cell the feasible
(R1, R2) form a rectangle whose corners are emitted exactly.  The raw
system is also kept verbatim in :func:`fm_feasible_raw` (an LP feasibility
check with no manual algebra at all) so tests can cross-validate the
reduction itself.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import RateRegion, hull_region
from .infotools import DmcChannel
from .markov import MartonSpec


@dataclass(frozen=True)
class RateSplitVector:
    """One point of the raw rate-split system (all components >= 0)."""

    rk: float = 0.0
    rsk: float = 0.0
    r1ss: float = 0.0
    r1sm: float = 0.0
    r2ss: float = 0.0
    r2sm: float = 0.0
    rr: float = 0.0
    r1r: float = 0.0
    r1c: float = 0.0
    r2r: float = 0.0
    r2c: float = 0.0

    def __post_init__(self):
        for name, v in self.__dict__.items():
            if v < 0:
                raise ValueError(f"{name} must be non-negative")

    @property
    def r1(self) -> float:
        return self.rk + self.rsk + self.r1ss + self.r1sm

    @property
    def r2(self) -> float:
        return self.rk + self.rsk + self.r2ss + self.r2sm

    def satisfies(self, t: "FmTerms", tol: float = 1e-9) -> bool:
        """Check every raw constraint (cover-index strictness as closure)."""
        return (self.r1c + self.r2c >= t.ivv - tol
                and self.r1 + self.rr + self.r1r + self.r1c <= t.iy1 + tol
                and self.r1 - self.rk + self.rr + self.r1r + self.r1c <= t.iy1u + tol
                and self.r1sm + self.r1r + self.r1c <= t.iy1v0 + tol
                and self.r2 + self.rr + self.r2r + self.r2c <= t.iy2 + tol
                and self.r2 - self.rk + self.rr + self.r2r + self.r2c <= t.iy2u + tol
                and self.r2sm + self.r2r + self.r2c <= t.iy2v0 + tol
                and self.rsk + self.rr >= t.izu - tol
                and self.r1r + self.r1c >= t.iz1 - tol
                and self.r2r + self.r2c >= t.iz2 - tol
                and self.r1c + self.r2c <= t.izsum + tol)


@dataclass(frozen=True)
class FmTerms:
    """Mutual-information constants of the raw rate-split system."""

    iy1: float
    iy1u: float
    iy1v0: float
    iy2: float
    iy2u: float
    iy2v0: float
    izu: float
    iz1: float
    iz2: float
    izjoint: float
    ivv: float

    @property
    def izsum(self) -> float:
        return self.iz1 + self.iz2 - self.izjoint


def fm_terms(ch: DmcChannel, spec: MartonSpec) -> FmTerms:
    j = spec.joint(ch)
    return FmTerms(
        iy1=j.mi("V0,V1", "Y1"),
        iy1u=j.mi("V0,V1", "Y1", given="U"),
        iy1v0=j.mi("V1", "Y1", given="V0"),
        iy2=j.mi("V0,V2", "Y2"),
        iy2u=j.mi("V0,V2", "Y2", given="U"),
        iy2v0=j.mi("V2", "Y2", given="V0"),
        izu=j.mi("V0", "Z", given="U"),
        iz1=j.mi("V1", "Z", given="V0"),
        iz2=j.mi("V2", "Z", given="V0"),
        izjoint=j.mi("V1,V2", "Z", given="V0"),
        ivv=j.mi("V1", "V2", given="V0"),
    )


def _grid(stop: float, step: float) -> np.ndarray:
    if stop <= 0.0:
        return np.array([0.0])
    vals = np.arange(0.0, stop, step)
    return np.append(vals, stop)


def fm_projection_oracle(ch: DmcChannel, spec: MartonSpec, step: float = 0.02) -> RateRegion:
    """Hull of grid-feasible projections of the raw rate-split system."""
    if step <= 0:
        raise ValueError("step must be positive")
    t = fm_terms(ch, spec)
    eps = 1e-9
    # cover-index and per-satellite floors must fit below their ceilings
    if t.ivv > t.izsum + eps or t.iz1 > t.iy1v0 + eps or t.iz2 > t.iy2v0 + eps:
        return RateRegion([])
    cap1 = t.iy1 - t.iz1          # R1 + Rr ceiling after fixing R1r + R1c = iz1
    cap2 = t.iy2 - t.iz2
    if cap1 < -eps or cap2 < -eps:
        return RateRegion([])
    pts = []
    kmax = max(0.0, min(cap1, cap2))
    for s in _grid(t.izu, step):
        rr = max(0.0, t.izu - s)
        for k in _grid(kmax, step):
            lo = k + s
            hi1 = min(cap1 - rr, t.iy1u - t.iz1 + k - rr)
            hi2 = min(cap2 - rr, t.iy2u - t.iz2 + k - rr)
            if hi1 < lo - eps or hi2 < lo - eps:
                continue
            hi1, hi2 = max(hi1, lo), max(hi2, lo)
            pts.extend([(lo, lo), (hi1, lo), (lo, hi2), (hi1, hi2)])
    if not pts:
        return RateRegion([])
    return hull_region(pts)


# raw constraint system, kept free of any manual elimination -----------------

_VARS = ("Rk", "Rsk", "R1ss", "R1sm", "R2ss", "R2sm",
         "Rr", "R1r", "R1c", "R2r", "R2c")


def _row(**coef):
    v = np.zeros(len(_VARS))
    for name, c in coef.items():
        v[_VARS.index(name)] = c
    return v


def fm_feasible_raw(terms: FmTerms, r1: float, r2: float) -> bool:
    """LP feasibility of the verbatim constraint system at fixed (R1, R2).

    Used by tests as a zero-algebra cross-check of both the closed form
    and the reduced enumeration.  The strict cover-index constraint is
    relaxed to its closure.
    """
    from scipy.optimize import linprog

    a_eq = np.array([
        _row(Rk=1, Rsk=1, R1ss=1, R1sm=1),
        _row(Rk=1, Rsk=1, R2ss=1, R2sm=1),
    ])
    b_eq = np.array([r1, r2])
    rows, rhs = [], []

    def le(bound, **coef):
        rows.append(_row(**coef))
        rhs.append(bound)

    def ge(bound, **coef):
        rows.append(-_row(**coef))
        rhs.append(-bound)

    ge(terms.ivv, R1c=1, R2c=1)
    le(terms.iy1, Rk=1, Rsk=1, R1ss=1, R1sm=1, Rr=1, R1r=1, R1c=1)
    le(terms.iy1u, Rsk=1, R1ss=1, R1sm=1, Rr=1, R1r=1, R1c=1)
    le(terms.iy1v0, R1sm=1, R1r=1, R1c=1)
    le(terms.iy2, Rk=1, Rsk=1, R2ss=1, R2sm=1, Rr=1, R2r=1, R2c=1)
    le(terms.iy2u, Rsk=1, R2ss=1, R2sm=1, Rr=1, R2r=1, R2c=1)
    le(terms.iy2v0, R2sm=1, R2r=1, R2c=1)
    ge(terms.izu, Rsk=1, Rr=1)
    ge(terms.iz1, R1r=1, R1c=1)
    ge(terms.iz2, R2r=1, R2c=1)
    le(terms.izsum, R1c=1, R2c=1)

    res = linprog(np.zeros(len(_VARS)), A_ub=np.array(rows), b_ub=np.array(rhs),
                  A_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * len(_VARS),
                  method="highs")
    return res.status == 0
