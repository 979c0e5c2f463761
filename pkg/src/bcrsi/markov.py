"""Auxiliary-variable chains feeding the broadcast channel.

The rate-region formulas are all evaluated on joint distributions of the
form  auxiliaries -> X -> (Y1, Y2, Z).  Each spec class stores the factor
kernels of one chain (so the factorization holds by construction), builds
the full labeled joint against a channel, and the LabeledJoint wrapper
turns names like ``"V0,V1"`` into mutual-information terms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .infotools import DmcChannel, Pmf, PmfError, conditional_mi, mutual_information

FACTOR_TOL = 1e-9


def _check_kernel(mat, name):
    arr = np.asarray(mat, dtype=float)
    if arr.min() < -FACTOR_TOL:
        raise PmfError(f"{name} has a negative entry")
    sums = arr.reshape(-1, arr.shape[-1]).sum(axis=1)
    if np.abs(sums - 1.0).max() > FACTOR_TOL:
        raise PmfError(f"{name} rows must sum to 1")
    return np.clip(arr, 0.0, None) / sums.reshape(arr.shape[:-1] + (1,))


class LabeledJoint:
    """Joint pmf with named axes and I(.;.|.) helpers."""

    def __init__(self, pmf: Pmf):
        if not pmf.labels:
            raise ValueError("LabeledJoint needs a labeled Pmf")
        self.pmf = pmf

    def _axes(self, names: str) -> tuple[int, ...]:
        if not names:
            return ()
        parts = [p.strip() for p in names.replace(",", " ").split()]
        return tuple(self.pmf.axis_of(p) for p in parts)

    def mi(self, a: str, b: str, given: str = "") -> float:
        ga, gb, gc = self._axes(a), self._axes(b), self._axes(given)
        if gc:
            return conditional_mi(self.pmf, ga, gb, gc)
        return mutual_information(self.pmf, ga, gb)


def channel_joint(ch: DmcChannel, px) -> LabeledJoint:
    return LabeledJoint(ch.joint_with_input(px))


@dataclass(frozen=True)
class SuperpositionSpec:
    """Chain U -> V -> X given by p(u), p(v|u), p(x|v)."""

    p_u: np.ndarray
    p_v_u: np.ndarray
    p_x_v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p_u", _check_kernel(np.asarray(self.p_u, float)[None, :], "p(u)")[0])
        object.__setattr__(self, "p_v_u", _check_kernel(self.p_v_u, "p(v|u)"))
        object.__setattr__(self, "p_x_v", _check_kernel(self.p_x_v, "p(x|v)"))

    def joint(self, ch: DmcChannel) -> LabeledJoint:
        j = np.einsum("u,uv,vx,xijk->uvxijk", self.p_u, self.p_v_u, self.p_x_v,
                      ch.transition)
        return LabeledJoint(Pmf(j, labels=("U", "V", "X", "Y1", "Y2", "Z")))

    def to_marton(self) -> "MartonSpec":
        """Equivalent spec with V0 = V1 = V2 = V."""
        nv = self.p_v_u.shape[1]
        eye = np.eye(nv)
        sat = np.einsum("oa,ob->oab", eye, eye)      # p(v1,v2|v0) = delta
        p_x = np.broadcast_to(self.p_x_v[:, None, :], (nv, nv, self.p_x_v.shape[1]))
        return MartonSpec(p_u_q=self.p_u[None, :], p_v0_u=self.p_v_u,
                          p_sat=sat, p_x=np.ascontiguousarray(p_x))

    def collapse_u(self) -> "SuperpositionSpec":
        """Same V -> X chain with the cloud variable made trivial."""
        pv = self.p_u @ self.p_v_u
        return SuperpositionSpec(np.ones(1), pv[None, :], self.p_x_v)


@dataclass(frozen=True)
class MartonSpec:
    """Chain Q -> U -> V0 -> (V1, V2) -> X.

    Factors: p(q), p(u|q), p(v0|u), p(v1,v2|v0), p(x|v1,v2).  Q defaults
    to a singleton (no time sharing).
    """

    p_u_q: np.ndarray
    p_v0_u: np.ndarray
    p_sat: np.ndarray
    p_x: np.ndarray
    p_q: np.ndarray | None = None

    def __post_init__(self):
        pq = np.ones(1) if self.p_q is None else np.asarray(self.p_q, float)
        object.__setattr__(self, "p_q", _check_kernel(pq[None, :], "p(q)")[0])
        object.__setattr__(self, "p_u_q", _check_kernel(self.p_u_q, "p(u|q)"))
        object.__setattr__(self, "p_v0_u", _check_kernel(self.p_v0_u, "p(v0|u)"))
        sat = np.asarray(self.p_sat, float)
        nv0, nv1, nv2 = sat.shape
        flat = _check_kernel(sat.reshape(nv0, nv1 * nv2), "p(v1,v2|v0)")
        object.__setattr__(self, "p_sat", flat.reshape(nv0, nv1, nv2))
        px = np.asarray(self.p_x, float)
        nx = px.shape[-1]
        flat = _check_kernel(px.reshape(nv1 * nv2, nx), "p(x|v1,v2)")
        object.__setattr__(self, "p_x", flat.reshape(nv1, nv2, nx))

    def joint(self, ch: DmcChannel) -> LabeledJoint:
        j = np.einsum("q,qu,uo,oab,abx,xijk->quoabxijk",
                      self.p_q, self.p_u_q, self.p_v0_u, self.p_sat, self.p_x,
                      ch.transition)
        return LabeledJoint(Pmf(j, labels=("Q", "U", "V0", "V1", "V2", "X",
                                           "Y1", "Y2", "Z")))

    def collapse_u(self) -> "MartonSpec":
        """Same satellite structure with trivial Q and U."""
        pv0 = self.p_q @ self.p_u_q @ self.p_v0_u
        return MartonSpec(p_u_q=np.ones((1, 1)), p_v0_u=pv0[None, :],
                          p_sat=self.p_sat, p_x=self.p_x)


@dataclass(frozen=True)
class MixedSpec:
    """Chain U -> V1 with X drawn from p(x|u, v1); V0 = V2 = U implicitly."""

    p_u: np.ndarray
    p_v1_u: np.ndarray
    p_x_uv1: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p_u", _check_kernel(np.asarray(self.p_u, float)[None, :], "p(u)")[0])
        object.__setattr__(self, "p_v1_u", _check_kernel(self.p_v1_u, "p(v1|u)"))
        px = np.asarray(self.p_x_uv1, float)
        nu, na, nx = px.shape
        flat = _check_kernel(px.reshape(nu * na, nx), "p(x|u,v1)")
        object.__setattr__(self, "p_x_uv1", flat.reshape(nu, na, nx))

    def joint(self, ch: DmcChannel) -> LabeledJoint:
        j = np.einsum("u,ua,uax,xijk->uaxijk", self.p_u, self.p_v1_u,
                      self.p_x_uv1, ch.transition)
        return LabeledJoint(Pmf(j, labels=("U", "V1", "X", "Y1", "Y2", "Z")))


@dataclass(frozen=True)
class SplitChainSpec:
    """Chain U -> V -> T -> X used by the extra rate-splitting layer."""

    p_u: np.ndarray
    p_v_u: np.ndarray
    p_t_v: np.ndarray
    p_x_t: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p_u", _check_kernel(np.asarray(self.p_u, float)[None, :], "p(u)")[0])
        object.__setattr__(self, "p_v_u", _check_kernel(self.p_v_u, "p(v|u)"))
        object.__setattr__(self, "p_t_v", _check_kernel(self.p_t_v, "p(t|v)"))
        object.__setattr__(self, "p_x_t", _check_kernel(self.p_x_t, "p(x|t)"))

    def joint(self, ch: DmcChannel) -> LabeledJoint:
        j = np.einsum("u,uv,vt,tx,xijk->uvtxijk", self.p_u, self.p_v_u,
                      self.p_t_v, self.p_x_t, ch.transition)
        return LabeledJoint(Pmf(j, labels=("U", "V", "T", "X", "Y1", "Y2", "Z")))

    @classmethod
    def with_t_equal_v(cls, spec: SuperpositionSpec) -> "SplitChainSpec":
        nv = spec.p_v_u.shape[1]
        return cls(spec.p_u, spec.p_v_u, np.eye(nv), spec.p_x_v)


def spec_from_dict(d: dict):
    """Build a spec from its JSON form; dispatches on the "kind" field."""
    kind = d.get("kind", "superposition")
    arr = lambda key: np.asarray(d[key], dtype=float)
    if kind == "superposition":
        return SuperpositionSpec(arr("p_u"), arr("p_v_u"), arr("p_x_v"))
    if kind == "marton":
        return MartonSpec(p_q=arr("p_q") if "p_q" in d else None,
                          p_u_q=(arr("p_u_q") if "p_u_q" in d
                                 else np.asarray(d["p_u"], float)[None, :]),
                          p_v0_u=arr("p_v0_u"), p_sat=arr("p_sat"), p_x=arr("p_x"))
    if kind == "mixed":
        return MixedSpec(arr("p_u"), arr("p_v1_u"), arr("p_x_uv1"))
    if kind == "split":
        return SplitChainSpec(arr("p_u"), arr("p_v_u"), arr("p_t_v"), arr("p_x_t"))
    raise ValueError(f"unknown spec kind {kind!r}")


# ---------------------------------------------------------------------------
# seeded samplers used by sweeps and tests


def random_stochastic(rng, shape, floor: float = 0.05) -> np.ndarray:
    """Random row-stochastic kernel; the floor keeps entries away from 0."""
    vals = floor + rng.random(shape)
    return vals / vals.sum(axis=-1, keepdims=True)


def random_px(rng, nx: int) -> Pmf:
    return Pmf(random_stochastic(rng, (nx,)))


def random_superposition_spec(rng, nu=2, nv=2, nx=2) -> SuperpositionSpec:
    return SuperpositionSpec(random_stochastic(rng, (nu,)),
                             random_stochastic(rng, (nu, nv)),
                             random_stochastic(rng, (nv, nx)))


def random_marton_spec(rng, nu=2, nv0=2, nv1=2, nv2=2, nx=2,
                       product_satellites=True) -> MartonSpec:
    if product_satellites:
        a = random_stochastic(rng, (nv0, nv1))
        b = random_stochastic(rng, (nv0, nv2))
        sat = np.einsum("oa,ob->oab", a, b)
    else:
        sat = random_stochastic(rng, (nv0, nv1 * nv2)).reshape(nv0, nv1, nv2)
    return MartonSpec(p_u_q=random_stochastic(rng, (1, nu)),
                      p_v0_u=random_stochastic(rng, (nu, nv0)),
                      p_sat=sat,
                      p_x=random_stochastic(rng, (nv1 * nv2, nx)).reshape(nv1, nv2, nx))


def random_split_spec(rng, nu=2, nv=2, nt=2, nx=2) -> SplitChainSpec:
    return SplitChainSpec(random_stochastic(rng, (nu,)),
                          random_stochastic(rng, (nu, nv)),
                          random_stochastic(rng, (nv, nt)),
                          random_stochastic(rng, (nt, nx)))


def random_separable_pair(rng):
    """Channel plus Marton spec that jointly satisfy the packing condition.

    The condition I(V1;V2|V0) <= I(V1;Z|V0) + I(V2;Z|V0) - I(V1,V2;Z|V0)
    can never hold strictly (the defect equals I(V1;V2|V0,Z) >= 0), so
    admissible specs are those where Z separates the satellites.  Here the
    input is a bit pair (V1, V2), every output observes the two bits
    through independent binary symmetric legs, and the eavesdropper legs
    are the noisiest, which pins the condition at equality and keeps the
    per-receiver conditions strict.
    """
    from .infotools import DmcChannel, bsc_matrix

    def leg_pair(pa, pb):
        a, b = bsc_matrix(pa), bsc_matrix(pb)
        # input x = 2*v1 + v2, output likewise a bit pair
        out = np.einsum("ac,bd->abcd", a, b).reshape(4, 4)
        return out

    p1a, p1b = rng.uniform(0.02, 0.12, 2)
    p2a, p2b = rng.uniform(0.02, 0.15, 2)
    pea, peb = rng.uniform(0.25, 0.45, 2)
    w1 = leg_pair(p1a, p1b)
    w2 = leg_pair(p2a, p2b)
    wz = leg_pair(pea, peb)
    ch = DmcChannel.from_marginals(w1, w2, wz)

    nv0 = 2
    a = random_stochastic(rng, (nv0, 2))
    b = random_stochastic(rng, (nv0, 2))
    sat = np.einsum("oa,ob->oab", a, b)
    p_x = np.zeros((2, 2, 4))
    for v1 in range(2):
        for v2 in range(2):
            p_x[v1, v2, 2 * v1 + v2] = 1.0
    spec = MartonSpec(p_u_q=random_stochastic(rng, (1, 2)),
                      p_v0_u=random_stochastic(rng, (2, nv0)),
                      p_sat=sat, p_x=p_x)
    return ch, spec
