"""Exact probability and information primitives on finite alphabets.

All logarithms are base 2 and all rates are in bits.  Probability mass
functions are dense numpy arrays, one axis per random variable.  The
convention 0*log(0) = 0 is used throughout; mutual-information values in
[-1e-9, 0) are clamped to 0, anything below -1e-9 signals a corrupted pmf
and raises.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

PMF_TOL = 1e-9
MI_CLAMP = 1e-9


class PmfError(ValueError):
    """Raised for malformed probability mass functions or channels."""


@dataclass(frozen=True)
class Pmf:
    """Joint pmf over one or more finite variables.

    ``probs`` is indexed row-major; ``labels`` optionally names each axis.
    Entries must be non-negative and sum to 1 within 1e-9; the constructor
    renormalizes inside that tolerance and rejects anything worse.
    """

    probs: np.ndarray
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        arr = np.asarray(self.probs, dtype=float)
        if arr.ndim == 0 or any(s < 1 for s in arr.shape):
            raise PmfError("pmf needs at least one outcome per axis")
        if arr.min() < -PMF_TOL:
            raise PmfError(f"negative probability {arr.min():g}")
        arr = np.clip(arr, 0.0, None)
        total = arr.sum()
        if abs(total - 1.0) > PMF_TOL:
            raise PmfError(f"pmf sums to {total:.12g}, not 1")
        object.__setattr__(self, "probs", arr / total)
        if self.labels and len(self.labels) != arr.ndim:
            raise PmfError("label count does not match pmf dimensions")

    @property
    def nvars(self) -> int:
        return self.probs.ndim

    def marginal(self, axes) -> np.ndarray:
        """Marginal over the given axis indices (kept in the given order)."""
        axes = tuple(axes)
        drop = tuple(i for i in range(self.probs.ndim) if i not in axes)
        out = self.probs.sum(axis=drop) if drop else self.probs
        # sum() preserves the original axis order; permute to requested order
        kept = [i for i in range(self.probs.ndim) if i in axes]
        perm = [kept.index(a) for a in axes]
        return np.transpose(out, perm) if out.ndim > 1 else out

    def axis_of(self, label: str) -> int:
        return self.labels.index(label)


def _plogp(arr: np.ndarray) -> float:
    a = arr[arr > 0]
    return float(-(a * np.log2(a)).sum())


def entropy(p) -> float:
    """Shannon entropy H(p) in bits; accepts a Pmf or a raw array."""
    if not isinstance(p, Pmf):
        p = Pmf(np.asarray(p, dtype=float))
    return _plogp(p.probs)


def _group_entropy(joint: Pmf, axes) -> float:
    if not axes:
        return 0.0
    return _plogp(joint.marginal(tuple(axes)))


def _check_groups(joint: Pmf, *groups):
    seen = set()
    for g in groups:
        for i in g:
            if not 0 <= i < joint.nvars:
                raise IndexError(f"variable index {i} out of range")
            if i in seen:
                raise ValueError(f"variable index {i} appears in two groups")
            seen.add(i)


def _clamp_mi(value: float) -> float:
    if value < -MI_CLAMP:
        raise PmfError(f"mutual information {value:g} below -1e-9; pmf is corrupted")
    return max(value, 0.0)


def mutual_information(joint: Pmf, group_a, group_b) -> float:
    """I(A;B) in bits from a joint pmf; groups are tuples of axis indices."""
    a, b = tuple(group_a), tuple(group_b)
    _check_groups(joint, a, b)
    val = _group_entropy(joint, a) + _group_entropy(joint, b) - _group_entropy(joint, a + b)
    return _clamp_mi(val)


def conditional_mi(joint: Pmf, group_a, group_b, group_c) -> float:
    """I(A;B|C) in bits; reduces to mutual_information for empty C."""
    a, b, c = tuple(group_a), tuple(group_b), tuple(group_c)
    _check_groups(joint, a, b, c)
    if not c:
        return mutual_information(joint, a, b)
    val = (_group_entropy(joint, a + c) + _group_entropy(joint, b + c)
           - _group_entropy(joint, a + b + c) - _group_entropy(joint, c))
    return _clamp_mi(val)


# ---------------------------------------------------------------------------
# channels


@dataclass(frozen=True)
class DmcChannel:
    """Discrete memoryless broadcast channel p(y1, y2, z | x).

    ``transition`` has shape (x_size, y1_size, y2_size, z_size) and each
    slice over (y1, y2, z) sums to 1 within 1e-9.
    """

    x_size: int
    y1_size: int
    y2_size: int
    z_size: int
    transition: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.transition, dtype=float)
        want = (self.x_size, self.y1_size, self.y2_size, self.z_size)
        if t.shape != want:
            raise PmfError(f"transition shape {t.shape} != {want}")
        if t.min() < -PMF_TOL:
            raise PmfError("negative transition probability")
        t = np.clip(t, 0.0, None)
        sums = t.reshape(self.x_size, -1).sum(axis=1)
        if np.abs(sums - 1.0).max() > PMF_TOL:
            raise PmfError("channel slices must sum to 1 for every input")
        t = t / sums[:, None, None, None]
        object.__setattr__(self, "transition", t)

    @classmethod
    def from_marginals(cls, w1: np.ndarray, w2: np.ndarray, wz: np.ndarray) -> "DmcChannel":
        """Product channel with conditionally independent outputs.

        ``w1[x, y1]`` etc. are the per-receiver transition matrices.
        """
        w1 = np.asarray(w1, float)
        w2 = np.asarray(w2, float)
        wz = np.asarray(wz, float)
        t = np.einsum("xa,xb,xc->xabc", w1, w2, wz)
        return cls(w1.shape[0], w1.shape[1], w2.shape[1], wz.shape[1], t)

    def marginal(self, who: str) -> np.ndarray:
        """Marginal transition matrix p(output | x) for y1, y2 or z."""
        axes = {"y1": (2, 3), "y2": (1, 3), "z": (1, 2)}[who]
        return self.transition.sum(axis=axes)

    def joint_with_input(self, px) -> Pmf:
        """Joint pmf over (X, Y1, Y2, Z) for a given input distribution."""
        px = np.asarray(px.probs if isinstance(px, Pmf) else px, dtype=float)
        if px.shape != (self.x_size,):
            raise PmfError("input pmf does not match channel input alphabet")
        joint = px[:, None, None, None] * self.transition
        return Pmf(joint, labels=("X", "Y1", "Y2", "Z"))

    def to_json(self) -> str:
        return json.dumps({
            "x_size": self.x_size,
            "y1_size": self.y1_size,
            "y2_size": self.y2_size,
            "z_size": self.z_size,
            "p": self.transition.tolist(),
        })

    @classmethod
    def from_json(cls, text: str) -> "DmcChannel":
        d = json.loads(text)
        return cls(d["x_size"], d["y1_size"], d["y2_size"], d["z_size"],
                   np.asarray(d["p"], dtype=float))


def bsc_matrix(p: float) -> np.ndarray:
    return np.array([[1 - p, p], [p, 1 - p]])


def bsc_broadcast(p1: float, p2: float, pe: float) -> DmcChannel:
    """Three independent binary symmetric channels from one binary input."""
    return DmcChannel.from_marginals(bsc_matrix(p1), bsc_matrix(p2), bsc_matrix(pe))


def erasure_matrix(e: float) -> np.ndarray:
    """Binary erasure channel matrix; output symbol 2 is the erasure."""
    return np.array([[1 - e, 0.0, e], [0.0, 1 - e, e]])


def is_degraded(ch: DmcChannel, order=("y1", "y2", "z"), tol: float = 1e-8) -> bool:
    """Test physical degradability along ``order``.

    True iff for each adjacent pair (A, B) in the order there is a
    stochastic map W with p(b|x) = sum_a p(a|x) W(b|a).  Decided by a
    linear program minimizing the worst constraint residual; residuals
    at or below ``tol`` count as feasible (boundary ties report True).
    """
    from scipy.optimize import linprog

    names = tuple(order)
    if sorted(names) != ["y1", "y2", "z"]:
        raise ValueError("order must be a permutation of ('y1','y2','z')")
    for earlier, later in zip(names, names[1:]):
        a = ch.marginal(earlier)      # (x, na)
        b = ch.marginal(later)        # (x, nb)
        nx, na = a.shape
        nb = b.shape[1]
        # variables: W (na*nb) flattened row-major, then slack t
        nw = na * nb
        # residual constraints  |b[x,j] - sum_i a[x,i] W[i,j]| <= t
        rows = []
        rhs = []
        for x in range(nx):
            for j in range(nb):
                coef = np.zeros(nw + 1)
                for i in range(na):
                    coef[i * nb + j] = a[x, i]
                coef[nw] = -1.0
                rows.append(coef.copy())          # +residual <= t
                rhs.append(b[x, j])
                coef2 = -coef
                coef2[nw] = -1.0
                rows.append(coef2)                # -residual <= t
                rhs.append(-b[x, j])
        a_ub = np.array(rows)
        b_ub = np.array(rhs)
        # rows encode  (A W)_xj - t <= b_xj  and  -(A W)_xj - t <= -b_xj
        a_eq = np.zeros((na, nw + 1))
        for i in range(na):
            a_eq[i, i * nb:(i + 1) * nb] = 1.0
        b_eq = np.ones(na)
        c = np.zeros(nw + 1)
        c[nw] = 1.0
        bounds = [(0, None)] * nw + [(0, None)]
        res = linprog(c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq,
                      bounds=bounds, method="highs")
        if not res.success or res.fun > tol:
            return False
    return True
