"""Linear deterministic broadcast model: codecs and exhaustive verification.

The channel truncates a q-bit input to its top n_i bits per receiver
(q = max gain).  Six codeword layouts, selected by the gain ordering and
the rate pair, mix the two messages so each receiver can invert its part
with the other message as side information while the eavesdropper's
window holds only XORed or random bits.  Everything here is exact:
verification enumerates all message pairs and all filler assignments and
computes leakage from the resulting joint pmf.

Bit convention: index 0 of a word is the most significant, i.e. the top
received bit; words are plain tuples of 0/1, internally packed into ints.
"""

from __future__ import annotations

import enum
import functools
import operator
from dataclasses import dataclass, field

import numpy as np

from .budget import check_budget
from .geometry import RateRegion
from .infotools import Pmf, mutual_information
from .regions import coupled_region

LEAK_TOL = 1e-12


class LindetError(ValueError):
    pass


class Scenario(str, enum.Enum):
    """Codeword layout cases, keyed by gain ordering and rate relation.

    weak-eve-*  : ne <= n2 <= n1 (eavesdropper sees the fewest bits)
        1: r1 < r2 and r1 < ne    2: r1 < r2 and ne <= r1
        3: r2 <= r1 and r2 < ne   4: r2 <= r1 and ne <= r2
    mid-eve     : n2 <= ne <= n1
    strong-eve  : n1 <= ne (forces r1 == r2)
    """

    WEAK_EVE_1 = "weak-eve-1"
    WEAK_EVE_2 = "weak-eve-2"
    WEAK_EVE_3 = "weak-eve-3"
    WEAK_EVE_4 = "weak-eve-4"
    MID_EVE = "mid-eve"
    STRONG_EVE = "strong-eve"


@dataclass(frozen=True)
class LinDetConfig:
    """Integer channel gains; receiver i sees the top n_i bits of X."""

    n1: int
    n2: int
    ne: int

    def __post_init__(self):
        for g in (self.n1, self.n2, self.ne):
            if not isinstance(g, (int, np.integer)) or g < 0:
                raise LindetError("channel gains must be non-negative integers")

    @property
    def q(self) -> int:
        return max(self.n1, self.n2, self.ne)

    @property
    def mirrored(self) -> bool:
        return self.n2 > self.n1

    def mirror(self) -> "LinDetConfig":
        return LinDetConfig(self.n2, self.n1, self.ne)


def capacity_region(cfg: LinDetConfig) -> RateRegion:
    """All (R1, R2) with R_i <= min(n_i, [n_i - ne]^+ + R_j)."""
    return coupled_region(cfg.n1, max(cfg.n1 - cfg.ne, 0),
                          cfg.n2, max(cfg.n2 - cfg.ne, 0))


def in_region(cfg: LinDetConfig, r1: float, r2: float) -> bool:
    return (0 <= r1 <= min(cfg.n1, max(cfg.n1 - cfg.ne, 0) + r2)
            and 0 <= r2 <= min(cfg.n2, max(cfg.n2 - cfg.ne, 0) + r1))


def integer_rate_pairs(cfg: LinDetConfig):
    """All integer pairs inside the capacity region."""
    return [(r1, r2) for r1 in range(cfg.n1 + 1) for r2 in range(cfg.n2 + 1)
            if in_region(cfg, r1, r2)]


def classify_scenario(cfg: LinDetConfig, r1: int, r2: int) -> Scenario:
    """Pick the layout case for an admissible integer rate pair."""
    if cfg.mirrored:
        return classify_scenario(cfg.mirror(), r2, r1)
    if not (isinstance(r1, (int, np.integer)) and isinstance(r2, (int, np.integer))):
        raise LindetError("codec rates must be integers")
    if not in_region(cfg, r1, r2):
        raise LindetError(f"rate pair ({r1},{r2}) is outside the capacity region "
                          f"of gains ({cfg.n1},{cfg.n2},{cfg.ne})")
    if cfg.ne <= cfg.n2:
        if r1 < r2:
            return Scenario.WEAK_EVE_1 if r1 < cfg.ne else Scenario.WEAK_EVE_2
        return Scenario.WEAK_EVE_3 if r2 < cfg.ne else Scenario.WEAK_EVE_4
    if cfg.ne <= cfg.n1:
        return Scenario.MID_EVE
    return Scenario.STRONG_EVE


# ---------------------------------------------------------------------------
# layouts: ordered blocks filling the q bit positions top to bottom.
# ("xor", w) pads the top w bits of m1 with the top w bits of m2;
# ("m1"/"m2", off, L) places message bits [off, off+L); ("rand", L) fills.


def case_layout(case: Scenario, cfg: LinDetConfig, r1: int, r2: int):
    """Block list for a case, or None when the blocks cannot fit.

    Only structural fit (non-negative block lengths within q) is checked
    here, so inadmissible rate pairs can be probed and shown to fail.
    """
    q = cfg.q
    ne = cfg.ne
    if case is Scenario.WEAK_EVE_1:
        blocks = [("xor", r1), ("rand", ne - r1), ("m2", r1, r2 - r1)]
    elif case is Scenario.WEAK_EVE_2:
        blocks = [("xor", r1), ("m2", r1, r2 - r1)]
    elif case in (Scenario.WEAK_EVE_3, Scenario.MID_EVE):
        blocks = [("xor", r2), ("rand", ne - r2), ("m1", r2, r1 - r2)]
    elif case is Scenario.WEAK_EVE_4:
        blocks = [("xor", r2), ("m1", r2, r1 - r2)]
    elif case is Scenario.STRONG_EVE:
        if r1 != r2:
            return None
        blocks = [("xor", r1)]
    else:  # pragma: no cover
        raise LindetError(f"unknown case {case}")
    used = 0
    for b in blocks:
        length = b[1] if b[0] != "m1" and b[0] != "m2" else b[2]
        if length < 0:
            return None
        used += length
    if used > q:
        return None
    out = [b for b in blocks if (b[1] if b[0] in ("xor", "rand") else b[2]) > 0]
    if q - used > 0:
        out.append(("rand", q - used))
    return out


def _mask(w):
    return (1 << w) - 1


def _slice_bits(word, width, off, length):
    """Bits [off, off+length) of a width-bit word, 0 = most significant."""
    if length == 0:
        return word & 0
    return (word >> (width - off - length)) & _mask(length)


def _assemble(layout, r1, r2, m1, m2, fill, fill_total):
    """Pack a codeword; works on ints and on broadcasting numpy arrays."""
    x = 0
    used = 0
    for block in layout:
        if block[0] == "xor":
            w = block[1]
            part = (_slice_bits(m1, r1, 0, w) ^ _slice_bits(m2, r2, 0, w))
            length = w
        elif block[0] == "m1":
            _, off, length = block
            part = _slice_bits(m1, r1, off, length)
        elif block[0] == "m2":
            _, off, length = block
            part = _slice_bits(m2, r2, off, length)
        else:
            length = block[1]
            part = _slice_bits(fill, fill_total, used, length)
            used += length
        x = (x << length) | part
    return x


def _fill_count(layout):
    return sum(b[1] for b in layout if b[0] == "rand")


def _recover(layout, r1, r2, mine, n_obs, y, side):
    """Invert a layout for one receiver; None when bits are out of reach.

    ``y`` holds the top n_obs bits of the codeword; ``side`` is the other
    message.  Returns the recovered message (int or array) or None when a
    needed block extends past the observable window.
    """
    my_width, other_width = (r1, r2) if mine == "m1" else (r2, r1)
    if my_width == 0:
        return 0 if not hasattr(y, "shape") else np.zeros(np.broadcast(y, side).shape, np.int64)
    parts = []
    covered = 0
    pos = 0
    for block in layout:
        kind = block[0]
        length = block[1] if kind in ("xor", "rand") else block[2]
        if kind == "xor":
            if pos + length > n_obs:
                return None
            bits = _slice_bits(y, n_obs, pos, length) ^ _slice_bits(side, other_width, 0, length)
            parts.append(bits << (my_width - length))
            covered |= _mask(length) << (my_width - length)
        elif kind == mine:
            off = block[1]
            if pos + length > n_obs:
                return None
            bits = _slice_bits(y, n_obs, pos, length)
            parts.append(bits << (my_width - off - length))
            covered |= _mask(length) << (my_width - off - length)
        pos += length
    if covered != _mask(my_width):
        return None
    return functools.reduce(operator.or_, parts)


# ---------------------------------------------------------------------------
# public word-level codec


def _word_to_int(word, expect_len, what):
    bits = tuple(int(b) for b in word)
    if len(bits) != expect_len or any(b not in (0, 1) for b in bits):
        raise LindetError(f"{what} must be a 0/1 word of length {expect_len}")
    out = 0
    for b in bits:
        out = (out << 1) | b
    return out


def _int_to_word(value, length):
    return tuple((value >> (length - 1 - i)) & 1 for i in range(length))


def _fill_from_source(rand, count):
    if count == 0:
        return 0
    if rand is None:
        return 0
    if isinstance(rand, np.random.Generator):
        bits = rand.integers(0, 2, size=count)
        return functools.reduce(lambda a, b: (a << 1) | int(b), bits, 0)
    bits = tuple(int(b) for b in rand)
    if len(bits) != count or any(b not in (0, 1) for b in bits):
        raise LindetError(f"filler must supply exactly {count} bits")
    return functools.reduce(lambda a, b: (a << 1) | b, bits, 0)


def encode(cfg: LinDetConfig, r1: int, r2: int, m1, m2, rand=None):
    """Codeword of length q for one message pair.

    ``rand`` supplies the filler bits: None for all-zero filler (also
    optimal), a bit sequence, or a numpy Generator.
    """
    if cfg.mirrored:
        return encode(cfg.mirror(), r2, r1, m2, m1, rand)
    case = classify_scenario(cfg, r1, r2)
    layout = case_layout(case, cfg, r1, r2)
    if layout is None:
        raise LindetError(f"rates ({r1},{r2}) do not fit case {case.value}")
    i1 = _word_to_int(m1, r1, "m1")
    i2 = _word_to_int(m2, r2, "m2")
    fill_total = _fill_count(layout)
    x = _assemble(layout, r1, r2, i1, i2, _fill_from_source(rand, fill_total), fill_total)
    return _int_to_word(x, cfg.q)


def observe(cfg: LinDetConfig, x, who: str):
    """Top n bits of the codeword seen by rx1, rx2 or eve."""
    n = {"rx1": cfg.n1, "rx2": cfg.n2, "eve": cfg.ne}[who]
    word = tuple(int(b) for b in x)
    if len(word) != cfg.q:
        raise LindetError(f"codeword must have length q={cfg.q}")
    return word[:n]


def decode(cfg: LinDetConfig, r1: int, r2: int, y, side_info, who: str):
    """Recover the message of ``who`` from its observation and side info."""
    if cfg.mirrored:
        return decode(cfg.mirror(), r2, r1, y, side_info, {"rx1": "rx2", "rx2": "rx1"}[who])
    case = classify_scenario(cfg, r1, r2)
    layout = case_layout(case, cfg, r1, r2)
    n_obs = cfg.n1 if who == "rx1" else cfg.n2
    mine = "m1" if who == "rx1" else "m2"
    my_width = r1 if who == "rx1" else r2
    other_width = r2 if who == "rx1" else r1
    yi = _word_to_int(y, n_obs, "observation")
    si = _word_to_int(side_info, other_width, "side information")
    got = _recover(layout, r1, r2, mine, n_obs, yi, si)
    if got is None:
        raise LindetError("observation window too short for this layout")
    return _int_to_word(int(got), my_width)


# ---------------------------------------------------------------------------
# exhaustive verification


@dataclass
class VerifyReport:
    """Exact reliability and leakage figures for one rate pair."""

    n1: int
    n2: int
    ne: int
    r1: int
    r2: int
    scenario: str
    error_count: int
    errors_rx1: int
    errors_rx2: int
    tuples: int
    leak1_bits: float
    leak2_bits: float
    joint_leak_bits: float

    @property
    def ok(self) -> bool:
        return (self.error_count == 0 and self.leak1_bits <= LEAK_TOL
                and self.leak2_bits <= LEAK_TOL)

    def to_dict(self) -> dict:
        return {
            "n1": self.n1, "n2": self.n2, "ne": self.ne,
            "r1": self.r1, "r2": self.r2, "scenario": self.scenario,
            "error_count": self.error_count,
            "errors_rx1": self.errors_rx1, "errors_rx2": self.errors_rx2,
            "tuples": self.tuples,
            "leak1_bits": self.leak1_bits, "leak2_bits": self.leak2_bits,
            "joint_leak_bits": self.joint_leak_bits,
            "ok": self.ok,
        }


def _verify_layout(cfg: LinDetConfig, r1: int, r2: int, layout, scenario: str) -> VerifyReport:
    q, ne = cfg.q, cfg.ne
    fill = _fill_count(layout)
    check_budget(1 << (r1 + r2 + fill), "exhaustive verification")
    m1 = np.arange(1 << r1, dtype=np.int64)[:, None, None]
    m2 = np.arange(1 << r2, dtype=np.int64)[None, :, None]
    fv = np.arange(1 << fill, dtype=np.int64)[None, None, :]
    x = _assemble(layout, r1, r2, m1, m2, fv, fill)
    x = np.broadcast_to(x, (1 << r1, 1 << r2, 1 << fill))
    total = x.size

    y1 = x >> (q - cfg.n1)
    y2 = x >> (q - cfg.n2)
    got1 = _recover(layout, r1, r2, "m1", cfg.n1, y1, m2)
    got2 = _recover(layout, r1, r2, "m2", cfg.n2, y2, m1)
    errors1 = total if got1 is None else int((np.broadcast_to(got1, x.shape) != m1).sum())
    errors2 = total if got2 is None else int((np.broadcast_to(got2, x.shape) != m2).sum())

    z = x >> (q - ne)
    zsize = 1 << ne
    flat = ((m1 * (1 << r2) + m2) * zsize + z).ravel()
    counts = np.bincount(flat, minlength=(1 << r1) * (1 << r2) * zsize)
    joint = Pmf((counts / counts.sum()).reshape(1 << r1, 1 << r2, zsize))
    leak1 = mutual_information(joint, (0,), (2,))
    leak2 = mutual_information(joint, (1,), (2,))
    leak12 = mutual_information(joint, (0, 1), (2,))
    return VerifyReport(cfg.n1, cfg.n2, cfg.ne, r1, r2, scenario,
                        errors1 + errors2, errors1, errors2, total,
                        leak1, leak2, leak12)


def verify_exhaustive(cfg: LinDetConfig, r1: int, r2: int,
                      corrupt_encoder: bool = False) -> VerifyReport:
    """Enumerate every message pair and filler word; exact errors and leakage.

    ``corrupt_encoder`` is a fault-injection hook: it replaces the pad
    block with plaintext message bits so the secrecy check must fail,
    exercising the failure-reporting path.
    """
    if cfg.mirrored:
        rep = verify_exhaustive(cfg.mirror(), r2, r1, corrupt_encoder)
        return VerifyReport(cfg.n1, cfg.n2, cfg.ne, r1, r2, rep.scenario,
                            rep.error_count, rep.errors_rx2, rep.errors_rx1,
                            rep.tuples, rep.leak2_bits, rep.leak1_bits,
                            rep.joint_leak_bits)
    case = classify_scenario(cfg, r1, r2)
    layout = case_layout(case, cfg, r1, r2)
    if layout is None:  # pragma: no cover - classify guarantees fit
        raise LindetError(f"no layout for admissible pair ({r1},{r2})")
    if corrupt_encoder:
        layout = [("m1", 0, b[1]) if b[0] == "xor" else b for b in layout]
    return _verify_layout(cfg, r1, r2, layout, case.value)


def admits_construction(cfg: LinDetConfig, r1: int, r2: int) -> bool:
    """Try all six layouts at a rate pair, ignoring the region test.

    True iff some layout fits structurally and verifies with zero errors
    and exactly zero individual leakage.  Used to confirm that no pair
    outside the capacity region sneaks through any construction.
    """
    if cfg.mirrored:
        return admits_construction(cfg.mirror(), r2, r1)
    for case in Scenario:
        layout = case_layout(case, cfg, r1, r2)
        if layout is None:
            continue
        rep = _verify_layout(cfg, r1, r2, layout, case.value)
        if rep.ok:
            return True
    return False


# ---------------------------------------------------------------------------
# noiseless XOR ring broadcast (1 transmitter, k receivers, k-1 channel uses)


@dataclass
class XorRingReport:
    k: int
    n: int
    rate_per_receiver: float
    decode_errors: int
    equivocations: list[float]
    joint_equivocation: float
    leakage_per_receiver: list[float]
    codeword_map: dict | None = field(default=None, repr=False)


def xor_ring_encode(k: int, u_bits) -> tuple:
    """x_i = u_1 xor u_{i+1}; broadcasts k bits in k-1 noiseless uses."""
    u = tuple(int(b) for b in u_bits)
    if len(u) != k:
        raise LindetError(f"need {k} message bits")
    return tuple(u[0] ^ u[i + 1] for i in range(k - 1))


def xor_ring_decode(k: int, x_bits, i: int, u_i: int) -> tuple:
    """Receiver i (1-based) holding u_i recovers the other k-1 bits."""
    x = tuple(int(b) for b in x_bits)
    u = [None] * k
    u[i - 1] = u_i
    u1 = u_i if i == 1 else x[i - 2] ^ u_i
    u[0] = u1
    for j in range(2, k + 1):
        if j != i:
            u[j - 1] = x[j - 2] ^ u1
    return tuple(u)


def xor_ring_scheme(k: int) -> XorRingReport:
    """Exhaustive check of the XOR ring: rate 1 per receiver, exact leakage 0.

    Each receiver's equivocation about its own withheld bit is exactly
    1 bit, and so is the joint equivocation about all k bits, which is why
    joint secrecy is unattainable here while individual secrecy is free.
    """
    if k < 2:
        raise LindetError("need at least two receivers")
    n = k - 1
    total = 1 << k
    errors = 0
    x_of_u = np.zeros(total, dtype=np.int64)
    for u in range(total):
        bits = _int_to_word(u, k)
        x = xor_ring_encode(k, bits)
        x_of_u[u] = functools.reduce(lambda a, b: (a << 1) | b, x, 0) if n else 0
        for i in range(1, k + 1):
            if xor_ring_decode(k, x, i, bits[i - 1]) != bits:
                errors += 1

    # joint pmf over (U^k, X^n); U uniform, X deterministic
    joint = np.zeros((total, 1 << n))
    joint[np.arange(total), x_of_u] = 1.0 / total
    jp = Pmf(joint)
    hx = mutual_information(jp, (0,), (1,))  # equals H(X) since X = f(U)
    equivs = []
    leaks = []
    for i in range(k):
        ui = (np.arange(total) >> (k - 1 - i)) & 1
        m = np.zeros((2, 1 << n))
        np.add.at(m, (ui, x_of_u), 1.0 / total)
        mi = mutual_information(Pmf(m), (0,), (1,))
        equivs.append(1.0 - mi)       # H(U_i | X^n) with H(U_i) = 1
        leaks.append(mi)
    joint_equiv = k - hx              # H(U^k | X^n) = H(U^k) - I(U^k; X^n)
    table = None
    if k <= 10:
        table = {_int_to_word(u, k): _int_to_word(int(x_of_u[u]), n) for u in range(total)}
    return XorRingReport(k=k, n=n, rate_per_receiver=(k - 1) / n,
                         decode_errors=errors, equivocations=equivs,
                         joint_equivocation=joint_equiv,
                         leakage_per_receiver=leaks, codeword_map=table)
