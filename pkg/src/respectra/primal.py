"""Marker-run repeat-replacement codec for the narrow-window regime.

Works for L >= ceil(log2 n) + 2*ceil(log2 ceil(log2 n)) + 8.  Each round
replaces the second occurrence of the primal repeat in place with a record
(0^r, 1, B_r(i), 1...1); the zero-run marker is locatable because inputs are
run-length constrained, so only the first position i needs to be stored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import bitcore as bc
from .exact import DecodeError, EncodingTrace, InputError, Round, _periodic_window


@dataclass(frozen=True)
class PrimalParams:
    """Parameters (n, L, r) with L >= ceil(log2 n) + r + 8, r = 2 ceil(log2 log2 n)."""

    n: int
    L: int = 0

    def __post_init__(self):
        floor = bc.ceil_log2(self.n) + self.r + 8
        if self.L == 0:
            object.__setattr__(self, "L", floor)
        if self.L < floor:
            raise ValueError(f"L={self.L} below regime floor {floor} for n={self.n}")
        if self.n < self.L + 3:
            raise ValueError(f"n={self.n} too small for L={self.L}")
        width = bc.ceil_log2(self.n) + 1
        if bc.rll_count(width, self.r - 1) < self.n:
            raise ValueError(f"constrained labeling infeasible for n={self.n}")

    @property
    def r(self) -> int:
        return 2 * bc.ceil_log2(bc.ceil_log2(self.n))

    @property
    def record_len(self) -> int:
        return self.L - 5

    @property
    def tail_ones(self) -> int:
        return self.L - bc.ceil_log2(self.n) - self.r - 7


def _record(i: int, p: PrimalParams) -> str:
    return "0" * p.r + "1" + bc.label_rll(i, p.n) + "1" * p.tail_ones


def prr_encode(x_I: str, p: PrimalParams) -> tuple[str, EncodingTrace]:
    """Remove all (L-1)-repeats, replacing each primal repeat with a marker record."""
    n, L = p.n, p.L
    bc.check_bits(x_I)
    if len(x_I) != n:
        raise InputError(f"expected length {n}, got {len(x_I)}")
    if bc.max_zero_run(x_I) >= p.r:
        raise InputError(f"input contains a zero-run of length >= {p.r}")
    if x_I[L - 2] != "1" or x_I[-1] != "1":
        raise InputError("input must have bit L-1 and last bit equal to 1")
    x = x_I
    rounds = []
    while True:
        rep = bc.find_repeat(x, L - 1, policy="primal")
        if rep is None:
            break
        if len(rounds) >= n - L + 1:
            raise RuntimeError("round budget exceeded; termination argument violated")
        record = _record(rep.i, p)
        assert len(record) == p.record_len
        x = x[: rep.j - 1] + record + x[rep.j - 1 + L - 1 :]
        fixup = len(x) >= L - 1 and x[L - 2] == "0"
        if fixup:
            x = x[: L - 2] + "1" + x[L - 1 :]
            x += "111"
        else:
            x += "101"
        rounds.append(
            Round(len(rounds) + 1, rep.i, rep.j, rep.kind, record, fixup)
        )
    return x, EncodingTrace(tuple(rounds))


def prr_decode(x: str, p: PrimalParams) -> str:
    """Invert prr_encode by peeling flag bits and the last marker record."""
    n, L = p.n, p.L
    bc.check_bits(x)
    if len(x) > n:
        raise DecodeError(f"length {len(x)} exceeds n={n}")
    marker = "0" * p.r + "1"
    width = bc.ceil_log2(n) + 1
    while len(x) < n:
        if len(x) < 3 + p.record_len:
            raise DecodeError("string too short to hold a record and flag")
        flag, body = x[-3:], x[:-3]
        if flag == "111":
            if len(body) < L - 1:
                raise DecodeError("marker fixup recorded on an undersized string")
            body = body[: L - 2] + "0" + body[L - 1 :]
        elif flag != "101":
            raise DecodeError(f"inconsistent flag bits {flag!r}")
        j0 = body.rfind(marker)
        if j0 < 0:
            raise DecodeError("no zero-run marker found")
        j = j0 + 1
        if j0 + p.record_len > len(body):
            raise DecodeError("marker record extends past end of string")
        record = body[j0 : j0 + p.record_len]
        label_bits = record[p.r + 1 : p.r + 1 + width]
        if record[p.r + 1 + width :] != "1" * p.tail_ones:
            raise DecodeError(f"malformed marker record {record!r}")
        i = bc.unlabel_rll(label_bits, n)
        if i >= j:
            raise DecodeError(f"bad repeat positions ({i}, {j})")
        if j - i >= L - 1:
            if i - 1 + L - 1 > j0:
                raise DecodeError("nonoverlapping source window out of range")
            window = body[i - 1 : i - 1 + L - 1]
        else:
            window = _periodic_window(body[i - 1 : j - 1], L - 1)
        x = body[:j0] + window + body[j0 + p.record_len :]
    return x


def plr_encode(x_I: str, p: PrimalParams) -> str:
    """Three-bit-flag codeword: flag, primal repeat replacement, zero-pad."""
    n, L = p.n, p.L
    bc.check_bits(x_I)
    if len(x_I) != n - 3:
        raise InputError(f"expected length {n - 3}, got {len(x_I)}")
    if bc.max_zero_run(x_I) >= p.r:
        raise InputError(f"input contains a zero-run of length >= {p.r}")
    if x_I[L - 2] == "1":
        y = x_I + "101"
    else:
        y = x_I[: L - 2] + "1" + x_I[L - 1 :] + "111"
    z, _ = prr_encode(y, p)
    return z + "0" * (n - len(z))


def plr_decode(x: str, p: PrimalParams) -> str:
    """Invert plr_encode."""
    n, L = p.n, p.L
    bc.check_bits(x)
    if len(x) != n:
        raise DecodeError(f"expected length {n}, got {len(x)}")
    core = x.rstrip("0")
    if not core:
        raise DecodeError("all-zero string cannot be a codeword")
    y = prr_decode(core, p)
    flag = y[-3:]
    if flag == "101":
        return y[: n - 3]
    if flag == "111":
        y = y[: L - 2] + "0" + y[L - 1 :]
        return y[: n - 3]
    raise DecodeError(f"inconsistent flag bits {flag!r}")


def _block_shape(n: int) -> tuple[int, int, int, int]:
    """(block width, block count, admissible middles, payload bits per block)."""
    np = n - 3
    w = bc.ceil_log2(np)
    blocks = np // w
    r = 2 * bc.ceil_log2(bc.ceil_log2(np))
    middles = bc.rll_count(w - 2, r - 1)
    per_block = middles.bit_length() - 1
    return w, blocks, middles, per_block


def payload_capacity(n: int) -> int:
    """Number of raw payload bits gen_constrained_input consumes for one string."""
    _, blocks, _, per_block = _block_shape(n)
    return blocks * per_block


def gen_constrained_input(payload: str, n: int) -> str:
    """Pack payload bits into a run-length-constrained (n-3)-bit input string.

    The string is a concatenation of blocks whose first and last bit are 1
    and whose zero-runs stay below the marker length; trailing bits are 1s.
    Inverse: extract_payload.
    """
    bc.check_bits(payload)
    w, blocks, _, per_block = _block_shape(n)
    need = blocks * per_block
    if len(payload) < need:
        raise InputError(f"payload exhausted: need {need} bits, got {len(payload)}")
    np = n - 3
    r = 2 * bc.ceil_log2(bc.ceil_log2(np))
    out = []
    for b in range(blocks):
        chunk = payload[b * per_block : (b + 1) * per_block]
        rank = int(chunk, 2) if chunk else 0
        out.append("1" + bc.rll_unrank(rank, w - 2, r - 1) + "1")
    out.append("1" * (np - w * blocks))
    return "".join(out)


def extract_payload(x_I: str, n: int) -> str:
    """Recover the payload bits packed by gen_constrained_input."""
    w, blocks, _, per_block = _block_shape(n)
    np = n - 3
    if len(x_I) != np:
        raise InputError(f"expected length {np}, got {len(x_I)}")
    r = 2 * bc.ceil_log2(bc.ceil_log2(np))
    bits = []
    for b in range(blocks):
        block = x_I[b * w : (b + 1) * w]
        if block[0] != "1" or block[-1] != "1":
            raise InputError(f"block {b + 1} does not start and end with 1")
        rank = bc.rll_rank(block[1:-1], r - 1)
        if rank >= 1 << per_block:
            raise InputError(f"block {b + 1} outside the payload range")
        bits.append(format(rank, f"0{per_block}b") if per_block else "")
    return "".join(bits)


def primal_rate_bound(n: int) -> float:
    """Analytic lower bound on the code rate at L = log n + 2 log log n + 5."""
    if n < 8:
        raise ValueError("n must be >= 8")
    np = n - 3
    lg = math.log2(np)
    return (1.0 / n) * (np / lg - 1.0) * (math.log2(np / 4.0) + math.log2(1.0 - 1.0 / lg))
