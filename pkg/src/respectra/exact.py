"""Repeat-replacement codec for the wide-window regime (L >= 2 ceil(log2 n) + 4).

The repeat-replacement pass deletes one occurrence of each repeated
(L-1)-window and appends a fixed-width locator record, shrinking the string
by one bit per round; the outer code pins two marker bits and zero-pads, so
the codeword is recoverable from its L-multispectrum alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import bitcore as bc
from .spectra import Spectrum


class InputError(ValueError):
    """Encoder input violates a stated precondition."""


class DecodeError(ValueError):
    """String is not a well-formed encoder output."""


class AssemblyError(ValueError):
    """Spectrum is inconsistent with the promised codeword shape."""


@dataclass(frozen=True)
class ExactParams:
    """Parameters (n, L) with L >= 2*ceil(log2 n) + 4."""

    n: int
    L: int = 0

    def __post_init__(self):
        floor = 2 * bc.ceil_log2(self.n) + 4
        if self.L == 0:
            object.__setattr__(self, "L", floor)
        if self.L < floor:
            raise ValueError(f"L={self.L} below regime floor {floor} for n={self.n}")
        if self.n < self.L:
            raise ValueError(f"n={self.n} smaller than L={self.L}")

    @property
    def record_len(self) -> int:
        return self.L - 2

    @property
    def pad_ones(self) -> int:
        return self.L - (2 * bc.ceil_log2(self.n) + 4)


@dataclass(frozen=True)
class Round:
    """One repeat-replacement round: which repeat was removed and what was appended."""

    k: int
    i: int
    j: int
    kind: str
    appended: str
    fixup: bool


@dataclass(frozen=True)
class EncodingTrace:
    rounds: tuple[Round, ...] = ()


def _delete_window(x: str, j: int, m: int) -> str:
    return x[: j - 1] + x[j - 1 + m :]


def _periodic_window(prefix: str, m: int) -> str:
    """Extend prefix periodically (period = len(prefix)) to length m."""
    reps = -(-m // len(prefix))
    return (prefix * reps)[:m]


def rr_encode(x_I: str, p: ExactParams) -> tuple[str, EncodingTrace]:
    """Remove all (L-1)-repeats, appending an (i, j) locator record per round."""
    n, L = p.n, p.L
    bc.check_bits(x_I)
    if len(x_I) != n:
        raise InputError(f"expected length {n}, got {len(x_I)}")
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
        record = "1" * p.pad_ones + bc.label(rep.i, n) + bc.label(rep.j, n) + "01"
        assert len(record) == p.record_len
        x = _delete_window(x, rep.j, L - 1) + record
        fixup = x[L - 2] == "0"
        if fixup:
            x = x[: L - 2] + "1" + x[L - 1 :]
            x = x[:-2] + "11"
        rounds.append(
            Round(len(rounds) + 1, rep.i, rep.j, rep.kind, record, fixup)
        )
    return x, EncodingTrace(tuple(rounds))


def rr_decode(x: str, p: ExactParams) -> str:
    """Invert rr_encode by peeling locator records from the tail."""
    n, L = p.n, p.L
    bc.check_bits(x)
    if len(x) > n:
        raise DecodeError(f"length {len(x)} exceeds n={n}")
    while len(x) < n:
        if len(x) < p.record_len:
            raise DecodeError("string shorter than one locator record")
        record = x[-p.record_len :]
        body = x[: -p.record_len]
        pad, rest = record[: p.pad_ones], record[p.pad_ones :]
        w = bc.ceil_log2(n)
        bi, bj, b, last = rest[:w], rest[w : 2 * w], rest[2 * w], rest[2 * w + 1]
        if pad != "1" * p.pad_ones or last != "1":
            raise DecodeError(f"malformed locator record {record!r}")
        i, j = bc.unlabel(bi, n), bc.unlabel(bj, n)
        if not 1 <= i < j:
            raise DecodeError(f"bad repeat positions ({i}, {j})")
        if b == "1":
            if len(body) < L - 1:
                raise DecodeError("marker fixup recorded on an undersized string")
            body = body[: L - 2] + "0" + body[L - 1 :]
        if j - i >= L - 1:
            if i + L - 2 > len(body):
                raise DecodeError("nonoverlapping source window out of range")
            window = body[i - 1 : i - 1 + L - 1]
        else:
            if j - 1 > len(body):
                raise DecodeError("overlapping source window out of range")
            window = _periodic_window(body[i - 1 : j - 1], L - 1)
        if j - 1 > len(body):
            raise DecodeError(f"reinsertion position {j} out of range")
        x = body[: j - 1] + window + body[j - 1 :]
    return x


def lr_encode(x_I: str, p: ExactParams) -> str:
    """Two-bit-redundancy codeword: flag bits, repeat replacement, zero-pad."""
    n, L = p.n, p.L
    bc.check_bits(x_I)
    if len(x_I) != n - 2:
        raise InputError(f"expected length {n - 2}, got {len(x_I)}")
    y = x_I + "01"
    if y[L - 2] != "1":
        y = y[: L - 2] + "1" + y[L - 1 :]
        y = y[:-2] + "11"
    z, _ = rr_encode(y, p)
    return z + "0" * (n - len(z))


def lr_decode(x: str, p: ExactParams) -> str:
    """Invert lr_encode."""
    n, L = p.n, p.L
    bc.check_bits(x)
    if len(x) != n:
        raise DecodeError(f"expected length {n}, got {len(x)}")
    core = x.rstrip("0")
    if not core:
        raise DecodeError("all-zero string cannot be a codeword")
    y = rr_decode(core, p)
    flag = y[-2:]
    if flag == "01":
        return y[: n - 2]
    if flag == "11":
        y = y[: L - 2] + "0" + y[L - 1 :]
        return y[: n - 2]
    raise DecodeError(f"inconsistent flag bits {flag!r}")


def assemble_unique(S: Spectrum) -> str:
    """Rebuild an (L-1)-substring-unique string by suffix-prefix chaining."""
    L = S.L
    remaining = S.counts
    if not remaining:
        raise AssemblyError("empty spectrum")
    if len(S) == 1:
        return S.reads[0]
    suffixes = {r[1:] for r in remaining}
    starts = [r for r in remaining if r[: L - 1] not in suffixes]
    if len(starts) != 1:
        raise AssemblyError(f"expected one start read, found {len(starts)}")
    x = starts[0]
    remaining[x] -= 1
    by_prefix: dict[str, set[str]] = {}
    for r in remaining:
        by_prefix.setdefault(r[: L - 1], set()).add(r)
    for _ in range(sum(remaining.values())):
        w = x[-(L - 1) :]
        cands = [r for r in by_prefix.get(w, ()) if remaining[r] > 0]
        if len(cands) != 1:
            raise AssemblyError(f"{len(cands)} extensions for window {w!r}")
        x += cands[0][-1]
        remaining[cands[0]] -= 1
    return x


def assemble_padded(M: Spectrum, p: ExactParams) -> str:
    """Rebuild a zero-padded codeword (unique core, pinned marker bits) from M_L."""
    n, L = p.n, p.L
    if L != M.L:
        raise AssemblyError(f"spectrum L={M.L} does not match params L={L}")
    if len(M) != n - L + 1:
        raise AssemblyError(f"expected {n - L + 1} reads, got {len(M)}")
    if len(M) == 1:
        return M.reads[0]
    remaining = M.counts
    suffixes = {r[1:] for r in remaining}
    starts = [r for r in remaining if r[: L - 1] not in suffixes]
    if len(starts) != 1:
        raise AssemblyError(f"expected one start read, found {len(starts)}")
    x = starts[0]
    remaining[x] -= 1
    by_prefix: dict[str, set[str]] = {}
    for r in remaining:
        by_prefix.setdefault(r[: L - 1], set()).add(r)
    while sum(remaining.values()) > 0:
        w = x[-(L - 1) :]
        cands = sorted(r for r in by_prefix.get(w, ()) if remaining[r] > 0)
        if not cands:
            leftovers = {r for r in remaining if remaining[r] > 0}
            if leftovers <= {"0" * L}:
                break
            raise AssemblyError(f"no extension for window {w!r}")
        if len(cands) == 1:
            nxt = cands[0]
        elif len(cands) == 2 and cands[1].endswith("1") and cands[0].endswith("0"):
            nxt = cands[1]  # the 0-terminated twin lives in the zero-pad region
        else:
            raise AssemblyError(f"unresolvable fork at window {w!r}")
        x += nxt[-1]
        remaining[nxt] -= 1
    if len(x) > n:
        raise AssemblyError("assembled string longer than n")
    return x + "0" * (n - len(x))
