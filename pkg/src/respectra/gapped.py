"""Repeat-replacement codec tolerant of coverage gaps in the read spectrum.

Reads of length L = L_hat + G + 1 may be missing from up to G consecutive
start positions.  The inner pass removes repeated L_hat-windows while pinning
a block of 1s at position L_hat; the outer code stores the overwritten window
and a sentinel prefix (1...1,0) that lets the assembler re-anchor the first
surviving read.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import bitcore as bc
from .exact import (
    AssemblyError,
    DecodeError,
    EncodingTrace,
    InputError,
    _periodic_window,
)
from .spectra import Spectrum


@dataclass(frozen=True)
class Round:
    """One gap-replacement round; `saved` holds a displaced window, if any."""

    k: int
    i: int
    j: int
    kind: str
    appended: str
    fixup: bool
    saved: str = ""


@dataclass(frozen=True)
class GapParams:
    """Parameters (n, G) with L_hat = 2 ceil(log2 n) + 3 + G and L = L_hat + G + 1."""

    n: int
    G: int

    def __post_init__(self):
        if self.G < 1:
            raise ValueError("G must be >= 1")
        if self.n < self.L + 3 * self.G + 3:
            raise ValueError(f"n={self.n} too small for L={self.L}, G={self.G}")
        if self.L_hat + self.G > self.n - 2 * self.G - 2:
            raise ValueError("pinned window does not fit the information block")

    @property
    def L_hat(self) -> int:
        return 2 * bc.ceil_log2(self.n) + 3 + self.G

    @property
    def L(self) -> int:
        return self.L_hat + self.G + 1

    @property
    def redundancy(self) -> int:
        return 3 * self.G + 3


def grr_encode(x_I: str, p: GapParams) -> tuple[str, EncodingTrace]:
    """Remove all L_hat-repeats while keeping the ones-block at position L_hat."""
    n, Lh, G = p.n, p.L_hat, p.G
    bc.check_bits(x_I)
    if len(x_I) > n:
        raise InputError(f"length {len(x_I)} exceeds n={n}")
    if x_I[-1] != "1":
        raise InputError("input must end with 1")
    if len(x_I) >= Lh + G and x_I[Lh - 1 : Lh + G] != "1" * (G + 1):
        raise InputError("input must carry all-ones at positions L_hat..L_hat+G")
    x = x_I
    rounds = []
    while True:
        rep = bc.find_repeat(x, Lh, policy="primal")
        if rep is None:
            break
        if len(rounds) >= len(x_I) - Lh + 1:
            raise RuntimeError("round budget exceeded; termination argument violated")
        record = bc.label(rep.i, n) + bc.label(rep.j, n) + "1" * (G + 2)
        assert len(record) == Lh - 1
        x = x[: rep.j - 1] + x[rep.j - 1 + Lh :] + record
        saved = ""
        fixup = False
        if len(x) >= Lh + G and x[Lh - 1 : Lh + G] != "1" * (G + 1):
            saved = x[Lh - 1 : Lh + G]
            x = x[: -(G + 2)] + saved + "1"
            x = x[: Lh - 1] + "1" * (G + 1) + x[Lh + G :]
            fixup = True
        rounds.append(
            Round(len(rounds) + 1, rep.i, rep.j, rep.kind, record, fixup, saved)
        )
    return x, EncodingTrace(tuple(rounds))


def grr_decode(x: str, p: GapParams, target_len: int | None = None) -> str:
    """Invert grr_encode back to a string of target_len (default n) bits."""
    n, Lh, G = p.n, p.L_hat, p.G
    target = n if target_len is None else target_len
    bc.check_bits(x)
    if len(x) > target:
        raise DecodeError(f"length {len(x)} exceeds target {target}")
    w = bc.ceil_log2(n)
    while len(x) < target:
        if len(x) < Lh - 1:
            raise DecodeError("string shorter than one locator record")
        record = x[-(Lh - 1) :]
        body = x[: -(Lh - 1)]
        bi, bj, z = record[:w], record[w : 2 * w], record[2 * w :]
        if z[-1] != "1":
            raise DecodeError(f"malformed locator record {record!r}")
        if z != "1" * (G + 2):
            # a displaced window was parked in the record tail; put it back
            saved = z[: G + 1]
            if len(body) < Lh + G:
                raise DecodeError("window fixup recorded on an undersized string")
            body = body[: Lh - 1] + saved + body[Lh + G :]
        i, j = bc.unlabel(bi, n), bc.unlabel(bj, n)
        if not 1 <= i < j:
            raise DecodeError(f"bad repeat positions ({i}, {j})")
        if j - 1 > len(body):
            raise DecodeError(f"reinsertion position {j} out of range")
        if j - i >= Lh:
            if i + Lh - 1 > len(body):
                raise DecodeError("nonoverlapping source window out of range")
            window = body[i - 1 : i - 1 + Lh]
        else:
            window = _periodic_window(body[i - 1 : j - 1], Lh)
        x = body[: j - 1] + window + body[j - 1 :]
    return x


def g_encode(x_I: str, p: GapParams) -> str:
    """Codeword with 3G+3 bits of redundancy, assemblable under coverage gaps."""
    n, Lh, G = p.n, p.L_hat, p.G
    bc.check_bits(x_I)
    if len(x_I) != n - 3 * G - 3:
        raise InputError(f"expected length {n - 3 * G - 3}, got {len(x_I)}")
    y = "1" * G + "0" + x_I
    saved = y[Lh - 1 : Lh + G]
    y = y + saved + "1"
    y = y[: Lh - 1] + "1" * (G + 1) + y[Lh + G :]
    z, _ = grr_encode(y, p)
    return z + "0" * (n - len(z))


def g_decode(x: str, p: GapParams) -> str:
    """Invert g_encode."""
    n, Lh, G = p.n, p.L_hat, p.G
    bc.check_bits(x)
    if len(x) != n:
        raise DecodeError(f"expected length {n}, got {len(x)}")
    core = x.rstrip("0")
    if not core:
        raise DecodeError("all-zero string cannot be a codeword")
    y = grr_decode(core, p, target_len=n - G)
    if y[-1] != "1":
        raise DecodeError("stored window block must end with 1")
    saved = y[-(G + 2) : -1]
    y = y[: Lh - 1] + saved + y[Lh + G :]
    if y[: G + 1] != "1" * G + "0":
        raise DecodeError("sentinel prefix missing")
    return y[G + 1 : -(G + 2)]


def assemble_gapped(M_hat: Spectrum, p: GapParams) -> str:
    """Rebuild a codeword from a spectrum with maximal coverage gap <= G."""
    n, L, Lh, G = p.n, p.L, p.L_hat, p.G
    if M_hat.L != L:
        raise AssemblyError(f"spectrum L={M_hat.L} does not match params L={L}")
    remaining = M_hat.counts
    if not remaining:
        raise AssemblyError("empty spectrum")
    # start read: the only read whose L_hat-prefix never recurs deeper in a read
    inner = {r[o : o + Lh] for r in remaining for o in range(1, L - Lh + 1)}
    starts = [r for r in remaining if r[:Lh] not in inner]
    if len(starts) != 1:
        raise AssemblyError(f"expected one start read, found {len(starts)}")
    first = starts[0]
    k = first.find("0") + 1
    if k == 0 or k > G + 1:
        raise AssemblyError("start read does not align with the sentinel prefix")
    xh = "1" * (G + 1 - k) + first
    remaining[first] -= 1
    by_prefix: dict[str, set[str]] = {}
    for r in remaining:
        by_prefix.setdefault(r[:Lh], set()).add(r)
    while len(xh) < n:
        m = len(xh)
        pick = None
        for j in range(m - L + 2, m - Lh + 2):
            if j < 1:
                continue
            w = xh[j - 1 : j - 1 + Lh]
            cands = sorted(r for r in by_prefix.get(w, ()) if remaining[r] > 0)
            if cands:
                pick = (j, cands)
                break
        if pick is None:
            break
        j, cands = pick
        h = L + j - 1 - m
        if len(cands) == 1:
            chosen = cands[0]
        else:
            solid = [c for c in cands if c[-h:] != "0" * h]
            if len(solid) != 1:
                raise AssemblyError(f"unresolvable fork among {len(cands)} reads")
            chosen = solid[0]
        xh += chosen[-h:]
        remaining[chosen] -= 1
    if any(count > 0 and set(r) != {"0"} for r, count in remaining.items()):
        raise AssemblyError("non-zero reads left over after assembly")
    if len(xh) > n:
        raise AssemblyError("assembled string longer than n")
    return xh + "0" * (n - len(xh))
