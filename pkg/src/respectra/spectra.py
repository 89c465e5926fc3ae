"""Substring spectra and read-channel simulation.

Covers full multispectra, set spectra, coverage-gap subsampling, per-read
substitution noise, the reliability predicate, and the shared text formats
for spectrum and trace files.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass


class ChannelError(Exception):
    """Raised when a channel cannot satisfy its configured constraints."""


@dataclass(frozen=True)
class Spectrum:
    """A multiset of equal-length reads, kept in emission order."""

    L: int
    reads: tuple[str, ...]

    def __post_init__(self):
        for r in self.reads:
            if len(r) != self.L:
                raise ValueError(f"read of length {len(r)} in an L={self.L} spectrum")

    @property
    def counts(self) -> Counter:
        return Counter(self.reads)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Spectrum):
            return NotImplemented
        return self.L == other.L and Counter(self.reads) == Counter(other.reads)

    def __len__(self) -> int:
        return len(self.reads)


@dataclass(frozen=True)
class ReadTrace:
    """Ground-truth alignment: (1-based source position, flipped offsets) per read."""

    entries: tuple[tuple[int, frozenset[int]], ...]


@dataclass(frozen=True)
class GapChannelConfig:
    G: int
    mode: str = "adversarial-worst"  # or "random-seeded"
    seed: int = 0

    def __post_init__(self):
        if self.G < 0:
            raise ValueError("G must be >= 0")
        if self.mode not in ("adversarial-worst", "random-seeded"):
            raise ValueError(f"unknown gap mode: {self.mode}")


@dataclass(frozen=True)
class NoisyChannelConfig:
    G: int
    t: int
    seed: int = 0
    enforce_reliable: bool = False
    gap_mode: str = "adversarial-worst"
    max_retries: int = 1000

    def __post_init__(self):
        if self.G < 0 or self.t < 0:
            raise ValueError("G and t must be >= 0")


def multispectrum(x: str, L: int) -> Spectrum:
    """M_L(x): all length-L windows of x, with multiplicity."""
    if not 1 <= L <= len(x):
        raise ValueError(f"L={L} outside [1, {len(x)}]")
    return Spectrum(L, tuple(x[s : s + L] for s in range(len(x) - L + 1)))


def set_spectrum(x: str, L: int) -> Spectrum:
    """S_L(x): the distinct length-L windows of x (multiplicities collapsed)."""
    full = multispectrum(x, L)
    seen = dict.fromkeys(full.reads)
    return Spectrum(L, tuple(seen))


def coverage_gap(kept_positions: set[int], total: int) -> int:
    """Longest run of consecutive missing start positions among 1..total."""
    best = cur = 0
    for p in range(1, total + 1):
        cur = 0 if p in kept_positions else cur + 1
        best = max(best, cur)
    return best


def take_reads(x: str, L: int, positions: list[int], flips=None) -> tuple[Spectrum, ReadTrace]:
    """Emit the reads at the given 1-based start positions, with optional flips.

    flips maps a list index of `positions` to an iterable of 1-based offsets
    within that read to invert.
    """
    flips = flips or {}
    reads = []
    entries = []
    for idx, p in enumerate(positions):
        if not 1 <= p <= len(x) - L + 1:
            raise ValueError(f"start position {p} out of range")
        r = list(x[p - 1 : p - 1 + L])
        offs = frozenset(flips.get(idx, ()))
        for o in offs:
            if not 1 <= o <= L:
                raise ValueError(f"flip offset {o} out of range")
            r[o - 1] = "1" if r[o - 1] == "0" else "0"
        reads.append("".join(r))
        entries.append((p, offs))
    return Spectrum(L, tuple(reads)), ReadTrace(tuple(entries))


def gap_channel(x: str, L: int, cfg: GapChannelConfig) -> tuple[Spectrum, ReadTrace]:
    """Sub-multispectrum whose missing start positions never span G+1 in a row."""
    if L > len(x):
        raise ValueError("L longer than string")
    total = len(x) - L + 1
    if cfg.G == 0:
        kept = list(range(1, total + 1))
    elif cfg.mode == "adversarial-worst":
        kept = [p for p in range(1, total + 1) if (p - 1) % (cfg.G + 1) == 0]
    else:
        rng = random.Random(cfg.seed)
        kept = []
        missing_run = 0
        for p in range(1, total + 1):
            if missing_run >= cfg.G or rng.random() < 0.5:
                kept.append(p)
                missing_run = 0
            else:
                missing_run += 1
    return take_reads(x, L, kept)


def noisy_channel(x: str, L: int, cfg: NoisyChannelConfig) -> tuple[Spectrum, ReadTrace]:
    """Gap subsampling followed by at most t substitutions per surviving read."""
    gap_cfg = GapChannelConfig(G=cfg.G, mode=cfg.gap_mode, seed=cfg.seed)
    base, trace = gap_channel(x, L, gap_cfg)
    positions = [p for p, _ in trace.entries]
    if cfg.t == 0:
        return base, trace
    rng = random.Random(cfg.seed + 1)
    for attempt in range(max(1, cfg.max_retries)):
        flips = {}
        for idx in range(len(positions)):
            k = rng.randint(0, min(cfg.t, L))
            if k:
                flips[idx] = rng.sample(range(1, L + 1), k)
        spectrum, full_trace = take_reads(x, L, positions, flips)
        if not cfg.enforce_reliable or is_reliable(x, spectrum, full_trace):
            return spectrum, full_trace
    raise ChannelError(
        f"no reliable flip pattern found in {cfg.max_retries} attempts"
    )


def is_reliable(x: str, spectrum: Spectrum, trace: ReadTrace) -> bool:
    """Every covered position has strictly more correct than corrupted copies."""
    if len(trace.entries) != len(spectrum.reads):
        raise ValueError("trace does not align with spectrum")
    L = spectrum.L
    good = [0] * (len(x) + 1)
    bad = [0] * (len(x) + 1)
    for read, (p, offs) in zip(spectrum.reads, trace.entries):
        expected = list(x[p - 1 : p - 1 + L])
        for o in offs:
            expected[o - 1] = "1" if expected[o - 1] == "0" else "0"
        if "".join(expected) != read:
            raise ValueError(f"trace misaligned for read at position {p}")
        for o in range(L):
            if read[o] == x[p - 1 + o]:
                good[p + o] += 1
            else:
                bad[p + o] += 1
    return all(
        good[i] > bad[i] for i in range(1, len(x) + 1) if good[i] + bad[i] > 0
    )


def serialize_spectrum(s: Spectrum) -> str:
    lines = [f"L={s.L} count={len(s.reads)}"]
    lines.extend(s.reads)
    return "\n".join(lines) + "\n"


def parse_spectrum(text: str) -> Spectrum:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty spectrum file")
    header = lines[0].split()
    try:
        fields = dict(kv.split("=") for kv in header)
        L = int(fields["L"])
        count = int(fields["count"])
    except (ValueError, KeyError) as e:
        raise ValueError(f"bad spectrum header: {lines[0]!r}") from e
    reads = tuple(lines[1:])
    if len(reads) != count:
        raise ValueError(f"header promises {count} reads, found {len(reads)}")
    for r in reads:
        if len(r) != L or any(c not in "01" for c in r):
            raise ValueError(f"bad read line: {r!r}")
    return Spectrum(L, reads)


def serialize_trace(t: ReadTrace) -> str:
    lines = []
    for p, offs in t.entries:
        flips = ",".join(str(o) for o in sorted(offs))
        lines.append(f"pos={p} flips={flips}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_trace(text: str) -> ReadTrace:
    entries = []
    for ln in text.splitlines():
        if not ln.strip():
            continue
        fields = dict(kv.split("=", 1) for kv in ln.split())
        offs = frozenset(
            int(v) for v in fields.get("flips", "").split(",") if v
        )
        entries.append((int(fields["pos"]), offs))
    return ReadTrace(tuple(entries))
