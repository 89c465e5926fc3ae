"""Binary-string primitives: windows, periods, repeats, and integer labelings.

Strings are plain Python ``str`` objects over the characters '0' and '1'.
All public positions are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

_HASH_MOD = (1 << 61) - 1
_HASH_BASE = 1_000_003


def check_bits(x: str) -> str:
    """Validate that x consists only of '0'/'1' characters."""
    if not all(c in "01" for c in x):
        raise ValueError(f"not a binary string: {x!r}")
    return x


def ceil_log2(m: int) -> int:
    """Smallest w with 2**w >= m (defined as 0 for m <= 1)."""
    if m <= 1:
        return 0
    return (m - 1).bit_length()


def substring(x: str, i: int, L: int) -> str:
    """Return the L consecutive bits of x starting at 1-based position i."""
    if i < 1 or L < 0 or i + L - 1 > len(x):
        raise IndexError(f"window (i={i}, L={L}) out of range for length {len(x)}")
    return x[i - 1 : i - 1 + L]


def period(x: str) -> int:
    """Smallest p >= 1 with x[i] == x[i+p] for all valid i (n for aperiodic x).

    Computed from the longest proper border via the KMP failure function.
    """
    n = len(x)
    if n == 0:
        raise ValueError("period of empty string is undefined")
    fail = [0] * n
    k = 0
    for q in range(1, n):
        while k > 0 and x[k] != x[q]:
            k = fail[k - 1]
        if x[k] == x[q]:
            k += 1
        fail[q] = k
    return n - fail[-1]


def weight(x: str) -> int:
    """Hamming weight (number of 1s)."""
    return x.count("1")


def hamming(a: str, b: str) -> int:
    """Hamming distance between equal-length strings."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum(c != d for c, d in zip(a, b))


@dataclass(frozen=True)
class RepeatLocation:
    """A pair of 1-based start positions i < j with x_{i,m} == x_{j,m}."""

    i: int
    j: int
    match_len: int

    @property
    def kind(self) -> str:
        return "nonoverlapping" if self.j - self.i >= self.match_len else "overlapping"


def _window_hashes(x: str, m: int) -> list[int]:
    """Rolling polynomial hashes of every length-m window of x."""
    n = len(x)
    out = []
    h = 0
    for c in x[:m]:
        h = (h * _HASH_BASE + ord(c)) % _HASH_MOD
    out.append(h)
    top = pow(_HASH_BASE, m - 1, _HASH_MOD)
    for s in range(1, n - m + 1):
        h = (h - ord(x[s - 1]) * top) % _HASH_MOD
        h = (h * _HASH_BASE + ord(x[s + m - 1])) % _HASH_MOD
        out.append(h)
    return out


def find_repeat(x: str, match_len: int, policy: str = "primal") -> RepeatLocation | None:
    """Find positions i < j with matching length-match_len windows, or None.

    Under the default "primal" policy the returned pair minimizes j, with
    ties broken by minimal i; under "first-any" it is the lexicographically
    first (i, j) pair.  Uses a rolling-hash index with exact verification of
    candidate matches.
    """
    if match_len < 1:
        raise ValueError("match_len must be >= 1")
    if policy not in ("primal", "first-any"):
        raise ValueError(f"unknown policy: {policy}")
    n = len(x)
    if n < match_len + 1:
        return None
    hashes = _window_hashes(x, match_len)
    seen: dict[int, list[int]] = {}
    if policy == "primal":
        for j0, h in enumerate(hashes):
            win = x[j0 : j0 + match_len]
            for i0 in seen.get(h, ()):
                if x[i0 : i0 + match_len] == win:
                    return RepeatLocation(i=i0 + 1, j=j0 + 1, match_len=match_len)
            seen.setdefault(h, []).append(j0)
        return None
    # first-any: the repeat whose first occurrence starts earliest.
    groups: dict[str, list[int]] = {}
    for j0, h in enumerate(hashes):
        win = x[j0 : j0 + match_len]
        groups.setdefault(win, []).append(j0)
    best = None
    for positions in groups.values():
        if len(positions) >= 2 and (best is None or positions[0] < best[0]):
            best = (positions[0], positions[1])
    if best is None:
        return None
    return RepeatLocation(i=best[0] + 1, j=best[1] + 1, match_len=match_len)


def find_repeat_quadratic(x: str, match_len: int) -> RepeatLocation | None:
    """Definition-level exhaustive repeat scan (test oracle for find_repeat)."""
    n = len(x)
    for j0 in range(1, n - match_len + 1):
        for i0 in range(j0):
            if x[i0 : i0 + match_len] == x[j0 : j0 + match_len]:
                return RepeatLocation(i=i0 + 1, j=j0 + 1, match_len=match_len)
    return None


def is_substring_unique(x: str, L: int) -> bool:
    """True iff all length-L windows of x are pairwise distinct."""
    if L < 1:
        raise ValueError("L must be >= 1")
    if len(x) < L:
        return True
    return find_repeat(x, L) is None


def is_heavy(x: str, window: int, w: int) -> bool:
    """True iff every length-window substring of x has weight >= w."""
    if window > len(x):
        raise ValueError("window longer than string")
    ones = 0
    for s in range(len(x)):
        ones += x[s] == "1"
        if s >= window:
            ones -= x[s - window] == "1"
        if s >= window - 1 and ones < w:
            return False
    return True


def is_substring_distinct(x: str, window: int, d: int) -> bool:
    """True iff every two distinct length-window substrings differ in >= d places."""
    if window > len(x):
        raise ValueError("window longer than string")
    vals = [int(x[s : s + window], 2) for s in range(len(x) - window + 1)]
    for a in range(len(vals)):
        va = vals[a]
        for b in range(a + 1, len(vals)):
            if (va ^ vals[b]).bit_count() < d:
                return False
    return True


def label(k: int, n: int) -> str:
    """B(k): the ceil(log2 n)-bit binary form of k-1, most-significant first."""
    if not 1 <= k <= n:
        raise ValueError(f"k={k} outside [1, {n}]")
    w = max(1, ceil_log2(n))
    return format(k - 1, f"0{w}b")


def unlabel(bits: str, n: int) -> int:
    """Inverse of label."""
    w = max(1, ceil_log2(n))
    if len(bits) != w:
        raise ValueError(f"expected {w} bits, got {len(bits)}")
    k = int(bits, 2) + 1
    if k > n:
        raise ValueError(f"label decodes to {k} > n={n}")
    return k


@lru_cache(maxsize=None)
def _rll_counts(width: int, max_zero_run: int) -> tuple[tuple[int, ...], ...]:
    """table[m][z]: strings of length m appendable after a current zero-run z.

    A string is admissible when no zero-run (including the one continuing
    from the left context) reaches max_zero_run + 1.
    """
    table = [[0] * (max_zero_run + 1) for _ in range(width + 1)]
    table[0] = [1] * (max_zero_run + 1)
    for m in range(1, width + 1):
        for z in range(max_zero_run + 1):
            total = table[m - 1][0]  # append '1', run resets
            if z + 1 <= max_zero_run:
                total += table[m - 1][z + 1]  # append '0', run grows
            table[m][z] = total
    return tuple(tuple(row) for row in table)


def rll_count(width: int, max_zero_run: int) -> int:
    """Number of width-bit strings whose longest zero-run is <= max_zero_run."""
    if width < 0:
        raise ValueError("width must be >= 0")
    if max_zero_run >= width:
        return 1 << width
    if max_zero_run < 0:
        return 0
    return _rll_counts(width, max_zero_run)[width][0]


def rll_unrank(rank: int, width: int, max_zero_run: int) -> str:
    """The rank-th (0-based, lexicographic) width-bit string with zero-runs <= max_zero_run."""
    total = rll_count(width, max_zero_run)
    if not 0 <= rank < total:
        raise ValueError(f"rank {rank} outside [0, {total})")
    if max_zero_run >= width:
        return format(rank, f"0{width}b") if width else ""
    table = _rll_counts(width, max_zero_run)
    bits = []
    z = 0
    for m in range(width, 0, -1):
        with_zero = table[m - 1][z + 1] if z + 1 <= max_zero_run else 0
        if rank < with_zero:
            bits.append("0")
            z += 1
        else:
            rank -= with_zero
            bits.append("1")
            z = 0
    return "".join(bits)


def rll_rank(bits: str, max_zero_run: int) -> int:
    """Inverse of rll_unrank."""
    width = len(bits)
    if max_zero_run >= width:
        return int(bits, 2) if width else 0
    table = _rll_counts(width, max_zero_run)
    rank = 0
    z = 0
    for pos, c in enumerate(bits):
        m = width - pos
        with_zero = table[m - 1][z + 1] if z + 1 <= max_zero_run else 0
        if c == "0":
            if with_zero == 0:
                raise ValueError("string violates the zero-run constraint")
            z += 1
        else:
            rank += with_zero
            z = 0
    return rank


def rll_width_for(n: int) -> tuple[int, int]:
    """(width, max_zero_run) used by the constrained labeling for domain [n]."""
    logn = ceil_log2(n)
    r = 2 * ceil_log2(logn)
    return logn + 1, r - 1


def label_rll(k: int, n: int) -> str:
    """B_r(k): k-th lexicographic (log n + 1)-bit string with zero-runs < r.

    r = 2*ceil(log2 ceil(log2 n)); raises if fewer than n such strings exist.
    """
    if not 1 <= k <= n:
        raise ValueError(f"k={k} outside [1, {n}]")
    width, mzr = rll_width_for(n)
    if rll_count(width, mzr) < n:
        raise ValueError(f"only {rll_count(width, mzr)} constrained strings for n={n}")
    return rll_unrank(k - 1, width, mzr)


def unlabel_rll(bits: str, n: int) -> int:
    """Inverse of label_rll."""
    width, mzr = rll_width_for(n)
    if len(bits) != width:
        raise ValueError(f"expected {width} bits, got {len(bits)}")
    k = rll_rank(bits, mzr) + 1
    if k > n:
        raise ValueError(f"label decodes to {k} > n={n}")
    return k


def max_zero_run(x: str) -> int:
    """Length of the longest run of 0s in x."""
    best = cur = 0
    for c in x:
        cur = cur + 1 if c == "0" else 0
        best = max(best, cur)
    return best
