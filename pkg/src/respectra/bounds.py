"""Counting lab for substring-unique strings.

U(n, L) is the set of length-n strings whose (L-1)-windows are pairwise
distinct.  This module evaluates the closed-form sandwich bounds on |U(n,L)|
(exact rational lower, floating-point upper), enumerates small instances
exhaustively, and checks the one-bit-redundancy condition.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

from .bitcore import rll_count  # re-exported: part of the counting results

__all__ = [
    "BoundReport",
    "BudgetError",
    "u_bounds",
    "enumerate_u",
    "redundancy_check",
    "bound_table",
    "format_table",
    "csv_rows",
    "rll_count",
]

_DEFAULT_BUDGET = 24


class BudgetError(RuntimeError):
    """Enumeration request exceeds the configured exponent budget."""


@dataclass(frozen=True)
class BoundReport:
    n: int
    L: int
    lower: Fraction
    upper: float
    exact_count: int | None = None

    @property
    def vacuous(self) -> bool:
        return self.lower <= 0

    @property
    def upper_violated(self) -> bool:
        """Advisory: exact count above the exp-form upper bound (reported only)."""
        return self.exact_count is not None and self.exact_count > self.upper


def u_bounds(n: int, L: int) -> BoundReport:
    """Closed-form sandwich: 2^n(1 - (n-L+1)^2/2^L) <= |U| <= 2^n e^(...)."""
    if not 2 <= L <= n:
        raise ValueError(f"need 2 <= L <= n, got L={L}, n={n}")
    lower = (1 << n) * (1 - Fraction((n - L + 1) ** 2, 1 << L))
    try:
        upper = (1 << n) * math.exp(-(n - L + 1) / (1 << L) * (n / (L - 1) - 2))
    except OverflowError:
        upper = math.inf  # advisory bound saturates past float range
    return BoundReport(n=n, L=L, lower=lower, upper=upper)


def _budget() -> int:
    raw = os.environ.get("RESPECTRA_BUDGET", "")
    return int(raw) if raw.isdigit() else _DEFAULT_BUDGET


def enumerate_u(n: int, L: int) -> int:
    """Exact |U(n, L)| by scanning all 2^n strings, in independent shards."""
    if not 2 <= L <= n + 1:  # L = n+1 leaves a single window; all strings qualify
        raise ValueError(f"need 2 <= L <= n+1, got L={L}, n={n}")
    cap = min(_DEFAULT_BUDGET, _budget())
    if n > cap:
        raise BudgetError(f"n={n} exceeds the enumeration budget {cap}")
    m = L - 1
    shard_bits = max(0, n - 14)
    shard_size = 1 << (n - shard_bits)
    return sum(
        _count_shard(s << (n - shard_bits), shard_size, n, m)
        for s in range(1 << shard_bits)
    )


def _count_shard(start: int, size: int, n: int, m: int) -> int:
    mask = (1 << m) - 1
    span = n - m + 1
    count = 0
    for v in range(start, start + size):
        seen = set()
        for s in range(span):
            w = (v >> s) & mask
            if w in seen:
                break
            seen.add(w)
        else:
            count += 1
    return count


def redundancy_check(n: int) -> bool:
    """True iff the lower bound at L = 2 ceil(log2 n) + 2 certifies >= n-1 bits."""
    if n < 2:
        raise ValueError("n must be >= 2")
    L = 2 * max(1, (n - 1).bit_length()) + 2
    if L > n:
        return False
    report = u_bounds(n, L)
    return report.lower >= (1 << (n - 1))


def bound_table(
    pairs: list[tuple[int, int]], enumerate_counts: bool = False
) -> list[BoundReport]:
    out = []
    for n, L in pairs:
        r = u_bounds(n, L)
        if enumerate_counts:
            r = BoundReport(n, L, r.lower, r.upper, enumerate_u(n, L))
        out.append(r)
    return out


def _row(r: BoundReport) -> tuple[str, str, str, str, str]:
    exact = "" if r.exact_count is None else str(r.exact_count)
    return (str(r.n), str(r.L), f"{float(r.lower):.6g}", f"{r.upper:.6g}", exact)


def csv_rows(reports: list[BoundReport]) -> str:
    lines = ["n,L,lower,upper,exact"]
    lines.extend(",".join(_row(r)) for r in reports)
    return "\n".join(lines) + "\n"


def format_table(reports: list[BoundReport]) -> str:
    headers = ("n", "L", "lower", "upper", "exact", "one-bit")
    rows = [
        _row(r) + ("yes" if redundancy_check(r.n) else "no",) for r in reports
    ]
    widths = [max(len(h), *(len(row[i]) for row in rows)) for i, h in enumerate(headers)]
    fmt = "  ".join(f"{{:>{w}}}" for w in widths)
    lines = [fmt.format(*headers)]
    lines.extend(fmt.format(*row) for row in rows)
    return "\n".join(lines) + "\n"
