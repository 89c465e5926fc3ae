"""Codec tolerating both coverage gaps and per-read substitution errors.

Reads have length L = 3*L_tilde.  The encoder forces every pair of
L_tilde-windows to Hamming distance >= 6t+1 and every window to weight
>= 2t+1, pins a periodic run-length prefix plus a protected length residue,
and shields the final L-1 bits with a distance-2(5t+G)+1 systematic code.
The assembler then recovers the codeword from any reliable spectrum with
coverage gap <= G and <= t flips per read.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import bitcore as bc
from .bchcode import CodeError, DistanceCode
from .exact import AssemblyError, DecodeError, EncodingTrace, InputError
from .spectra import Spectrum


@dataclass(frozen=True)
class NoisyRound:
    """One replacement round; kind is "repeat" (i != j) or "light" (i == j)."""

    k: int
    i: int
    j: int
    kind: str
    appended: str


@dataclass(frozen=True)
class NoisyParams:
    """Solved parameter point: window scale, prefix block, and sub-codes."""

    n: int
    G: int
    t: int
    L_tilde: int
    P_L: int

    @property
    def L(self) -> int:
        return 3 * self.L_tilde

    @property
    def d(self) -> int:
        return 2 * (5 * self.t + self.G) + 1

    @property
    def b_width(self) -> int:
        return bc.ceil_log2(self.n)

    @property
    def pos_width(self) -> int:
        return bc.ceil_log2(self.L_tilde + 1)

    @property
    def diff_len(self) -> int:
        return 6 * self.t * self.pos_width

    @property
    def tail_red(self) -> int:
        return (5 * self.t + self.G) * bc.ceil_log2(self.L - 1)

    @property
    def mod(self) -> int:
        return 2 * (self.G + self.L_tilde + 1)

    @property
    def mod_width(self) -> int:
        return bc.ceil_log2(self.mod)

    @property
    def rep_len(self) -> int:
        return (2 * self.t + self.G + 2) * (2 * self.t + 2)

    @property
    def rep_block(self) -> str:
        return ("1" * (2 * self.t + self.G + 1) + "0") * (2 * self.t + 2)

    @property
    def v_len(self) -> int:
        """Length of the locator block v inside each appended record."""
        return self.L_tilde - 1 - self.tail_red

    @property
    def payload_len(self) -> int:
        return self.n - self.P_L - self.tail_red - 1

    @property
    def tail_code(self) -> DistanceCode:
        return _code_cache(self.L - 1 - self.tail_red, self.d)

    @property
    def v_code(self) -> DistanceCode:
        return _code_cache(self.mod_width, self.d)


_codes: dict[tuple[int, int], DistanceCode] = {}


def _code_cache(msg_len: int, d: int) -> DistanceCode:
    key = (msg_len, d)
    if key not in _codes:
        _codes[key] = DistanceCode(msg_len, d)
    return _codes[key]


def solve_params(n: int, G: int, t: int) -> NoisyParams:
    """Least (L_tilde, P_L) fixed point of the window-length relations."""
    if t < 1 or G < 1:
        raise ValueError("need t >= 1 and G >= 1")
    lg = bc.ceil_log2(n)
    rep_len = (2 * t + G + 2) * (2 * t + 2)
    Lt = 2 * lg
    while True:
        target = bc.ceil_log2(2 * (G + Lt + 1))
        P = rep_len + 1
        while P - (5 * t + G) * bc.ceil_log2(P) - rep_len < target:
            P += 1
        nxt = (
            2 * lg
            + 6 * t * bc.ceil_log2(Lt + 1)
            + (5 * t + G) * bc.ceil_log2(3 * Lt - 1)
            + P
            + 2 * t
            + 2
        )
        if nxt == Lt:
            break
        if nxt > n // 3:
            raise ValueError(f"no window fixed point below n/3 for n={n}, G={G}, t={t}")
        Lt = nxt
    if G >= Lt:
        raise ValueError("G must be smaller than the internal window")
    p = NoisyParams(n=n, G=G, t=t, L_tilde=Lt, P_L=P)
    if p.L > n:
        raise ValueError(f"L={p.L} exceeds n={n}")
    tc = p.tail_code
    if tc.redundancy > p.tail_red or p.v_code.redundancy > p.P_L - rep_len - p.mod_width:
        raise ValueError("sub-code redundancy exceeds its reserved slot")
    return p


def manifest(p: NoisyParams) -> str:
    """key=value parameter sidecar; decoding never re-derives silently."""
    rows = {
        "n": p.n,
        "G": p.G,
        "t": p.t,
        "L_tilde": p.L_tilde,
        "L": p.L,
        "P_L": p.P_L,
        "tail_code_redundancy": p.tail_code.redundancy,
        "v_code_redundancy": p.v_code.redundancy,
    }
    return "".join(f"{k}={v}\n" for k, v in rows.items())


def params_from_manifest(text: str) -> NoisyParams:
    fields = dict(line.split("=", 1) for line in text.split() if "=" in line)
    p = solve_params(int(fields["n"]), int(fields["G"]), int(fields["t"]))
    if p.L_tilde != int(fields["L_tilde"]) or p.P_L != int(fields["P_L"]):
        raise ValueError("manifest disagrees with the solved parameter point")
    return p


def diff_encode(z1: str, z2: str, p: NoisyParams) -> str:
    """Fixed-width list of 1-based differing positions (0 = empty slot)."""
    if len(z1) != p.L_tilde or len(z2) != p.L_tilde:
        raise ValueError("diff operands must have the internal window length")
    positions = [k + 1 for k in range(p.L_tilde) if z1[k] != z2[k]]
    if len(positions) > 6 * p.t:
        raise ValueError(f"strings differ in {len(positions)} > 6t places")
    positions += [0] * (6 * p.t - len(positions))
    return "".join(format(v, f"0{p.pos_width}b") for v in positions)


def diff_apply(z: str, rec: str, p: NoisyParams) -> str:
    """Flip the positions listed in rec; inverse of diff_encode either way."""
    if len(rec) != p.diff_len:
        raise ValueError(f"expected a {p.diff_len}-bit difference record")
    out = list(z)
    for s in range(6 * p.t):
        v = int(rec[s * p.pos_width : (s + 1) * p.pos_width], 2)
        if v == 0:
            continue
        if v > len(z):
            raise ValueError(f"difference position {v} out of range")
        out[v - 1] = "1" if out[v - 1] == "0" else "0"
    return "".join(out)


def _v_block(p: NoisyParams, length: int) -> str:
    """Protected residue of the current string length, padded to its slot."""
    msg = format(length % p.mod, f"0{p.mod_width}b")
    body = msg + p.v_code.encode(msg)
    return body + "1" * (p.P_L - p.rep_len - len(body))


def _prefix(p: NoisyParams, length: int) -> str:
    return p.rep_block + _v_block(p, length)


def _tail_parity(p: NoisyParams, msg: str) -> str:
    parity = p.tail_code.encode(msg)
    return parity + "1" * (p.tail_red - len(parity))


def _suffix2(x: str, p: NoisyParams) -> str:
    """The final 2*L_tilde bits, zero-extended on the right if x is shorter."""
    w = 2 * p.L_tilde
    return x[-w:] if len(x) >= w else x + "0" * (w - len(x))


def _find_soft_repeat(x: str, p: NoisyParams):
    """Positions (i, j), i < j, of windows within distance 6t; minimal j, then i."""
    Lt, cap = p.L_tilde, 6 * p.t
    vals = [int(x[s : s + Lt], 2) for s in range(len(x) - Lt + 1)]
    for j in range(1, len(vals) + 1):
        vj = vals[j - 1]
        for i in range(1, j):
            if (vals[i - 1] ^ vj).bit_count() <= cap:
                return i, j
    return None


def _check_tail_codeword(window: str, p: NoisyParams) -> bool:
    """Zero-round layout: (parity slot, message) across the last L-1 bits."""
    msg = window[p.tail_red :]
    return window[: p.tail_red] == _tail_parity(p, msg)


def gtrr_encode(x_I: str, p: NoisyParams) -> tuple[str, EncodingTrace]:
    """Make the string window-distinct and heavy while staying invertible."""
    n, Lt = p.n, p.L_tilde
    bc.check_bits(x_I)
    if len(x_I) != n:
        raise InputError(f"expected length {n}, got {len(x_I)}")
    if x_I[: p.P_L] != _prefix(p, n):
        raise InputError("prefix block does not match the pinned pattern")
    if x_I[-1] != "1":
        raise InputError("input must end with 1")
    if not _check_tail_codeword(x_I[-(p.L - 1) :], p):
        raise InputError("final window is not a protected codeword")
    x = x_I
    rounds = []
    while not (
        bc.is_substring_distinct(x, Lt, 6 * p.t + 1) and bc.is_heavy(x, Lt, 2 * p.t + 1)
    ):
        if len(rounds) >= n - Lt + 1:
            raise RuntimeError("round budget exceeded; termination argument violated")
        rep = _find_soft_repeat(x, p)
        if rep is not None:
            i, j = rep
            diff = diff_encode(x[i - 1 : i - 1 + Lt], x[j - 1 : j - 1 + Lt], p)
            kind = "repeat"
        else:
            j = next(
                s + 1
                for s in range(len(x) - Lt + 1)
                if bc.weight(x[s : s + Lt]) <= 2 * p.t
            )
            i = j
            diff = diff_encode("0" * Lt, x[j - 1 : j - 1 + Lt], p)
            kind = "light"
        x = x[: j - 1] + x[j - 1 + Lt :]
        v = (
            bc.label(i, n)
            + bc.label(j, n)
            + diff
            + x[: p.P_L]
            + "1" * (2 * p.t + 1)
        )
        assert len(v) == p.v_len
        record = _tail_parity(p, _suffix2(x, p) + v) + v
        x = x + record
        x = _prefix(p, len(x)) + x[p.P_L :]
        rounds.append(NoisyRound(len(rounds) + 1, i, j, kind, record))
    return x, EncodingTrace(tuple(rounds))


def gtrr_decode(x: str, p: NoisyParams) -> str:
    """Invert gtrr_encode by peeling records back to length n."""
    n, Lt = p.n, p.L_tilde
    bc.check_bits(x)
    if len(x) > n:
        raise DecodeError(f"length {len(x)} exceeds n={n}")
    while len(x) < n:
        if len(x) < Lt - 1 + p.P_L:
            raise DecodeError("string too short to hold a record and prefix")
        record = x[-(Lt - 1) :]
        body = x[: -(Lt - 1)]
        v = record[p.tail_red :]
        if record[: p.tail_red] != _tail_parity(p, _suffix2(body, p) + v):
            raise DecodeError("record parity mismatch")
        bw = p.b_width
        bi, bj = v[:bw], v[bw : 2 * bw]
        diff = v[2 * bw : 2 * bw + p.diff_len]
        snapshot = v[2 * bw + p.diff_len : 2 * bw + p.diff_len + p.P_L]
        if v[2 * bw + p.diff_len + p.P_L :] != "1" * (2 * p.t + 1):
            raise DecodeError(f"malformed locator block {v!r}")
        i, j = bc.unlabel(bi, n), bc.unlabel(bj, n)
        body = snapshot + body[p.P_L :]
        if j - 1 > len(body):
            raise DecodeError(f"reinsertion position {j} out of range")
        if i == j:
            window = diff_apply("0" * Lt, diff, p)
        elif i < j:
            if j - i >= Lt:
                if i - 1 + Lt > len(body):
                    raise DecodeError("source window out of range")
                window = diff_apply(body[i - 1 : i - 1 + Lt], diff, p)
            else:
                # the source window overlaps the reinserted one; rebuild it
                # left to right, feeding recovered bits back into the source
                flips = set()
                for s in range(6 * p.t):
                    val = int(diff[s * p.pos_width : (s + 1) * p.pos_width], 2)
                    if val:
                        flips.add(val)
                span = j - i
                bits = []
                for k in range(Lt):
                    src = body[i - 1 + k] if k < span else bits[k - span]
                    bits.append(
                        src if (k + 1) not in flips
                        else ("1" if src == "0" else "0")
                    )
                window = "".join(bits)
        else:
            raise DecodeError(f"bad repeat positions ({i}, {j})")
        x = body[: j - 1] + window + body[j - 1 :]
    return x


def gt_encode(x_I: str, p: NoisyParams) -> str:
    """Full codeword: pinned prefix, protected tail, replacement, zero-pad."""
    n = p.n
    bc.check_bits(x_I)
    if len(x_I) != p.payload_len:
        raise InputError(f"expected length {p.payload_len}, got {len(x_I)}")
    vlen = p.L - 2 - p.tail_red
    head, v = x_I[:-vlen], x_I[-vlen:]
    y = _prefix(p, n) + head + _tail_parity(p, v + "1") + v + "1"
    assert len(y) == n
    z, _ = gtrr_encode(y, p)
    return z + "0" * (n - len(z))


def gt_decode(x: str, p: NoisyParams) -> str:
    """Invert gt_encode."""
    n = p.n
    bc.check_bits(x)
    if len(x) != n:
        raise DecodeError(f"expected length {n}, got {len(x)}")
    core = x.rstrip("0")
    if not core:
        raise DecodeError("all-zero string cannot be a codeword")
    y = gtrr_decode(core, p)
    if y[: p.P_L] != _prefix(p, n):
        raise DecodeError("prefix block does not match the pinned pattern")
    if y[-1] != "1":
        raise DecodeError("codeword core must end with 1")
    vlen = p.L - 2 - p.tail_red
    v = y[-(vlen + 1) : -1]
    if y[-(p.L - 1) : -(vlen + 1)] != _tail_parity(p, v + "1"):
        raise DecodeError("tail parity mismatch")
    return y[p.P_L : -(p.L - 1)] + v


def _tail_heavy(r: str, p: NoisyParams) -> bool:
    return bc.weight(r[2 * p.L_tilde :]) >= p.t + 1


def _pick_start(reads: list[str], p: NoisyParams) -> str:
    """A read aligned within the pinned prefix (Initialization phase)."""
    Lt, L, cap = p.L_tilde, p.L, 6 * p.t
    heavy = sorted({r for r in reads if _tail_heavy(r, p)})
    candidates = {r: int(r[:Lt], 2) for r in heavy}
    distinct = list(dict.fromkeys(reads))
    for j in range(2, L - Lt + 2):
        if not candidates:
            break
        for z in distinct:
            w = int(z[j - 1 : j - 1 + Lt], 2)
            for r in [c for c, pref in candidates.items() if (w ^ pref).bit_count() <= cap]:
                del candidates[r]
            if not candidates:
                break
    if candidates:
        return min(candidates)
    # degenerate short-core fallback: deepest (t+1)-heavy short window wins
    best_j, best = -1, None
    span = 2 * p.t + 1
    for r in sorted(set(reads)):
        for j in range(L - span + 1, 0, -1):
            if bc.weight(r[j - 1 : j - 1 + span]) >= p.t + 1:
                if j > best_j:
                    best_j, best = j, r
                break
    if best is None:
        raise AssemblyError("no admissible initialization read")
    return best


def assemble_noisy(M_tilde: Spectrum, p: NoisyParams, truth: str | None = None) -> str:
    """Six-phase reconstruction from a reliable (G,t)-constrained spectrum.

    When `truth` (the original codeword) is supplied, the intermediate
    guarantees of each phase are asserted against it and any violation
    raises AssemblyError.
    """
    n, L, Lt, cap = p.n, p.L, p.L_tilde, 6 * p.t
    if M_tilde.L != L:
        raise AssemblyError(f"spectrum L={M_tilde.L} does not match params L={L}")
    reads = list(M_tilde.reads)
    if not reads:
        raise AssemblyError("empty spectrum")
    core_truth = truth.rstrip("0") if truth is not None else None

    # Initialization
    start = _pick_start(reads, p)

    # Prefix repair: per-residue majority across the periodic head copies
    period = 2 * p.t + p.G + 2
    copies = 2 * p.t + 1
    head = list(start)
    for i in range(period):
        ones = sum(head[i + c * period] == "1" for c in range(copies))
        head[i] = "1" if 2 * ones > copies else "0"
    repaired = "".join(head)
    zero_at = repaired[:period].find("0")
    if zero_at < 0:
        raise AssemblyError("initialization read misses the run-length pattern")
    est = "1" * (period - 1 - zero_at) + repaired
    if core_truth is not None:
        m0 = min(len(est), len(core_truth))
        if bc.hamming(est[:m0], core_truth[:m0]) > p.t:
            raise AssemblyError("prefix repair exceeded the error budget")
    block = est[p.rep_len : p.P_L]
    try:
        fixed, _ = p.v_code.decode(block[: p.v_code.N])
    except CodeError as e:
        raise AssemblyError(f"length residue unrecoverable: {e}") from e
    ell_mod = int(fixed[: p.mod_width], 2)
    if ell_mod >= p.mod:
        raise AssemblyError("length residue out of range")

    # Extension: repeatedly append the furthest matching read's overhang
    heavy = sorted({r for r in reads if _tail_heavy(r, p)})
    prefs = {r: int(r[:Lt], 2) for r in heavy}
    while True:
        m = len(est)
        if m > n + L:
            raise AssemblyError("estimate grew past any admissible length")
        hit = None
        for j in range(m - Lt + 1, max(m - L + 1, 0), -1):
            w = int(est[j - 1 : j - 1 + Lt], 2)
            at_j = [r for r in heavy if (w ^ prefs[r]).bit_count() <= cap]
            if at_j:
                hit = (j, min(at_j))
                break
        if hit is None:
            break
        j, r = hit
        h = L - (m - j + 1)
        est += r[-h:]

    # Length adjustment
    rmod = (len(est) - ell_mod) % p.mod
    if rmod:
        if rmod <= Lt - 1:
            est = est[: len(est) - rmod]
        else:
            est += "0" * (p.mod - rmod)
    if core_truth is not None:
        if len(est) != len(core_truth):
            raise AssemblyError("adjusted length misses the true core length")
        for s in range(len(est) - L + 1):
            if bc.hamming(est[s : s + L], core_truth[s : s + L]) > 5 * p.t:
                raise AssemblyError("window drifted beyond the 5t guarantee")

    # Error correction: per-position majority over approximate repeats
    limit = len(est) - L + 1
    if limit < 1:
        raise AssemblyError("estimate shorter than a single read")
    est_wins = [int(est[s : s + Lt], 2) for s in range(len(est) - Lt + 1)]
    votes = [[0, 0] for _ in range(limit + 1)]
    counts = M_tilde.counts
    for r in heavy:
        pref = prefs[r]
        for a0, w in enumerate(est_wins):
            if (w ^ pref).bit_count() > cap:
                continue
            for o in range(L):
                i = a0 + 1 + o
                if i > limit:
                    break
                votes[i][r[o] == "1"] += counts[r]
    fixed_bits = []
    for i in range(1, limit + 1):
        zeros, ones = votes[i]
        if zeros == ones:
            if zeros > 0:
                raise AssemblyError(f"majority tie at position {i}")
            # position before the first surviving read: the repaired prefix
            # ones from the run-length block are already exact
            if i > p.G:
                raise AssemblyError(f"no read covers position {i}")
            fixed_bits.append(est[i - 1])
            continue
        fixed_bits.append("1" if ones > zeros else "0")
    est = "".join(fixed_bits) + est[limit:]
    if core_truth is not None and est[:limit] != core_truth[:limit]:
        raise AssemblyError("majority correction failed on the settled prefix")

    # Termination: decode the protected tail window, trying both layouts
    window = est[limit:]
    est = est[:limit] + _repair_tail(window, p)
    if len(est) > n:
        raise AssemblyError("assembled string longer than n")
    return est + "0" * (n - len(est))


def _repair_tail(window: str, p: NoisyParams) -> str:
    """Correct the final L-1 bits under either of the two codeword layouts."""
    red = p.tail_code.redundancy
    outcomes = []
    # layout written by the outer encoder: (parity, message)
    try:
        fixed, nf = p.tail_code.decode(window[p.tail_red :] + window[:red])
        pad_bad = window[red : p.tail_red].count("0")
        cand = fixed[-red:] + "1" * (p.tail_red - red) + fixed[: p.tail_code.msg_len]
        outcomes.append((nf + pad_bad, cand))
    except CodeError:
        pass
    # layout written by a replacement round: (2L-window, parity, locator)
    w2 = 2 * p.L_tilde
    try:
        fixed, nf = p.tail_code.decode(
            window[:w2] + window[p.tail_red + w2 :] + window[w2 : w2 + red]
        )
        pad_bad = window[w2 + red : w2 + p.tail_red].count("0")
        cand = (
            fixed[:w2]
            + fixed[-red:]
            + "1" * (p.tail_red - red)
            + fixed[w2 : p.tail_code.msg_len]
        )
        outcomes.append((nf + pad_bad, cand))
    except CodeError:
        pass
    if not outcomes:
        raise AssemblyError("tail window unrecoverable under either layout")
    outcomes.sort(key=lambda kv: kv[0])
    if len(outcomes) == 2 and outcomes[0][0] == outcomes[1][0]:
        if outcomes[0][1] != outcomes[1][1]:
            raise AssemblyError("tail window layout ambiguous")
    return outcomes[0][1]
