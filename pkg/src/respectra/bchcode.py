"""Systematic binary codes with a guaranteed minimum distance.

DistanceCode is a (possibly shortened) narrow-sense binary BCH code picked to
fit a requested message length and designed distance; codewords are laid out
as (message, parity).  GreedyLinearCode is a tiny brute-force construction
used as an independent oracle at toy lengths.
"""

from __future__ import annotations

import itertools
import random

# primitive polynomials over GF(2), one per field degree
_PRIMITIVE = {
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10001001,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100010001000011,
}


class CodeError(ValueError):
    """Raised when a word cannot be decoded within the code's radius."""


class _Field:
    """GF(2^m) with exp/log tables over the standard primitive element."""

    def __init__(self, m: int):
        self.m = m
        self.size = 1 << m
        poly = _PRIMITIVE[m]
        self.exp = [0] * (2 * self.size)
        self.log = [0] * self.size
        v = 1
        for i in range(self.size - 1):
            self.exp[i] = v
            self.log[v] = i
            v <<= 1
            if v & self.size:
                v ^= poly
        for i in range(self.size - 1, 2 * self.size):
            self.exp[i] = self.exp[i - (self.size - 1)]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        return self.exp[self.size - 1 - self.log[a]]

    def pow_alpha(self, e: int) -> int:
        return self.exp[e % (self.size - 1)]


def _poly_mod(num: int, den: int) -> int:
    """Remainder of GF(2) polynomial division (ints as coefficient masks)."""
    dd = den.bit_length() - 1
    while num.bit_length() - 1 >= dd:
        num ^= den << (num.bit_length() - 1 - dd)
    return num


def _coset(i: int, m: int) -> frozenset:
    """The 2-cyclotomic coset of i modulo 2^m - 1."""
    out = set()
    j = i % ((1 << m) - 1)
    while j not in out:
        out.add(j)
        j = j * 2 % ((1 << m) - 1)
    return frozenset(out)


def _minimal_poly(field: _Field, i: int) -> int:
    """Minimal polynomial of alpha^i over GF(2), as a coefficient mask."""
    coset = _coset(i, field.m)
    # product of (x - alpha^j), coefficients in GF(2^m), low degree first
    poly = [1]
    for j in coset:
        root = field.pow_alpha(j)
        nxt = [0] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k + 1] ^= c
            nxt[k] ^= field.mul(c, root)
        poly = nxt
    assert all(c in (0, 1) for c in poly)
    return sum(c << k for k, c in enumerate(poly))


class DistanceCode:
    """Shortened systematic BCH code with designed distance d for k-bit messages."""

    def __init__(self, msg_len: int, d: int):
        if msg_len < 1 or d < 3 or d % 2 == 0:
            raise ValueError("need msg_len >= 1 and odd d >= 3")
        self.msg_len = msg_len
        self.d = d
        self.t = (d - 1) // 2
        for m in range(3, 15):
            if (1 << m) - 1 < msg_len + 1:
                continue
            field = _Field(m)
            gen = 1
            used = set()
            for i in range(1, d - 1, 2):
                coset = _coset(i, m)
                if coset in used:
                    continue
                used.add(coset)
                gen = _poly_mul(gen, _minimal_poly(field, i))
            redundancy = gen.bit_length() - 1
            if msg_len + redundancy <= (1 << m) - 1:
                self.field = field
                self.gen = gen
                self.redundancy = redundancy
                self.N = msg_len + redundancy
                return
        raise ValueError(f"no field up to GF(2^14) fits msg_len={msg_len}, d={d}")

    def encode(self, msg: str) -> str:
        """Parity bits for msg; the codeword is msg + parity."""
        if len(msg) != self.msg_len or any(c not in "01" for c in msg):
            raise ValueError(f"expected a {self.msg_len}-bit message")
        rem = _poly_mod(int(msg, 2) << self.redundancy, self.gen)
        return format(rem, f"0{self.redundancy}b")

    def codeword(self, msg: str) -> str:
        return msg + self.encode(msg)

    def _syndromes(self, bits: str) -> list[int]:
        f = self.field
        out = []
        for j in range(1, 2 * self.t + 1):
            s = 0
            for idx, c in enumerate(bits):
                if c == "1":
                    s ^= f.pow_alpha(j * (self.N - 1 - idx))
            out.append(s)
        return out

    def decode(self, word: str) -> tuple[str, int]:
        """Corrected codeword and the number of flips applied (<= t)."""
        if len(word) != self.N or any(c not in "01" for c in word):
            raise ValueError(f"expected a {self.N}-bit word")
        synd = self._syndromes(word)
        if not any(synd):
            return word, 0
        f = self.field
        # Berlekamp-Massey for the error locator polynomial
        sigma, prev = [1], [1]
        L, shift = 0, 1
        b = 1
        for i, s in enumerate(synd):
            delta = s
            for j in range(1, L + 1):
                delta ^= f.mul(sigma[j], synd[i - j]) if j <= i else 0
            if delta == 0:
                shift += 1
            elif 2 * L <= i:
                tmp = sigma[:]
                coef = f.mul(delta, f.inv(b))
                shifted = [0] * shift + [f.mul(coef, c) for c in prev]
                sigma = _poly_add(sigma, shifted)
                prev, b, L, shift = tmp, delta, i + 1 - L, 1
            else:
                coef = f.mul(delta, f.inv(b))
                shifted = [0] * shift + [f.mul(coef, c) for c in prev]
                sigma = _poly_add(sigma, shifted)
                shift += 1
        if L > self.t:
            raise CodeError(f"error weight exceeds correction radius {self.t}")
        # Chien search over the shortened coordinate range
        flips = []
        for idx in range(self.N):
            e = self.N - 1 - idx
            v = 0
            for k, c in enumerate(sigma):
                if c:
                    v ^= f.mul(c, f.pow_alpha((-e * k) % (f.size - 1)))
            if v == 0:
                flips.append(idx)
        if len(flips) != L:
            raise CodeError("error locator roots do not match its degree")
        fixed = list(word)
        for idx in flips:
            fixed[idx] = "1" if fixed[idx] == "0" else "0"
        fixed = "".join(fixed)
        if any(self._syndromes(fixed)):
            raise CodeError("correction left a nonzero syndrome")
        return fixed, len(flips)

    def decode_message(self, word: str) -> str:
        return self.decode(word)[0][: self.msg_len]


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return [x ^ y for x, y in zip(a, b)]


def _poly_mul(a: int, b: int) -> int:
    out = 0
    while b:
        low = b & -b
        out ^= a * low  # single-bit multiply is a shift
        b ^= low
    return out


class GreedyLinearCode:
    """Brute-force systematic linear code; independent oracle for toy lengths.

    Parity columns are drawn greedily at random until every nonzero message
    of the (small) message space yields a codeword of weight >= d.
    """

    def __init__(self, msg_len: int, d: int, seed: int = 0, max_parity: int = 64):
        if msg_len > 12:
            raise ValueError("oracle limited to msg_len <= 12")
        self.msg_len = msg_len
        self.d = d
        self.t = (d - 1) // 2
        rng = random.Random(seed)
        msgs = list(range(1, 1 << msg_len))
        for redundancy in range(d - 1, max_parity + 1):
            for _ in range(2000):
                rows = [rng.getrandbits(redundancy) for _ in range(msg_len)]
                if all(self._weight(v, rows, redundancy) >= d for v in msgs):
                    self.rows = rows
                    self.redundancy = redundancy
                    self.N = msg_len + redundancy
                    return
        raise ValueError("no generator found within the parity budget")

    def _parity(self, v: int) -> int:
        p = 0
        for bit in range(self.msg_len):
            if v >> (self.msg_len - 1 - bit) & 1:
                p ^= self.rows[bit]
        return p

    def _weight(self, v: int, rows: list[int], redundancy: int) -> int:
        p = 0
        for bit in range(self.msg_len):
            if v >> (self.msg_len - 1 - bit) & 1:
                p ^= rows[bit]
        return v.bit_count() + p.bit_count()

    def encode(self, msg: str) -> str:
        if len(msg) != self.msg_len:
            raise ValueError(f"expected a {self.msg_len}-bit message")
        return format(self._parity(int(msg, 2)), f"0{self.redundancy}b")

    def codeword(self, msg: str) -> str:
        return msg + self.encode(msg)

    def decode(self, word: str) -> tuple[str, int]:
        """Nearest-codeword search; exact but exponential in msg_len."""
        if len(word) != self.N:
            raise ValueError(f"expected a {self.N}-bit word")
        w = int(word, 2)
        best, best_dist = None, self.N + 1
        for v in range(1 << self.msg_len):
            cw = (v << self.redundancy) | self._parity(v)
            dist = (cw ^ w).bit_count()
            if dist < best_dist:
                best, best_dist = cw, dist
        if best_dist > self.t:
            raise CodeError(f"error weight exceeds correction radius {self.t}")
        return format(best, f"0{self.N}b"), best_dist
