import random

import pytest
from hypothesis import given, settings, strategies as st

from respectra import noisy as ns
from respectra.bitcore import is_heavy, is_substring_distinct
from respectra.exact import AssemblyError, DecodeError, InputError
from respectra.spectra import (
    NoisyChannelConfig,
    Spectrum,
    multispectrum,
    noisy_channel,
)

P = ns.solve_params(1024, 1, 1)


def payload(seed, p=P):
    rng = random.Random(seed)
    return "".join(rng.choice("01") for _ in range(p.payload_len))


def front_step(x_I, p=P):
    """Replicate the outer encoder's prefix/tail framing by hand."""
    vlen = p.L - 2 - p.tail_red
    head, v = x_I[:-vlen], x_I[-vlen:]
    return ns._prefix(p, p.n) + head + ns._tail_parity(p, v + "1") + v + "1"


def plant_copy(x_I, seed, p=P):
    """Duplicate one internal window inside the payload suffix."""
    rng = random.Random(seed)
    lo = len(x_I) - 540  # stays inside the contiguous payload suffix
    src = rng.randrange(lo, lo + 100)
    dst = rng.randrange(src + p.L_tilde, len(x_I) - p.L_tilde)
    return x_I[:dst] + x_I[src : src + p.L_tilde] + x_I[dst + p.L_tilde :]


def test_solve_params_desk_point():
    assert (P.L_tilde, P.L, P.P_L) == (203, 609, 71)
    assert P.payload_len == 1024 - 71 - 60 - 1
    assert P.rep_block == ("11110" * 4) and P.rep_len == 20
    assert P.v_len == 142 and P.mod == 410


def test_solve_params_monotone_grid():
    prev = {}
    for n in (1 << 10, 1 << 12, 1 << 14):
        for G in (1, 2):
            for t in (1, 2):
                try:
                    p = ns.solve_params(n, G, t)
                except ValueError:
                    continue
                for key, q in prev.items():
                    kn, kG, kt = key
                    if kn <= n and kG <= G and kt <= t:
                        assert q <= p.L_tilde
                prev[(n, G, t)] = p.L_tilde


def test_solve_params_rejects():
    with pytest.raises(ValueError):
        ns.solve_params(1024, 1, 0)
    with pytest.raises(ValueError):
        ns.solve_params(512, 1, 1)  # window cannot fit below n/3


def test_manifest_roundtrip():
    text = ns.manifest(P)
    assert "n=1024" in text and "L_tilde=203" in text
    assert ns.params_from_manifest(text) == P
    with pytest.raises(ValueError):
        ns.params_from_manifest(text.replace("L_tilde=203", "L_tilde=200"))


def test_diff_identity():
    z = "10" * (P.L_tilde // 2) + "1"
    rec = ns.diff_encode(z, z, P)
    assert rec == "0" * P.diff_len
    assert ns.diff_apply(z, rec, P) == z


def test_diff_single_flip():
    z1 = "1" * P.L_tilde
    z2 = z1[:4] + "0" + z1[5:]
    rec = ns.diff_encode(z1, z2, P)
    assert rec[: P.pos_width] == format(5, f"0{P.pos_width}b")
    assert ns.diff_apply(z1, rec, P) == z2
    assert ns.diff_apply(z2, rec, P) == z1


def test_diff_random_roundtrip():
    rng = random.Random(3)
    for _ in range(200):
        z1 = "".join(rng.choice("01") for _ in range(P.L_tilde))
        z2 = list(z1)
        for i in rng.sample(range(P.L_tilde), rng.randint(0, 6)):
            z2[i] = "1" if z2[i] == "0" else "0"
        z2 = "".join(z2)
        rec = ns.diff_encode(z1, z2, P)
        assert ns.diff_apply(z1, rec, P) == z2


def test_diff_rejects_wide_difference():
    z1 = "0" * P.L_tilde
    z2 = "1" * 7 + z1[7:]
    with pytest.raises(ValueError):
        ns.diff_encode(z1, z2, P)


def test_gtrr_identity_on_clean_input():
    y = front_step(payload(0))
    out, trace = ns.gtrr_encode(y, P)
    assert out == y and trace.rounds == ()


def test_gtrr_rejects_bad_inputs():
    with pytest.raises(InputError):
        ns.gtrr_encode("1" * 100, P)
    y = front_step(payload(1))
    with pytest.raises(InputError):
        ns.gtrr_encode("0" * P.P_L + y[P.P_L :], P)  # broken prefix
    with pytest.raises(InputError):
        ns.gtrr_encode(y[:500] + ("1" if y[500] == "0" else "0") + y[501:], P)


def test_gtrr_roundtrip_with_planted_repeat():
    for seed in range(10):
        y = front_step(plant_copy(payload(seed), seed))
        out, trace = ns.gtrr_encode(y, P)
        assert trace.rounds
        assert is_substring_distinct(out, P.L_tilde, 6 * P.t + 1)
        assert is_heavy(out, P.L_tilde, 2 * P.t + 1)
        assert out[-1] == "1"
        assert out[: P.P_L] == ns._prefix(P, len(out))
        for rnd in trace.rounds:
            assert rnd.kind == "repeat" and rnd.i != rnd.j
            assert len(rnd.appended) == P.L_tilde - 1
        assert ns.gtrr_decode(out, P) == y


def test_gtrr_roundtrip_overlapping_repeat():
    x_I = payload(42)
    x_I = x_I[:500] + ("10010110" * 30)[:240] + x_I[740:]
    y = front_step(x_I)
    out, trace = ns.gtrr_encode(y, P)
    assert any(rnd.j - rnd.i < P.L_tilde for rnd in trace.rounds if rnd.i != rnd.j)
    assert ns.gtrr_decode(out, P) == y


def test_gtrr_decode_light_round():
    # hand-run one low-weight-window replacement round and invert it
    x_I = payload(7)
    x_I = x_I[:500] + "0" * 101 + "1" + "0" * 101 + x_I[703:]
    y = front_step(x_I)
    s = y.find("0" * 101 + "1" + "0" * 101)
    j = s + 1
    window = y[j - 1 : j - 1 + P.L_tilde]
    assert sum(c == "1" for c in window) <= 2 * P.t
    body = y[: j - 1] + y[j - 1 + P.L_tilde :]
    v = (
        format(j - 1, "010b") * 2
        + ns.diff_encode("0" * P.L_tilde, window, P)
        + body[: P.P_L]
        + "1" * 3
    )
    xk = body + ns._tail_parity(P, ns._suffix2(body, P) + v) + v
    xk = ns._prefix(P, len(xk)) + xk[P.P_L :]
    assert ns.gtrr_decode(xk, P) == y


def test_gtrr_decode_full_length_identity():
    y = front_step(payload(2))
    assert ns.gtrr_decode(y, P) == y


def test_gtrr_decode_rejects_corrupt_record():
    y = front_step(plant_copy(payload(3), 3))
    out, _ = ns.gtrr_encode(y, P)
    bad = out[:-1] + ("0" if out[-1] == "1" else "1")
    with pytest.raises(DecodeError):
        ns.gtrr_decode(bad, P)


def test_gt_roundtrip():
    for seed in range(10):
        x_I = payload(100 + seed)
        x = ns.gt_encode(x_I, P)
        assert len(x) == 1024
        assert x[: P.rep_len] == P.rep_block
        assert ns.gt_decode(x, P) == x_I


def test_gt_roundtrip_with_repeats():
    for seed in range(5):
        x_I = plant_copy(payload(200 + seed), seed)
        x = ns.gt_encode(x_I, P)
        assert ns.gt_decode(x, P) == x_I


def test_assemble_noiseless_full_spectrum():
    x = ns.gt_encode(payload(300), P)
    assert ns.assemble_noisy(multispectrum(x, P.L), P, truth=x) == x


def test_assemble_adversarial_noisy_channel():
    for seed in range(6):
        x_I = payload(400 + seed)
        x = ns.gt_encode(x_I, P)
        cfg = NoisyChannelConfig(
            G=1, t=1, seed=seed, enforce_reliable=True, gap_mode="adversarial-worst"
        )
        M, trace = noisy_channel(x, P.L, cfg)
        assert any(offs for _, offs in trace.entries)  # noise actually injected
        got = ns.assemble_noisy(M, P, truth=x)
        assert got == x
        assert ns.gt_decode(got, P) == x_I


def test_assemble_random_gap_noisy_channel():
    for seed in range(4):
        x = ns.gt_encode(payload(500 + seed), P)
        cfg = NoisyChannelConfig(
            G=1, t=1, seed=seed, enforce_reliable=True, gap_mode="random-seeded"
        )
        M, _ = noisy_channel(x, P.L, cfg)
        assert ns.assemble_noisy(M, P, truth=x) == x


def test_assemble_rejects_bad_spectra():
    with pytest.raises(AssemblyError):
        ns.assemble_noisy(Spectrum(P.L, ()), P)
    with pytest.raises(AssemblyError):
        ns.assemble_noisy(Spectrum(10, ("1" * 10,)), P)


@settings(deadline=None, max_examples=10)
@given(st.integers(0, 2**32 - 1), st.integers(0, 2**32 - 1))
def test_noisy_pipeline_property(data_seed, channel_seed):
    """encode -> reliable noisy channel -> assemble -> decode is the identity."""
    x_I = payload(data_seed)
    x = ns.gt_encode(x_I, P)
    cfg = NoisyChannelConfig(
        G=1, t=1, seed=channel_seed, enforce_reliable=True, gap_mode="random-seeded"
    )
    M, _ = noisy_channel(x, P.L, cfg)
    assert ns.gt_decode(ns.assemble_noisy(M, P, truth=x), P) == x_I
