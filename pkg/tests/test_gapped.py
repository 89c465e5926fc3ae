import random

import pytest
from hypothesis import given, settings, strategies as st

from respectra import gapped as gp
from respectra.bitcore import is_substring_unique
from respectra.exact import AssemblyError, DecodeError, InputError
from respectra.spectra import (
    GapChannelConfig,
    Spectrum,
    coverage_gap,
    gap_channel,
    multispectrum,
    take_reads,
)

P256 = gp.GapParams(256, 2)  # L_hat = 21, L = 24
P24 = gp.GapParams(24, 1)  # L_hat = 14, L = 16


def payload(p, seed):
    rng = random.Random(seed)
    return "".join(rng.choice("01") for _ in range(p.n - 3 * p.G - 3))


def pinned_input(p, seed):
    """Apply the outer front step to a random payload by hand."""
    y = "1" * p.G + "0" + payload(p, seed)
    y = y + y[p.L_hat - 1 : p.L_hat + p.G] + "1"
    return y[: p.L_hat - 1] + "1" * (p.G + 1) + y[p.L_hat + p.G :]


def plant_repeat(x_I, p, seed):
    """Copy one L_hat-window elsewhere without touching the pinned bits."""
    rng = random.Random(seed)
    Lh, G = p.L_hat, p.G
    lo = Lh + G  # keep prefix, pinned window and stored tail intact
    hi = len(x_I) - G - 2 - Lh
    for _ in range(200):
        src = rng.randrange(lo, hi)
        dst = rng.randrange(lo, hi)
        y = x_I[:dst] + x_I[src : src + Lh] + x_I[dst + Lh :]
        if not is_substring_unique(y, Lh):
            return y
    raise AssertionError("could not plant a repeat")


def periodic_head_payload(p, seed):
    """Payload whose codeword starts (1,1,0,1,1,0,...): forces early rounds."""
    body = payload(p, seed)
    head = ("1" * p.G + "0") * 12
    return (head + body)[: len(body)]


def test_params():
    assert P256.L_hat == 21 and P256.L == 24 and P256.redundancy == 9
    assert gp.GapParams(1024, 1).L == 26
    with pytest.raises(ValueError):
        gp.GapParams(256, 0)
    with pytest.raises(ValueError):
        gp.GapParams(30, 5)


def test_grr_rejects_bad_inputs():
    with pytest.raises(InputError):
        gp.grr_encode("1" * 300, P256)  # too long
    with pytest.raises(InputError):
        gp.grr_encode("1" * 253 + "0", P256)  # last bit 0
    bad = pinned_input(P256, 0)
    bad = bad[:20] + "000" + bad[23:]
    with pytest.raises(InputError):
        gp.grr_encode(bad, P256)  # pinned window disturbed


def test_grr_identity_on_unique_input():
    x = pinned_input(P256, 1)
    if is_substring_unique(x, 21):
        out, trace = gp.grr_encode(x, P256)
        assert out == x and trace.rounds == ()


def test_grr_roundtrip_with_planted_repeats():
    for seed in range(30):
        x_I = plant_repeat(pinned_input(P256, seed), P256, seed)
        out, trace = gp.grr_encode(x_I, P256)
        assert trace.rounds
        assert is_substring_unique(out, 21)
        assert out[20:23] == "111" and out[-1] == "1"
        assert len(out) == len(x_I) - len(trace.rounds)
        for rnd in trace.rounds:
            assert len(rnd.appended) == 20  # L_hat - 1
            assert rnd.appended.endswith("1" * 4)  # G + 2 ones before any fixup
        assert gp.grr_decode(out, P256, target_len=len(x_I)) == x_I


def test_grr_window_fixup_roundtrip():
    hit = 0
    for seed in range(12):
        y = "1" * 2 + "0" + periodic_head_payload(P256, seed)
        y = y + y[20:23] + "1"
        y = y[:20] + "111" + y[23:]
        out, trace = gp.grr_encode(y, P256)
        hit += any(rnd.fixup for rnd in trace.rounds)
        assert gp.grr_decode(out, P256, target_len=len(y)) == y
    assert hit > 0  # the sample exercises the displaced-window path


def test_grr_decode_rejects_malformed_record():
    x_I = plant_repeat(pinned_input(P256, 2), P256, 7)
    out, _ = gp.grr_encode(x_I, P256)
    broken = out[:-1] + "0"
    with pytest.raises(DecodeError):
        gp.grr_decode(broken, P256, target_len=len(x_I))


def test_g_roundtrip_random():
    for seed in range(20):
        x_I = payload(P256, 100 + seed)
        x = gp.g_encode(x_I, P256)
        assert len(x) == 256
        assert gp.g_decode(x, P256) == x_I


def test_g_roundtrip_with_repeats_and_fixups():
    for seed in range(10):
        x_I = periodic_head_payload(P256, 200 + seed)
        x = gp.g_encode(x_I, P256)
        assert gp.g_decode(x, P256) == x_I


def test_assemble_full_spectrum():
    for seed in range(5):
        x = gp.g_encode(payload(P256, 300 + seed), P256)
        assert gp.assemble_gapped(multispectrum(x, 24), P256) == x


def test_assemble_adversarial_channel():
    cfg = GapChannelConfig(G=2, mode="adversarial-worst")
    for seed in range(5):
        x_I = payload(P256, 400 + seed)
        x = gp.g_encode(x_I, P256)
        M_hat, trace = gap_channel(x, 24, cfg)
        kept = {pos for pos, _ in trace.entries}
        assert coverage_gap(kept, 256 - 24 + 1) <= 2
        assert len(M_hat) < 256 - 24 + 1  # reads really went missing
        got = gp.assemble_gapped(M_hat, P256)
        assert got == x
        assert gp.g_decode(got, P256) == x_I


def test_assemble_random_channel():
    for seed in range(10):
        cfg = GapChannelConfig(G=2, mode="random-seeded", seed=seed)
        x = gp.g_encode(payload(P256, 500 + seed), P256)
        M_hat, trace = gap_channel(x, 24, cfg)
        kept = {pos for pos, _ in trace.entries}
        assert coverage_gap(kept, 256 - 24 + 1) <= 2
        assert gp.assemble_gapped(M_hat, P256) == x


def gap_ok_masks(total, G):
    """All keep-subsets of 1..total whose missing runs stay within G."""
    for mask in range(1 << total):
        kept = {p for p in range(1, total + 1) if mask >> (p - 1) & 1}
        if coverage_gap(kept, total) <= G:
            yield sorted(kept)


def test_assemble_exhaustive_gap_patterns_toy():
    # every admissible pattern of missing reads must reassemble exactly
    total = 24 - 16 + 1
    patterns = list(gap_ok_masks(total, 1))
    assert len(patterns) > 30
    for seed in range(3):
        x = gp.g_encode(payload(P24, seed), P24)
        for kept in patterns:
            M_hat, _ = take_reads(x, 16, kept)
            assert gp.assemble_gapped(M_hat, P24) == x


def test_assemble_rejects_wrong_shape():
    with pytest.raises(AssemblyError):
        gp.assemble_gapped(Spectrum(23, ("0" * 23,)), P256)
    x = gp.g_encode(payload(P256, 600), P256)
    M = multispectrum(x, 24)
    gutted = Spectrum(24, M.reads[8:])  # drop a G+1-exceeding head run
    with pytest.raises(AssemblyError):
        gp.assemble_gapped(gutted, P256)


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 2**64 - 1), st.integers(0, 2**32 - 1))
def test_gapped_pipeline_property(v, channel_seed):
    """encode -> gap channel -> assemble -> decode is the identity."""
    rng = random.Random(v)
    x_I = "".join(rng.choice("01") for _ in range(256 - 9))
    x = gp.g_encode(x_I, P256)
    cfg = GapChannelConfig(G=2, mode="random-seeded", seed=channel_seed)
    M_hat, _ = gap_channel(x, 24, cfg)
    assert gp.g_decode(gp.assemble_gapped(M_hat, P256), P256) == x_I
