"""Command-line driver for the codecs, channels, assemblers, and counting lab.

Pipelines are file-based and replayable: every encode/shred run writes a
key=value manifest sidecar recording the full parameter set and seed, and
assemble/decode read their parameters back from it.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from . import bounds as bnd
from . import exact, gapped, noisy, primal
from .spectra import (
    GapChannelConfig,
    NoisyChannelConfig,
    gap_channel,
    multispectrum,
    noisy_channel,
    parse_spectrum,
    serialize_spectrum,
    serialize_trace,
)

REGIMES = ("exact", "primal", "gap", "noisy")


@dataclass(frozen=True)
class _Shape:
    """Minimal (n, L) view for the padded assembler outside the exact regime."""

    n: int
    L: int


class CliError(Exception):
    pass


# ---------------------------------------------------------------- manifests


def write_manifest(path: str, fields: dict) -> None:
    with open(path, "w") as fh:
        for k, v in fields.items():
            fh.write(f"{k}={v}\n")


def read_manifest(path: str) -> dict:
    fields = {}
    with open(path) as fh:
        for ln in fh:
            ln = ln.strip()
            if ln and "=" in ln:
                k, v = ln.split("=", 1)
                fields[k] = v
    return fields


def _regime_setup(regime: str, n: int, L: int, G: int, t: int):
    """Params object plus (manifest fields, input length) for one regime."""
    if regime == "exact":
        p = exact.ExactParams(n, L)
        return p, {"n": p.n, "L": p.L, "redundancy": 2}, p.n - 2
    if regime == "primal":
        p = primal.PrimalParams(n, L)
        return p, {"n": p.n, "L": p.L, "r": p.r, "redundancy": 3}, p.n - 3
    if regime == "gap":
        if G < 1:
            raise CliError("gap regime needs --G >= 1")
        p = gapped.GapParams(n, G)
        fields = {
            "n": p.n,
            "G": p.G,
            "L_hat": p.L_hat,
            "L": p.L,
            "redundancy": p.redundancy,
        }
        return p, fields, p.n - p.redundancy
    if regime == "noisy":
        if G < 1 or t < 1:
            raise CliError("noisy regime needs --G >= 1 and --t >= 1")
        p = noisy.solve_params(n, G, t)
        fields = dict(
            ln.split("=", 1) for ln in noisy.manifest(p).splitlines()
        )
        return p, fields, p.payload_len
    raise CliError(f"unknown regime {regime!r}")


def _params_from_args(args):
    """Resolve regime parameters, letting an existing manifest fill defaults."""
    n, L, G, t = args.n, args.L, args.G, args.t
    if args.manifest and os.path.exists(args.manifest):
        m = read_manifest(args.manifest)
        if "regime" in m and m["regime"] != args.regime:
            raise CliError(
                f"manifest regime {m['regime']!r} does not match {args.regime!r}"
            )
        n = n or int(m.get("n", 0))
        L = L or int(m.get("L", 0)) if args.regime in ("exact", "primal") else L
        G = G if G else int(m.get("G", 0))
        t = t if t else int(m.get("t", 0))
    if not n:
        raise CliError("--n is required (directly or via --manifest)")
    return _regime_setup(args.regime, n, L, G, t)


# ---------------------------------------------------------------- line I/O


def _read_lines(path: str) -> list[str]:
    fh = sys.stdin if path == "-" else open(path)
    try:
        return [ln.strip() for ln in fh if ln.strip()]
    finally:
        if fh is not sys.stdin:
            fh.close()


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _per_item(items, fn, label="line"):
    """Apply fn to every item; collect outputs and per-item failures."""
    outputs, failures = [], []
    for idx, item in enumerate(items, start=1):
        try:
            outputs.append(fn(idx, item))
        except Exception as e:  # noqa: BLE001 - isolation contract
            failures.append((idx, str(e)))
    for idx, msg in failures:
        print(f"{label} {idx}: {msg}", file=sys.stderr)
    return outputs, failures


def _sidecar(args, extra: dict) -> None:
    path = args.manifest
    if not path and args.output != "-":
        path = args.output + ".manifest"
    if path:
        write_manifest(path, extra)


# ---------------------------------------------------------------- commands


def cmd_encode(args) -> int:
    p, fields, in_len = _params_from_args(args)
    enc = {
        "exact": exact.lr_encode,
        "primal": primal.plr_encode,
        "gap": gapped.g_encode,
        "noisy": noisy.gt_encode,
    }[args.regime]
    lines = _read_lines(args.input)
    outputs, failures = _per_item(lines, lambda _i, x: enc(x, p))
    _write_text(args.output, "".join(w + "\n" for w in outputs))
    _sidecar(
        args,
        {"command": "encode", "regime": args.regime, "input_len": in_len, **fields},
    )
    return 1 if failures else 0


def cmd_decode(args) -> int:
    p, fields, _ = _params_from_args(args)
    dec = {
        "exact": exact.lr_decode,
        "primal": primal.plr_decode,
        "gap": gapped.g_decode,
        "noisy": noisy.gt_decode,
    }[args.regime]
    lines = _read_lines(args.input)
    outputs, failures = _per_item(lines, lambda _i, x: dec(x, p))
    _write_text(args.output, "".join(w + "\n" for w in outputs))
    _sidecar(
        args, {"command": "decode", "regime": args.regime, **fields}
    )
    return 1 if failures else 0


def cmd_shred(args) -> int:
    if not args.L:
        raise CliError("--L is required")
    mode = "adversarial-worst" if args.adversarial else "random-seeded"

    def shred_one(idx, x):
        if args.L > len(x):
            raise CliError(f"L={args.L} longer than the {len(x)}-bit codeword")
        seed = args.seed + idx - 1
        if args.t:
            cfg = NoisyChannelConfig(
                G=args.G,
                t=args.t,
                seed=seed,
                enforce_reliable=args.reliable,
                gap_mode=mode,
            )
            return noisy_channel(x, args.L, cfg)
        if args.G:
            cfg = GapChannelConfig(G=args.G, mode=mode, seed=seed)
            return gap_channel(x, args.L, cfg)
        return multispectrum(x, args.L), None

    lines = _read_lines(args.input)
    outputs, failures = _per_item(lines, shred_one)
    _write_text(
        args.output, "\n".join(serialize_spectrum(s) for s, _ in outputs)
    )
    if args.trace:
        blocks = [
            serialize_trace(tr) if tr is not None else "" for _, tr in outputs
        ]
        _write_text(args.trace, "---\n".join(blocks))
    _sidecar(
        args,
        {
            "command": "shred",
            "L": args.L,
            "G": args.G,
            "t": args.t,
            "seed": args.seed,
            "adversarial": int(args.adversarial),
            "reliable": int(args.reliable),
        },
    )
    return 1 if failures else 0


def cmd_assemble(args) -> int:
    p, _, _ = _params_from_args(args)
    asm = {
        "exact": lambda M: exact.assemble_padded(M, p),
        "primal": lambda M: exact.assemble_padded(M, _Shape(p.n, p.L)),
        "gap": lambda M: gapped.assemble_gapped(M, p),
        "noisy": lambda M: noisy.assemble_noisy(M, p),
    }[args.regime]
    text = (
        sys.stdin.read() if args.input == "-" else open(args.input).read()
    )
    blocks = [b for b in text.split("\n\n") if b.strip()]
    outputs, failures = _per_item(
        blocks, lambda _i, b: asm(parse_spectrum(b)), label="spectrum"
    )
    _write_text(args.output, "".join(w + "\n" for w in outputs))
    return 1 if failures else 0


def _parse_range(spec: str) -> list[int]:
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(spec)]


def _rule_L(rule: str, n: int) -> int:
    clog = max(1, (n - 1).bit_length())
    table = {
        "2logn+2": 2 * clog + 2,
        "2logn+3": 2 * clog + 3,
        "2logn+4": 2 * clog + 4,
    }
    if rule in table:
        return table[rule]
    try:
        return int(rule)
    except ValueError:
        raise CliError(f"unknown L rule {rule!r}") from None


def cmd_bounds(args) -> int:
    ns = _parse_range(args.n_range)
    pairs = []
    for n in ns:
        L = _rule_L(args.L_rule, n) if args.L_rule else args.L
        if not L:
            raise CliError("--L or --L-rule is required")
        if 2 <= L <= n:
            pairs.append((n, L))
    if args.enumerate:
        # budget is checked before any scan starts
        for n, _ in pairs:
            if n > min(24, int(os.environ.get("RESPECTRA_BUDGET", "24") or 24)):
                raise CliError(f"n={n} exceeds the enumeration budget")
    reports = bnd.bound_table(pairs, enumerate_counts=args.enumerate)
    text = bnd.csv_rows(reports) if args.csv else bnd.format_table(reports)
    _write_text(args.output, text)
    return 0


# ---------------------------------------------------------------- parser


def _add_io(sp):
    sp.add_argument("-i", "--input", default="-", help="input path or - for stdin")
    sp.add_argument("-o", "--output", default="-", help="output path or - for stdout")
    sp.add_argument("--manifest", help="manifest sidecar path")


def _add_params(sp):
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--L", type=int, default=0)
    sp.add_argument("--G", type=int, default=0)
    sp.add_argument("--t", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="respectra")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, fn in (
        ("encode", cmd_encode),
        ("decode", cmd_decode),
        ("assemble", cmd_assemble),
    ):
        sp = sub.add_parser(name)
        sp.add_argument("regime", choices=REGIMES)
        _add_params(sp)
        _add_io(sp)
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("shred")
    _add_params(sp)
    _add_io(sp)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--adversarial", action="store_true")
    sp.add_argument("--reliable", action="store_true")
    sp.add_argument("--trace", help="write ground-truth read traces here")
    sp.set_defaults(fn=cmd_shred)

    sp = sub.add_parser("bounds")
    sp.add_argument("--n", dest="n_range", required=True, help="n or lo..hi")
    sp.add_argument("--L", type=int, default=0)
    sp.add_argument("--L-rule", dest="L_rule", help="e.g. 2logn+2, or an integer")
    sp.add_argument("--enumerate", action="store_true")
    sp.add_argument("--csv", action="store_true")
    sp.add_argument("-o", "--output", default="-")
    sp.set_defaults(fn=cmd_bounds)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (CliError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
