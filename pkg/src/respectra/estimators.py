"""Thin scikit-learn style wrappers around the codecs and channels.

These adapt the string codecs to the estimator API (fit/transform/
inverse_transform) so they can sit inside sklearn Pipelines; all substance
lives in the underlying modules.
"""

from __future__ import annotations

from dataclasses import dataclass

from sklearn.base import BaseEstimator, TransformerMixin

from . import exact, gapped, noisy, primal
from .spectra import (
    GapChannelConfig,
    NoisyChannelConfig,
    gap_channel,
    multispectrum,
    noisy_channel,
)


@dataclass(frozen=True)
class _Shape:
    """Minimal (n, L) view accepted by the padded assembler."""

    n: int
    L: int


class SpectrumCodec(BaseEstimator, TransformerMixin):
    """Encode fixed-length bit-strings into spectrum-reconstructable codewords.

    transform encodes one string per row; inverse_transform decodes.
    """

    def __init__(self, regime="exact", n=64, L=0, G=0, t=0):
        self.regime = regime
        self.n = n
        self.L = L
        self.G = G
        self.t = t

    def fit(self, X=None, y=None):
        if self.regime == "exact":
            self.params_ = exact.ExactParams(self.n, self.L)
            self._enc, self._dec = exact.lr_encode, exact.lr_decode
            self.input_len_ = self.n - 2
        elif self.regime == "primal":
            self.params_ = primal.PrimalParams(self.n, self.L)
            self._enc, self._dec = primal.plr_encode, primal.plr_decode
            self.input_len_ = self.n - 3
        elif self.regime == "gap":
            self.params_ = gapped.GapParams(self.n, self.G)
            self._enc, self._dec = gapped.g_encode, gapped.g_decode
            self.input_len_ = self.n - self.params_.redundancy
        elif self.regime == "noisy":
            self.params_ = noisy.solve_params(self.n, self.G, self.t)
            self._enc, self._dec = noisy.gt_encode, noisy.gt_decode
            self.input_len_ = self.params_.payload_len
        else:
            raise ValueError(f"unknown regime {self.regime!r}")
        self.codeword_len_ = self.n
        return self

    def transform(self, X):
        self._check_fitted()
        return [self._enc(x, self.params_) for x in X]

    def inverse_transform(self, X):
        self._check_fitted()
        return [self._dec(x, self.params_) for x in X]

    def _check_fitted(self):
        if not hasattr(self, "params_"):
            raise RuntimeError("codec is not fitted; call fit() first")


class SpectrumShredder(BaseEstimator, TransformerMixin):
    """Turn codewords into (possibly gapped/noisy) substring spectra."""

    def __init__(self, L, G=0, t=0, seed=0, adversarial=False, reliable=False):
        self.L = L
        self.G = G
        self.t = t
        self.seed = seed
        self.adversarial = adversarial
        self.reliable = reliable

    def fit(self, X=None, y=None):
        self.mode_ = "adversarial-worst" if self.adversarial else "random-seeded"
        return self

    def transform(self, X):
        if not hasattr(self, "mode_"):
            raise RuntimeError("shredder is not fitted; call fit() first")
        out = []
        for idx, x in enumerate(X):
            seed = self.seed + idx
            if self.t:
                cfg = NoisyChannelConfig(
                    G=self.G,
                    t=self.t,
                    seed=seed,
                    enforce_reliable=self.reliable,
                    gap_mode=self.mode_,
                )
                out.append(noisy_channel(x, self.L, cfg)[0])
            elif self.G:
                cfg = GapChannelConfig(G=self.G, mode=self.mode_, seed=seed)
                out.append(gap_channel(x, self.L, cfg)[0])
            else:
                out.append(multispectrum(x, self.L))
        return out


class SpectrumAssembler(BaseEstimator, TransformerMixin):
    """Reconstruct codewords from spectra produced by SpectrumShredder."""

    def __init__(self, regime="exact", n=64, L=0, G=0, t=0):
        self.regime = regime
        self.n = n
        self.L = L
        self.G = G
        self.t = t

    def fit(self, X=None, y=None):
        codec = SpectrumCodec(self.regime, self.n, self.L, self.G, self.t).fit()
        p = codec.params_
        if self.regime == "exact":
            self._asm = lambda M: exact.assemble_padded(M, p)
        elif self.regime == "primal":
            shape = _Shape(p.n, p.L)
            self._asm = lambda M: exact.assemble_padded(M, shape)
        elif self.regime == "gap":
            self._asm = lambda M: gapped.assemble_gapped(M, p)
        else:
            self._asm = lambda M: noisy.assemble_noisy(M, p)
        self.params_ = p
        return self

    def transform(self, X):
        if not hasattr(self, "params_"):
            raise RuntimeError("assembler is not fitted; call fit() first")
        return [self._asm(M) for M in X]
