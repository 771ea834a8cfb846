"""Scenario parameters and reproducible Rayleigh channel generation.

Randomness contract
-------------------
Every fading coefficient is addressed by the triple
``(master_seed, trial_index, channel_label)`` and is a pure function of it.
Each (seed, label) pair keys a Philox counter-based stream whose 256-bit
block counter is set to the trial index, so trial ``t`` owns exactly one
4-word block of that stream.  Evaluation order, batch splits and worker
counts therefore cannot change any sample.

Channel labels are enumerated in a fixed order that is stable across
versions and independent of the relay count:

====================  =====================
label                 link
====================  =====================
0                     source -> destination
1                     source -> eavesdropper
2 + 3*i               source -> relay i
3 + 3*i               relay i -> destination
4 + 3*i               relay i -> eavesdropper
====================  =====================

A substream offset (``label + k * 2**32``) yields additional independent
draws for the same physical link, used when outage and intercept statistics
must be decoupled.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

LABEL_SD = 0
LABEL_SE = 1
SUBSTREAM_STRIDE = 2**32

# Philox 4x64 emits 4 uint64 words per counter value; one counter value
# (= one block) is reserved per (trial, label).
_WORDS_PER_TRIAL = 4

_SEED_BOUND = 2**64
_VALID_ALPHA = (0.5, 1.0)


def label_si(relay: int) -> int:
    """Label of the source -> relay ``relay`` link."""
    return 2 + 3 * relay


def label_id(relay: int) -> int:
    """Label of the relay ``relay`` -> destination link."""
    return 3 + 3 * relay


def label_ie(relay: int) -> int:
    """Label of the relay ``relay`` -> eavesdropper link."""
    return 4 + 3 * relay


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x_lin: float) -> float:
    return 10.0 * np.log10(x_lin)


def _as_variance_spec(value, n_relays: int, name: str):
    """Normalize a per-link-class variance: scalar, or one value per relay."""
    if np.isscalar(value):
        v = float(value)
        if not v > 0.0:
            raise ValueError(f"{name} must be > 0, got {v}")
        return v
    values = tuple(float(v) for v in value)
    if len(values) != n_relays:
        raise ValueError(
            f"{name} must have one entry per relay ({n_relays}), got {len(values)}"
        )
    if any(v <= 0.0 for v in values):
        raise ValueError(f"all {name} entries must be > 0, got {values}")
    return values


@dataclass(frozen=True)
class SystemParams:
    """Static description of one transmission scenario.

    ``snr`` is the linear transmit-power to noise ratio P/N0 (use
    :meth:`from_snr_db` when configuring in dB).  Rates are in bit/s/Hz.
    The per-relay variances accept either a single value shared by all
    relays or a sequence with one entry per relay.
    ``phase_factor_alpha`` is the capacity prelog applied to all links of
    the relay schemes (1.0 = single-phase reading, 0.5 = half-duplex);
    direct transmission always uses prelog 1.
    """

    snr: float
    secrecy_rate_rs: float
    overall_rate_ro: float
    n_relays: int = 0
    var_sd: float = 1.0
    var_sw: float = 0.1
    var_si: float | tuple[float, ...] = 2.0
    var_id: float | tuple[float, ...] = 2.0
    var_ie: float | tuple[float, ...] = 0.2
    phase_factor_alpha: float = 1.0

    def __post_init__(self):
        if not self.snr > 0.0:
            raise ValueError(f"snr must be > 0, got {self.snr}")
        if not self.secrecy_rate_rs >= 0.0:
            raise ValueError(f"secrecy_rate_rs must be >= 0, got {self.secrecy_rate_rs}")
        if not self.overall_rate_ro > self.secrecy_rate_rs:
            raise ValueError(
                "overall_rate_ro must exceed secrecy_rate_rs "
                f"(got ro={self.overall_rate_ro}, rs={self.secrecy_rate_rs})"
            )
        if not (isinstance(self.n_relays, int) and self.n_relays >= 0):
            raise ValueError(f"n_relays must be a nonnegative integer, got {self.n_relays}")
        if not self.var_sd > 0.0:
            raise ValueError(f"var_sd must be > 0, got {self.var_sd}")
        if not self.var_sw > 0.0:
            raise ValueError(f"var_sw must be > 0, got {self.var_sw}")
        if self.phase_factor_alpha not in _VALID_ALPHA:
            raise ValueError(
                f"phase_factor_alpha must be one of {_VALID_ALPHA}, got {self.phase_factor_alpha}"
            )
        for name in ("var_si", "var_id", "var_ie"):
            object.__setattr__(
                self, name, _as_variance_spec(getattr(self, name), self.n_relays, name)
            )

    @classmethod
    def from_snr_db(cls, snr_db: float, **kwargs) -> "SystemParams":
        return cls(snr=db_to_linear(snr_db), **kwargs)

    @property
    def redundancy_re(self) -> float:
        """Secrecy redundancy R_e = R_o - R_s (always > 0)."""
        return self.overall_rate_ro - self.secrecy_rate_rs

    def with_ro(self, ro: float) -> "SystemParams":
        return replace(self, overall_rate_ro=float(ro))

    def _relay_variances(self, name: str) -> np.ndarray:
        spec = getattr(self, name)
        if isinstance(spec, tuple):
            return np.asarray(spec, dtype=float)
        return np.full(self.n_relays, spec, dtype=float)

    def si_variances(self) -> np.ndarray:
        return self._relay_variances("var_si")

    def id_variances(self) -> np.ndarray:
        return self._relay_variances("var_id")

    def ie_variances(self) -> np.ndarray:
        return self._relay_variances("var_ie")


@dataclass(frozen=True)
class StreamKey:
    """Address of one channel sample under the randomness contract."""

    master_seed: int
    trial_index: int
    channel_label: int


@dataclass(frozen=True)
class ChannelRealization:
    """Complex fading coefficients of every link for a single trial."""

    h_sd: complex
    h_se: complex
    h_si: np.ndarray
    h_id: np.ndarray
    h_ie: np.ndarray


@dataclass(frozen=True)
class ChannelBatch:
    """Column-per-link fading draws for a contiguous trial range.

    ``h_sd`` and ``h_se`` have shape (n,), the relay arrays (n, n_relays).
    Row ``k`` equals the single-trial realization of trial ``start + k``.
    """

    start: int
    h_sd: np.ndarray
    h_se: np.ndarray
    h_si: np.ndarray
    h_id: np.ndarray
    h_ie: np.ndarray

    def __len__(self) -> int:
        return len(self.h_sd)

    def realization(self, row: int) -> ChannelRealization:
        return ChannelRealization(
            h_sd=complex(self.h_sd[row]),
            h_se=complex(self.h_se[row]),
            h_si=self.h_si[row].copy(),
            h_id=self.h_id[row].copy(),
            h_ie=self.h_ie[row].copy(),
        )


def _check_seed(master_seed: int) -> int:
    seed = int(master_seed)
    if not 0 <= seed < _SEED_BOUND:
        raise ValueError(f"master_seed must be a 64-bit unsigned integer, got {master_seed}")
    return seed


def _label_uniforms(master_seed: int, label: int, trial_start: int, n: int) -> np.ndarray:
    """The (n, 4) uniform block matrix of trials [trial_start, trial_start + n)."""
    key = (int(label) << 64) | _check_seed(master_seed)
    bits = np.random.Philox(key=key, counter=int(trial_start))
    return np.random.Generator(bits).random(_WORDS_PER_TRIAL * n).reshape(n, _WORDS_PER_TRIAL)


def _label_coefficients(
    master_seed: int, label: int, trial_start: int, n: int, variance: float
) -> np.ndarray:
    """n circularly-symmetric complex Gaussians with E|h|^2 = variance.

    Box-Muller on the first two words of each trial's block: the squared
    magnitude -variance*ln(1-u1) is exactly Exp(variance), the phase
    2*pi*u2 is uniform.  log1p keeps the radicand argument in (0, 1].
    """
    u = _label_uniforms(master_seed, label, trial_start, n)
    radius = np.sqrt(-variance * np.log1p(-u[:, 0]))
    theta = (2.0 * np.pi) * u[:, 1]
    return radius * (np.cos(theta) + 1j * np.sin(theta))


def sample_coefficient(key: StreamKey, variance: float) -> complex:
    """The single coefficient addressed by ``key``, scaled to ``variance``."""
    return complex(
        _label_coefficients(key.master_seed, key.channel_label, key.trial_index, 1, variance)[0]
    )


def draw_batch(
    params: SystemParams,
    master_seed: int,
    trial_start: int,
    n_trials: int,
    substream: int = 0,
) -> ChannelBatch:
    """Draw the fading coefficients of ``n_trials`` consecutive trials.

    The result is identical to concatenating any finer split of the same
    trial range (partition invariance).
    """
    if n_trials < 0:
        raise ValueError(f"n_trials must be >= 0, got {n_trials}")
    off = substream * SUBSTREAM_STRIDE
    n = int(n_trials)
    nr = params.n_relays
    si_var = params.si_variances()
    id_var = params.id_variances()
    ie_var = params.ie_variances()
    h_si = np.empty((n, nr), dtype=complex)
    h_id = np.empty((n, nr), dtype=complex)
    h_ie = np.empty((n, nr), dtype=complex)
    for i in range(nr):
        h_si[:, i] = _label_coefficients(master_seed, label_si(i) + off, trial_start, n, si_var[i])
        h_id[:, i] = _label_coefficients(master_seed, label_id(i) + off, trial_start, n, id_var[i])
        h_ie[:, i] = _label_coefficients(master_seed, label_ie(i) + off, trial_start, n, ie_var[i])
    return ChannelBatch(
        start=int(trial_start),
        h_sd=_label_coefficients(master_seed, LABEL_SD + off, trial_start, n, params.var_sd),
        h_se=_label_coefficients(master_seed, LABEL_SE + off, trial_start, n, params.var_sw),
        h_si=h_si,
        h_id=h_id,
        h_ie=h_ie,
    )


def draw_realization(
    params: SystemParams, master_seed: int, trial_index: int, substream: int = 0
) -> ChannelRealization:
    """One trial's channel draw; equals row ``trial_index`` of any batch."""
    return draw_batch(params, master_seed, trial_index, 1, substream).realization(0)


def link_capacity(gain_sq, snr, prelog=1.0):
    """Shannon capacity prelog * log2(1 + gain_sq * snr) in bit/s/Hz.

    Broadcasts over array inputs; monotone nondecreasing in ``gain_sq``.
    """
    return prelog * np.log2(1.0 + gain_sq * snr)
