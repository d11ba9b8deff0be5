"""Harmonic sine-pool synthesis of multichannel series.

Construction happens in two stages:

1. build a pool of m sinusoids; each draws an amplitude from a shifted
   exponential law, Exp(scale = A' - 0.01) + 0.01, a frequency uniformly
   from the harmonic set {k * omega_bar : 1 <= k <= h, k * omega_bar < 0.5},
   and a phase uniformly from [0, 2*pi);
2. form each of the d channels as the pointwise sum of l pool members
   drawn uniformly WITH replacement, evaluated at t = 0 .. n-1.

Variants swap the pool's frequency law: the natural variant anchors
pools on a fixed set of everyday fundamentals, the mix variant draws
frequencies uniformly with no harmonic structure at all.  All outputs
are pure functions of (config, seed).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass

import numpy as np

from .dataset import Dataset, WindowSet
from .errors import (
    DegenerateChannel,
    InsufficientData,
    InvalidAmplitudeScale,
    InvalidWindow,
    WindowTooLong,
)

# Everyday fundamentals: monthly, weekly, daily-at-1h, hourly-at-1m.
NATURAL_FREQUENCIES = (1 / 30, 1 / 7, 1 / 24, 1 / 60)

# Frequency support for the mix variant; the lower bound keeps cycles
# short enough for a 96-step lookback to see at least a fraction of one.
MIX_FREQ_RANGE = (1 / 500, 0.5)

_SEED_CEILING = 2**63 - 1


@dataclass(frozen=True)
class SineSpec:
    """One sinusoid: s(t) = amplitude * sin(2*pi*t*frequency + phase)."""

    amplitude: float
    frequency: float
    phase: float

    def __post_init__(self):
        if not self.amplitude > 0.0:
            raise ValueError(f"amplitude must be > 0, got {self.amplitude}")
        if not 0.0 < self.frequency < 0.5:
            raise ValueError(
                f"frequency must be in (0, 0.5), got {self.frequency}"
            )
        if not 0.0 <= self.phase < 2.0 * np.pi:
            raise ValueError(f"phase must be in [0, 2*pi), got {self.phase}")

    def render(self, n: int) -> np.ndarray:
        # association mirrors _render_pool so a one-sine channel is
        # bitwise equal to the rendered spec
        t = np.arange(n, dtype=np.float64)
        return self.amplitude * np.sin(
            2.0 * np.pi * self.frequency * t + self.phase
        )


@dataclass(frozen=True)
class GeneratorConfig:
    """Knobs for one synthesized dataset.

    omega_bar: fundamental frequency in cycles/step, in (0, 0.5)
    m: pool size; h: harmonics kept (k*omega_bar below Nyquist)
    A_prime: expected sine amplitude; l: sines summed per channel
    n: series length; d: channel count; seed: RNG seed
    """

    omega_bar: float
    m: int = 100
    h: int = 3
    A_prime: float = 5.0
    l: int = 10
    n: int = 50_000
    d: int = 5
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.omega_bar < 0.5:
            raise ValueError(
                f"omega_bar must be in (0, 0.5), got {self.omega_bar}"
            )
        if self.A_prime <= 0.01:
            raise InvalidAmplitudeScale(
                f"A_prime must exceed 0.01, got {self.A_prime}"
            )
        for name, lo in (("m", 1), ("h", 1), ("l", 1), ("n", 2), ("d", 1)):
            if getattr(self, name) < lo:
                raise ValueError(f"{name} must be >= {lo}, got {getattr(self, name)}")

    def digest(self) -> str:
        """Short stable hash of all fields, used as provenance."""
        payload = json.dumps(asdict(self), sort_keys=True)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def harmonic_set(omega_bar: float, h: int) -> list[float]:
    """Ascending multiples k*omega_bar for k = 1..h that stay below 0.5."""
    if not 0.0 < omega_bar < 0.5:
        raise ValueError(f"omega_bar must be in (0, 0.5), got {omega_bar}")
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    return [omega_bar * k for k in range(1, h + 1) if omega_bar * k < 0.5]


def _draw_pool_arrays(cfg: GeneratorConfig, rng: np.random.Generator):
    """Amplitude/frequency/phase vectors for one harmonic pool."""
    omegas = np.array(harmonic_set(cfg.omega_bar, cfg.h))
    amps = rng.exponential(scale=cfg.A_prime - 0.01, size=cfg.m) + 0.01
    freqs = rng.choice(omegas, size=cfg.m, replace=True)
    phases = rng.uniform(0.0, 2.0 * np.pi, size=cfg.m)
    return amps, freqs, phases


def build_pool(cfg: GeneratorConfig) -> list[SineSpec]:
    """Draw the pool of m sinusoids deterministically from cfg.seed."""
    rng = np.random.default_rng(cfg.seed)
    amps, freqs, phases = _draw_pool_arrays(cfg, rng)
    return [
        SineSpec(amplitude=float(a), frequency=float(f), phase=float(p))
        for a, f, p in zip(amps, freqs, phases)
    ]


def build_mix_pool(
    m: int, A_prime: float, rng: np.random.Generator
) -> list[SineSpec]:
    """Pool with frequencies uniform over MIX_FREQ_RANGE; no harmonics."""
    if A_prime <= 0.01:
        raise InvalidAmplitudeScale(f"A_prime must exceed 0.01, got {A_prime}")
    lo, hi = MIX_FREQ_RANGE
    amps = rng.exponential(scale=A_prime - 0.01, size=m) + 0.01
    freqs = np.maximum(rng.uniform(lo, hi, size=m), np.nextafter(lo, hi))
    phases = rng.uniform(0.0, 2.0 * np.pi, size=m)
    return [
        SineSpec(amplitude=float(a), frequency=float(f), phase=float(p))
        for a, f, p in zip(amps, freqs, phases)
    ]


def _render_pool(
    amps: np.ndarray, freqs: np.ndarray, phases: np.ndarray, n: int
) -> np.ndarray:
    """Evaluate all pool sinusoids at t = 0..n-1 as an (m, n) matrix."""
    t = np.arange(n, dtype=np.float64)
    return amps[:, None] * np.sin(
        2.0 * np.pi * freqs[:, None] * t[None, :] + phases[:, None]
    )


def _compose_channels(
    signals: np.ndarray, d: int, l: int, rng: np.random.Generator
) -> np.ndarray:
    """Sum l uniform-with-replacement pool draws into each of d channels.

    Draws become a (d, m) count matrix so the channel sums reduce to one
    matrix product instead of d gather-and-sum passes.
    """
    m = signals.shape[0]
    idx = rng.integers(0, m, size=(d, l))
    counts = np.zeros((d, m), dtype=np.float64)
    np.add.at(counts, (np.repeat(np.arange(d), l), idx.ravel()), 1.0)
    return counts @ signals


def synthesize(cfg: GeneratorConfig, pool: list[SineSpec] | None = None) -> Dataset:
    """Build a (d, n) dataset from a harmonic pool.

    When ``pool`` is given it is used as-is (its length replaces cfg.m)
    and cfg.seed only drives the channel draws; otherwise the pool is
    drawn first from the same seeded stream.
    """
    rng = np.random.default_rng(cfg.seed)
    if pool is None:
        amps, freqs, phases = _draw_pool_arrays(cfg, rng)
    else:
        if not pool:
            raise ValueError("explicit pool must be non-empty")
        amps = np.array([s.amplitude for s in pool])
        freqs = np.array([s.frequency for s in pool])
        phases = np.array([s.phase for s in pool])
    signals = _render_pool(amps, freqs, phases, cfg.n)
    values = _compose_channels(signals, cfg.d, cfg.l, rng)
    names = tuple(f"ch{i + 1}" for i in range(cfg.d))
    return Dataset(
        values=values,
        channel_names=names,
        rate=None,
        provenance=f"freq-synth:{cfg.digest()}",
    )


def standardize(ds: Dataset) -> Dataset:
    """Per-channel (x - mean) / std with population std.

    Raises DegenerateChannel when any channel is constant.
    """
    mean = ds.values.mean(axis=1, keepdims=True)
    std = ds.values.std(axis=1, keepdims=True)
    flat = np.flatnonzero(std[:, 0] == 0.0)
    if flat.size:
        raise DegenerateChannel(
            f"channel(s) {flat.tolist()} have zero variance"
        )
    return Dataset(
        values=(ds.values - mean) / std,
        channel_names=ds.channel_names,
        rate=ds.rate,
        provenance=ds.provenance,
        standardized=True,
    )


def sample_windows(
    datasets: list[Dataset],
    count_train: int,
    count_val: int,
    L: int,
    H: int,
    seed: int,
) -> tuple[WindowSet, WindowSet]:
    """Uniformly sample disjoint (dataset, channel, start) windows.

    Start positions run over every valid offset of every channel of
    every dataset; count_train + count_val distinct triples are drawn
    without replacement, the first count_train forming the train set.
    """
    if L < 1 or H < 1:
        raise InvalidWindow(f"need L >= 1 and H >= 1, got L={L}, H={H}")
    if count_train < 1 or count_val < 0:
        raise ValueError("need count_train >= 1 and count_val >= 0")
    length = L + H
    starts = []
    for ds in datasets:
        s = ds.n - length + 1
        if s < 1:
            raise WindowTooLong(
                f"window length {length} exceeds series length {ds.n}"
            )
        starts.append(s)
    sizes = [ds.d * s for ds, s in zip(datasets, starts)]
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    total = int(offsets[-1])
    need = count_train + count_val
    if need > total:
        raise InsufficientData(
            f"requested {need} windows but only {total} distinct "
            "(dataset, channel, start) triples exist"
        )
    rng = np.random.default_rng(seed)
    flat = rng.choice(total, size=need, replace=False)

    ds_idx = np.searchsorted(offsets, flat, side="right") - 1
    local = flat - offsets[ds_idx]
    starts_arr = np.array(starts)
    chan = local // starts_arr[ds_idx]
    start = local % starts_arr[ds_idx]

    out = np.empty((need, length), dtype=np.float64)
    for di, ds in enumerate(datasets):
        rows = np.flatnonzero(ds_idx == di)
        if rows.size == 0:
            continue
        views = np.lib.stride_tricks.sliding_window_view(
            ds.values, length, axis=1
        )
        out[rows] = views[chan[rows], start[rows]]
    origins = np.column_stack([ds_idx, chan, start]).astype(np.int64)

    def _cut(rows: slice) -> WindowSet:
        return WindowSet(
            lookbacks=out[rows, :L],
            horizons=out[rows, L:],
            origins=origins[rows],
        )

    return _cut(slice(0, count_train)), _cut(slice(count_train, need))


def _child_seed(rng: np.random.Generator) -> int:
    return int(rng.integers(0, _SEED_CEILING))


def build_harmonic_datasets(
    omega_bar: float,
    seed: int,
    h_values: tuple[int, ...] = (1, 2, 3),
    *,
    m: int = 100,
    A_prime: float = 5.0,
    l: int = 10,
    n: int = 50_000,
    d: int = 5,
) -> list[Dataset]:
    """One standardized dataset per harmonic count in ``h_values``."""
    master = np.random.default_rng(seed)
    out = []
    for h in h_values:
        cfg = GeneratorConfig(
            omega_bar=omega_bar,
            m=m,
            h=h,
            A_prime=A_prime,
            l=l,
            n=n,
            d=d,
            seed=_child_seed(master),
        )
        out.append(standardize(synthesize(cfg)))
    return out


def freq_synth(
    omega_bar: float,
    seed: int,
    count_train: int = 5000,
    count_val: int = 5000,
    L: int = 96,
    H: int = 720,
    *,
    m: int = 100,
    A_prime: float = 5.0,
    l: int = 10,
    n: int = 50_000,
    d: int = 5,
) -> tuple[WindowSet, WindowSet]:
    """Training and validation windows around one fundamental.

    Builds standardized datasets for h = 1, 2, 3, then samples windows
    of length L + H uniformly across all of them; train and validation
    draws never share a (dataset, channel, start) triple.
    """
    master = np.random.default_rng(seed)
    data_seed = _child_seed(master)
    sample_seed = _child_seed(master)
    datasets = build_harmonic_datasets(
        omega_bar, data_seed, m=m, A_prime=A_prime, l=l, n=n, d=d
    )
    return sample_windows(datasets, count_train, count_val, L, H, sample_seed)


def build_natural_datasets(
    seed: int,
    *,
    frequencies: tuple[float, ...] = NATURAL_FREQUENCIES,
    h_values: tuple[int, ...] = (1, 2, 3),
    m: int = 100,
    A_prime: float = 5.0,
    l: int = 10,
    n: int = 50_000,
    d: int = 5,
) -> list[Dataset]:
    """Standardized datasets for every (fundamental, harmonic) pair."""
    master = np.random.default_rng(seed)
    out = []
    for omega in frequencies:
        for h in h_values:
            cfg = GeneratorConfig(
                omega_bar=omega,
                m=m,
                h=h,
                A_prime=A_prime,
                l=l,
                n=n,
                d=d,
                seed=_child_seed(master),
            )
            out.append(standardize(synthesize(cfg)))
    return out


def freq_synth_natural(
    seed: int,
    count_train: int = 5000,
    count_val: int = 5000,
    L: int = 96,
    H: int = 720,
    *,
    m: int = 100,
    A_prime: float = 5.0,
    l: int = 10,
    n: int = 50_000,
    d: int = 5,
) -> tuple[WindowSet, WindowSet]:
    """As freq_synth, over pools anchored on NATURAL_FREQUENCIES.

    Each of the four everyday fundamentals is expanded with h = 1, 2, 3
    harmonics; window sampling spans all twelve resulting datasets.
    """
    master = np.random.default_rng(seed)
    data_seed = _child_seed(master)
    sample_seed = _child_seed(master)
    datasets = build_natural_datasets(
        data_seed, m=m, A_prime=A_prime, l=l, n=n, d=d
    )
    return sample_windows(datasets, count_train, count_val, L, H, sample_seed)


def build_mix_datasets(
    seed: int,
    *,
    copies: int = 3,
    m: int = 100,
    A_prime: float = 5.0,
    l: int = 10,
    n: int = 50_000,
    d: int = 5,
) -> list[Dataset]:
    """Standardized datasets over unstructured uniform-frequency pools."""
    master = np.random.default_rng(seed)
    out = []
    for i in range(copies):
        rng = np.random.default_rng(_child_seed(master))
        pool = build_mix_pool(m, A_prime, rng)
        amps = np.array([s.amplitude for s in pool])
        freqs = np.array([s.frequency for s in pool])
        phases = np.array([s.phase for s in pool])
        signals = _render_pool(amps, freqs, phases, n)
        values = _compose_channels(signals, d, l, rng)
        names = tuple(f"ch{j + 1}" for j in range(d))
        ds = Dataset(
            values=values,
            channel_names=names,
            rate=None,
            provenance=f"freq-synth-mix:seed={seed}:copy={i}",
        )
        out.append(standardize(ds))
    return out


def freq_synth_mix(
    seed: int,
    count_train: int = 5000,
    count_val: int = 5000,
    L: int = 96,
    H: int = 720,
    *,
    m: int = 100,
    A_prime: float = 5.0,
    l: int = 10,
    n: int = 50_000,
    d: int = 5,
) -> tuple[WindowSet, WindowSet]:
    """As freq_synth, over frequency-unstructured pools.

    Three independent mix datasets stand in for the h = 1, 2, 3 triple
    so sample budgets match the harmonic variant.
    """
    master = np.random.default_rng(seed)
    data_seed = _child_seed(master)
    sample_seed = _child_seed(master)
    datasets = build_mix_datasets(
        data_seed, copies=3, m=m, A_prime=A_prime, l=l, n=n, d=d
    )
    return sample_windows(datasets, count_train, count_val, L, H, sample_seed)
