"""Zero-shot and few-shot evaluation harness.

Provides the chronological split plus metric plumbing, stride-1
zero-shot evaluation over a test segment, cross-dataset transfer
matrices with per-column min-max scaling, and the synthetic experiment
drivers: frequency confusion, frequency generalization, and the
harmonics / size-and-variates sweeps.

Every driver is a pure function of its arguments and a seed; model
evaluation itself never consumes randomness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, WindowSet
from .errors import DegenerateChannel, ShapeMismatch, SplitTooSmall
from .forecast import fit_ridge
from .freqest import estimate_fundamental
from .generator import (
    GeneratorConfig,
    build_harmonic_datasets,
    sample_windows,
    standardize,
    synthesize,
)

_SEED_CEILING = 2**63 - 1

# Support and exclusion zone for experiment distractor frequencies.
DISTRACTOR_RANGE = (1 / 200, 0.45)

DEFAULT_HORIZONS = (96, 192, 336, 720)

_CHUNK = 4096


@dataclass(frozen=True)
class SplitSpec:
    """Chronological train/val/test fractions; must sum to 1."""

    train_frac: float
    val_frac: float
    test_frac: float

    def __post_init__(self):
        for name in ("train_frac", "val_frac", "test_frac"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise ValueError(f"{name} must be in (0, 1), got {v}")
        total = self.train_frac + self.val_frac + self.test_frac
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"fractions must sum to 1, got {total}")


ETT_SPLIT = SplitSpec(0.6, 0.2, 0.2)
STANDARD_SPLIT = SplitSpec(0.7, 0.2, 0.1)


@dataclass(frozen=True)
class EvalReport:
    """One dataset/horizon measurement."""

    dataset: str
    horizon: int
    mse: float
    mae: float
    model: str
    seed: int | None = None
    windows: int = 0

    def __post_init__(self):
        for name in ("mse", "mae"):
            v = getattr(self, name)
            if not np.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be finite and >= 0, got {v}")


@dataclass(frozen=True)
class TransferMatrix:
    """Cross-dataset raw MSEs and per-column min-max scaled values.

    Rows index the training dataset, columns the test dataset.  When a
    row and column refer to the same dataset that diagonal cell is
    excluded from the column's min-max range (the matrix is about
    cross-domain transfer) and its scaled value is clipped into [0, 1].
    """

    train_ids: tuple[str, ...]
    test_ids: tuple[str, ...]
    raw: np.ndarray
    scaled: np.ndarray

    def __post_init__(self):
        raw = np.array(self.raw, dtype=np.float64, copy=True)
        scaled = np.array(self.scaled, dtype=np.float64, copy=True)
        shape = (len(self.train_ids), len(self.test_ids))
        if raw.shape != shape or scaled.shape != shape:
            raise ShapeMismatch(
                f"matrix shapes {raw.shape}/{scaled.shape}, expected {shape}"
            )
        if np.any(scaled < 0) or np.any(scaled > 1):
            raise ValueError("scaled values must lie in [0, 1]")
        raw.setflags(write=False)
        scaled.setflags(write=False)
        object.__setattr__(self, "raw", raw)
        object.__setattr__(self, "scaled", scaled)
        object.__setattr__(self, "train_ids", tuple(self.train_ids))
        object.__setattr__(self, "test_ids", tuple(self.test_ids))


def split(
    ds: Dataset, spec: SplitSpec, min_len: int = 1
) -> tuple[Dataset, Dataset, Dataset]:
    """Contiguous train/val/test partition at floor(n * frac) boundaries.

    ``min_len`` is the smallest acceptable segment (pass L + H when the
    segments must hold at least one evaluation window).
    """
    n = ds.n
    n_train = int(np.floor(n * spec.train_frac + 1e-9))
    n_val = int(np.floor(n * spec.val_frac + 1e-9))
    n_test = n - n_train - n_val
    if min(n_train, n_val, n_test) < max(min_len, 1):
        raise SplitTooSmall(
            f"splits {n_train}/{n_val}/{n_test} of n={n} fall below "
            f"min_len={min_len}"
        )
    return (
        ds.slice_time(0, n_train),
        ds.slice_time(n_train, n_train + n_val),
        ds.slice_time(n_train + n_val, n),
    )


def standardize_by_train(train: Dataset, *others: Dataset):
    """Standardize splits with the TRAIN split's per-channel statistics.

    The train split comes back marked standardized; the other splits
    are scaled by the same statistics but keep the flag off because
    their own moments are not exactly 0/1.
    """
    mean = train.values.mean(axis=1, keepdims=True)
    std = train.values.std(axis=1, keepdims=True)
    flat = np.flatnonzero(std[:, 0] == 0.0)
    if flat.size:
        raise DegenerateChannel(f"train channel(s) {flat.tolist()} are constant")

    def _apply(ds: Dataset, flag: bool) -> Dataset:
        return Dataset(
            values=(ds.values - mean) / std,
            channel_names=ds.channel_names,
            rate=ds.rate,
            provenance=ds.provenance,
            standardized=flag,
        )

    out = [_apply(train, True)] + [_apply(o, False) for o in others]
    return tuple(out)


def metrics(preds, targets) -> tuple[float, float]:
    """(MSE, MAE) over all elements of equal-shaped arrays."""
    p = np.asarray(preds, dtype=np.float64)
    t = np.asarray(targets, dtype=np.float64)
    if p.shape != t.shape:
        raise ShapeMismatch(f"shape {p.shape} vs {t.shape}")
    if p.size == 0:
        raise ShapeMismatch("cannot score empty arrays")
    err = p - t
    return float(np.mean(err * err)), float(np.mean(np.abs(err)))


def windowset_metrics(model, ws: WindowSet) -> tuple[float, float]:
    """(MSE, MAE) of a model over a window set, predictions chunked."""
    if ws.count == 0:
        raise ShapeMismatch("cannot score an empty window set")
    sse = sae = 0.0
    total = 0
    for lo in range(0, ws.count, _CHUNK):
        hi = min(lo + _CHUNK, ws.count)
        pred = model.forecast(ws.lookbacks[lo:hi], ws.H)
        err = pred - ws.horizons[lo:hi]
        sse += float(np.sum(err * err))
        sae += float(np.sum(np.abs(err)))
        total += err.size
    return sse / total, sae / total


def evaluate_zero_shot(
    model,
    test_ds: Dataset,
    L: int = 96,
    horizons: tuple[int, ...] = DEFAULT_HORIZONS,
    dataset_id: str | None = None,
    seed: int | None = None,
) -> list[EvalReport]:
    """Stride-1 evaluation over the test segment, one report per horizon.

    The model must accept ``forecast(X, h)`` for every requested h.
    """
    horizons = tuple(int(h) for h in horizons)
    if not horizons or min(horizons) < 1:
        raise ValueError(f"horizons must be positive, got {horizons}")
    max_h = max(horizons)
    if test_ds.n < L + max_h:
        raise SplitTooSmall(
            f"test segment of length {test_ds.n} cannot hold one "
            f"window of L + H = {L + max_h}"
        )
    ds_id = dataset_id if dataset_id is not None else (test_ds.provenance or "dataset")
    model_id = getattr(model, "model_id", type(model).__name__)
    reports = []
    for h in horizons:
        count = test_ds.n - L - h + 1
        sse = sae = 0.0
        total = 0
        for c in range(test_ds.d):
            row = test_ds.values[c]
            lbs = np.lib.stride_tricks.sliding_window_view(row, L)[:count]
            tgs = np.lib.stride_tricks.sliding_window_view(row, h)[L : L + count]
            for lo in range(0, count, _CHUNK):
                hi = min(lo + _CHUNK, count)
                pred = model.forecast(lbs[lo:hi], h)
                err = pred - tgs[lo:hi]
                sse += float(np.sum(err * err))
                sae += float(np.sum(np.abs(err)))
                total += err.size
        reports.append(
            EvalReport(
                dataset=ds_id,
                horizon=h,
                mse=sse / total,
                mae=sae / total,
                model=model_id,
                seed=seed,
                windows=count * test_ds.d,
            )
        )
    return reports


def minmax_scale_columns(raw: np.ndarray, exclude_diagonal: bool = False) -> np.ndarray:
    """Per-column (v - min) / (max - min); constant columns scale to 0.

    With ``exclude_diagonal`` the cell raw[j, j] is left out of column
    j's min/max range and the resulting value is clipped into [0, 1].
    """
    raw = np.asarray(raw, dtype=np.float64)
    rows, cols = raw.shape
    scaled = np.zeros_like(raw)
    for j in range(cols):
        col = raw[:, j]
        mask = np.ones(rows, dtype=bool)
        if exclude_diagonal and j < rows:
            mask[j] = False
        pool = col[mask]
        lo, hi = float(pool.min()), float(pool.max())
        if hi > lo:
            scaled[:, j] = np.clip((col - lo) / (hi - lo), 0.0, 1.0)
    return scaled


def _child(rng: np.random.Generator) -> int:
    return int(rng.integers(0, _SEED_CEILING))


def ridge_trainer(L: int, H: int, count: int = 1024, lam: float | None = 0.0):
    """Trainer factory for transfer_matrix: sample windows, fit ridge."""

    def train(ds: Dataset, seed: int):
        windows, _ = sample_windows([ds], count, 0, L, H, seed)
        return fit_ridge(windows, lam)

    return train


def transfer_matrix(
    datasets: list[Dataset],
    trainer,
    L: int,
    H: int,
    ids: list[str] | None = None,
    seed: int = 0,
) -> TransferMatrix:
    """Train on each dataset, test on every dataset, min-max per column.

    ``trainer`` is a callable (dataset, seed) -> model; each row gets a
    deterministic child seed.  Diagonal (in-domain) cells are reported
    but excluded from each column's min-max range.
    """
    if len(datasets) < 2:
        raise ValueError("transfer matrix needs at least 2 datasets")
    if ids is None:
        ids = [ds.provenance or f"ds{i}" for i, ds in enumerate(datasets)]
    if len(ids) != len(datasets):
        raise ShapeMismatch(f"{len(ids)} ids for {len(datasets)} datasets")
    master = np.random.default_rng(seed)
    k = len(datasets)
    raw = np.empty((k, k), dtype=np.float64)
    for i, train_ds in enumerate(datasets):
        model = trainer(train_ds, _child(master))
        for j, test_ds in enumerate(datasets):
            report = evaluate_zero_shot(
                model, test_ds, L, (H,), dataset_id=ids[j], seed=seed
            )[0]
            raw[i, j] = report.mse
    scaled = minmax_scale_columns(raw, exclude_diagonal=True)
    return TransferMatrix(
        train_ids=tuple(ids), test_ids=tuple(ids), raw=raw, scaled=scaled
    )


def _pure_dataset(
    omega: float, seed: int, n: int, d: int, m: int = 16, l: int = 3
) -> Dataset:
    """Standardized dataset whose every channel is a single sinusoid.

    Uses a single-harmonic pool: sums of equal-frequency sines collapse
    to one sinusoid per channel, with phase and amplitude set by the
    pool draws.
    """
    cfg = GeneratorConfig(omega_bar=omega, m=m, h=1, l=l, n=n, d=d, seed=seed)
    return standardize(synthesize(cfg))


def _sample_distractors(
    rng: np.random.Generator,
    count: int,
    exclude_around: float,
    bin_width: float,
    max_harmonic: int = 5,
) -> np.ndarray:
    """Log-uniform draws over DISTRACTOR_RANGE, avoiding a harmonic comb.

    Frequencies within one bin (``bin_width``) of k * exclude_around
    for k = 1..max_harmonic are rejected and redrawn.
    """
    lo, hi = DISTRACTOR_RANGE
    comb = exclude_around * np.arange(1, max_harmonic + 1)
    comb = comb[comb < 0.5]
    out = np.empty(count, dtype=np.float64)
    filled = 0
    while filled < count:
        cand = np.exp(rng.uniform(np.log(lo), np.log(hi), size=count - filled))
        ok = np.all(np.abs(cand[:, None] - comb[None, :]) > bin_width, axis=1)
        take = cand[ok]
        out[filled : filled + take.size] = take
        filled += take.size
    return out


def _concat_windows(sets: list[WindowSet]) -> WindowSet:
    return WindowSet(
        lookbacks=np.concatenate([w.lookbacks for w in sets], axis=0),
        horizons=np.concatenate([w.horizons for w in sets], axis=0),
    )


def confusion_experiment(
    base_omega: float = 1 / 24,
    distractor_counts: tuple[int, ...] = (0, 1, 2, 4, 8, 16),
    seed: int = 0,
    L: int = 8,
    H: int = 96,
    windows_per_sine: int = 256,
    eval_windows: int = 512,
    n: int = 4096,
    d: int = 4,
    lam: float | None = 0.0,
) -> list[tuple[int, float]]:
    """Test MSE at the base frequency as distractor sines pile up.

    For each count c the training pool holds windows from the base
    sinusoid dataset plus c distractor-frequency sinusoid datasets
    (distractor windows augment, never replace, the base windows).
    Evaluation uses held-out base-frequency windows.  Distractor
    frequencies avoid the base harmonic comb by one bin of the training
    window, 1 / (L + H).

    The default lookback is deliberately short: each frequency needs
    about three directions of the affine map's L + 1, so crowding only
    sets in once roughly (L + 1) / 3 frequencies compete.  At L = 96
    the map can fit the whole default grid exactly and the curve stays
    flat at zero.
    """
    counts = tuple(int(c) for c in distractor_counts)
    if any(c < 0 for c in counts):
        raise ValueError(f"distractor counts must be >= 0, got {counts}")
    master = np.random.default_rng(seed)
    base_ds = _pure_dataset(base_omega, _child(master), n, d)
    eval_ds = _pure_dataset(base_omega, _child(master), n, d)
    freqs = _sample_distractors(
        master, max(counts, default=0), base_omega, 1.0 / (L + H)
    )
    distractor_ds = [_pure_dataset(f, _child(master), n, d) for f in freqs]

    base_ws, _ = sample_windows([base_ds], windows_per_sine, 0, L, H, _child(master))
    eval_ws, _ = sample_windows([eval_ds], eval_windows, 0, L, H, _child(master))
    distractor_ws = [
        sample_windows([ds], windows_per_sine, 0, L, H, _child(master))[0]
        for ds in distractor_ds
    ]

    curve = []
    for c in counts:
        train = _concat_windows([base_ws] + distractor_ws[:c])
        model = fit_ridge(train, lam)
        mse, _ = windowset_metrics(model, eval_ws)
        curve.append((c, mse))
    return curve


def generalization_experiment(
    target_omega: float,
    seed: int = 0,
    L: int = 96,
    H: int = 96,
    windows_per_freq: int = 256,
    eval_windows: int = 512,
    n: int = 4096,
    d: int = 4,
    n_fillers: int = 3,
    lam: float | None = 0.0,
) -> tuple[float, float]:
    """MSE on target-frequency windows with and without the target seen.

    Trains twice on equal-size frequency sets: fillers plus the target,
    and the same fillers plus a disjoint replacement frequency.  Both
    models are scored on held-out target windows.
    """
    master = np.random.default_rng(seed)
    bin_width = 1.0 / (L + H)
    fillers = _sample_distractors(master, n_fillers + 1, target_omega, bin_width)
    replacement, fillers = float(fillers[-1]), fillers[:-1]

    target_ds = _pure_dataset(target_omega, _child(master), n, d)
    eval_ds = _pure_dataset(target_omega, _child(master), n, d)
    filler_ds = [_pure_dataset(f, _child(master), n, d) for f in fillers]
    replacement_ds = _pure_dataset(replacement, _child(master), n, d)

    filler_ws = [
        sample_windows([ds], windows_per_freq, 0, L, H, _child(master))[0]
        for ds in filler_ds
    ]
    target_ws, _ = sample_windows(
        [target_ds], windows_per_freq, 0, L, H, _child(master)
    )
    replacement_ws, _ = sample_windows(
        [replacement_ds], windows_per_freq, 0, L, H, _child(master)
    )
    eval_ws, _ = sample_windows([eval_ds], eval_windows, 0, L, H, _child(master))

    model_with = fit_ridge(_concat_windows(filler_ws + [target_ws]), lam)
    model_without = fit_ridge(_concat_windows(filler_ws + [replacement_ws]), lam)
    mse_with, _ = windowset_metrics(model_with, eval_ws)
    mse_without, _ = windowset_metrics(model_without, eval_ws)
    return mse_with, mse_without


def harmonics_sweep(
    targets: list[tuple[str, Dataset]],
    h_values: tuple[int, ...] = (1, 2, 3, 4),
    seed: int = 0,
    L: int = 96,
    H: int = 96,
    count_train: int = 2000,
    n: int = 16384,
    d: int = 5,
    lam: float | None = None,
) -> list[tuple[int, str, float]]:
    """Zero-shot MSE per (harmonic count, target dataset) pair.

    For each target the fundamental is estimated from its periodogram;
    a fresh synthetic train set with the given h is fit and scored on
    the target.  Returns |h_values| * |targets| rows (h, id, mse).
    """
    master = np.random.default_rng(seed)
    est = {tid: estimate_fundamental(ds).omega_bar for tid, ds in targets}
    rows = []
    for h in h_values:
        for tid, ds in targets:
            child = _child(master)
            train_sets = build_harmonic_datasets(
                est[tid], child, h_values=(h,), n=n, d=d
            )
            windows, _ = sample_windows(
                train_sets, count_train, 0, L, H, _child(master)
            )
            model = fit_ridge(windows, lam)
            mse = evaluate_zero_shot(model, ds, L, (H,), dataset_id=tid)[0].mse
            rows.append((int(h), tid, float(mse)))
    return rows


def synthetic_registry(
    seed: int = 0,
    fundamentals: tuple[float, ...] = (1 / 7, 1 / 24, 1 / 96),
    copies: int = 2,
    n: int = 8192,
    d: int = 4,
    h: int = 1,
) -> list[tuple[str, Dataset]]:
    """Small pool of labelled synthetic datasets for transfer studies.

    ``copies`` independent datasets per fundamental, each with h
    harmonics, standardized, named like ``w24-a`` for omega = 1/24.

    The default h = 1 keeps same-fundamental copies affinely similar in
    the spectrum (periodogram correlation near 1), so similarity-based
    grouping of transfer cells is well populated; with h >= 2 the
    independent per-harmonic amplitude draws make copies of the same
    fundamental genuinely dissimilar.
    """
    master = np.random.default_rng(seed)
    out = []
    for omega in fundamentals:
        for c in range(copies):
            cfg = GeneratorConfig(
                omega_bar=omega, h=h, n=n, d=d, seed=_child(master)
            )
            name = f"w{round(1 / omega)}-{chr(ord('a') + c)}"
            out.append((name, standardize(synthesize(cfg))))
    return out


def size_variates_sweep(
    sizes: tuple[int, ...],
    d_values: tuple[int, ...],
    target: Dataset,
    seed: int = 0,
    L: int = 96,
    H: int = 96,
    n: int = 16384,
    lam: float | None = None,
) -> np.ndarray:
    """Zero-shot MSE grid over (training window count, variate count)."""
    master = np.random.default_rng(seed)
    omega = estimate_fundamental(target).omega_bar
    grid = np.empty((len(sizes), len(d_values)), dtype=np.float64)
    for i, size in enumerate(sizes):
        for j, d in enumerate(d_values):
            train_sets = build_harmonic_datasets(
                omega, _child(master), n=n, d=int(d)
            )
            windows, _ = sample_windows(
                train_sets, int(size), 0, L, H, _child(master)
            )
            model = fit_ridge(windows, lam)
            grid[i, j] = evaluate_zero_shot(model, target, L, (H,))[0].mse
    return grid
