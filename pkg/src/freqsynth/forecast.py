"""Desk-scale forecasters.

Three models share one calling convention, ``forecast(X, H)`` on a
batch of lookback rows:

* naive: repeat the last lookback value;
* seasonal naive: repeat the last full period of the lookback;
* linear: an affine map from the instance-normalized lookback to the
  horizon, fit by ridge regression on pooled windows.

Instance normalization uses lookback-only statistics (mean and
population std, std floored at 1e-8), so predictions are equivariant
under positive affine rescaling of the input window and no target
information leaks into the features.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .dataset import WindowSet
from .errors import (
    EmptyTrainingSet,
    InvalidPeriod,
    InvalidWindow,
    PeriodTooLong,
    ShapeMismatch,
)

# Floor applied to per-window std so constant lookbacks stay finite.
STD_FLOOR = 1e-8

# Relative weight of the default ridge coefficient against the mean
# feature second moment, trace(Phi' Phi) / (L + 1).
DEFAULT_LAMBDA_REL = 1e-3

DEFAULT_ANCHOR = 1.0


def _as_batch(X, L: int | None = None) -> np.ndarray:
    """Validate lookbacks as a finite (N, L) float64 batch."""
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] < 1:
        raise InvalidWindow(f"lookbacks must be (N, L), got shape {arr.shape}")
    if L is not None and arr.shape[1] != L:
        raise InvalidWindow(
            f"lookback length {arr.shape[1]} does not match model L={L}"
        )
    if not np.all(np.isfinite(arr)):
        raise InvalidWindow("lookback values must be finite")
    return arr


def _norm_stats(X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    mu = X.mean(axis=1, keepdims=True)
    sd = np.maximum(X.std(axis=1, keepdims=True), STD_FLOOR)
    return mu, sd


class NaiveForecaster:
    """Last-value carry-forward."""

    model_id = "naive"

    def forecast(self, X, H: int) -> np.ndarray:
        if H < 1:
            raise InvalidWindow(f"horizon must be >= 1, got {H}")
        arr = _as_batch(X)
        return np.repeat(arr[:, -1:], H, axis=1)


class SeasonalNaiveForecaster:
    """Repeat the last full period of the lookback."""

    def __init__(self, period: int):
        if period < 1:
            raise InvalidPeriod(f"period must be >= 1, got {period}")
        self.period = int(period)

    @property
    def model_id(self) -> str:
        return f"seasonal-naive-{self.period}"

    def forecast(self, X, H: int) -> np.ndarray:
        if H < 1:
            raise InvalidWindow(f"horizon must be >= 1, got {H}")
        arr = _as_batch(X)
        L = arr.shape[1]
        if self.period > L:
            raise PeriodTooLong(
                f"period {self.period} exceeds lookback length {L}"
            )
        idx = L - self.period + (np.arange(H) % self.period)
        return arr[:, idx]


def naive_forecast(lookback, H: int) -> np.ndarray:
    """H copies of the last lookback value."""
    return NaiveForecaster().forecast(lookback, H)[0]


def seasonal_naive_forecast(lookback, H: int, period: int) -> np.ndarray:
    """output[h] = lookback[L - period + (h mod period)]."""
    return SeasonalNaiveForecaster(period).forecast(lookback, H)[0]


@dataclass(frozen=True)
class LinearForecaster:
    """Affine map from normalized lookback to horizon.

    ``weights`` is H x (L + 1); the last column multiplies the constant
    bias feature.  ``lam`` records the ridge coefficient used at fit
    time (informational after construction).
    """

    weights: np.ndarray
    L: int
    H: int
    lam: float
    model_id: str = "ridge"

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.float64, copy=True)
        if w.shape != (self.H, self.L + 1):
            raise ShapeMismatch(
                f"weights shape {w.shape}, expected ({self.H}, {self.L + 1})"
            )
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        if self.lam < 0:
            raise ValueError(f"lam must be >= 0, got {self.lam}")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    def forecast(self, X, H: int | None = None) -> np.ndarray:
        """Predict ``H`` steps (default self.H) for each lookback row.

        H below self.H truncates the prediction; above raises.
        """
        h = self.H if H is None else int(H)
        if not 1 <= h <= self.H:
            raise InvalidWindow(
                f"horizon {h} outside this model's range [1, {self.H}]"
            )
        arr = _as_batch(X, self.L)
        mu, sd = _norm_stats(arr)
        z = (arr - mu) / sd
        phi = np.concatenate([z, np.ones((arr.shape[0], 1))], axis=1)
        y = phi @ self.weights[:h].T
        return y * sd + mu


def predict(model: LinearForecaster, lookback) -> np.ndarray:
    """Single-window convenience wrapper around forecast."""
    return model.forecast(np.asarray(lookback, dtype=np.float64)[None, :])[0]


def _features(ws: WindowSet) -> tuple[np.ndarray, np.ndarray]:
    """Instance-normalized design matrix [z; 1] and normalized targets."""
    mu, sd = _norm_stats(ws.lookbacks)
    z = (ws.lookbacks - mu) / sd
    phi = np.concatenate([z, np.ones((ws.count, 1))], axis=1)
    y = (ws.horizons - mu) / sd
    return phi, y


def default_lambda(phi: np.ndarray) -> float:
    """DEFAULT_LAMBDA_REL times the mean feature second moment."""
    return DEFAULT_LAMBDA_REL * float(np.einsum("ij,ij->", phi, phi)) / phi.shape[1]


def fit_ridge(train: WindowSet, lam: float | None = None) -> LinearForecaster:
    """Minimize sum ||W [z;1] - y_norm||^2 + lam ||W||_F^2 over windows.

    lam=None picks the relative default; lam=0 solves exact least
    squares via lstsq (minimum-norm on rank-deficient designs); lam>0
    solves the normal equations directly.
    """
    if train.count == 0:
        raise EmptyTrainingSet("cannot fit on an empty window set")
    phi, y = _features(train)
    if lam is None:
        lam = default_lambda(phi)
    if lam < 0:
        raise ValueError(f"lam must be >= 0, got {lam}")
    if lam == 0.0:
        wt, *_ = np.linalg.lstsq(phi, y, rcond=None)
    else:
        gram = phi.T @ phi
        gram[np.diag_indices_from(gram)] += lam
        wt = np.linalg.solve(gram, phi.T @ y)
    return LinearForecaster(weights=wt.T, L=train.L, H=train.H, lam=float(lam))


def finetune(
    model: LinearForecaster,
    fewshot: WindowSet,
    anchor: float = DEFAULT_ANCHOR,
    lam: float | None = None,
) -> LinearForecaster:
    """Refit on few-shot windows, penalized toward the pretrained weights.

    Solves sum ||W phi - y||^2 + lam ||W||_F^2 + anchor ||W - W0||_F^2,
    so anchor -> infinity returns W0 and anchor = 0 refits from scratch.
    lam=None reuses the coefficient recorded on the pretrained model.
    """
    if fewshot.count == 0:
        raise EmptyTrainingSet("cannot finetune on an empty window set")
    if fewshot.L != model.L or fewshot.H != model.H:
        raise ShapeMismatch(
            f"few-shot windows are L={fewshot.L}, H={fewshot.H}; "
            f"model expects L={model.L}, H={model.H}"
        )
    if anchor < 0:
        raise ValueError(f"anchor must be >= 0, got {anchor}")
    if lam is None:
        lam = model.lam
    if anchor == 0.0:
        fitted = fit_ridge(fewshot, lam)
        return LinearForecaster(
            weights=fitted.weights,
            L=fitted.L,
            H=fitted.H,
            lam=fitted.lam,
            model_id=f"{model.model_id}-finetuned",
        )
    phi, y = _features(fewshot)
    gram = phi.T @ phi
    gram[np.diag_indices_from(gram)] += lam + anchor
    rhs = phi.T @ y + anchor * model.weights.T
    wt = np.linalg.solve(gram, rhs)
    return LinearForecaster(
        weights=wt.T,
        L=model.L,
        H=model.H,
        lam=float(lam),
        model_id=f"{model.model_id}-finetuned",
    )


def model_to_json(model: LinearForecaster) -> str:
    """Serialize as {L, H, lambda, weights row-major}; exact round-trip."""
    doc = {
        "L": model.L,
        "H": model.H,
        "lambda": model.lam,
        "weights": model.weights.ravel().tolist(),
    }
    return json.dumps(doc)


def model_from_json(text: str) -> LinearForecaster:
    doc = json.loads(text)
    L, H = int(doc["L"]), int(doc["H"])
    w = np.array(doc["weights"], dtype=np.float64).reshape(H, L + 1)
    return LinearForecaster(weights=w, L=L, H=H, lam=float(doc["lambda"]))
