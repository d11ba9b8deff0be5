"""
Experiment drivers
==================

The packaged experiments, each a one-call driver returning plain
numbers: frequency generalization (does a model trained without the
target frequency fail on it?), frequency confusion (how fast does a
fixed-capacity model degrade as the training pool gains unrelated
frequencies?), spectral-similarity transfer (does periodogram overlap
predict cross-dataset forecast error?), and the harmonics ablation.
"""

import numpy as np

from freqsynth import (
    aggregate_periodogram,
    confusion_experiment,
    generalization_experiment,
    harmonics_sweep,
    periodogram_pcc,
    ridge_trainer,
    standardize,
    synthesize,
    synthetic_registry,
    transfer_matrix,
    GeneratorConfig,
)

# ---------------------------------------------------------------------
# 1. Frequency generalization.  Train one model on a frequency grid
#    that includes 1/24 and one on the same grid with 1/24 removed,
#    then test both on pure 1/24 windows.
# ---------------------------------------------------------------------
mse_with, mse_without = generalization_experiment(1 / 24, seed=0)
print("frequency generalization at omega 1/24:")
print(f"  trained with the frequency:    mse {mse_with:.3e}")
print(f"  trained without the frequency: mse {mse_without:.3e}")
print(f"  ratio: {mse_without / max(mse_with, 1e-300):.1e}x")

# ---------------------------------------------------------------------
# 2. Frequency confusion.  A short-lookback ridge model has room for
#    only a few frequencies; adding distractor frequencies to the
#    training pool crowds out the one being tested.
# ---------------------------------------------------------------------
curve = confusion_experiment(seed=0)
print("\nfrequency confusion (lookback 8, base omega 1/24):")
for count, mse in curve:
    print(f"  {count:>2} distractor frequencies: mse {mse:.4f}")

# ---------------------------------------------------------------------
# 3. Spectral similarity predicts transfer.  Build a registry of
#    synthetic datasets at three fundamentals, train a ridge model on
#    each, and evaluate every model on every dataset.  Off-diagonal
#    error is low exactly where the aggregate periodograms agree.
# ---------------------------------------------------------------------
registry = synthetic_registry(seed=0)
ids = [name for name, _ in registry]
datasets = [ds for _, ds in registry]
tm = transfer_matrix(datasets, ridge_trainer(96, 96, count=256),
                     L=96, H=96, ids=ids, seed=0)
print(f"\ntransfer matrix over {ids} (column-scaled mse, train x test):")
for i, row in enumerate(tm.scaled):
    cells = "  ".join(f"{v:.3f}" for v in row)
    print(f"  {ids[i]:>4}: {cells}")

pgs = [aggregate_periodogram(ds, 1024) for ds in datasets]
print("periodogram correlation for the same pairs:")
for i in range(len(ids)):
    cells = "  ".join(f"{periodogram_pcc(pgs[i], pgs[j]):.3f}"
                      for j in range(len(ids)))
    print(f"  {ids[i]:>4}: {cells}")

# ---------------------------------------------------------------------
# 4. Harmonics ablation.  On targets that carry three harmonics,
#    training pools with h=3 beat pools with h=1.
# ---------------------------------------------------------------------
target = standardize(synthesize(GeneratorConfig(omega_bar=1 / 24, h=3,
                                                n=16384, d=5, seed=42)))
table = harmonics_sweep([("three-harmonic target", target)],
                        h_values=(1, 2, 3), seed=0)
print("\nharmonics ablation on a three-harmonic target:")
for h, name, mse in table:
    print(f"  trained with h={h}: mse {mse:.4f}")
