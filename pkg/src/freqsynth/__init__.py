"""freqsynth: frequency-domain time-series toolkit.

Scaled-periodogram analysis, harmonic sine-pool synthesis with natural
and mixed-frequency variants, fundamental-frequency estimation, and a
desk-scale zero-/few-shot forecasting evaluation harness.
"""

from .dataio import (
    DatasetRegistryEntry,
    load_csv,
    load_generator_config,
    load_registry,
    save_csv,
    save_matrix_csv,
    save_periodogram_csv,
    save_reports_csv,
    save_reports_json,
    save_table_csv,
)
from .dataset import Dataset, WindowSet
from .errors import FreqSynthError
from .evaluation import (
    ETT_SPLIT,
    STANDARD_SPLIT,
    EvalReport,
    SplitSpec,
    TransferMatrix,
    confusion_experiment,
    evaluate_zero_shot,
    generalization_experiment,
    harmonics_sweep,
    metrics,
    minmax_scale_columns,
    ridge_trainer,
    size_variates_sweep,
    split,
    standardize_by_train,
    synthetic_registry,
    transfer_matrix,
    windowset_metrics,
)
from .forecast import (
    LinearForecaster,
    NaiveForecaster,
    SeasonalNaiveForecaster,
    finetune,
    fit_ridge,
    model_from_json,
    model_to_json,
    naive_forecast,
    predict,
    seasonal_naive_forecast,
)
from .freqest import (
    RATE_TABLE,
    FundamentalEstimate,
    estimate_fundamental,
    freq_from_sampling_rate,
    parse_sampling_rate,
)
from .generator import (
    MIX_FREQ_RANGE,
    NATURAL_FREQUENCIES,
    GeneratorConfig,
    SineSpec,
    build_harmonic_datasets,
    build_mix_datasets,
    build_mix_pool,
    build_natural_datasets,
    build_pool,
    freq_synth,
    freq_synth_mix,
    freq_synth_natural,
    harmonic_set,
    sample_windows,
    standardize,
    synthesize,
)
from .spectral import (
    Periodogram,
    Spectrum,
    aggregate_periodogram,
    default_window_len,
    dft,
    dft_naive,
    find_peaks,
    periodogram_pcc,
    scaled_periodogram,
)

__version__ = "0.1.0"

__all__ = [
    "DatasetRegistryEntry",
    "load_csv",
    "load_generator_config",
    "load_registry",
    "save_csv",
    "save_matrix_csv",
    "save_periodogram_csv",
    "save_reports_csv",
    "save_reports_json",
    "save_table_csv",
    "Dataset",
    "WindowSet",
    "FreqSynthError",
    "ETT_SPLIT",
    "STANDARD_SPLIT",
    "EvalReport",
    "SplitSpec",
    "TransferMatrix",
    "confusion_experiment",
    "evaluate_zero_shot",
    "generalization_experiment",
    "harmonics_sweep",
    "metrics",
    "minmax_scale_columns",
    "ridge_trainer",
    "size_variates_sweep",
    "split",
    "standardize_by_train",
    "synthetic_registry",
    "transfer_matrix",
    "windowset_metrics",
    "LinearForecaster",
    "NaiveForecaster",
    "SeasonalNaiveForecaster",
    "finetune",
    "fit_ridge",
    "model_from_json",
    "model_to_json",
    "naive_forecast",
    "predict",
    "seasonal_naive_forecast",
    "RATE_TABLE",
    "FundamentalEstimate",
    "estimate_fundamental",
    "freq_from_sampling_rate",
    "parse_sampling_rate",
    "MIX_FREQ_RANGE",
    "NATURAL_FREQUENCIES",
    "GeneratorConfig",
    "SineSpec",
    "build_harmonic_datasets",
    "build_mix_datasets",
    "build_mix_pool",
    "build_natural_datasets",
    "build_pool",
    "freq_synth",
    "freq_synth_mix",
    "freq_synth_natural",
    "harmonic_set",
    "sample_windows",
    "standardize",
    "synthesize",
    "Periodogram",
    "Spectrum",
    "aggregate_periodogram",
    "default_window_len",
    "dft",
    "dft_naive",
    "find_peaks",
    "periodogram_pcc",
    "scaled_periodogram",
    "__version__",
]
