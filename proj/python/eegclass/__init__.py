"""EEG band-power / band-entropy classification pipeline (C++ core)."""

from eegclass._core import (
    NUM_CHANNELS,
    NUM_FEATURES,
    ComputeError,
    GbtModel,
    SvmModel,
    ValidationError,
    __version__,
    band_entropy,
    band_power,
    bandpass_filter,
    channel_names,
    extract_features,
    feature_names,
    gbt_fit,
    generate_synthetic,
    svm_fit,
    welch_psd,
)

__all__ = [
    "NUM_CHANNELS",
    "NUM_FEATURES",
    "ComputeError",
    "GbtModel",
    "SvmModel",
    "ValidationError",
    "__version__",
    "band_entropy",
    "band_power",
    "bandpass_filter",
    "channel_names",
    "extract_features",
    "feature_names",
    "gbt_fit",
    "generate_synthetic",
    "svm_fit",
    "welch_psd",
]
