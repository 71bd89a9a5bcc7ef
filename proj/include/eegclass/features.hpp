#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "eegclass/dsp.hpp"
#include "eegclass/ingest.hpp"
#include "eegclass/spectral.hpp"
#include "eegclass/types.hpp"

namespace eegclass::features {

// Whether per-band features come from a PSD of the band-filtered signal, or
// from one broadband PSD sliced at band edges.
enum class PsdSource { Filtered, Broadband };

PsdSource parse_psd_source(const std::string& name);
std::string to_string(PsdSource source);

struct ExtractionConfig {
    std::vector<dsp::BandSpec> bands = dsp::default_bands();
    spectral::WelchConfig welch;
    int filter_order = 5;
    dsp::FilterMode filter_mode = dsp::FilterMode::ZeroPhase;
    PsdSource psd_source = PsdSource::Filtered;
};

inline constexpr int kFeaturesPerChannelBand = 2;  // power, entropy
inline constexpr int kNumBands = 5;
inline constexpr int kNumFeatures = kNumChannels * kNumBands * kFeaturesPerChannelBand;

// Channel-major, band-minor, feature innermost:
//   index = ch*10 + band*2 + kind   (kind 0 = power, 1 = entropy)
int feature_index(int channel, int band, int kind);
std::string feature_name(int index);  // e.g. "Fz.alpha.power"

struct FeatureVector {
    std::string subject_id;
    ClassLabel label = ClassLabel::Control;
    Vector values;  // length 190
};

// Rows align across the three members.
struct FeatureMatrix {
    std::vector<std::string> subject_ids;
    std::vector<ClassLabel> labels;
    Matrix values;  // n_rows x 190

    long rows() const { return values.rows(); }
};

FeatureVector extract(const ingest::Epoch& epoch, const ExtractionConfig& cfg);

// Broadband-filters each recording, segments it, and extracts one row per
// epoch. Row order: recordings in input order, epochs by index.
FeatureMatrix extract_all(const std::vector<ingest::Recording>& recordings,
                          const ingest::EpochingPlan& plan,
                          const ExtractionConfig& cfg,
                          int jobs = 1);

// Mean feature vector over each subject's epochs, one row per subject.
FeatureMatrix aggregate_by_subject(const FeatureMatrix& rows);

struct NormalizationStats {
    Vector mu;
    Vector sigma;  // population std; exact zeros mark constant features
};

NormalizationStats fit_normalizer(const Matrix& rows);  // needs >= 2 rows

// z = (x - mu) / sigma per column; sigma == 0 columns map to 0.
Matrix transform(const Matrix& rows, const NormalizationStats& stats);
Vector transform(const Vector& row, const NormalizationStats& stats);

// CSV with header subject_id,label,f000..f189.
void write_features_csv(const std::filesystem::path& path, const FeatureMatrix& rows);
FeatureMatrix read_features_csv(const std::filesystem::path& path);

}  // namespace eegclass::features
