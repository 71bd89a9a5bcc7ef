#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "eegclass/dsp.hpp"
#include "eegclass/eval.hpp"
#include "eegclass/features.hpp"
#include "eegclass/ingest.hpp"
#include "eegclass/model.hpp"
#include "eegclass/spectral.hpp"

namespace eegclass::config {

enum class Unit { Epoch, Subject };

Unit parse_unit(const std::string& name);
std::string to_string(Unit unit);

// Everything that affects pipeline output, in one place. Runtime-only knobs
// (jobs, output paths) deliberately live outside so the config hash identifies
// the computation, not the run.
struct PipelineConfig {
    double sample_rate_hz = 128.0;

    std::vector<dsp::BandSpec> bands = dsp::default_bands();
    dsp::BandSpec broadband = dsp::default_broadband();
    int filter_order = 5;
    dsp::FilterMode filter_mode = dsp::FilterMode::ZeroPhase;

    ingest::EpochingPlan epoch;
    spectral::WelchConfig welch;  // sample_rate_hz mirrored on load
    features::PsdSource psd_source = features::PsdSource::Filtered;

    eval::NormScope normalization = eval::NormScope::Global;  // single-normalizer protocol
    Unit unit = Unit::Epoch;

    int fold_k = 10;
    eval::FoldMode fold_mode = eval::FoldMode::Stratified;
    std::uint64_t fold_seed = 0;

    eval::ClassifierKind classifier = eval::ClassifierKind::Svm;
    model::KernelSpec kernel;
    std::vector<model::KernelKind> compare_kernels = {
        model::KernelKind::Linear, model::KernelKind::Rbf,
        model::KernelKind::Poly, model::KernelKind::Sigmoid};
    double svm_C = 1.0;
    double svm_tol = 1e-3;
    int svm_max_passes = 10;
    model::GbtParams gbt;

    void validate() const;  // every field checked against module preconditions

    features::ExtractionConfig extraction() const;
    eval::ClassifierConfig classifier_config() const;
};

PipelineConfig default_config();

// JSON round-trip. Unknown keys are rejected; omitted keys keep defaults.
PipelineConfig from_json_text(const std::string& text);
std::string to_json_text(const PipelineConfig& cfg);  // canonical: sorted keys, 2-space indent

PipelineConfig load_config(const std::filesystem::path& path);

// FNV-1a 64 of the canonical JSON text, as 16 hex chars. Equal hashes mean
// identical pipelines.
std::string config_hash(const PipelineConfig& cfg);

}  // namespace eegclass::config
