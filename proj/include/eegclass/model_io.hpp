#pragma once

#include <filesystem>
#include <optional>

#include "eegclass/config.hpp"
#include "eegclass/eval.hpp"
#include "eegclass/features.hpp"
#include "eegclass/model.hpp"

namespace eegclass::model_io {

// A trained classifier plus everything needed to score raw recordings:
// the resolved pipeline config and the normalization fitted at train time.
struct ModelBundle {
    config::PipelineConfig pipeline;
    features::NormalizationStats normalization;
    eval::ClassifierKind kind = eval::ClassifierKind::Svm;
    std::optional<model::SvmModel> svm;
    std::optional<model::GbtModel> gbt;
};

inline constexpr int kModelFormatVersion = 1;

void save_model(const std::filesystem::path& path, const ModelBundle& bundle);
ModelBundle load_model(const std::filesystem::path& path);

}  // namespace eegclass::model_io
