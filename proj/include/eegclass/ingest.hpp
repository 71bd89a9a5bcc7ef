#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "eegclass/types.hpp"

namespace eegclass::ingest {

struct Recording {
    std::string subject_id;
    ClassLabel label = ClassLabel::Control;
    double sample_rate_hz = 128.0;
    std::vector<std::string> channels;  // always the canonical 19, in order
    Matrix samples;                     // n_samples x 19, microvolts
};

struct EpochingPlan {
    int epoch_len_samples = 1280;  // 10 s at 128 Hz
    int step_samples = 640;        // 50% overlap

    void validate() const;
};

struct Epoch {
    std::string subject_id;
    ClassLabel label = ClassLabel::Control;
    int index = 0;  // ordinal within subject
    Matrix data;    // epoch_len x 19
};

// Subject CSV: header row of channel names (any order, any case), numeric body.
// Columns are remapped to canonical order; rejects wrong channel count,
// unknown or duplicate names, and non-finite samples.
Recording load_subject_csv(const std::filesystem::path& path,
                           const std::string& subject_id,
                           ClassLabel label,
                           double sample_rate_hz);

// Manifest CSV: subject_id,label,path (paths relative to the manifest).
std::vector<Recording> load_manifest(const std::filesystem::path& manifest_path,
                                     double sample_rate_hz);

// floor((n - len)/step) + 1; requires n >= len.
long epoch_count(long n_samples, const EpochingPlan& plan);

// Epochs start at offsets 0, step, 2*step, ...; a trailing partial window is
// discarded. Throws ValidationError if the recording is shorter than one epoch.
std::vector<Epoch> segment(const Recording& rec, const EpochingPlan& plan);

}  // namespace eegclass::ingest
