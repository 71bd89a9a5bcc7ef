#include "eegclass/ingest.hpp"

#include <cmath>
#include <set>

#include "csv.hpp"

namespace eegclass::ingest {

void EpochingPlan::validate() const {
    if (epoch_len_samples < 2) {
        throw ValidationError("epoch_len_samples must be >= 2");
    }
    if (step_samples < 1) {
        throw ValidationError("step_samples must be >= 1");
    }
    if (step_samples > epoch_len_samples) {
        throw ValidationError("step_samples must not exceed epoch_len_samples");
    }
}

Recording load_subject_csv(const std::filesystem::path& path,
                           const std::string& subject_id,
                           ClassLabel label,
                           double sample_rate_hz) {
    if (sample_rate_hz <= 0.0) throw ValidationError("sample rate must be positive");
    const auto rows = detail::read_csv(path);
    if (rows.size() < 2) {
        throw ValidationError(subject_id + ": " + path.string() +
                              " needs a header row and at least one sample row");
    }

    const auto& header = rows.front();
    if (static_cast<int>(header.size()) != kNumChannels) {
        throw ValidationError(subject_id + ": wrong channel count in " + path.string() +
                              " (got " + std::to_string(header.size()) + ", expected " +
                              std::to_string(kNumChannels) + ")");
    }

    // column_of[c] = CSV column holding canonical channel c
    std::vector<int> column_of(kNumChannels, -1);
    for (int col = 0; col < kNumChannels; ++col) {
        const int canon = channel_index(header[static_cast<std::size_t>(col)]);
        if (canon < 0) {
            throw ValidationError(subject_id + ": unknown channel name '" +
                                  header[static_cast<std::size_t>(col)] + "' in " +
                                  path.string());
        }
        if (column_of[canon] != -1) {
            throw ValidationError(subject_id + ": duplicate channel '" +
                                  canonical_channels()[static_cast<std::size_t>(canon)] +
                                  "' in " + path.string());
        }
        column_of[canon] = col;
    }

    const long n_samples = static_cast<long>(rows.size()) - 1;
    Matrix samples(n_samples, kNumChannels);
    for (long r = 0; r < n_samples; ++r) {
        const auto& fields = rows[static_cast<std::size_t>(r) + 1];
        if (static_cast<int>(fields.size()) != kNumChannels) {
            throw ValidationError(subject_id + ": row " + std::to_string(r + 2) + " of " +
                                  path.string() + " has " + std::to_string(fields.size()) +
                                  " fields, expected " + std::to_string(kNumChannels));
        }
        for (int c = 0; c < kNumChannels; ++c) {
            const double v = detail::parse_double(
                fields[static_cast<std::size_t>(column_of[c])],
                subject_id + " row " + std::to_string(r + 2));
            if (!std::isfinite(v)) {
                throw ValidationError(subject_id + ": non-finite sample at row " +
                                      std::to_string(r + 2) + ", channel " +
                                      canonical_channels()[static_cast<std::size_t>(c)]);
            }
            samples(r, c) = v;
        }
    }

    Recording rec;
    rec.subject_id = subject_id;
    rec.label = label;
    rec.sample_rate_hz = sample_rate_hz;
    rec.channels.assign(canonical_channels().begin(), canonical_channels().end());
    rec.samples = std::move(samples);
    return rec;
}

std::vector<Recording> load_manifest(const std::filesystem::path& manifest_path,
                                     double sample_rate_hz) {
    const auto rows = detail::read_csv(manifest_path);
    if (rows.empty()) throw ValidationError("empty manifest: " + manifest_path.string());

    std::size_t first = 0;
    if (!rows[0].empty() && detail::trim(rows[0][0]) == "subject_id") first = 1;  // header optional

    const auto base_dir = manifest_path.parent_path();
    std::vector<Recording> recordings;
    std::set<std::string> seen;
    for (std::size_t i = first; i < rows.size(); ++i) {
        const auto& fields = rows[i];
        if (fields.size() != 3) {
            throw ValidationError("manifest row " + std::to_string(i + 1) +
                                  ": expected subject_id,label,path");
        }
        const std::string& subject_id = fields[0];
        if (!seen.insert(subject_id).second) {
            throw ValidationError("manifest: duplicate subject_id '" + subject_id + "'");
        }
        const ClassLabel label = parse_label(fields[1]);
        std::filesystem::path data_path(fields[2]);
        if (data_path.is_relative()) data_path = base_dir / data_path;
        recordings.push_back(load_subject_csv(data_path, subject_id, label, sample_rate_hz));
    }
    if (recordings.empty()) throw ValidationError("manifest has no data rows");
    return recordings;
}

long epoch_count(long n_samples, const EpochingPlan& plan) {
    plan.validate();
    if (n_samples < plan.epoch_len_samples) return 0;
    return (n_samples - plan.epoch_len_samples) / plan.step_samples + 1;
}

std::vector<Epoch> segment(const Recording& rec, const EpochingPlan& plan) {
    plan.validate();
    const long n = rec.samples.rows();
    if (n < plan.epoch_len_samples) {
        throw ValidationError(rec.subject_id + ": recording of " + std::to_string(n) +
                              " samples is shorter than one epoch (" +
                              std::to_string(plan.epoch_len_samples) + ")");
    }
    const long count = epoch_count(n, plan);
    std::vector<Epoch> epochs;
    epochs.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        Epoch e;
        e.subject_id = rec.subject_id;
        e.label = rec.label;
        e.index = static_cast<int>(i);
        e.data = rec.samples.middleRows(i * plan.step_samples, plan.epoch_len_samples);
        epochs.push_back(std::move(e));
    }
    return epochs;
}

}  // namespace eegclass::ingest
