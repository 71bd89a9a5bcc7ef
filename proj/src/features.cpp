#include "eegclass/features.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include "csv.hpp"
#include "parallel.hpp"

namespace eegclass::features {

PsdSource parse_psd_source(const std::string& name) {
    if (name == "filtered") return PsdSource::Filtered;
    if (name == "broadband") return PsdSource::Broadband;
    throw ValidationError("unknown psd source: '" + name + "' (filtered or broadband)");
}

std::string to_string(PsdSource source) {
    return source == PsdSource::Filtered ? "filtered" : "broadband";
}

int feature_index(int channel, int band, int kind) {
    return channel * kNumBands * kFeaturesPerChannelBand + band * kFeaturesPerChannelBand + kind;
}

std::string feature_name(int index) {
    const int kind = index % kFeaturesPerChannelBand;
    const int band = (index / kFeaturesPerChannelBand) % kNumBands;
    const int channel = index / (kFeaturesPerChannelBand * kNumBands);
    const auto& bands = dsp::default_bands();
    return canonical_channels()[static_cast<std::size_t>(channel)] + "." +
           dsp::band_name(bands[static_cast<std::size_t>(band)].band) + "." +
           (kind == 0 ? "power" : "entropy");
}

FeatureVector extract(const ingest::Epoch& epoch, const ExtractionConfig& cfg) {
    if (static_cast<int>(cfg.bands.size()) != kNumBands) {
        throw ValidationError("extraction expects " + std::to_string(kNumBands) +
                              " bands, got " + std::to_string(cfg.bands.size()));
    }
    if (epoch.data.cols() != kNumChannels) {
        throw ValidationError(epoch.subject_id + " epoch " + std::to_string(epoch.index) +
                              ": expected " + std::to_string(kNumChannels) + " channels");
    }

    FeatureVector out;
    out.subject_id = epoch.subject_id;
    out.label = epoch.label;
    out.values.resize(kNumFeatures);

    try {
        if (cfg.psd_source == PsdSource::Filtered) {
            const auto per_band = dsp::decompose(epoch.data, cfg.welch.sample_rate_hz,
                                                 cfg.bands, cfg.filter_order, cfg.filter_mode);
            for (int ch = 0; ch < kNumChannels; ++ch) {
                for (int b = 0; b < kNumBands; ++b) {
                    const auto psd = spectral::welch_psd(
                        Vector(per_band[static_cast<std::size_t>(b)].col(ch)), cfg.welch);
                    const auto& band = cfg.bands[static_cast<std::size_t>(b)];
                    out.values[feature_index(ch, b, 0)] = spectral::band_power(psd, band);
                    out.values[feature_index(ch, b, 1)] = spectral::band_entropy(psd, band);
                }
            }
        } else {
            for (int ch = 0; ch < kNumChannels; ++ch) {
                const auto psd = spectral::welch_psd(Vector(epoch.data.col(ch)), cfg.welch);
                for (int b = 0; b < kNumBands; ++b) {
                    const auto& band = cfg.bands[static_cast<std::size_t>(b)];
                    out.values[feature_index(ch, b, 0)] = spectral::band_power(psd, band);
                    out.values[feature_index(ch, b, 1)] = spectral::band_entropy(psd, band);
                }
            }
        }
    } catch (const ValidationError& e) {
        throw ValidationError(epoch.subject_id + " epoch " + std::to_string(epoch.index) +
                              ": " + e.what());
    }
    return out;
}

FeatureMatrix extract_all(const std::vector<ingest::Recording>& recordings,
                          const ingest::EpochingPlan& plan,
                          const ExtractionConfig& cfg,
                          int jobs) {
    const dsp::BandSpec broadband = dsp::default_broadband();
    // Per-recording work, merged by index afterwards.
    std::vector<std::vector<FeatureVector>> per_recording(recordings.size());
    detail::parallel_for(static_cast<long>(recordings.size()), jobs, [&](long r) {
        const auto& rec = recordings[static_cast<std::size_t>(r)];
        ingest::Recording cleaned = rec;
        const auto spec = dsp::design_bandpass(cfg.filter_order, broadband, rec.sample_rate_hz);
        cleaned.samples = dsp::apply_filter(spec, rec.samples, cfg.filter_mode);
        const auto epochs = ingest::segment(cleaned, plan);
        auto& rows = per_recording[static_cast<std::size_t>(r)];
        rows.reserve(epochs.size());
        for (const auto& epoch : epochs) rows.push_back(extract(epoch, cfg));
    });

    long total = 0;
    for (const auto& rows : per_recording) total += static_cast<long>(rows.size());

    FeatureMatrix out;
    out.values.resize(total, kNumFeatures);
    out.subject_ids.reserve(static_cast<std::size_t>(total));
    out.labels.reserve(static_cast<std::size_t>(total));
    long row = 0;
    for (const auto& rows : per_recording) {
        for (const auto& fv : rows) {
            out.subject_ids.push_back(fv.subject_id);
            out.labels.push_back(fv.label);
            out.values.row(row++) = fv.values.transpose();
        }
    }
    return out;
}

FeatureMatrix aggregate_by_subject(const FeatureMatrix& rows) {
    std::vector<std::string> order;
    std::map<std::string, std::pair<Vector, long>> sums;
    std::map<std::string, ClassLabel> label_of;
    for (long r = 0; r < rows.rows(); ++r) {
        const auto& id = rows.subject_ids[static_cast<std::size_t>(r)];
        auto it = sums.find(id);
        if (it == sums.end()) {
            order.push_back(id);
            sums.emplace(id, std::make_pair(Vector(rows.values.row(r).transpose()), 1L));
            label_of[id] = rows.labels[static_cast<std::size_t>(r)];
        } else {
            it->second.first += rows.values.row(r).transpose();
            it->second.second += 1;
        }
    }
    FeatureMatrix out;
    out.values.resize(static_cast<long>(order.size()), rows.values.cols());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& [sum, count] = sums.at(order[i]);
        out.values.row(static_cast<long>(i)) = (sum / static_cast<double>(count)).transpose();
        out.subject_ids.push_back(order[i]);
        out.labels.push_back(label_of.at(order[i]));
    }
    return out;
}

NormalizationStats fit_normalizer(const Matrix& rows) {
    if (rows.rows() < 2) {
        throw ValidationError("fit_normalizer needs at least 2 rows, got " +
                              std::to_string(rows.rows()));
    }
    NormalizationStats stats;
    stats.mu = rows.colwise().mean();
    stats.sigma.resize(rows.cols());
    for (long c = 0; c < rows.cols(); ++c) {
        const double var =
            (rows.col(c).array() - stats.mu[c]).square().sum() / static_cast<double>(rows.rows());
        stats.sigma[c] = std::sqrt(var);
    }
    return stats;
}

Matrix transform(const Matrix& rows, const NormalizationStats& stats) {
    if (rows.cols() != stats.mu.size()) {
        throw ValidationError("transform: column count " + std::to_string(rows.cols()) +
                              " does not match stats dimension " +
                              std::to_string(stats.mu.size()));
    }
    Matrix z(rows.rows(), rows.cols());
    for (long c = 0; c < rows.cols(); ++c) {
        if (stats.sigma[c] == 0.0) {
            z.col(c).setZero();  // constant feature carries no information
        } else {
            z.col(c) = (rows.col(c).array() - stats.mu[c]) / stats.sigma[c];
        }
    }
    return z;
}

Vector transform(const Vector& row, const NormalizationStats& stats) {
    return Vector(transform(Matrix(row.transpose()), stats).row(0).transpose());
}

void write_features_csv(const std::filesystem::path& path, const FeatureMatrix& rows) {
    std::ofstream out(path);
    if (!out) throw ComputeError("cannot write " + path.string());
    out << "subject_id,label";
    for (int f = 0; f < kNumFeatures; ++f) {
        char name[8];
        std::snprintf(name, sizeof(name), "f%03d", f);
        out << ',' << name;
    }
    out << '\n';
    char buf[32];
    for (long r = 0; r < rows.rows(); ++r) {
        out << rows.subject_ids[static_cast<std::size_t>(r)] << ','
            << to_string(rows.labels[static_cast<std::size_t>(r)]);
        for (long c = 0; c < rows.values.cols(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", rows.values(r, c));
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) throw ComputeError("short write to " + path.string());
}

FeatureMatrix read_features_csv(const std::filesystem::path& path) {
    const auto rows = detail::read_csv(path);
    if (rows.size() < 2) throw ValidationError("features file is empty: " + path.string());
    const auto& header = rows.front();
    if (header.size() != 2 + kNumFeatures || header[0] != "subject_id" || header[1] != "label") {
        throw ValidationError("unexpected features header in " + path.string());
    }
    FeatureMatrix out;
    const long n = static_cast<long>(rows.size()) - 1;
    out.values.resize(n, kNumFeatures);
    for (long r = 0; r < n; ++r) {
        const auto& fields = rows[static_cast<std::size_t>(r) + 1];
        if (fields.size() != 2 + kNumFeatures) {
            throw ValidationError("features row " + std::to_string(r + 2) + " has " +
                                  std::to_string(fields.size()) + " fields");
        }
        out.subject_ids.push_back(fields[0]);
        out.labels.push_back(parse_label(fields[1]));
        for (int c = 0; c < kNumFeatures; ++c) {
            out.values(r, c) = detail::parse_double(fields[static_cast<std::size_t>(c) + 2],
                                                    "features row " + std::to_string(r + 2));
        }
    }
    return out;
}

}  // namespace eegclass::features
