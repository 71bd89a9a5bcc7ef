// Subcommand wiring. Exit codes: 0 ok, 1 validation/usage, 2 runtime failure.
// Reports carry no timestamps so identical runs produce identical bytes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "eegclass/cli.hpp"
#include "eegclass/config.hpp"
#include "eegclass/eval.hpp"
#include "eegclass/features.hpp"
#include "eegclass/ingest.hpp"
#include "eegclass/model.hpp"
#include "eegclass/model_io.hpp"
#include "eegclass/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

namespace eegclass::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw ComputeError("short write to " + path.string());
}

// Pipeline flags shared by extract / crossval / compare-kernels. Values the
// user actually passed override the config file.
struct PipelineFlags {
    std::string config_path;
    double sample_rate = 0.0;
    std::string normalization, unit, fold_mode, classifier, kernel, gamma;
    std::string psd_source, filter_mode;
    int fold_k = 0;
    std::uint64_t fold_seed = 0, gbt_seed = 0;
    double svm_c = 0.0;

    CLI::Option* o_sample_rate = nullptr;
    CLI::Option* o_normalization = nullptr;
    CLI::Option* o_unit = nullptr;
    CLI::Option* o_fold_k = nullptr;
    CLI::Option* o_fold_mode = nullptr;
    CLI::Option* o_fold_seed = nullptr;
    CLI::Option* o_classifier = nullptr;
    CLI::Option* o_kernel = nullptr;
    CLI::Option* o_gamma = nullptr;
    CLI::Option* o_svm_c = nullptr;
    CLI::Option* o_gbt_seed = nullptr;
    CLI::Option* o_psd_source = nullptr;
    CLI::Option* o_filter_mode = nullptr;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "pipeline config JSON")->check(CLI::ExistingFile);
        o_sample_rate = cmd->add_option("--sample-rate", sample_rate, "sampling rate in Hz");
        o_normalization = cmd->add_option("--normalization", normalization, "fold|global");
        o_unit = cmd->add_option("--unit", unit, "epoch|subject");
        o_fold_k = cmd->add_option("--fold-k", fold_k, "number of folds");
        o_fold_mode = cmd->add_option("--fold-mode", fold_mode, "stratified|stratified_grouped");
        o_fold_seed = cmd->add_option("--fold-seed", fold_seed, "fold shuffle seed");
        o_classifier = cmd->add_option("--classifier", classifier, "svm|gbt");
        o_kernel = cmd->add_option("--kernel", kernel, "linear|rbf|poly|sigmoid");
        o_gamma = cmd->add_option("--gamma", gamma, "kernel gamma, number or 'scale'");
        o_svm_c = cmd->add_option("--svm-c", svm_c, "SVM regularization C");
        o_gbt_seed = cmd->add_option("--gbt-seed", gbt_seed, "boosting subsample seed");
        o_psd_source = cmd->add_option("--psd-source", psd_source, "filtered|broadband");
        o_filter_mode = cmd->add_option("--filter-mode", filter_mode, "causal|zero_phase");
    }

    config::PipelineConfig resolve() const {
        config::PipelineConfig cfg = config_path.empty() ? config::default_config()
                                                         : config::load_config(config_path);
        if (o_sample_rate->count() > 0) cfg.sample_rate_hz = sample_rate;
        if (o_normalization->count() > 0) cfg.normalization = eval::parse_norm_scope(normalization);
        if (o_unit->count() > 0) cfg.unit = config::parse_unit(unit);
        if (o_fold_k->count() > 0) cfg.fold_k = fold_k;
        if (o_fold_mode->count() > 0) cfg.fold_mode = eval::parse_fold_mode(fold_mode);
        if (o_fold_seed->count() > 0) cfg.fold_seed = fold_seed;
        if (o_classifier->count() > 0) {
            if (classifier == "svm") cfg.classifier = eval::ClassifierKind::Svm;
            else if (classifier == "gbt") cfg.classifier = eval::ClassifierKind::Gbt;
            else throw ValidationError("unknown classifier '" + classifier + "' (svm or gbt)");
        }
        if (o_kernel->count() > 0) cfg.kernel.kind = model::parse_kernel(kernel);
        if (o_gamma->count() > 0) {
            if (gamma == "scale") {
                cfg.kernel.gamma_is_scale = true;
            } else {
                try {
                    std::size_t used = 0;
                    cfg.kernel.gamma = std::stod(gamma, &used);
                    if (used != gamma.size()) throw std::invalid_argument(gamma);
                } catch (const std::exception&) {
                    throw ValidationError("--gamma expects a number or 'scale', got '" + gamma + "'");
                }
                cfg.kernel.gamma_is_scale = false;
            }
        }
        if (o_svm_c->count() > 0) cfg.svm_C = svm_c;
        if (o_gbt_seed->count() > 0) cfg.gbt.seed = gbt_seed;
        if (o_psd_source->count() > 0) cfg.psd_source = features::parse_psd_source(psd_source);
        if (o_filter_mode->count() > 0) cfg.filter_mode = dsp::parse_filter_mode(filter_mode);
        cfg.welch.sample_rate_hz = cfg.sample_rate_hz;
        cfg.validate();
        return cfg;
    }
};

void echo_config(const config::PipelineConfig& cfg) {
    std::cout << "resolved config (hash " << config::config_hash(cfg) << ")\n"
              << config::to_json_text(cfg) << "\n";
}

struct Dataset {
    features::FeatureMatrix rows;
    long n_subjects = 0;
    long n_adhd = 0;
    long n_control = 0;
};

Dataset summarize(features::FeatureMatrix&& rows) {
    Dataset data;
    data.rows = std::move(rows);
    std::set<std::string> subjects;
    for (std::size_t i = 0; i < data.rows.subject_ids.size(); ++i) {
        subjects.insert(data.rows.subject_ids[i]);
        (data.rows.labels[i] == ClassLabel::Adhd ? data.n_adhd : data.n_control) += 1;
    }
    data.n_subjects = static_cast<long>(subjects.size());
    return data;
}

Dataset acquire_features(const std::string& manifest, const std::string& features_csv,
                         const config::PipelineConfig& cfg, int jobs) {
    if (manifest.empty() == features_csv.empty()) {
        throw ValidationError("pass exactly one of --manifest or --features");
    }
    features::FeatureMatrix rows;
    if (!manifest.empty()) {
        const auto recordings = ingest::load_manifest(manifest, cfg.sample_rate_hz);
        rows = features::extract_all(recordings, cfg.epoch, cfg.extraction(), jobs);
    } else {
        rows = features::read_features_csv(features_csv);
    }
    if (cfg.unit == config::Unit::Subject) rows = features::aggregate_by_subject(rows);
    return summarize(std::move(rows));
}

json dataset_json(const Dataset& data, const config::PipelineConfig& cfg) {
    return json{{"class_counts", json{{"ADHD", data.n_adhd}, {"Control", data.n_control}}},
                {"n_rows", data.rows.rows()},
                {"n_subjects", data.n_subjects},
                {"unit", config::to_string(cfg.unit)}};
}

json counts_json(const eval::ConfusionCounts& c) {
    return json{{"fn", c.fn}, {"fp", c.fp}, {"tn", c.tn}, {"tp", c.tp}};
}

json metrics_json(const eval::MetricsReport& m) {
    json folds = json::array();
    for (double acc : m.fold_accuracy) folds.push_back(acc);
    json counts = json::array();
    for (const auto& c : m.fold_counts) counts.push_back(counts_json(c));
    return json{{"f1", m.f1},
                {"fold_accuracy", folds},
                {"fold_counts", counts},
                {"mean_accuracy", m.mean_accuracy},
                {"pooled", counts_json(m.pooled)},
                {"precision", m.precision},
                {"recall", m.recall},
                {"std_accuracy", m.std_accuracy}};
}

std::vector<std::string> protocol_notes(const config::PipelineConfig& cfg) {
    std::vector<std::string> notes;
    if (cfg.normalization == eval::NormScope::Global) {
        notes.push_back("global normalization fits statistics on held-out samples");
    }
    if (cfg.unit == config::Unit::Epoch && cfg.fold_mode == eval::FoldMode::Stratified) {
        notes.push_back("non-grouped folds at epoch unit let one subject span train and test");
    }
    return notes;
}

std::string classifier_line(const config::PipelineConfig& cfg) {
    std::ostringstream out;
    if (cfg.classifier == eval::ClassifierKind::Svm) {
        out << "svm kernel=" << model::to_string(cfg.kernel.kind) << " C=" << cfg.svm_C
            << " gamma=";
        if (cfg.kernel.gamma_is_scale) out << "scale";
        else out << cfg.kernel.gamma;
    } else {
        out << "gbt trees=" << cfg.gbt.n_trees << " depth=" << cfg.gbt.max_depth
            << " lr=" << cfg.gbt.learning_rate << " seed=" << cfg.gbt.seed;
    }
    return out.str();
}

void print_report_header(const config::PipelineConfig& cfg, const Dataset& data) {
    std::cout << "  rows           " << data.rows.rows() << " (ADHD " << data.n_adhd
              << ", Control " << data.n_control << ")\n"
              << "  subjects       " << data.n_subjects << "\n"
              << "  unit           " << config::to_string(cfg.unit) << "\n"
              << "  normalization  " << eval::to_string(cfg.normalization) << "\n"
              << "  folds          k=" << cfg.fold_k << " " << eval::to_string(cfg.fold_mode)
              << " seed=" << cfg.fold_seed << "\n"
              << "  classifier     " << classifier_line(cfg) << "\n";
    for (const auto& note : protocol_notes(cfg)) std::cout << "  note: " << note << "\n";
    std::cout << "\n";
}

void print_metrics(const eval::MetricsReport& m) {
    std::cout << "  fold  accuracy    tp    fp    fn    tn\n";
    for (std::size_t f = 0; f < m.fold_accuracy.size(); ++f) {
        const auto& c = m.fold_counts[f];
        std::printf("  %4zu  %8s  %4ld  %4ld  %4ld  %4ld\n", f, fmt4(m.fold_accuracy[f]).c_str(),
                    c.tp, c.fp, c.fn, c.tn);
    }
    std::cout << "\n  mean_accuracy  " << fmt4(m.mean_accuracy) << "\n"
              << "  std_accuracy   " << fmt4(m.std_accuracy) << "\n"
              << "  precision      " << fmt4(m.precision) << "\n"
              << "  recall         " << fmt4(m.recall) << "\n"
              << "  f1             " << fmt4(m.f1) << "\n";
}

// ---- synth ----

struct SynthArgs {
    std::string out_dir;
    int subjects_per_class = 20;
    long n_samples = 19200;
    double sample_rate = 128.0;
    double separation = 1.5;
    double noise_rms = 1.0;
    std::uint64_t seed = 0;
};

void cmd_synth(const SynthArgs& args) {
    synth::SynthSpec spec = synth::default_synth_spec(args.separation);
    spec.subjects_per_class = args.subjects_per_class;
    spec.n_samples = args.n_samples;
    spec.sample_rate_hz = args.sample_rate;
    spec.noise_rms = args.noise_rms;
    spec.seed = args.seed;

    const auto recordings = synth::generate(spec);
    synth::write_dataset(args.out_dir, recordings);
    std::cout << "wrote " << recordings.size() << " recordings ("
              << args.subjects_per_class << " per class, " << args.n_samples
              << " samples each) to " << args.out_dir << "\n"
              << "manifest: " << (fs::path(args.out_dir) / "manifest.csv").string() << "\n";
}

// ---- extract ----

struct ExtractArgs {
    std::string manifest;
    std::string out_csv;
    int jobs = 0;
    PipelineFlags flags;
};

void cmd_extract(const ExtractArgs& args) {
    const config::PipelineConfig cfg = args.flags.resolve();
    echo_config(cfg);
    const Dataset data = acquire_features(args.manifest, "", cfg, args.jobs);
    features::write_features_csv(args.out_csv, data.rows);
    std::cout << "wrote " << data.rows.rows() << " rows x " << features::kNumFeatures
              << " features (" << data.n_subjects << " subjects) to " << args.out_csv << "\n";
}

// ---- crossval ----

struct CrossvalArgs {
    std::string manifest, features_csv;
    std::string out_prefix;
    std::string save_model_path;
    int jobs = 0;
    PipelineFlags flags;
};

std::string crossval_csv(const eval::MetricsReport& m) {
    std::string csv = "fold,accuracy,tp,fp,fn,tn\n";
    for (std::size_t f = 0; f < m.fold_accuracy.size(); ++f) {
        const auto& c = m.fold_counts[f];
        csv += std::to_string(f) + ',' + fmt17(m.fold_accuracy[f]) + ',' +
               std::to_string(c.tp) + ',' + std::to_string(c.fp) + ',' +
               std::to_string(c.fn) + ',' + std::to_string(c.tn) + '\n';
    }
    return csv;
}

void save_final_model(const std::string& path, const config::PipelineConfig& cfg,
                      const Dataset& data) {
    const auto stats = features::fit_normalizer(data.rows.values);
    const Matrix X = features::transform(data.rows.values, stats);

    model_io::ModelBundle bundle;
    bundle.pipeline = cfg;
    bundle.normalization = stats;
    bundle.kind = cfg.classifier;
    if (cfg.classifier == eval::ClassifierKind::Svm) {
        std::vector<int> y(static_cast<std::size_t>(data.rows.rows()));
        for (std::size_t i = 0; i < y.size(); ++i) {
            y[i] = data.rows.labels[i] == ClassLabel::Adhd ? +1 : -1;
        }
        model::SvmFitOptions opts;
        opts.C = cfg.svm_C;
        opts.tol = cfg.svm_tol;
        opts.max_passes = cfg.svm_max_passes;
        bundle.svm = model::svm_fit(X, y, cfg.kernel, opts);
    } else {
        std::vector<int> y(static_cast<std::size_t>(data.rows.rows()));
        for (std::size_t i = 0; i < y.size(); ++i) {
            y[i] = data.rows.labels[i] == ClassLabel::Adhd ? 1 : 0;
        }
        bundle.gbt = model::gbt_fit(X, y, cfg.gbt);
    }
    model_io::save_model(path, bundle);
    std::cout << "saved model (trained on all " << data.rows.rows() << " rows) to " << path << "\n";
}

void cmd_crossval(const CrossvalArgs& args) {
    const config::PipelineConfig cfg = args.flags.resolve();
    echo_config(cfg);
    const Dataset data = acquire_features(args.manifest, args.features_csv, cfg, args.jobs);

    const eval::FoldPlan plan = eval::make_folds(data.rows.labels, data.rows.subject_ids,
                                                 cfg.fold_k, cfg.fold_mode, cfg.fold_seed);
    const eval::MetricsReport metrics =
        eval::cross_validate(data.rows, cfg.classifier_config(), plan, cfg.normalization, args.jobs);

    std::cout << "crossval report\n  config_hash    " << config::config_hash(cfg) << "\n";
    print_report_header(cfg, data);
    print_metrics(metrics);

    if (!args.out_prefix.empty()) {
        json j;
        j["command"] = "crossval";
        j["config"] = json::parse(config::to_json_text(cfg));
        j["config_hash"] = config::config_hash(cfg);
        j["dataset"] = dataset_json(data, cfg);
        j["metrics"] = metrics_json(metrics);
        j["notes"] = protocol_notes(cfg);
        write_file(args.out_prefix + ".json", j.dump(2) + "\n");
        write_file(args.out_prefix + ".csv", crossval_csv(metrics));
        std::cout << "\nwrote " << args.out_prefix << ".json and " << args.out_prefix << ".csv\n";
    }
    if (!args.save_model_path.empty()) save_final_model(args.save_model_path, cfg, data);
}

// ---- compare-kernels ----

struct CompareArgs {
    std::string manifest, features_csv;
    std::string out_prefix;
    int jobs = 0;
    PipelineFlags flags;
};

void cmd_compare_kernels(const CompareArgs& args) {
    const config::PipelineConfig cfg = args.flags.resolve();
    echo_config(cfg);
    const Dataset data = acquire_features(args.manifest, args.features_csv, cfg, args.jobs);

    const eval::FoldPlan plan = eval::make_folds(data.rows.labels, data.rows.subject_ids,
                                                 cfg.fold_k, cfg.fold_mode, cfg.fold_seed);
    const auto results = eval::compare_kernels(data.rows, cfg.compare_kernels,
                                               cfg.classifier_config(), plan,
                                               cfg.normalization, args.jobs);

    std::cout << "kernel comparison\n  config_hash    " << config::config_hash(cfg) << "\n";
    print_report_header(cfg, data);
    std::cout << "  kernel   mean_accuracy  std_accuracy\n";
    for (const auto& r : results) {
        std::printf("  %-7s  %13s  %12s\n", model::to_string(r.kernel).c_str(),
                    fmt4(r.metrics.mean_accuracy).c_str(), fmt4(r.metrics.std_accuracy).c_str());
    }

    if (!args.out_prefix.empty()) {
        json j;
        j["command"] = "compare-kernels";
        j["config"] = json::parse(config::to_json_text(cfg));
        j["config_hash"] = config::config_hash(cfg);
        j["dataset"] = dataset_json(data, cfg);
        json rows = json::array();
        std::string csv = "kernel,mean_accuracy,std_accuracy,precision,recall,f1\n";
        for (const auto& r : results) {
            rows.push_back(json{{"kernel", model::to_string(r.kernel)},
                                {"metrics", metrics_json(r.metrics)}});
            csv += model::to_string(r.kernel) + ',' + fmt17(r.metrics.mean_accuracy) + ',' +
                   fmt17(r.metrics.std_accuracy) + ',' + fmt17(r.metrics.precision) + ',' +
                   fmt17(r.metrics.recall) + ',' + fmt17(r.metrics.f1) + '\n';
        }
        j["results"] = rows;
        j["notes"] = protocol_notes(cfg);
        write_file(args.out_prefix + ".json", j.dump(2) + "\n");
        write_file(args.out_prefix + ".csv", csv);
        std::cout << "\nwrote " << args.out_prefix << ".json and " << args.out_prefix << ".csv\n";
    }
}

// ---- predict ----

struct PredictArgs {
    std::string model_path;
    std::string input_csv;
    std::string subject_id;
    std::string out_json;
};

void cmd_predict(const PredictArgs& args) {
    const model_io::ModelBundle bundle = model_io::load_model(args.model_path);
    const config::PipelineConfig& cfg = bundle.pipeline;

    const std::string subject =
        args.subject_id.empty() ? fs::path(args.input_csv).stem().string() : args.subject_id;
    // The true label is unknown at predict time; the placeholder never leaves
    // this function.
    const ingest::Recording rec =
        ingest::load_subject_csv(args.input_csv, subject, ClassLabel::Control, cfg.sample_rate_hz);
    const auto epochs = ingest::segment(rec, cfg.epoch);

    long adhd_votes = 0;
    std::vector<int> epoch_labels;
    epoch_labels.reserve(epochs.size());
    for (const auto& epoch : epochs) {
        const features::FeatureVector row = features::extract(epoch, cfg.extraction());
        const Vector z = features::transform(row.values, bundle.normalization);
        int label01;
        if (bundle.kind == eval::ClassifierKind::Svm) {
            label01 = model::svm_predict(*bundle.svm, z) > 0 ? 1 : 0;
        } else {
            label01 = model::gbt_predict(*bundle.gbt, z);
        }
        epoch_labels.push_back(label01);
        adhd_votes += label01;
    }
    const long control_votes = static_cast<long>(epochs.size()) - adhd_votes;
    // Ties go to the positive class, matching the score-zero rule.
    const ClassLabel voted = adhd_votes >= control_votes ? ClassLabel::Adhd : ClassLabel::Control;

    std::cout << "subject  " << subject << "\n"
              << "epochs   " << epochs.size() << "\n";
    for (std::size_t e = 0; e < epoch_labels.size(); ++e) {
        std::cout << "  epoch " << e << "  "
                  << to_string(epoch_labels[e] == 1 ? ClassLabel::Adhd : ClassLabel::Control)
                  << "\n";
    }
    std::cout << "votes    ADHD=" << adhd_votes << " Control=" << control_votes << "\n"
              << "label    " << to_string(voted) << "\n";

    if (!args.out_json.empty()) {
        json j;
        j["command"] = "predict";
        j["config_hash"] = config::config_hash(cfg);
        j["subject"] = subject;
        j["epoch_labels"] = epoch_labels;
        j["votes"] = json{{"ADHD", adhd_votes}, {"Control", control_votes}};
        j["label"] = to_string(voted);
        write_file(args.out_json, j.dump(2) + "\n");
    }
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"EEG band-power / band-entropy classification pipeline"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "eegclass 0.1.0");

    SynthArgs synth_args;
    auto* synth_cmd = app.add_subcommand("synth", "generate a seeded synthetic dataset");
    synth_cmd->add_option("--out", synth_args.out_dir, "output directory")->required();
    synth_cmd->add_option("--subjects-per-class", synth_args.subjects_per_class,
                          "subjects per class (default 20)");
    synth_cmd->add_option("--samples", synth_args.n_samples, "samples per recording (default 19200)");
    synth_cmd->add_option("--sample-rate", synth_args.sample_rate, "sampling rate in Hz (default 128)");
    synth_cmd->add_option("--separation", synth_args.separation,
                          "between-class theta/beta RMS ratio (default 1.5)");
    synth_cmd->add_option("--noise-rms", synth_args.noise_rms, "white noise floor RMS (default 1)");
    synth_cmd->add_option("--seed", synth_args.seed, "generator seed");
    synth_cmd->callback([&] { cmd_synth(synth_args); });

    ExtractArgs extract_args;
    auto* extract_cmd = app.add_subcommand("extract", "extract features from a manifest");
    extract_cmd->add_option("--manifest", extract_args.manifest, "dataset manifest CSV")
        ->required()
        ->check(CLI::ExistingFile);
    extract_cmd->add_option("--out", extract_args.out_csv, "features CSV to write")->required();
    extract_cmd->add_option("--jobs", extract_args.jobs, "worker threads (default: all cores)");
    extract_args.flags.attach(extract_cmd);
    extract_cmd->callback([&] { cmd_extract(extract_args); });

    CrossvalArgs crossval_args;
    auto* crossval_cmd = app.add_subcommand("crossval", "k-fold cross-validation report");
    auto* cv_manifest = crossval_cmd->add_option("--manifest", crossval_args.manifest,
                                                 "dataset manifest CSV")
                            ->check(CLI::ExistingFile);
    crossval_cmd->add_option("--features", crossval_args.features_csv, "precomputed features CSV")
        ->check(CLI::ExistingFile)
        ->excludes(cv_manifest);
    crossval_cmd->add_option("--out-prefix", crossval_args.out_prefix,
                             "write <prefix>.json and <prefix>.csv");
    crossval_cmd->add_option("--save-model", crossval_args.save_model_path,
                             "also train on all rows and save the model here");
    crossval_cmd->add_option("--jobs", crossval_args.jobs, "worker threads (default: all cores)");
    crossval_args.flags.attach(crossval_cmd);
    crossval_cmd->callback([&] { cmd_crossval(crossval_args); });

    CompareArgs compare_args;
    auto* compare_cmd = app.add_subcommand("compare-kernels", "cross-validate each SVM kernel");
    auto* ck_manifest = compare_cmd->add_option("--manifest", compare_args.manifest,
                                                "dataset manifest CSV")
                            ->check(CLI::ExistingFile);
    compare_cmd->add_option("--features", compare_args.features_csv, "precomputed features CSV")
        ->check(CLI::ExistingFile)
        ->excludes(ck_manifest);
    compare_cmd->add_option("--out-prefix", compare_args.out_prefix,
                            "write <prefix>.json and <prefix>.csv");
    compare_cmd->add_option("--jobs", compare_args.jobs, "worker threads (default: all cores)");
    compare_args.flags.attach(compare_cmd);
    compare_cmd->callback([&] { cmd_compare_kernels(compare_args); });

    PredictArgs predict_args;
    auto* predict_cmd = app.add_subcommand("predict", "label one subject CSV with a saved model");
    predict_cmd->add_option("--model", predict_args.model_path, "model file from crossval --save-model")
        ->required()
        ->check(CLI::ExistingFile);
    predict_cmd->add_option("--input", predict_args.input_csv, "subject recording CSV")
        ->required()
        ->check(CLI::ExistingFile);
    predict_cmd->add_option("--subject-id", predict_args.subject_id,
                            "subject name for the report (default: file stem)");
    predict_cmd->add_option("--out", predict_args.out_json, "write a JSON report here");
    predict_cmd->callback([&] { cmd_predict(predict_args); });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ComputeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace eegclass::cli
