// Config file handling. The canonical JSON text (sorted keys, fixed indent)
// is what the hash covers, so two equal hashes mean equal pipelines.

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "eegclass/config.hpp"

#include <json.hpp>

namespace eegclass::config {

using nlohmann::json;

Unit parse_unit(const std::string& name) {
    if (name == "epoch") return Unit::Epoch;
    if (name == "subject") return Unit::Subject;
    throw ValidationError("unknown unit: '" + name + "' (epoch or subject)");
}

std::string to_string(Unit unit) { return unit == Unit::Epoch ? "epoch" : "subject"; }

void PipelineConfig::validate() const {
    if (sample_rate_hz <= 0.0) throw ValidationError("config: sample_rate_hz must be positive");
    if (static_cast<int>(bands.size()) != features::kNumBands) {
        throw ValidationError("config: expected " + std::to_string(features::kNumBands) +
                              " bands, got " + std::to_string(bands.size()));
    }
    std::set<dsp::Band> seen;
    for (const auto& band : bands) {
        band.validate(sample_rate_hz);
        if (band.band == dsp::Band::Broadband) {
            throw ValidationError("config: broadband cannot appear in the band list");
        }
        if (!seen.insert(band.band).second) {
            throw ValidationError("config: band " + dsp::band_name(band.band) + " listed twice");
        }
    }
    broadband.validate(sample_rate_hz);
    if (filter_order < 1 || filter_order > 16) {
        throw ValidationError("config: filter_order must be in [1, 16]");
    }
    epoch.validate();
    spectral::WelchConfig w = welch;
    w.sample_rate_hz = sample_rate_hz;
    w.validate();
    if (epoch.epoch_len_samples < welch.segment_len) {
        throw ValidationError("config: epoch shorter than one welch segment");
    }
    if (fold_k < 2) throw ValidationError("config: fold k must be >= 2");
    if (svm_C <= 0.0) throw ValidationError("config: svm C must be positive");
    if (svm_tol <= 0.0) throw ValidationError("config: svm tol must be positive");
    if (svm_max_passes < 1) throw ValidationError("config: svm max_passes must be >= 1");
    if (!kernel.gamma_is_scale && kernel.gamma <= 0.0) {
        throw ValidationError("config: kernel gamma must be positive");
    }
    if (kernel.degree < 1) throw ValidationError("config: kernel degree must be >= 1");
    if (compare_kernels.empty()) throw ValidationError("config: compare_kernels is empty");
    if (gbt.n_trees < 0) throw ValidationError("config: gbt n_trees must be >= 0");
    if (gbt.learning_rate <= 0.0) throw ValidationError("config: gbt learning_rate must be positive");
    if (gbt.max_depth < 1) throw ValidationError("config: gbt max_depth must be >= 1");
    if (gbt.subsample <= 0.0 || gbt.subsample > 1.0 || gbt.colsample <= 0.0 || gbt.colsample > 1.0) {
        throw ValidationError("config: gbt subsample and colsample must be in (0, 1]");
    }
    if (gbt.l2_lambda < 0.0) throw ValidationError("config: gbt l2_lambda must be >= 0");
}

features::ExtractionConfig PipelineConfig::extraction() const {
    features::ExtractionConfig cfg;
    cfg.bands = bands;
    cfg.welch = welch;
    cfg.welch.sample_rate_hz = sample_rate_hz;
    cfg.filter_order = filter_order;
    cfg.filter_mode = filter_mode;
    cfg.psd_source = psd_source;
    return cfg;
}

eval::ClassifierConfig PipelineConfig::classifier_config() const {
    eval::ClassifierConfig clf;
    clf.kind = classifier;
    clf.kernel = kernel;
    clf.svm_C = svm_C;
    clf.svm_tol = svm_tol;
    clf.svm_max_passes = svm_max_passes;
    clf.gbt = gbt;
    return clf;
}

PipelineConfig default_config() { return PipelineConfig{}; }

namespace {

void require_keys(const json& j, const std::string& where,
                  const std::set<std::string>& allowed) {
    if (!j.is_object()) throw ValidationError("config: " + where + " must be an object");
    for (const auto& item : j.items()) {
        if (!allowed.contains(item.key())) {
            throw ValidationError("config: unknown key '" + item.key() + "' in " + where);
        }
    }
}

double as_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw ValidationError("config: " + where + " must be a number");
    return j.get<double>();
}

int as_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ValidationError("config: " + where + " must be an integer");
    return j.get<int>();
}

std::uint64_t as_seed(const json& j, const std::string& where) {
    if (!j.is_number_unsigned() && !j.is_number_integer()) {
        throw ValidationError("config: " + where + " must be an integer seed");
    }
    if (j.is_number_integer() && j.get<std::int64_t>() < 0) {
        throw ValidationError("config: " + where + " must be non-negative");
    }
    return j.get<std::uint64_t>();
}

std::string as_string(const json& j, const std::string& where) {
    if (!j.is_string()) throw ValidationError("config: " + where + " must be a string");
    return j.get<std::string>();
}

dsp::BandSpec band_from_json(const json& j, const std::string& where) {
    require_keys(j, where, {"band", "f_high", "f_low"});
    dsp::BandSpec band;
    if (j.contains("band")) band.band = dsp::parse_band(as_string(j["band"], where + ".band"));
    if (j.contains("f_low")) band.f_low = as_number(j["f_low"], where + ".f_low");
    if (j.contains("f_high")) band.f_high = as_number(j["f_high"], where + ".f_high");
    return band;
}

json band_to_json(const dsp::BandSpec& band) {
    return json{{"band", dsp::band_name(band.band)}, {"f_high", band.f_high}, {"f_low", band.f_low}};
}

}  // namespace

PipelineConfig from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: invalid JSON: ") + e.what());
    }

    require_keys(j, "config",
                 {"bands", "broadband", "classifier", "compare_kernels", "epoch",
                  "filter_mode", "filter_order", "fold", "gbt", "kernel",
                  "normalization", "psd_source", "sample_rate_hz", "svm", "unit",
                  "welch"});

    PipelineConfig cfg = default_config();
    if (j.contains("sample_rate_hz")) cfg.sample_rate_hz = as_number(j["sample_rate_hz"], "sample_rate_hz");

    if (j.contains("bands")) {
        if (!j["bands"].is_array()) throw ValidationError("config: bands must be an array");
        cfg.bands.clear();
        int at = 0;
        for (const auto& item : j["bands"]) {
            cfg.bands.push_back(band_from_json(item, "bands[" + std::to_string(at++) + "]"));
        }
    }
    if (j.contains("broadband")) {
        const auto& b = j["broadband"];
        require_keys(b, "broadband", {"f_high", "f_low"});
        if (b.contains("f_low")) cfg.broadband.f_low = as_number(b["f_low"], "broadband.f_low");
        if (b.contains("f_high")) cfg.broadband.f_high = as_number(b["f_high"], "broadband.f_high");
    }
    if (j.contains("filter_order")) cfg.filter_order = as_int(j["filter_order"], "filter_order");
    if (j.contains("filter_mode")) {
        cfg.filter_mode = dsp::parse_filter_mode(as_string(j["filter_mode"], "filter_mode"));
    }
    if (j.contains("epoch")) {
        const auto& e = j["epoch"];
        require_keys(e, "epoch", {"len_samples", "step_samples"});
        if (e.contains("len_samples")) cfg.epoch.epoch_len_samples = as_int(e["len_samples"], "epoch.len_samples");
        if (e.contains("step_samples")) cfg.epoch.step_samples = as_int(e["step_samples"], "epoch.step_samples");
    }
    if (j.contains("welch")) {
        const auto& w = j["welch"];
        require_keys(w, "welch", {"overlap", "segment_len", "window"});
        if (w.contains("segment_len")) cfg.welch.segment_len = as_int(w["segment_len"], "welch.segment_len");
        if (w.contains("overlap")) cfg.welch.segment_overlap = as_int(w["overlap"], "welch.overlap");
        if (w.contains("window")) cfg.welch.window = spectral::parse_window(as_string(w["window"], "welch.window"));
    }
    if (j.contains("psd_source")) {
        cfg.psd_source = features::parse_psd_source(as_string(j["psd_source"], "psd_source"));
    }
    if (j.contains("normalization")) {
        cfg.normalization = eval::parse_norm_scope(as_string(j["normalization"], "normalization"));
    }
    if (j.contains("unit")) cfg.unit = parse_unit(as_string(j["unit"], "unit"));
    if (j.contains("fold")) {
        const auto& f = j["fold"];
        require_keys(f, "fold", {"k", "mode", "seed"});
        if (f.contains("k")) cfg.fold_k = as_int(f["k"], "fold.k");
        if (f.contains("mode")) cfg.fold_mode = eval::parse_fold_mode(as_string(f["mode"], "fold.mode"));
        if (f.contains("seed")) cfg.fold_seed = as_seed(f["seed"], "fold.seed");
    }
    if (j.contains("classifier")) {
        const std::string kind = as_string(j["classifier"], "classifier");
        if (kind == "svm") cfg.classifier = eval::ClassifierKind::Svm;
        else if (kind == "gbt") cfg.classifier = eval::ClassifierKind::Gbt;
        else throw ValidationError("config: unknown classifier '" + kind + "' (svm or gbt)");
    }
    if (j.contains("kernel")) {
        const auto& k = j["kernel"];
        require_keys(k, "kernel", {"coef0", "degree", "gamma", "kind"});
        if (k.contains("kind")) cfg.kernel.kind = model::parse_kernel(as_string(k["kind"], "kernel.kind"));
        if (k.contains("gamma")) {
            if (k["gamma"].is_string()) {
                if (k["gamma"].get<std::string>() != "scale") {
                    throw ValidationError("config: kernel.gamma must be a number or \"scale\"");
                }
                cfg.kernel.gamma_is_scale = true;
            } else {
                cfg.kernel.gamma_is_scale = false;
                cfg.kernel.gamma = as_number(k["gamma"], "kernel.gamma");
            }
        }
        if (k.contains("degree")) cfg.kernel.degree = as_int(k["degree"], "kernel.degree");
        if (k.contains("coef0")) cfg.kernel.coef0 = as_number(k["coef0"], "kernel.coef0");
    }
    if (j.contains("compare_kernels")) {
        if (!j["compare_kernels"].is_array()) {
            throw ValidationError("config: compare_kernels must be an array");
        }
        cfg.compare_kernels.clear();
        for (const auto& item : j["compare_kernels"]) {
            cfg.compare_kernels.push_back(model::parse_kernel(as_string(item, "compare_kernels")));
        }
    }
    if (j.contains("svm")) {
        const auto& s = j["svm"];
        require_keys(s, "svm", {"C", "max_passes", "tol"});
        if (s.contains("C")) cfg.svm_C = as_number(s["C"], "svm.C");
        if (s.contains("tol")) cfg.svm_tol = as_number(s["tol"], "svm.tol");
        if (s.contains("max_passes")) cfg.svm_max_passes = as_int(s["max_passes"], "svm.max_passes");
    }
    if (j.contains("gbt")) {
        const auto& g = j["gbt"];
        require_keys(g, "gbt",
                     {"colsample", "l2_lambda", "learning_rate", "max_depth",
                      "n_trees", "seed", "subsample"});
        if (g.contains("n_trees")) cfg.gbt.n_trees = as_int(g["n_trees"], "gbt.n_trees");
        if (g.contains("learning_rate")) cfg.gbt.learning_rate = as_number(g["learning_rate"], "gbt.learning_rate");
        if (g.contains("max_depth")) cfg.gbt.max_depth = as_int(g["max_depth"], "gbt.max_depth");
        if (g.contains("subsample")) cfg.gbt.subsample = as_number(g["subsample"], "gbt.subsample");
        if (g.contains("colsample")) cfg.gbt.colsample = as_number(g["colsample"], "gbt.colsample");
        if (g.contains("l2_lambda")) cfg.gbt.l2_lambda = as_number(g["l2_lambda"], "gbt.l2_lambda");
        if (g.contains("seed")) cfg.gbt.seed = as_seed(g["seed"], "gbt.seed");
    }

    cfg.welch.sample_rate_hz = cfg.sample_rate_hz;
    cfg.validate();
    return cfg;
}

std::string to_json_text(const PipelineConfig& cfg) {
    json j;
    j["sample_rate_hz"] = cfg.sample_rate_hz;
    j["bands"] = json::array();
    for (const auto& band : cfg.bands) j["bands"].push_back(band_to_json(band));
    j["broadband"] = json{{"f_high", cfg.broadband.f_high}, {"f_low", cfg.broadband.f_low}};
    j["filter_order"] = cfg.filter_order;
    j["filter_mode"] = dsp::to_string(cfg.filter_mode);
    j["epoch"] = json{{"len_samples", cfg.epoch.epoch_len_samples},
                      {"step_samples", cfg.epoch.step_samples}};
    j["welch"] = json{{"overlap", cfg.welch.segment_overlap},
                      {"segment_len", cfg.welch.segment_len},
                      {"window", spectral::to_string(cfg.welch.window)}};
    j["psd_source"] = features::to_string(cfg.psd_source);
    j["normalization"] = eval::to_string(cfg.normalization);
    j["unit"] = to_string(cfg.unit);
    j["fold"] = json{{"k", cfg.fold_k},
                     {"mode", eval::to_string(cfg.fold_mode)},
                     {"seed", cfg.fold_seed}};
    j["classifier"] = cfg.classifier == eval::ClassifierKind::Svm ? "svm" : "gbt";
    json kernel;
    kernel["kind"] = model::to_string(cfg.kernel.kind);
    if (cfg.kernel.gamma_is_scale) {
        kernel["gamma"] = "scale";
    } else {
        kernel["gamma"] = cfg.kernel.gamma;
    }
    kernel["degree"] = cfg.kernel.degree;
    kernel["coef0"] = cfg.kernel.coef0;
    j["kernel"] = kernel;
    j["compare_kernels"] = json::array();
    for (model::KernelKind kind : cfg.compare_kernels) {
        j["compare_kernels"].push_back(model::to_string(kind));
    }
    j["svm"] = json{{"C", cfg.svm_C}, {"max_passes", cfg.svm_max_passes}, {"tol", cfg.svm_tol}};
    j["gbt"] = json{{"colsample", cfg.gbt.colsample},     {"l2_lambda", cfg.gbt.l2_lambda},
                    {"learning_rate", cfg.gbt.learning_rate}, {"max_depth", cfg.gbt.max_depth},
                    {"n_trees", cfg.gbt.n_trees},         {"seed", cfg.gbt.seed},
                    {"subsample", cfg.gbt.subsample}};
    return j.dump(2);
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("config: cannot read " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return from_json_text(text.str());
}

std::string config_hash(const PipelineConfig& cfg) {
    const std::string text = to_json_text(cfg);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char byte : text) {
        hash ^= byte;
        hash *= 0x100000001b3ULL;
    }
    char out[17];
    std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(hash));
    return std::string(out);
}

}  // namespace eegclass::config
