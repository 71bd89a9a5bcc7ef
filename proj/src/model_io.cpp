// Trained-model files: versioned JSON carrying the classifier, the fitted
// normalization, the resolved pipeline config, and its hash.

#include <fstream>
#include <sstream>

#include "eegclass/model_io.hpp"

#include <json.hpp>

namespace eegclass::model_io {

using nlohmann::json;

namespace {

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (long i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

Vector vector_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw ValidationError("model file: " + where + " must be an array");
    Vector v(static_cast<long>(j.size()));
    long i = 0;
    for (const auto& item : j) {
        if (!item.is_number()) throw ValidationError("model file: " + where + " holds a non-number");
        v[i++] = item.get<double>();
    }
    return v;
}

json matrix_to_json(const Matrix& m) {
    json out = json::array();
    for (long r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r).transpose()));
    return out;
}

Matrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw ValidationError("model file: " + where + " must be an array");
    const long rows = static_cast<long>(j.size());
    if (rows == 0) return Matrix(0, 0);
    const Vector first = vector_from_json(j[0], where + "[0]");
    Matrix m(rows, first.size());
    m.row(0) = first.transpose();
    for (long r = 1; r < rows; ++r) {
        const Vector row = vector_from_json(j[static_cast<std::size_t>(r)],
                                            where + "[" + std::to_string(r) + "]");
        if (row.size() != m.cols()) throw ValidationError("model file: ragged rows in " + where);
        m.row(r) = row.transpose();
    }
    return m;
}

json kernel_to_json(const model::KernelSpec& k) {
    json out;
    out["kind"] = model::to_string(k.kind);
    out["gamma"] = k.gamma;  // always resolved in a trained model
    out["degree"] = k.degree;
    out["coef0"] = k.coef0;
    return out;
}

model::KernelSpec kernel_from_json(const json& j) {
    model::KernelSpec k;
    k.kind = model::parse_kernel(j.at("kind").get<std::string>());
    k.gamma_is_scale = false;
    k.gamma = j.at("gamma").get<double>();
    k.degree = j.at("degree").get<int>();
    k.coef0 = j.at("coef0").get<double>();
    return k;
}

}  // namespace

void save_model(const std::filesystem::path& path, const ModelBundle& bundle) {
    json j;
    j["format_version"] = kModelFormatVersion;
    j["config"] = json::parse(config::to_json_text(bundle.pipeline));
    j["config_hash"] = config::config_hash(bundle.pipeline);
    j["normalization"] = json{{"mu", vector_to_json(bundle.normalization.mu)},
                              {"sigma", vector_to_json(bundle.normalization.sigma)}};

    if (bundle.kind == eval::ClassifierKind::Svm) {
        if (!bundle.svm.has_value()) throw ValidationError("save_model: missing SVM payload");
        const auto& m = *bundle.svm;
        j["classifier"] = "svm";
        j["svm"] = json{{"C", m.C},
                        {"bias", m.bias},
                        {"dual_coeffs", vector_to_json(m.dual_coeffs)},
                        {"kernel", kernel_to_json(m.kernel)},
                        {"support_vectors", matrix_to_json(m.support_vectors)}};
    } else {
        if (!bundle.gbt.has_value()) throw ValidationError("save_model: missing GBT payload");
        const auto& m = *bundle.gbt;
        j["classifier"] = "gbt";
        json trees = json::array();
        for (const auto& tree : m.trees) {
            json nodes = json::array();
            for (const auto& node : tree.nodes) {
                nodes.push_back(json{{"feature", node.feature},
                                     {"gain", node.gain},
                                     {"left", node.left},
                                     {"right", node.right},
                                     {"threshold", node.threshold},
                                     {"weight", node.weight}});
            }
            trees.push_back(json{{"columns", tree.columns}, {"nodes", nodes}});
        }
        j["gbt"] = json{{"base_score", m.base_score},
                        {"colsample", m.params.colsample},
                        {"l2_lambda", m.params.l2_lambda},
                        {"learning_rate", m.params.learning_rate},
                        {"max_depth", m.params.max_depth},
                        {"n_features", m.n_features},
                        {"n_trees", m.params.n_trees},
                        {"seed", m.params.seed},
                        {"subsample", m.params.subsample},
                        {"trees", trees}};
    }

    std::ofstream out(path);
    if (!out) throw ValidationError("save_model: cannot open " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw ComputeError("save_model: short write to " + path.string());
}

ModelBundle load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("load_model: cannot read " + path.string());
    std::ostringstream text;
    text << in.rdbuf();

    json j;
    try {
        j = json::parse(text.str());
    } catch (const json::exception& e) {
        throw ValidationError("model file: invalid JSON: " + std::string(e.what()));
    }

    try {
        const int version = j.at("format_version").get<int>();
        if (version != kModelFormatVersion) {
            throw ValidationError("model file: format version " + std::to_string(version) +
                                  " not supported (expected " +
                                  std::to_string(kModelFormatVersion) + ")");
        }

        ModelBundle bundle;
        bundle.pipeline = config::from_json_text(j.at("config").dump());
        if (j.contains("config_hash") &&
            j["config_hash"].get<std::string>() != config::config_hash(bundle.pipeline)) {
            throw ValidationError("model file: config hash does not match the stored config");
        }
        bundle.normalization.mu = vector_from_json(j.at("normalization").at("mu"), "normalization.mu");
        bundle.normalization.sigma =
            vector_from_json(j.at("normalization").at("sigma"), "normalization.sigma");
        if (bundle.normalization.mu.size() != bundle.normalization.sigma.size()) {
            throw ValidationError("model file: normalization mu/sigma length mismatch");
        }

        const std::string kind = j.at("classifier").get<std::string>();
        if (kind == "svm") {
            bundle.kind = eval::ClassifierKind::Svm;
            const auto& s = j.at("svm");
            model::SvmModel m;
            m.C = s.at("C").get<double>();
            m.bias = s.at("bias").get<double>();
            m.dual_coeffs = vector_from_json(s.at("dual_coeffs"), "svm.dual_coeffs");
            m.kernel = kernel_from_json(s.at("kernel"));
            m.support_vectors = matrix_from_json(s.at("support_vectors"), "svm.support_vectors");
            if (m.support_vectors.rows() != m.dual_coeffs.size()) {
                throw ValidationError("model file: support vector and coefficient counts differ");
            }
            bundle.svm = std::move(m);
        } else if (kind == "gbt") {
            bundle.kind = eval::ClassifierKind::Gbt;
            const auto& g = j.at("gbt");
            model::GbtModel m;
            m.base_score = g.at("base_score").get<double>();
            m.n_features = g.at("n_features").get<long>();
            m.params.n_trees = g.at("n_trees").get<int>();
            m.params.learning_rate = g.at("learning_rate").get<double>();
            m.params.max_depth = g.at("max_depth").get<int>();
            m.params.subsample = g.at("subsample").get<double>();
            m.params.colsample = g.at("colsample").get<double>();
            m.params.l2_lambda = g.at("l2_lambda").get<double>();
            m.params.seed = g.at("seed").get<std::uint64_t>();
            for (const auto& tj : g.at("trees")) {
                model::GbtTree tree;
                tree.columns = tj.at("columns").get<std::vector<int>>();
                for (const auto& nj : tj.at("nodes")) {
                    model::GbtNode node;
                    node.feature = nj.at("feature").get<int>();
                    node.threshold = nj.at("threshold").get<double>();
                    node.left = nj.at("left").get<int>();
                    node.right = nj.at("right").get<int>();
                    node.weight = nj.at("weight").get<double>();
                    node.gain = nj.at("gain").get<double>();
                    tree.nodes.push_back(node);
                }
                if (tree.nodes.empty()) throw ValidationError("model file: tree with no nodes");
                for (const auto& node : tree.nodes) {
                    const bool leaf = node.feature < 0;
                    const int n = static_cast<int>(tree.nodes.size());
                    if (!leaf && (node.left < 0 || node.left >= n || node.right < 0 || node.right >= n)) {
                        throw ValidationError("model file: tree child index out of range");
                    }
                }
                m.trees.push_back(std::move(tree));
            }
            bundle.gbt = std::move(m);
        } else {
            throw ValidationError("model file: unknown classifier '" + kind + "'");
        }
        return bundle;
    } catch (const json::exception& e) {
        throw ValidationError("model file: " + std::string(e.what()));
    }
}

}  // namespace eegclass::model_io
