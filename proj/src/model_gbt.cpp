// Newton boosting on logistic loss with exact greedy splits. One SplitMix64
// stream drives the whole fit: per tree, the row draw then the column draw.

#include <algorithm>
#include <cmath>
#include <vector>

#include "eegclass/model.hpp"
#include "rng.hpp"

namespace eegclass::model {

namespace {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

struct SplitChoice {
    double gain = 0.0;
    int feature = -1;
    double threshold = 0.0;
};

// Exact greedy: sort rows per feature, scan boundaries between distinct
// values. Ties on gain keep the earlier feature and earlier threshold.
SplitChoice best_split(const Matrix& X, const Vector& g, const Vector& h,
                       const std::vector<int>& rows, const std::vector<int>& columns,
                       double lambda) {
    SplitChoice best;
    double g_total = 0.0, h_total = 0.0;
    for (int r : rows) {
        g_total += g[r];
        h_total += h[r];
    }
    const double parent = g_total * g_total / (h_total + lambda);

    std::vector<std::pair<double, int>> order(rows.size());
    for (int f : columns) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            order[i] = {X(rows[i], f), rows[i]};
        }
        std::sort(order.begin(), order.end());

        double g_left = 0.0, h_left = 0.0;
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            g_left += g[order[i].second];
            h_left += h[order[i].second];
            if (order[i].first == order[i + 1].first) continue;
            const double threshold = 0.5 * (order[i].first + order[i + 1].first);
            if (!(threshold > order[i].first)) continue;  // midpoint rounded onto the left value
            const double g_right = g_total - g_left;
            const double h_right = h_total - h_left;
            const double gain = 0.5 * (g_left * g_left / (h_left + lambda) +
                                       g_right * g_right / (h_right + lambda) - parent);
            if (gain > best.gain) {
                best.gain = gain;
                best.feature = f;
                best.threshold = threshold;
            }
        }
    }
    return best;
}

int grow(GbtTree& tree, const Matrix& X, const Vector& g, const Vector& h,
         std::vector<int>&& rows, int depth, const GbtParams& params) {
    double g_total = 0.0, h_total = 0.0;
    for (int r : rows) {
        g_total += g[r];
        h_total += h[r];
    }

    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    tree.nodes[id].weight = -g_total / (h_total + params.l2_lambda);

    if (depth >= params.max_depth || rows.size() < 2) return id;
    const SplitChoice choice = best_split(X, g, h, rows, tree.columns, params.l2_lambda);
    if (!(choice.gain > 0.0)) return id;

    std::vector<int> left_rows, right_rows;
    left_rows.reserve(rows.size());
    right_rows.reserve(rows.size());
    for (int r : rows) {
        (X(r, choice.feature) < choice.threshold ? left_rows : right_rows).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    const int left = grow(tree, X, g, h, std::move(left_rows), depth + 1, params);
    const int right = grow(tree, X, g, h, std::move(right_rows), depth + 1, params);
    tree.nodes[id].feature = choice.feature;
    tree.nodes[id].threshold = choice.threshold;
    tree.nodes[id].gain = choice.gain;
    tree.nodes[id].left = left;
    tree.nodes[id].right = right;
    tree.nodes[id].weight = 0.0;
    return id;
}

}  // namespace

double GbtTree::predict(const Vector& x) const {
    int at = 0;
    while (nodes[at].feature >= 0) {
        at = x[nodes[at].feature] < nodes[at].threshold ? nodes[at].left
                                                        : nodes[at].right;
    }
    return nodes[at].weight;
}

GbtModel gbt_fit(const Matrix& X, const std::vector<int>& y, const GbtParams& params) {
    const long n = X.rows();
    const long d = X.cols();
    if (n < 1 || d < 1) throw ValidationError("gbt_fit: empty training matrix");
    if (static_cast<long>(y.size()) != n) {
        throw ValidationError("gbt_fit: label count does not match sample count");
    }
    for (int label : y) {
        if (label != 0 && label != 1) throw ValidationError("gbt_fit: labels must be 0 or 1");
    }
    if (!X.allFinite()) throw ValidationError("gbt_fit: non-finite feature value");
    if (params.n_trees < 0) throw ValidationError("gbt_fit: n_trees must be >= 0");
    if (params.max_depth < 1) throw ValidationError("gbt_fit: max_depth must be >= 1");
    if (params.learning_rate <= 0.0) throw ValidationError("gbt_fit: learning_rate must be positive");
    if (params.subsample <= 0.0 || params.subsample > 1.0 ||
        params.colsample <= 0.0 || params.colsample > 1.0) {
        throw ValidationError("gbt_fit: subsample and colsample must be in (0, 1]");
    }
    if (params.l2_lambda < 0.0) throw ValidationError("gbt_fit: l2_lambda must be >= 0");

    GbtModel model;
    model.params = params;
    model.n_features = d;

    double prior = 0.0;
    for (int label : y) prior += label;
    prior /= static_cast<double>(n);
    prior = std::clamp(prior, 1e-7, 1.0 - 1e-7);
    model.base_score = std::log(prior / (1.0 - prior));

    const int n_rows = std::max(1, static_cast<int>(std::floor(params.subsample * static_cast<double>(n))));
    const int n_cols = std::max(1, static_cast<int>(std::floor(params.colsample * static_cast<double>(d))));

    eegclass::detail::SplitMix64 rng(params.seed);
    Vector margin = Vector::Constant(n, model.base_score);
    Vector g(n), h(n);

    model.trees.reserve(static_cast<std::size_t>(params.n_trees));
    for (int t = 0; t < params.n_trees; ++t) {
        for (long i = 0; i < n; ++i) {
            const double p = sigmoid(margin[i]);
            g[i] = p - static_cast<double>(y[static_cast<std::size_t>(i)]);
            h[i] = p * (1.0 - p);
        }

        GbtTree tree;
        std::vector<int> rows = rng.sample_indices(static_cast<int>(n), n_rows);
        tree.columns = rng.sample_indices(static_cast<int>(d), n_cols);
        grow(tree, X, g, h, std::move(rows), 0, params);

        for (long i = 0; i < n; ++i) {
            margin[i] += params.learning_rate * tree.predict(X.row(i).transpose());
        }
        model.trees.push_back(std::move(tree));
    }
    return model;
}

double gbt_margin(const GbtModel& m, const Vector& x) {
    if (x.size() != m.n_features) {
        throw ValidationError("gbt_margin: input dimension " + std::to_string(x.size()) +
                              " does not match model dimension " +
                              std::to_string(m.n_features));
    }
    double z = m.base_score;
    for (const GbtTree& tree : m.trees) z += m.params.learning_rate * tree.predict(x);
    return z;
}

double gbt_predict_proba(const GbtModel& m, const Vector& x) {
    return sigmoid(gbt_margin(m, x));
}

int gbt_predict(const GbtModel& m, const Vector& x) {
    return gbt_predict_proba(m, x) >= 0.5 ? 1 : 0;
}

double gbt_log_loss(const GbtModel& m, const Matrix& X, const std::vector<int>& y,
                    int n_trees_prefix) {
    const long n = X.rows();
    if (n < 1) throw ValidationError("gbt_log_loss: empty matrix");
    if (static_cast<long>(y.size()) != n) {
        throw ValidationError("gbt_log_loss: label count does not match sample count");
    }
    const int k = std::clamp(n_trees_prefix, 0, static_cast<int>(m.trees.size()));
    double total = 0.0;
    for (long i = 0; i < n; ++i) {
        double z = m.base_score;
        const Vector x = X.row(i).transpose();
        for (int t = 0; t < k; ++t) z += m.params.learning_rate * m.trees[static_cast<std::size_t>(t)].predict(x);
        const double p = std::clamp(sigmoid(z), 1e-12, 1.0 - 1e-12);
        total += y[static_cast<std::size_t>(i)] == 1 ? -std::log(p) : -std::log(1.0 - p);
    }
    return total / static_cast<double>(n);
}

}  // namespace eegclass::model
