#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eegclass/types.hpp"

namespace eegclass::model {

enum class KernelKind { Linear, Rbf, Poly, Sigmoid };

KernelKind parse_kernel(const std::string& name);
std::string to_string(KernelKind kind);

struct KernelSpec {
    KernelKind kind = KernelKind::Rbf;
    bool gamma_is_scale = true;  // resolve gamma as 1/(d * Var(X)) at fit time
    double gamma = 1.0;          // used when gamma_is_scale is false
    int degree = 3;              // poly
    double coef0 = 0.0;          // poly, sigmoid
};

// linear: u.v   rbf: exp(-g|u-v|^2)   poly: (g u.v + c0)^deg   sigmoid: tanh(g u.v + c0)
double kernel_eval(const KernelSpec& spec, const Vector& u, const Vector& v);

// 1 / (n_features * pooled population variance of all entries of X).
double gamma_scale(const Matrix& X);

// Resolve a spec's gamma against training data (scale mode) into a fixed value.
KernelSpec resolve_gamma(const KernelSpec& spec, const Matrix& X);

struct SvmModel {
    Matrix support_vectors;  // one row per stored vector, all with alpha > 0
    Vector dual_coeffs;      // alpha_i * y_i
    double bias = 0.0;
    KernelSpec kernel;       // gamma always resolved to a fixed value
    double C = 1.0;
};

struct SvmFitOptions {
    double C = 1.0;
    double tol = 1e-3;               // KKT tolerance
    int max_passes = 10;             // consecutive no-progress full sweeps before giving up
    long max_pair_updates = 1000000; // hard cap on takeStep successes
    std::uint64_t rng_seed = 0x5eedULL;  // second-choice fallback sweep starts
};

// Full solver state, for tests and diagnostics.
struct SvmFitReport {
    Vector alpha;          // all training points, not just the stored vectors
    double bias = 0.0;
    double objective = 0.0;
    double kkt_violation = 0.0;
    long pair_updates = 0;
};

// Platt SMO on the soft-margin dual. Labels must be +1/-1 with both classes
// present. Throws ComputeError (with the residual KKT violation) if the
// iteration caps are hit before the tolerance is met.
SvmModel svm_fit(const Matrix& X, const std::vector<int>& y,
                 const KernelSpec& kernel, const SvmFitOptions& opts = {},
                 SvmFitReport* report = nullptr);

double svm_decision(const SvmModel& m, const Vector& x);
int svm_predict(const SvmModel& m, const Vector& x);  // sign(score), ties -> +1

// Largest per-point KKT violation of a dual solution:
//   alpha=0 needs y f >= 1, 0<alpha<C needs y f = 1, alpha=C needs y f <= 1.
// Alphas within a hair of a box edge count as at-bound.
double svm_kkt_violation(const Matrix& X, const std::vector<int>& y,
                         const KernelSpec& kernel, const Vector& alpha,
                         double bias, double C);

// Dual objective sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij.
double svm_dual_objective(const Matrix& X, const std::vector<int>& y,
                          const KernelSpec& kernel, const Vector& alpha);

struct GbtParams {
    int n_trees = 100;
    double learning_rate = 0.1;
    int max_depth = 6;
    double subsample = 0.8;
    double colsample = 0.8;
    double l2_lambda = 1.0;
    std::uint64_t seed = 0;
};

struct GbtNode {
    int feature = -1;        // -1 marks a leaf
    double threshold = 0.0;  // x[feature] < threshold goes left
    int left = -1;
    int right = -1;
    double weight = 0.0;     // leaf value, -G/(H+lambda)
    double gain = 0.0;       // split gain; 0 for leaves
};

struct GbtTree {
    std::vector<GbtNode> nodes;  // nodes[0] is the root
    std::vector<int> columns;    // column subset this tree was grown from

    double predict(const Vector& x) const;
    double root_gain() const { return nodes.empty() ? 0.0 : nodes[0].gain; }
};

struct GbtModel {
    GbtParams params;
    long n_features = 0;
    double base_score = 0.0;  // log-odds of the training prior
    std::vector<GbtTree> trees;
};

// Newton boosting on logistic loss, exact greedy splits, per-tree row and
// column subsampling from the seeded generator. Labels 0/1; an all-one-class
// input is legal and saturates base_score at the clamped prior.
GbtModel gbt_fit(const Matrix& X, const std::vector<int>& y, const GbtParams& params);

double gbt_margin(const GbtModel& m, const Vector& x);  // base + lr * sum tree(x)
double gbt_predict_proba(const GbtModel& m, const Vector& x);
int gbt_predict(const GbtModel& m, const Vector& x);  // proba >= 0.5 -> 1

// Mean logistic loss of the model's first n_trees_prefix trees (clamped).
double gbt_log_loss(const GbtModel& m, const Matrix& X, const std::vector<int>& y,
                    int n_trees_prefix);

}  // namespace eegclass::model
