// Kernels, prediction, and dual-objective helpers shared by the SVM and its
// verification paths.

#include "eegclass/model.hpp"

#include <cmath>

#include "kernel_cache.hpp"

namespace eegclass::model {

KernelKind parse_kernel(const std::string& name) {
    if (name == "linear") return KernelKind::Linear;
    if (name == "rbf") return KernelKind::Rbf;
    if (name == "poly") return KernelKind::Poly;
    if (name == "sigmoid") return KernelKind::Sigmoid;
    throw ValidationError("unknown kernel: '" + name + "'");
}

std::string to_string(KernelKind kind) {
    switch (kind) {
        case KernelKind::Linear: return "linear";
        case KernelKind::Rbf: return "rbf";
        case KernelKind::Poly: return "poly";
        case KernelKind::Sigmoid: return "sigmoid";
    }
    return "?";
}

double kernel_eval(const KernelSpec& spec, const Vector& u, const Vector& v) {
    if (u.size() != v.size()) {
        throw ValidationError("kernel_eval: dimension mismatch (" + std::to_string(u.size()) +
                              " vs " + std::to_string(v.size()) + ")");
    }
    switch (spec.kind) {
        case KernelKind::Linear:
            return u.dot(v);
        case KernelKind::Rbf:
            return std::exp(-spec.gamma * (u - v).squaredNorm());
        case KernelKind::Poly:
            return std::pow(spec.gamma * u.dot(v) + spec.coef0, spec.degree);
        case KernelKind::Sigmoid:
            return std::tanh(spec.gamma * u.dot(v) + spec.coef0);
    }
    throw ValidationError("kernel_eval: bad kernel kind");
}

double gamma_scale(const Matrix& X) {
    if (X.size() == 0) throw ValidationError("gamma_scale: empty matrix");
    const double mean = X.mean();
    const double var = (X.array() - mean).square().sum() / static_cast<double>(X.size());
    if (var <= 0.0) throw ValidationError("gamma_scale: zero variance");
    return 1.0 / (static_cast<double>(X.cols()) * var);
}

KernelSpec resolve_gamma(const KernelSpec& spec, const Matrix& X) {
    KernelSpec out = spec;
    if (spec.gamma_is_scale) {
        out.gamma = gamma_scale(X);
        out.gamma_is_scale = false;
    }
    if (out.gamma <= 0.0) throw ValidationError("kernel gamma must be positive");
    if (out.degree < 1) throw ValidationError("poly degree must be >= 1");
    return out;
}

double svm_decision(const SvmModel& m, const Vector& x) {
    if (x.size() != m.support_vectors.cols()) {
        throw ValidationError("svm_decision: input dimension " + std::to_string(x.size()) +
                              " does not match model dimension " +
                              std::to_string(m.support_vectors.cols()));
    }
    double score = m.bias;
    for (long i = 0; i < m.support_vectors.rows(); ++i) {
        score += m.dual_coeffs[i] *
                 kernel_eval(m.kernel, Vector(m.support_vectors.row(i).transpose()), x);
    }
    return score;
}

int svm_predict(const SvmModel& m, const Vector& x) {
    return svm_decision(m, x) >= 0.0 ? +1 : -1;
}

double svm_dual_objective(const Matrix& X, const std::vector<int>& y,
                          const KernelSpec& kernel, const Vector& alpha) {
    const long n = X.rows();
    detail::KernelCache cache(X, kernel, 2048);
    Vector coeff(n);
    for (long i = 0; i < n; ++i) coeff[i] = alpha[i] * y[static_cast<std::size_t>(i)];
    double quad = 0.0;
    Vector row(n);
    for (long i = 0; i < n; ++i) {
        cache.fill_row(i, row);
        quad += coeff[i] * row.dot(coeff);
    }
    return alpha.sum() - 0.5 * quad;
}

}  // namespace eegclass::model
