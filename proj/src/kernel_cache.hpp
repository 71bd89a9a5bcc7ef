#pragma once

// Kernel rows over a fixed training matrix. Small problems get the full Gram
// matrix up front; larger ones compute rows on demand via one mat-vec.

#include <cmath>

#include "eegclass/model.hpp"

namespace eegclass::model::detail {

class KernelCache {
public:
    KernelCache(const Matrix& X, const KernelSpec& spec, long max_full_cache)
        : X_(X), spec_(spec), n_(X.rows()) {
        sq_norms_ = X.rowwise().squaredNorm();
        full_ = n_ <= max_full_cache;
        if (full_) {
            gram_.resize(n_, n_);
            Vector row(n_);
            for (long i = 0; i < n_; ++i) {
                compute_row(i, row);
                gram_.row(i) = row.transpose();
            }
        }
    }

    long size() const { return n_; }
    bool cached() const { return full_; }

    double diag(long i) const {
        if (full_) return gram_(i, i);
        switch (spec_.kind) {
            case KernelKind::Linear: return sq_norms_[i];
            case KernelKind::Rbf: return 1.0;
            case KernelKind::Poly:
                return std::pow(spec_.gamma * sq_norms_[i] + spec_.coef0, spec_.degree);
            case KernelKind::Sigmoid:
                return std::tanh(spec_.gamma * sq_norms_[i] + spec_.coef0);
        }
        return 0.0;
    }

    void fill_row(long i, Vector& out) const {
        if (full_) {
            out = gram_.row(i).transpose();
        } else {
            compute_row(i, out);
        }
    }

private:
    void compute_row(long i, Vector& out) const {
        out.noalias() = X_ * X_.row(i).transpose();  // dot products with every row
        switch (spec_.kind) {
            case KernelKind::Linear:
                break;
            case KernelKind::Rbf:
                out = (-spec_.gamma *
                       ((sq_norms_.array() + sq_norms_[i]) - 2.0 * out.array()))
                          .exp()
                          .matrix();
                break;
            case KernelKind::Poly:
                out = (spec_.gamma * out.array() + spec_.coef0)
                          .pow(static_cast<double>(spec_.degree))
                          .matrix();
                break;
            case KernelKind::Sigmoid:
                out = (spec_.gamma * out.array() + spec_.coef0).tanh().matrix();
                break;
        }
    }

    const Matrix& X_;
    KernelSpec spec_;
    long n_;
    Vector sq_norms_;
    bool full_ = false;
    Matrix gram_;
};

}  // namespace eegclass::model::detail
