// Platt SMO for the soft-margin dual. Decision convention f(x) = sum_j
// alpha_j y_j K(x_j, x) + b, error cache E_k = f(x_k) - y_k.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "eegclass/model.hpp"
#include "kernel_cache.hpp"
#include "rng.hpp"

namespace eegclass::model {

namespace {

constexpr double kStepEps = 1e-12;   // minimum meaningful alpha move
constexpr double kSnapEps = 1e-10;   // distance at which a2 collapses onto L or H

// Clamping leaves alphas within ulps of a box edge; treat that shell as
// at-bound everywhere, or KKT checks demand margin == 1 from points with no
// room left to move.
inline double bound_eps(double C) { return kSnapEps * std::max(1.0, C); }

struct Solver {
    const Matrix& X;
    const std::vector<int>& y;
    const detail::KernelCache& cache;
    const SvmFitOptions& opts;

    long n;
    Vector alpha;
    Vector errors;  // E_k
    double bias = 0.0;
    long pair_updates = 0;
    eegclass::detail::SplitMix64 rng;

    Vector row1, row2;  // scratch kernel rows

    Solver(const Matrix& X_, const std::vector<int>& y_,
           const detail::KernelCache& cache_, const SvmFitOptions& opts_)
        : X(X_), y(y_), cache(cache_), opts(opts_), n(X_.rows()),
          rng(opts_.rng_seed) {
        alpha = Vector::Zero(n);
        errors = Vector(n);
        for (long k = 0; k < n; ++k) errors[k] = -static_cast<double>(y[k]);
        row1.resize(n);
        row2.resize(n);
    }

    bool at_lower(long i) const { return alpha[i] <= bound_eps(opts.C); }
    bool at_upper(long i) const { return alpha[i] >= opts.C - bound_eps(opts.C); }
    bool non_bound(long i) const { return !at_lower(i) && !at_upper(i); }

    // Dual objective restricted to the (a1, a2) pair, constants dropped.
    static double pair_objective(double a1, double a2, double k11, double k22,
                                 double k12, double s, double y1v1, double y2v2) {
        return a1 + a2 - 0.5 * a1 * a1 * k11 - 0.5 * a2 * a2 * k22 -
               s * a1 * a2 * k12 - a1 * y1v1 - a2 * y2v2;
    }

    bool take_step(long i1, long i2, double e2) {
        if (i1 == i2) return false;

        const double a1_old = alpha[i1];
        const double a2_old = alpha[i2];
        const double y1 = static_cast<double>(y[i1]);
        const double y2 = static_cast<double>(y[i2]);
        const double e1 = errors[i1];
        const double s = y1 * y2;
        const double C = opts.C;

        double L, H;
        if (s < 0.0) {
            L = std::max(0.0, a2_old - a1_old);
            H = std::min(C, C + a2_old - a1_old);
        } else {
            L = std::max(0.0, a1_old + a2_old - C);
            H = std::min(C, a1_old + a2_old);
        }
        if (L >= H) return false;

        cache.fill_row(i1, row1);
        cache.fill_row(i2, row2);
        const double k11 = row1[i1];
        const double k22 = row2[i2];
        const double k12 = row1[i2];
        const double eta = k11 + k22 - 2.0 * k12;

        double a2;
        if (eta > 0.0) {
            a2 = a2_old + y2 * (e1 - e2) / eta;
            a2 = std::clamp(a2, L, H);
        } else {
            // Flat or concave along the pair direction: compare endpoints.
            // v_i is f(x_i) without the pair's own terms and without the bias.
            const double v1 = e1 + y1 - bias - y1 * a1_old * k11 - y2 * a2_old * k12;
            const double v2 = e2 + y2 - bias - y1 * a1_old * k12 - y2 * a2_old * k22;
            const double gamma_sum = a1_old + s * a2_old;
            const double w_lo = pair_objective(gamma_sum - s * L, L, k11, k22, k12,
                                               s, y1 * v1, y2 * v2);
            const double w_hi = pair_objective(gamma_sum - s * H, H, k11, k22, k12,
                                               s, y1 * v1, y2 * v2);
            if (w_lo > w_hi + kStepEps) {
                a2 = L;
            } else if (w_hi > w_lo + kStepEps) {
                a2 = H;
            } else {
                return false;
            }
        }

        if (a2 - L < kSnapEps) a2 = L;
        if (H - a2 < kSnapEps) a2 = H;
        if (std::abs(a2 - a2_old) < kStepEps * (a2 + a2_old + kStepEps)) return false;

        double a1 = a1_old + s * (a2_old - a2);
        a1 = std::clamp(a1, 0.0, C);  // ulp cleanup after the a2 snap

        const double d1 = a1 - a1_old;
        const double d2 = a2 - a2_old;

        const double b1 = bias - e1 - y1 * d1 * k11 - y2 * d2 * k12;
        const double b2 = bias - e2 - y1 * d1 * k12 - y2 * d2 * k22;
        const double beps = bound_eps(C);
        double b_new;
        if (a1 > beps && a1 < C - beps) {
            b_new = b1;
        } else if (a2 > beps && a2 < C - beps) {
            b_new = b2;
        } else {
            b_new = 0.5 * (b1 + b2);
        }
        const double db = b_new - bias;

        alpha[i1] = a1;
        alpha[i2] = a2;
        bias = b_new;
        errors += y1 * d1 * row1 + y2 * d2 * row2;
        errors.array() += db;
        ++pair_updates;
        return true;
    }

    // Platt's hierarchy: best |E1-E2| partner, then non-bound sweep, then full
    // sweep, both from seeded random starts.
    bool examine(long i2) {
        const double y2 = static_cast<double>(y[i2]);
        const double e2 = errors[i2];
        const double r2 = e2 * y2;
        const bool violated = (r2 < -opts.tol && !at_upper(i2)) ||
                              (r2 > opts.tol && !at_lower(i2));
        if (!violated) return false;

        long best = -1;
        double best_gap = -1.0;
        for (long k = 0; k < n; ++k) {
            if (!non_bound(k)) continue;
            const double gap = std::abs(errors[k] - e2);
            if (gap > best_gap) {
                best_gap = gap;
                best = k;
            }
        }
        if (best >= 0 && take_step(best, i2, e2)) return true;

        const long start1 = static_cast<long>(rng.next_below(static_cast<std::uint64_t>(n)));
        for (long off = 0; off < n; ++off) {
            const long k = (start1 + off) % n;
            if (non_bound(k) && take_step(k, i2, e2)) return true;
        }
        const long start2 = static_cast<long>(rng.next_below(static_cast<std::uint64_t>(n)));
        for (long off = 0; off < n; ++off) {
            const long k = (start2 + off) % n;
            if (!non_bound(k) && take_step(k, i2, e2)) return true;
        }
        return false;
    }

    void refresh_errors() {
        Vector coeff(n);
        for (long k = 0; k < n; ++k) coeff[k] = alpha[k] * static_cast<double>(y[k]);
        Vector row(n);
        for (long k = 0; k < n; ++k) {
            cache.fill_row(k, row);
            errors[k] = row.dot(coeff) + bias - static_cast<double>(y[k]);
        }
    }

    // The last pair's b1/b2 rule can leave the bias off-center inside the
    // feasible interval, inflating per-point KKT violations that no pair step
    // can repair. Midpoint of the interval minimizes the worst violation
    // (libsvm's rho rule). For each point the interval endpoint is b - E_i.
    void recenter_bias() {
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (long i = 0; i < n; ++i) {
            const double c = bias - errors[i];
            const bool pos = y[i] == +1;
            if ((pos && !at_upper(i)) || (!pos && !at_lower(i))) lo = std::max(lo, c);
            if ((pos && !at_lower(i)) || (!pos && !at_upper(i))) hi = std::min(hi, c);
        }
        double target;
        if (std::isfinite(lo) && std::isfinite(hi)) {
            target = 0.5 * (lo + hi);
        } else if (std::isfinite(lo)) {
            target = lo;
        } else if (std::isfinite(hi)) {
            target = hi;
        } else {
            return;
        }
        errors.array() += target - bias;
        bias = target;
    }

    double true_violation() const {
        return svm_kkt_violation_cached(cache, y, alpha, bias, opts.C);
    }

    static double svm_kkt_violation_cached(const detail::KernelCache& cache,
                                           const std::vector<int>& y,
                                           const Vector& alpha, double bias,
                                           double C) {
        const long n = cache.size();
        const double beps = bound_eps(C);
        Vector coeff(n);
        for (long k = 0; k < n; ++k) coeff[k] = alpha[k] * static_cast<double>(y[k]);
        double worst = 0.0;
        Vector row(n);
        for (long i = 0; i < n; ++i) {
            cache.fill_row(i, row);
            const double margin = static_cast<double>(y[i]) * (row.dot(coeff) + bias);
            double v;
            if (alpha[i] <= beps) {
                v = std::max(0.0, 1.0 - margin);
            } else if (alpha[i] >= C - beps) {
                v = std::max(0.0, margin - 1.0);
            } else {
                v = std::abs(margin - 1.0);
            }
            worst = std::max(worst, v);
        }
        return worst;
    }

    double duality_gap() const {
        Vector coeff(n);
        for (long k = 0; k < n; ++k) coeff[k] = alpha[k] * static_cast<double>(y[k]);
        double quad = 0.0;
        double hinge = 0.0;
        Vector row(n);
        for (long i = 0; i < n; ++i) {
            cache.fill_row(i, row);
            const double f = row.dot(coeff) + bias;
            quad += coeff[i] * (f - bias);
            hinge += std::max(0.0, 1.0 - static_cast<double>(y[i]) * f);
        }
        const double dual = alpha.sum() - 0.5 * quad;
        const double primal = 0.5 * quad + opts.C * hinge;
        return primal - dual;
    }
};

}  // namespace

SvmModel svm_fit(const Matrix& X, const std::vector<int>& y,
                 const KernelSpec& kernel, const SvmFitOptions& opts,
                 SvmFitReport* report) {
    const long n = X.rows();
    if (n < 2) throw ValidationError("svm_fit: need at least two samples");
    if (static_cast<long>(y.size()) != n) {
        throw ValidationError("svm_fit: label count does not match sample count");
    }
    long pos = 0, neg = 0;
    for (int label : y) {
        if (label == +1) {
            ++pos;
        } else if (label == -1) {
            ++neg;
        } else {
            throw ValidationError("svm_fit: labels must be +1 or -1");
        }
    }
    if (pos == 0 || neg == 0) throw ValidationError("svm_fit: both classes must be present");
    if (opts.C <= 0.0) throw ValidationError("svm_fit: C must be positive");
    if (opts.tol <= 0.0) throw ValidationError("svm_fit: tol must be positive");
    if (!X.allFinite()) throw ValidationError("svm_fit: non-finite feature value");

    const KernelSpec resolved = resolve_gamma(kernel, X);
    detail::KernelCache cache(X, resolved, /*max_full_cache=*/2048);
    Solver solver(X, y, cache, opts);

    bool examine_all = true;
    int stuck_sweeps = 0;
    while (true) {
        long changed = 0;
        for (long i = 0; i < n; ++i) {
            if (!examine_all && !solver.non_bound(i)) continue;
            if (solver.examine(i)) ++changed;
            if (solver.pair_updates >= opts.max_pair_updates) {
                std::ostringstream msg;
                msg << "svm_fit: no convergence within " << opts.max_pair_updates
                    << " pair updates (duality gap " << solver.duality_gap() << ")";
                throw ComputeError(msg.str());
            }
        }
        if (examine_all && changed == 0) {
            // Cached errors say every point satisfies KKT. Rebuild them from
            // scratch, recenter the bias, and confirm before declaring
            // convergence: incremental errors drift, and an off-center bias
            // inflates violations that no pair step can repair.
            solver.refresh_errors();
            solver.recenter_bias();
            if (solver.true_violation() <= opts.tol) break;
            if (++stuck_sweeps >= opts.max_passes) {
                std::ostringstream msg;
                msg << "svm_fit: " << opts.max_passes
                    << " stalled sweeps without reaching tol " << opts.tol
                    << " (duality gap " << solver.duality_gap() << ")";
                throw ComputeError(msg.str());
            }
            continue;
        }
        if (examine_all) {
            examine_all = false;
        } else if (changed == 0) {
            examine_all = true;
        }
    }

    if (report != nullptr) {
        report->alpha = solver.alpha;
        report->bias = solver.bias;
        report->objective = svm_dual_objective(X, y, resolved, solver.alpha);
        report->kkt_violation = solver.true_violation();
        report->pair_updates = solver.pair_updates;
    }

    long n_sv = 0;
    for (long i = 0; i < n; ++i) {
        if (solver.alpha[i] > 0.0) ++n_sv;
    }
    SvmModel model;
    model.support_vectors.resize(n_sv, X.cols());
    model.dual_coeffs.resize(n_sv);
    long at = 0;
    for (long i = 0; i < n; ++i) {
        if (solver.alpha[i] <= 0.0) continue;
        model.support_vectors.row(at) = X.row(i);
        model.dual_coeffs[at] = solver.alpha[i] * static_cast<double>(y[i]);
        ++at;
    }
    model.bias = solver.bias;
    model.kernel = resolved;
    model.C = opts.C;
    return model;
}

double svm_kkt_violation(const Matrix& X, const std::vector<int>& y,
                         const KernelSpec& kernel, const Vector& alpha,
                         double bias, double C) {
    detail::KernelCache cache(X, kernel, /*max_full_cache=*/2048);
    return Solver::svm_kkt_violation_cached(cache, y, alpha, bias, C);
}

}  // namespace eegclass::model
