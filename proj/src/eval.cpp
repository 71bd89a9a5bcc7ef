// Cross-validation and metrics. Fold scope refits normalization inside each
// fold; Global fits it once on everything, which leaks test statistics and
// exists to mirror the single-normalizer protocol some studies use.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "eegclass/eval.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace eegclass::eval {

FoldMode parse_fold_mode(const std::string& name) {
    if (name == "stratified") return FoldMode::Stratified;
    if (name == "stratified_grouped") return FoldMode::StratifiedGrouped;
    throw ValidationError("unknown fold mode: '" + name + "'");
}

std::string to_string(FoldMode mode) {
    return mode == FoldMode::Stratified ? "stratified" : "stratified_grouped";
}

NormScope parse_norm_scope(const std::string& name) {
    if (name == "fold") return NormScope::Fold;
    if (name == "global") return NormScope::Global;
    throw ValidationError("unknown normalization scope: '" + name + "'");
}

std::string to_string(NormScope scope) {
    return scope == NormScope::Fold ? "fold" : "global";
}

namespace {

// Shuffle one class's members and deal them round-robin over the folds.
void deal(std::vector<int>& members, int k, eegclass::detail::SplitMix64& rng,
          std::vector<int>& fold_of) {
    rng.shuffle(members);
    for (std::size_t j = 0; j < members.size(); ++j) {
        fold_of[static_cast<std::size_t>(members[j])] = static_cast<int>(j % static_cast<std::size_t>(k));
    }
}

}  // namespace

FoldPlan make_folds(const std::vector<ClassLabel>& labels,
                    const std::vector<std::string>& subject_ids,
                    int k, FoldMode mode, std::uint64_t seed) {
    const std::size_t n = labels.size();
    if (n == 0) throw ValidationError("make_folds: no samples");
    if (subject_ids.size() != n) {
        throw ValidationError("make_folds: subject list does not match label list");
    }
    if (k < 2) throw ValidationError("make_folds: k must be >= 2");

    FoldPlan plan;
    plan.k = k;
    plan.mode = mode;
    plan.seed = seed;
    plan.assignments.assign(n, -1);

    eegclass::detail::SplitMix64 rng(seed);

    if (mode == FoldMode::Stratified) {
        std::vector<int> by_class[2];
        for (std::size_t i = 0; i < n; ++i) {
            by_class[static_cast<int>(labels[i])].push_back(static_cast<int>(i));
        }
        for (auto& members : by_class) {
            if (members.empty()) throw ValidationError("make_folds: only one class present");
            if (static_cast<int>(members.size()) < k) {
                throw ValidationError("make_folds: k exceeds the minority class count (" +
                                      std::to_string(members.size()) + " samples)");
            }
        }
        for (auto& members : by_class) deal(members, k, rng, plan.assignments);
        return plan;
    }

    // Grouped: stratify whole subjects, then copy each subject's fold to its epochs.
    std::vector<std::string> order;                 // first-appearance order
    std::map<std::string, int> subject_slot;
    std::vector<ClassLabel> subject_label;
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, inserted] = subject_slot.try_emplace(subject_ids[i], static_cast<int>(order.size()));
        if (inserted) {
            order.push_back(subject_ids[i]);
            subject_label.push_back(labels[i]);
        } else if (subject_label[static_cast<std::size_t>(it->second)] != labels[i]) {
            throw ValidationError("make_folds: subject '" + subject_ids[i] +
                                  "' appears with conflicting labels");
        }
    }

    std::vector<int> by_class[2];
    for (std::size_t s = 0; s < order.size(); ++s) {
        by_class[static_cast<int>(subject_label[s])].push_back(static_cast<int>(s));
    }
    for (auto& members : by_class) {
        if (members.empty()) throw ValidationError("make_folds: only one class present");
        if (static_cast<int>(members.size()) < k) {
            throw ValidationError("make_folds: k exceeds the minority class subject count (" +
                                  std::to_string(members.size()) + " subjects)");
        }
    }
    std::vector<int> subject_fold(order.size(), -1);
    for (auto& members : by_class) deal(members, k, rng, subject_fold);
    for (std::size_t i = 0; i < n; ++i) {
        plan.assignments[i] = subject_fold[static_cast<std::size_t>(subject_slot[subject_ids[i]])];
    }
    return plan;
}

namespace {

MetricsReport score(const FoldPlan& plan, const std::vector<int>& truth,
                    const std::vector<int>& predicted) {
    MetricsReport report;
    report.fold_accuracy.resize(static_cast<std::size_t>(plan.k), 0.0);
    report.fold_counts.resize(static_cast<std::size_t>(plan.k));

    for (std::size_t i = 0; i < truth.size(); ++i) {
        auto& c = report.fold_counts[static_cast<std::size_t>(plan.assignments[i])];
        if (truth[i] == 1) {
            (predicted[i] == 1 ? c.tp : c.fn) += 1;
        } else {
            (predicted[i] == 1 ? c.fp : c.tn) += 1;
        }
    }

    double mean = 0.0;
    for (int f = 0; f < plan.k; ++f) {
        const auto& c = report.fold_counts[static_cast<std::size_t>(f)];
        if (c.total() == 0) throw ValidationError("fold " + std::to_string(f) + " is empty");
        const double acc = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
        report.fold_accuracy[static_cast<std::size_t>(f)] = acc;
        mean += acc;
        report.pooled.tp += c.tp;
        report.pooled.fp += c.fp;
        report.pooled.fn += c.fn;
        report.pooled.tn += c.tn;
    }
    mean /= static_cast<double>(plan.k);
    double var = 0.0;
    for (double acc : report.fold_accuracy) var += (acc - mean) * (acc - mean);
    var /= static_cast<double>(plan.k);
    report.mean_accuracy = mean;
    report.std_accuracy = std::sqrt(var);

    const auto& p = report.pooled;
    report.precision = p.tp + p.fp > 0 ? static_cast<double>(p.tp) / static_cast<double>(p.tp + p.fp) : 0.0;
    report.recall = p.tp + p.fn > 0 ? static_cast<double>(p.tp) / static_cast<double>(p.tp + p.fn) : 0.0;
    report.f1 = report.precision + report.recall > 0.0
                    ? 2.0 * report.precision * report.recall / (report.precision + report.recall)
                    : 0.0;
    return report;
}

}  // namespace

MetricsReport cross_validate_with(const features::FeatureMatrix& data,
                                  const FoldPlan& plan, NormScope scope,
                                  const Trainer& trainer, int jobs) {
    const long n = data.rows();
    if (n == 0) throw ValidationError("cross_validate: no samples");
    if (static_cast<long>(plan.assignments.size()) != n) {
        throw ValidationError("cross_validate: fold plan does not match the data");
    }
    for (int a : plan.assignments) {
        if (a < 0 || a >= plan.k) throw ValidationError("cross_validate: fold index out of range");
    }

    std::vector<int> truth(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) truth[static_cast<std::size_t>(i)] = static_cast<int>(data.labels[static_cast<std::size_t>(i)]);

    features::NormalizationStats global_stats;
    if (scope == NormScope::Global) global_stats = features::fit_normalizer(data.values);

    std::vector<int> predicted(static_cast<std::size_t>(n), -1);
    detail::parallel_for(plan.k, jobs, [&](long fold) {
        std::vector<long> train_rows, test_rows;
        for (long i = 0; i < n; ++i) {
            (plan.assignments[static_cast<std::size_t>(i)] == fold ? test_rows : train_rows).push_back(i);
        }
        if (test_rows.empty()) throw ValidationError("fold " + std::to_string(fold) + " is empty");
        if (train_rows.empty()) throw ValidationError("fold " + std::to_string(fold) + " holds every sample");

        Matrix train_X(static_cast<long>(train_rows.size()), data.values.cols());
        std::vector<int> train_y(train_rows.size());
        for (std::size_t r = 0; r < train_rows.size(); ++r) {
            train_X.row(static_cast<long>(r)) = data.values.row(train_rows[r]);
            train_y[r] = truth[static_cast<std::size_t>(train_rows[r])];
        }

        const features::NormalizationStats stats =
            scope == NormScope::Global ? global_stats : features::fit_normalizer(train_X);
        train_X = features::transform(train_X, stats);

        const Predictor predict = trainer(train_X, train_y, static_cast<int>(fold));
        for (long row : test_rows) {
            const Vector z = features::transform(Vector(data.values.row(row).transpose()), stats);
            predicted[static_cast<std::size_t>(row)] = predict(z);
        }
    });

    return score(plan, truth, predicted);
}

Trainer make_trainer(const ClassifierConfig& clf) {
    if (clf.kind == ClassifierKind::Svm) {
        return [clf](const Matrix& X, const std::vector<int>& y01, int /*fold*/) -> Predictor {
            std::vector<int> y(y01.size());
            for (std::size_t i = 0; i < y01.size(); ++i) y[i] = y01[i] == 1 ? +1 : -1;
            model::SvmFitOptions opts;
            opts.C = clf.svm_C;
            opts.tol = clf.svm_tol;
            opts.max_passes = clf.svm_max_passes;
            auto fitted = std::make_shared<model::SvmModel>(model::svm_fit(X, y, clf.kernel, opts));
            return [fitted](const Vector& x) { return model::svm_predict(*fitted, x) > 0 ? 1 : 0; };
        };
    }
    return [clf](const Matrix& X, const std::vector<int>& y01, int fold) -> Predictor {
        model::GbtParams params = clf.gbt;
        params.seed = clf.gbt.seed + static_cast<std::uint64_t>(fold);
        auto fitted = std::make_shared<model::GbtModel>(model::gbt_fit(X, y01, params));
        return [fitted](const Vector& x) { return model::gbt_predict(*fitted, x); };
    };
}

MetricsReport cross_validate(const features::FeatureMatrix& data,
                             const ClassifierConfig& clf, const FoldPlan& plan,
                             NormScope scope, int jobs) {
    return cross_validate_with(data, plan, scope, make_trainer(clf), jobs);
}

std::vector<KernelResult> compare_kernels(const features::FeatureMatrix& data,
                                          const std::vector<model::KernelKind>& kernels,
                                          const ClassifierConfig& base,
                                          const FoldPlan& plan, NormScope scope,
                                          int jobs) {
    if (kernels.empty()) throw ValidationError("compare_kernels: no kernels requested");
    std::vector<KernelResult> results;
    results.reserve(kernels.size());
    for (model::KernelKind kind : kernels) {
        ClassifierConfig clf = base;
        clf.kind = ClassifierKind::Svm;
        clf.kernel.kind = kind;
        results.push_back({kind, cross_validate(data, clf, plan, scope, jobs)});
    }
    return results;
}

}  // namespace eegclass::eval
