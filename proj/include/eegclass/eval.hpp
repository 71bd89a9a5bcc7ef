#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "eegclass/features.hpp"
#include "eegclass/model.hpp"
#include "eegclass/types.hpp"

namespace eegclass::eval {

enum class FoldMode { Stratified, StratifiedGrouped };

FoldMode parse_fold_mode(const std::string& name);
std::string to_string(FoldMode mode);

struct FoldPlan {
    int k = 10;
    FoldMode mode = FoldMode::Stratified;
    std::uint64_t seed = 0;
    std::vector<int> assignments;  // sample index -> fold index
};

// Stratified: per class, fold sizes differ by at most 1. Grouped: all epochs
// of one subject land in the same fold, stratifying at the subject level.
FoldPlan make_folds(const std::vector<ClassLabel>& labels,
                    const std::vector<std::string>& subject_ids,
                    int k, FoldMode mode, std::uint64_t seed);

struct ConfusionCounts {
    long tp = 0, fp = 0, fn = 0, tn = 0;
    long total() const { return tp + fp + fn + tn; }
};

struct MetricsReport {
    std::vector<double> fold_accuracy;
    std::vector<ConfusionCounts> fold_counts;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;  // population std over folds
    // Pooled over all held-out predictions, positive class = ADHD.
    ConfusionCounts pooled;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

enum class NormScope { Fold, Global };

NormScope parse_norm_scope(const std::string& name);
std::string to_string(NormScope scope);

enum class ClassifierKind { Svm, Gbt };

struct ClassifierConfig {
    ClassifierKind kind = ClassifierKind::Svm;
    model::KernelSpec kernel;
    double svm_C = 1.0;
    double svm_tol = 1e-3;
    int svm_max_passes = 10;
    model::GbtParams gbt;
};

// A trainer maps (train rows, 0/1 labels, fold index) to a 0/1 predictor over
// single rows. The fold index exists so seeds can derive per fold.
using Predictor = std::function<int(const Vector&)>;
using Trainer = std::function<Predictor(const Matrix&, const std::vector<int>&, int)>;

// Generic CV loop: per fold, fit the normalizer per scope, train on the rest,
// score the held-out fold. Exposed so tests can drive synthetic predictors.
MetricsReport cross_validate_with(const features::FeatureMatrix& data,
                                  const FoldPlan& plan, NormScope scope,
                                  const Trainer& trainer, int jobs = 1);

MetricsReport cross_validate(const features::FeatureMatrix& data,
                             const ClassifierConfig& clf, const FoldPlan& plan,
                             NormScope scope, int jobs = 1);

// Builds the per-fold seed rule (gbt seed + fold index) into a Trainer.
Trainer make_trainer(const ClassifierConfig& clf);

struct KernelResult {
    model::KernelKind kernel;
    MetricsReport metrics;
};

// One cross_validate per kernel, all sharing the same FoldPlan.
std::vector<KernelResult> compare_kernels(const features::FeatureMatrix& data,
                                          const std::vector<model::KernelKind>& kernels,
                                          const ClassifierConfig& base,
                                          const FoldPlan& plan, NormScope scope,
                                          int jobs = 1);

}  // namespace eegclass::eval
