#include <doctest.h>

#include <string>

#include "eegclass/model_io.hpp"
#include "helpers.hpp"

using namespace eegclass;

namespace {

// Small separable problem shared by the round-trip tests.
Matrix train_x() {
    Matrix X(8, 3);
    X << 0.1, 0.2, -0.3, 0.4, -0.1, 0.2, -0.2, 0.3, 0.1, 0.0, 0.1, -0.1,
         3.1, 2.8, 3.3, 2.9, 3.2, 2.7, 3.4, 3.0, 2.6, 3.0, 2.9, 3.1;
    return X;
}

model_io::ModelBundle svm_bundle() {
    const Matrix X = train_x();
    const std::vector<int> y = {-1, -1, -1, -1, +1, +1, +1, +1};
    model_io::ModelBundle bundle;
    bundle.pipeline = config::default_config();
    bundle.normalization = features::fit_normalizer(X);
    bundle.kind = eval::ClassifierKind::Svm;
    bundle.svm = model::svm_fit(X, y, model::KernelSpec{});
    return bundle;
}

model_io::ModelBundle gbt_bundle() {
    const Matrix X = train_x();
    const std::vector<int> y = {0, 0, 0, 0, 1, 1, 1, 1};
    model::GbtParams params;
    params.n_trees = 12;
    params.max_depth = 3;
    params.seed = 5;
    model_io::ModelBundle bundle;
    bundle.pipeline = config::default_config();
    bundle.pipeline.classifier = eval::ClassifierKind::Gbt;
    bundle.normalization = features::fit_normalizer(X);
    bundle.kind = eval::ClassifierKind::Gbt;
    bundle.gbt = model::gbt_fit(X, y, params);
    return bundle;
}

}  // namespace

TEST_CASE("an SVM bundle round-trips with identical scores") {
    const auto bundle = svm_bundle();
    testutil::ScratchDir dir;
    model_io::save_model(dir.file("model.json"), bundle);
    const auto back = model_io::load_model(dir.file("model.json"));

    CHECK(back.kind == eval::ClassifierKind::Svm);
    REQUIRE(back.svm.has_value());
    CHECK_FALSE(back.gbt.has_value());
    CHECK(config::config_hash(back.pipeline) == config::config_hash(bundle.pipeline));
    CHECK(testutil::exact_equal(back.normalization.mu, bundle.normalization.mu));
    CHECK(testutil::exact_equal(back.normalization.sigma, bundle.normalization.sigma));
    CHECK(testutil::exact_equal(back.svm->support_vectors, bundle.svm->support_vectors));
    CHECK(testutil::exact_equal(back.svm->dual_coeffs, bundle.svm->dual_coeffs));
    CHECK(back.svm->bias == bundle.svm->bias);

    const Matrix probes = testutil::gaussian_matrix(20, 3, 77);
    for (long i = 0; i < probes.rows(); ++i) {
        const Vector x = probes.row(i);
        CHECK(model::svm_decision(*back.svm, x) == model::svm_decision(*bundle.svm, x));
    }
}

TEST_CASE("a GBT bundle round-trips with identical probabilities") {
    const auto bundle = gbt_bundle();
    testutil::ScratchDir dir;
    model_io::save_model(dir.file("model.json"), bundle);
    const auto back = model_io::load_model(dir.file("model.json"));

    CHECK(back.kind == eval::ClassifierKind::Gbt);
    REQUIRE(back.gbt.has_value());
    CHECK(back.gbt->base_score == bundle.gbt->base_score);
    CHECK(back.gbt->n_features == bundle.gbt->n_features);
    REQUIRE(back.gbt->trees.size() == bundle.gbt->trees.size());
    for (std::size_t t = 0; t < back.gbt->trees.size(); ++t) {
        CHECK(back.gbt->trees[t].columns == bundle.gbt->trees[t].columns);
        CHECK(back.gbt->trees[t].nodes.size() == bundle.gbt->trees[t].nodes.size());
    }

    const Matrix probes = testutil::gaussian_matrix(20, 3, 78);
    for (long i = 0; i < probes.rows(); ++i) {
        const Vector x = probes.row(i);
        CHECK(model::gbt_predict_proba(*back.gbt, x) == model::gbt_predict_proba(*bundle.gbt, x));
    }
}

TEST_CASE("a mismatched config hash is rejected") {
    const auto bundle = svm_bundle();
    testutil::ScratchDir dir;
    model_io::save_model(dir.file("model.json"), bundle);

    std::string text = testutil::read_text(dir.file("model.json"));
    const std::string needle = "\"filter_order\": 5";
    const auto pos = text.find(needle);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, needle.size(), "\"filter_order\": 4");
    testutil::write_text(dir.file("tampered.json"), text);

    CHECK_THROWS_WITH_AS(model_io::load_model(dir.file("tampered.json")),
                         doctest::Contains("hash"), ValidationError);
}

TEST_CASE("truncated and missing files are rejected") {
    const auto bundle = svm_bundle();
    testutil::ScratchDir dir;
    model_io::save_model(dir.file("model.json"), bundle);

    const std::string text = testutil::read_text(dir.file("model.json"));
    testutil::write_text(dir.file("cut.json"), text.substr(0, text.size() / 2));
    CHECK_THROWS_AS(model_io::load_model(dir.file("cut.json")), ValidationError);
    CHECK_THROWS_AS(model_io::load_model(dir.file("absent.json")), ValidationError);
}

TEST_CASE("an unsupported format version is rejected") {
    const auto bundle = svm_bundle();
    testutil::ScratchDir dir;
    model_io::save_model(dir.file("model.json"), bundle);

    std::string text = testutil::read_text(dir.file("model.json"));
    const std::string needle = "\"format_version\": 1";
    const auto pos = text.find(needle);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, needle.size(), "\"format_version\": 99");
    testutil::write_text(dir.file("future.json"), text);

    CHECK_THROWS_WITH_AS(model_io::load_model(dir.file("future.json")),
                         doctest::Contains("version"), ValidationError);
}

TEST_CASE("saving a bundle without its payload is rejected") {
    model_io::ModelBundle bundle;
    bundle.pipeline = config::default_config();
    bundle.normalization.mu = Vector::Zero(3);
    bundle.normalization.sigma = Vector::Ones(3);
    bundle.kind = eval::ClassifierKind::Svm;
    testutil::ScratchDir dir;
    CHECK_THROWS_AS(model_io::save_model(dir.file("model.json"), bundle), ValidationError);
}
