#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eegclass/features.hpp"
#include "helpers.hpp"

using namespace eegclass;

namespace {

constexpr double kPi = std::numbers::pi;

// Epoch with tiny white noise everywhere plus a 10 Hz tone on one channel.
// The noise floor keeps every band's entropy defined.
ingest::Epoch tone_epoch(int tone_channel) {
    ingest::Epoch epoch;
    epoch.subject_id = "s01";
    epoch.label = ClassLabel::Adhd;
    epoch.data = 1e-8 * testutil::gaussian_matrix(1280, kNumChannels, 41);
    for (long t = 0; t < 1280; ++t) {
        epoch.data(t, tone_channel) += std::sin(2.0 * kPi * 10.0 * t / 128.0);
    }
    return epoch;
}

}  // namespace

TEST_CASE("feature layout is channel-major, band-minor, power then entropy") {
    CHECK(features::kNumFeatures == 190);
    CHECK(features::feature_index(0, 0, 0) == 0);
    CHECK(features::feature_index(0, 0, 1) == 1);
    CHECK(features::feature_index(0, 1, 0) == 2);
    CHECK(features::feature_index(1, 0, 0) == 10);
    CHECK(features::feature_index(18, 4, 1) == 189);
    CHECK(features::feature_name(0) == "Fz.delta.power");
    CHECK(features::feature_name(5) == "Fz.alpha.entropy");
    CHECK(features::feature_name(189) == "O2.gamma.entropy");
}

TEST_CASE("a 10 Hz tone shows up as the alpha power of its channel") {
    const auto epoch = tone_epoch(0);
    const auto row = features::extract(epoch, features::ExtractionConfig{});
    REQUIRE(row.values.size() == 190);
    CHECK(row.subject_id == "s01");
    CHECK(row.label == ClassLabel::Adhd);

    const double alpha_power = row.values[features::feature_index(0, 2, 0)];
    CHECK(alpha_power > 0.1);
    for (int band = 0; band < 5; ++band) {
        if (band == 2) continue;
        CHECK(alpha_power > row.values[features::feature_index(0, band, 0)]);
    }
    for (int ch = 1; ch < kNumChannels; ++ch) {
        for (int band = 0; band < 5; ++band) {
            CHECK(row.values[features::feature_index(ch, band, 0)] < 1e-12);
        }
    }
}

TEST_CASE("first feature equals the standalone delta-band power of Fz") {
    const auto epoch = tone_epoch(3);
    const features::ExtractionConfig cfg;
    const auto row = features::extract(epoch, cfg);

    const auto delta = dsp::design_bandpass(cfg.filter_order, cfg.bands[0], cfg.welch.sample_rate_hz);
    const Vector fz = dsp::apply_filter(delta, Vector(epoch.data.col(0)), cfg.filter_mode);
    const auto psd = spectral::welch_psd(fz, cfg.welch);
    CHECK(row.values[0] == spectral::band_power(psd, cfg.bands[0]));
}

TEST_CASE("an all-zero epoch is rejected naming the subject") {
    ingest::Epoch epoch;
    epoch.subject_id = "flatline";
    epoch.index = 4;
    epoch.data = Matrix::Zero(1280, kNumChannels);
    try {
        features::extract(epoch, features::ExtractionConfig{});
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("flatline") != std::string::npos);
    }
}

TEST_CASE("extract is deterministic") {
    const auto epoch = tone_epoch(2);
    const auto a = features::extract(epoch, features::ExtractionConfig{});
    const auto b = features::extract(epoch, features::ExtractionConfig{});
    CHECK(testutil::exact_equal(a.values, b.values));
}

TEST_CASE("broadband psd source produces the same layout with different values") {
    const auto epoch = tone_epoch(0);
    features::ExtractionConfig sliced;
    sliced.psd_source = features::PsdSource::Broadband;
    const auto row = features::extract(epoch, sliced);
    REQUIRE(row.values.size() == 190);
    const double alpha_power = row.values[features::feature_index(0, 2, 0)];
    CHECK(alpha_power > 0.1);  // the tone lands in alpha either way
}

TEST_CASE("fit_normalizer computes per-column mean and population std") {
    Matrix rows(2, 2);
    rows << 1, 3, 3, 5;
    const auto stats = features::fit_normalizer(rows);
    CHECK(stats.mu[0] == 2.0);
    CHECK(stats.mu[1] == 4.0);
    CHECK(stats.sigma[0] == 1.0);
    CHECK(stats.sigma[1] == 1.0);

    CHECK_THROWS_AS(features::fit_normalizer(Matrix::Zero(1, 2)), ValidationError);
}

TEST_CASE("constant columns get sigma 0 and transform to 0") {
    Matrix rows(3, 2);
    rows << 7, 1, 7, 2, 7, 3;
    const auto stats = features::fit_normalizer(rows);
    CHECK(stats.sigma[0] == 0.0);
    const Matrix z = features::transform(rows, stats);
    CHECK(z.col(0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("transform standardizes the fitting matrix") {
    const Matrix rows = testutil::gaussian_matrix(100, 190, 47);
    const auto stats = features::fit_normalizer(rows);
    const Matrix z = features::transform(rows, stats);
    for (long c = 0; c < z.cols(); ++c) {
        const double mean = z.col(c).mean();
        const double var = z.col(c).squaredNorm() / 100.0 - mean * mean;
        CHECK(std::abs(mean) < 1e-10);
        CHECK(std::abs(std::sqrt(var) - 1.0) < 1e-10);
    }
}

TEST_CASE("train-fitted stats apply to held-out rows by the z formula") {
    const Matrix train = testutil::gaussian_matrix(50, 8, 53);
    const auto stats = features::fit_normalizer(train);
    const Vector held = testutil::gaussian_vector(8, 54);
    const Vector z = features::transform(held, stats);
    for (long c = 0; c < 5; ++c) {
        CHECK(z[c] == doctest::Approx((held[c] - stats.mu[c]) / stats.sigma[c]).epsilon(1e-12));
    }

    // x = mu maps to 0; x = mu + sigma maps to 1.
    CHECK(features::transform(Vector(stats.mu), stats).cwiseAbs().maxCoeff() == 0.0);
    const Vector ones = features::transform(Vector(stats.mu + stats.sigma), stats);
    CHECK((ones - Vector::Ones(8)).cwiseAbs().maxCoeff() < 1e-12);

    Vector wrong(5);
    CHECK_THROWS_AS(features::transform(wrong, stats), ValidationError);
}

TEST_CASE("aggregate_by_subject averages each subject's epochs") {
    features::FeatureMatrix rows;
    rows.subject_ids = {"a", "a", "b", "a", "b"};
    rows.labels = {ClassLabel::Adhd, ClassLabel::Adhd, ClassLabel::Control, ClassLabel::Adhd,
                   ClassLabel::Control};
    rows.values = Matrix(5, 2);
    rows.values << 1, 10, 2, 20, 100, 7, 3, 30, 200, 9;

    const auto agg = features::aggregate_by_subject(rows);
    REQUIRE(agg.rows() == 2);
    CHECK(agg.subject_ids == std::vector<std::string>{"a", "b"});
    CHECK(agg.labels[0] == ClassLabel::Adhd);
    CHECK(agg.labels[1] == ClassLabel::Control);
    CHECK(agg.values(0, 0) == doctest::Approx(2.0));
    CHECK(agg.values(0, 1) == doctest::Approx(20.0));
    CHECK(agg.values(1, 0) == doctest::Approx(150.0));
    CHECK(agg.values(1, 1) == doctest::Approx(8.0));
}

TEST_CASE("features CSV round-trips bit-exactly") {
    features::FeatureMatrix rows;
    rows.subject_ids = {"s1", "s2", "s3"};
    rows.labels = {ClassLabel::Adhd, ClassLabel::Control, ClassLabel::Adhd};
    rows.values = testutil::gaussian_matrix(3, 190, 59);
    rows.values(1, 7) = 1.0 / 3.0;  // not exactly representable in decimal

    testutil::ScratchDir dir;
    features::write_features_csv(dir.file("f.csv"), rows);
    const auto back = features::read_features_csv(dir.file("f.csv"));
    CHECK(back.subject_ids == rows.subject_ids);
    CHECK(back.labels == rows.labels);
    CHECK(testutil::exact_equal(back.values, rows.values));

    const std::string text = testutil::read_text(dir.file("f.csv"));
    CHECK(text.substr(0, 22) == "subject_id,label,f000,");
}

TEST_CASE("features CSV reader rejects malformed files") {
    testutil::ScratchDir dir;
    testutil::write_text(dir.file("bad_header.csv"), "id,label,f000\na,ADHD,1\n");
    CHECK_THROWS_AS(features::read_features_csv(dir.file("bad_header.csv")), ValidationError);

    features::FeatureMatrix rows;
    rows.subject_ids = {"s1", "s2"};
    rows.labels = {ClassLabel::Adhd, ClassLabel::Control};
    rows.values = testutil::gaussian_matrix(2, 190, 61);
    features::write_features_csv(dir.file("ok.csv"), rows);
    std::string text = testutil::read_text(dir.file("ok.csv"));
    text.resize(text.size() - 40);  // truncate the last row mid-number
    testutil::write_text(dir.file("truncated.csv"), text);
    CHECK_THROWS_AS(features::read_features_csv(dir.file("truncated.csv")), ValidationError);
}
