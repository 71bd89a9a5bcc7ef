#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "eegclass/dsp.hpp"
#include "helpers.hpp"

using namespace eegclass;

namespace {

constexpr double kPi = std::numbers::pi;

double db(double magnitude) { return 20.0 * std::log10(magnitude); }

Vector sine(double f_hz, double fs, long n) {
    Vector x(n);
    for (long t = 0; t < n; ++t) x[t] = std::sin(2.0 * kPi * f_hz * t / fs);
    return x;
}

double rms(const Vector& x) { return std::sqrt(x.squaredNorm() / static_cast<double>(x.size())); }

// Complex amplitude of the f_hz component; exact when f_hz*n/fs is an integer.
std::complex<double> tone_projection(const Vector& x, double f_hz, double fs) {
    std::complex<double> acc(0.0, 0.0);
    for (long t = 0; t < x.size(); ++t) {
        const double angle = -2.0 * kPi * f_hz * t / fs;
        acc += x[t] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return acc * (2.0 / static_cast<double>(x.size()));
}

}  // namespace

TEST_CASE("order-5 broadband design is stable with a flat midband") {
    const auto spec = dsp::design_bandpass(5, dsp::default_broadband(), 128.0);
    CHECK(spec.sections.size() == 5);  // 2*order poles in second-order sections
    CHECK(dsp::max_pole_magnitude(spec) < 1.0);

    const double mid_db = db(std::abs(dsp::frequency_response(spec, 25.0)));
    CHECK(std::abs(mid_db) < 0.1);
    for (double edge : {0.5, 50.0}) {
        const double edge_db = db(std::abs(dsp::frequency_response(spec, edge)));
        CHECK(edge_db > -3.5);
        CHECK(edge_db < -2.5);
    }
}

TEST_CASE("order-1 alpha band hits -3 dB at both edges") {
    const dsp::BandSpec alpha{dsp::Band::Alpha, 8.0, 13.0};
    const auto spec = dsp::design_bandpass(1, alpha, 128.0);
    for (double edge : {8.0, 13.0}) {
        const double edge_db = db(std::abs(dsp::frequency_response(spec, edge)));
        CHECK(edge_db > -3.2);
        CHECK(edge_db < -2.8);
    }
}

TEST_CASE("band edges at or above Nyquist are rejected") {
    CHECK_THROWS_AS(dsp::design_bandpass(5, dsp::BandSpec{dsp::Band::Gamma, 30.0, 70.0}, 128.0),
                    ValidationError);
    CHECK_THROWS_AS(dsp::design_bandpass(5, dsp::BandSpec{dsp::Band::Gamma, 30.0, 30.0}, 128.0),
                    ValidationError);
    CHECK_THROWS_AS(dsp::design_bandpass(0, dsp::default_broadband(), 128.0), ValidationError);
}

TEST_CASE("random valid designs are stable for orders 1 through 8") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 60; ++trial) {
        const int order = 1 + static_cast<int>(rng() % 8);
        const double lo = 0.3 + 40.0 * unit(rng);
        const double hi = lo + 1.0 + (60.0 - lo) * unit(rng);
        if (hi >= 63.5) continue;
        const auto spec =
            dsp::design_bandpass(order, dsp::BandSpec{dsp::Band::Broadband, lo, hi}, 128.0);
        CHECK(dsp::max_pole_magnitude(spec) < 1.0);
    }
}

TEST_CASE("bandpass removes DC") {
    const auto spec = dsp::design_bandpass(5, dsp::default_broadband(), 128.0);
    const Vector x = Vector::Ones(2000);
    const Vector y = dsp::apply_filter(spec, x, dsp::FilterMode::Causal);
    // Steady state after the transient decays.
    CHECK(y.tail(200).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(std::abs(dsp::frequency_response(spec, 0.0)) < 1e-12);
}

TEST_CASE("zero-phase alpha filtering passes 10 Hz with no phase shift") {
    const dsp::BandSpec alpha{dsp::Band::Alpha, 8.0, 13.0};
    const auto spec = dsp::design_bandpass(5, alpha, 128.0);
    const Vector x = sine(10.0, 128.0, 1280);  // 100 full cycles
    const Vector y = dsp::apply_filter(spec, x, dsp::FilterMode::ZeroPhase);

    const auto cx = tone_projection(x, 10.0, 128.0);
    const auto cy = tone_projection(y, 10.0, 128.0);
    const auto gain = cy / cx;
    CHECK(std::abs(gain) > 0.9);
    CHECK(std::abs(gain) <= 1.0);
    CHECK(std::abs(std::arg(gain)) < 0.01);
    // Two passes realize the squared magnitude of the designed cascade.
    const double predicted = std::norm(dsp::frequency_response(spec, 10.0));
    CHECK(std::abs(gain) == doctest::Approx(predicted).epsilon(0.01));
}

TEST_CASE("45 Hz barely leaks through the alpha band") {
    const dsp::BandSpec alpha{dsp::Band::Alpha, 8.0, 13.0};
    const auto spec = dsp::design_bandpass(5, alpha, 128.0);
    const Vector x = sine(45.0, 128.0, 1280);
    const Vector y = dsp::apply_filter(spec, x, dsp::FilterMode::ZeroPhase);
    CHECK(rms(y) < 0.01 * rms(x));
}

TEST_CASE("decompose returns one same-shape matrix per band") {
    const Matrix x = testutil::gaussian_matrix(1280, 19, 5);
    const auto parts = dsp::decompose(x, 128.0, dsp::default_bands());
    REQUIRE(parts.size() == 5);
    for (const auto& part : parts) {
        CHECK(part.rows() == 1280);
        CHECK(part.cols() == 19);
    }

    const auto zero_parts = dsp::decompose(Matrix::Zero(1280, 3), 128.0, dsp::default_bands());
    for (const auto& part : zero_parts) CHECK(part.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("band powers of broadband-filtered white noise tile the broadband power") {
    const auto broad = dsp::design_bandpass(5, dsp::default_broadband(), 128.0);
    const Matrix noise = testutil::gaussian_matrix(12800, 1, 17);
    const Matrix cleaned = dsp::apply_filter(broad, noise, dsp::FilterMode::ZeroPhase);

    const auto parts = dsp::decompose(cleaned, 128.0, dsp::default_bands());
    double band_sum = 0.0;
    for (const auto& part : parts) band_sum += part.squaredNorm();
    const double broadband_power = cleaned.squaredNorm();
    CHECK(band_sum == doctest::Approx(broadband_power).epsilon(0.15));
}

TEST_CASE("apply_filter is linear") {
    const auto spec = dsp::design_bandpass(5, dsp::BandSpec{dsp::Band::Beta, 13.0, 30.0}, 128.0);
    const Vector x = testutil::gaussian_vector(600, 31);
    const Vector y = testutil::gaussian_vector(600, 32);
    const double a = 2.75, b = -0.4;
    for (auto mode : {dsp::FilterMode::Causal, dsp::FilterMode::ZeroPhase}) {
        const Vector lhs = dsp::apply_filter(spec, Vector(a * x + b * y), mode);
        const Vector rhs = a * dsp::apply_filter(spec, x, mode) + b * dsp::apply_filter(spec, y, mode);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9 * rhs.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("zero-phase output is aligned with the input") {
    const dsp::BandSpec alpha{dsp::Band::Alpha, 8.0, 13.0};
    const auto spec = dsp::design_bandpass(5, alpha, 128.0);
    // Band-limited input: alpha-filtered noise.
    const Vector x = dsp::apply_filter(spec, testutil::gaussian_vector(2000, 8),
                                       dsp::FilterMode::ZeroPhase);
    const Vector y = dsp::apply_filter(spec, x, dsp::FilterMode::ZeroPhase);

    double best = -1.0;
    int best_lag = -99;
    for (int lag = -20; lag <= 20; ++lag) {
        double acc = 0.0;
        for (long t = 100; t < 1900; ++t) acc += x[t] * y[t + lag];
        if (acc > best) {
            best = acc;
            best_lag = lag;
        }
    }
    CHECK(best_lag == 0);
}

TEST_CASE("stopband magnitude decreases monotonically past the transition") {
    const dsp::BandSpec alpha{dsp::Band::Alpha, 8.0, 13.0};
    const auto spec = dsp::design_bandpass(5, alpha, 128.0);
    double prev = std::abs(dsp::frequency_response(spec, 20.0));
    for (double f = 21.0; f <= 60.0; f += 1.0) {
        const double cur = std::abs(dsp::frequency_response(spec, f));
        CHECK(cur < prev);
        prev = cur;
    }
    prev = std::abs(dsp::frequency_response(spec, 5.0));
    for (double f = 4.5; f >= 0.5; f -= 0.5) {
        const double cur = std::abs(dsp::frequency_response(spec, f));
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("apply_filter validates its input") {
    const auto spec = dsp::design_bandpass(5, dsp::default_broadband(), 128.0);
    Vector bad = Vector::Ones(100);
    bad[50] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(dsp::apply_filter(spec, bad, dsp::FilterMode::Causal), ValidationError);
    // Too short for the transient-settling precondition.
    CHECK_THROWS_AS(dsp::apply_filter(spec, Vector(Vector::Ones(10)), dsp::FilterMode::ZeroPhase),
                    ValidationError);
}
