#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

#include "eegclass/model.hpp"
#include "eegclass/synth.hpp"
#include "helpers.hpp"

using namespace eegclass;

namespace {

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

// The two separated point clouds: class -1 near x=0, class +1 near x=4.
struct Clouds {
    Matrix X;
    std::vector<int> y;

    Clouds() : X(4, 2), y{-1, -1, +1, +1} {
        X << 0, 0, 0, 1, 4, 0, 4, 1;
    }
};

struct Xor {
    Matrix X;
    std::vector<int> y;

    Xor() : X(4, 2), y{+1, +1, -1, -1} {
        X << 0, 0, 1, 1, 0, 1, 1, 0;
    }
};

// Random problem with both classes guaranteed.
struct RandomProblem {
    Matrix X;
    std::vector<int> y;

    RandomProblem(long n, long d, unsigned seed) : X(testutil::gaussian_matrix(n, d, seed)) {
        std::mt19937_64 rng(seed + 1);
        y.resize(static_cast<std::size_t>(n));
        for (long i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = i < n / 2 ? +1 : -1;
        std::shuffle(y.begin(), y.end(), rng);
    }
};

int train_accuracy_count(const model::SvmModel& m, const Matrix& X, const std::vector<int>& y) {
    int correct = 0;
    for (long i = 0; i < X.rows(); ++i) {
        if (model::svm_predict(m, X.row(i)) == y[static_cast<std::size_t>(i)]) ++correct;
    }
    return correct;
}

}  // namespace

TEST_CASE("kernel_eval closed forms") {
    model::KernelSpec linear{model::KernelKind::Linear};
    CHECK(model::kernel_eval(linear, vec2(1, 2), vec2(3, 4)) == 11.0);

    model::KernelSpec rbf{model::KernelKind::Rbf, false, 0.5};
    CHECK(model::kernel_eval(rbf, vec2(1.5, -2), vec2(1.5, -2)) == 1.0);
    CHECK(model::kernel_eval(rbf, vec2(0, 0), vec2(2, 0)) ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-12));

    model::KernelSpec poly{model::KernelKind::Poly, false, 2.0, 2, 1.0};
    CHECK(model::kernel_eval(poly, vec2(1, 2), vec2(3, 4)) == doctest::Approx(529.0));  // (2*11+1)^2

    model::KernelSpec sig{model::KernelKind::Sigmoid, false, 0.1, 3, -0.5};
    CHECK(model::kernel_eval(sig, vec2(1, 2), vec2(3, 4)) ==
          doctest::Approx(std::tanh(0.6)).epsilon(1e-12));

    CHECK_THROWS_AS(model::kernel_eval(linear, vec2(1, 2), Vector::Ones(3)), ValidationError);
}

TEST_CASE("gamma_scale is the reciprocal of d times the pooled variance") {
    Matrix two(2, 1);
    two << 0, 2;
    CHECK(model::gamma_scale(two) == doctest::Approx(1.0).epsilon(1e-12));

    const Matrix X = testutil::gaussian_matrix(40, 7, 3);
    const double mean = X.mean();
    const double var = (X.array() - mean).square().sum() / static_cast<double>(X.size());
    CHECK(model::gamma_scale(X) == doctest::Approx(1.0 / (7.0 * var)).epsilon(1e-12));

    // Standardized matrix: pooled variance 1, gamma = 1/d.
    Matrix z = testutil::gaussian_matrix(60, 190, 5);
    z.array() -= z.mean();
    z.array() /= std::sqrt((z.array() * z.array()).sum() / static_cast<double>(z.size()));
    CHECK(model::gamma_scale(z) == doctest::Approx(1.0 / 190.0).epsilon(1e-9));

    CHECK_THROWS_AS(model::gamma_scale(Matrix::Ones(4, 2)), ValidationError);  // zero variance
}

TEST_CASE("linear SVM separates the two clouds at x near 2") {
    Clouds data;
    model::KernelSpec linear{model::KernelKind::Linear};
    model::SvmFitReport report;
    const auto m = model::svm_fit(data.X, data.y, linear, {}, &report);

    CHECK(train_accuracy_count(m, data.X, data.y) == 4);
    // Midpoint-threshold rule: sign flips across x = 2.
    for (double yy : {-1.0, 0.5, 2.0}) {
        CHECK(model::svm_predict(m, vec2(1.0, yy)) == -1);
        CHECK(model::svm_predict(m, vec2(3.0, yy)) == +1);
        CHECK(model::svm_predict(m, vec2(0.5, yy)) == -1);
        CHECK(model::svm_predict(m, vec2(3.5, yy)) == +1);
    }
    // The decision surface crosses near x = 2.
    CHECK(std::abs(model::svm_decision(m, vec2(2.0, 0.5))) < 0.05);

    CHECK(report.kkt_violation <= 1e-3);
    for (long i = 0; i < report.alpha.size(); ++i) {
        CHECK(report.alpha[i] >= 0.0);
        CHECK(report.alpha[i] <= 1.0);
    }
}

TEST_CASE("rbf solves XOR where linear cannot") {
    Xor data;
    model::KernelSpec rbf{model::KernelKind::Rbf, false, 1.0};
    model::SvmFitOptions opts;
    opts.C = 10.0;
    const auto m = model::svm_fit(data.X, data.y, rbf, opts);
    CHECK(train_accuracy_count(m, data.X, data.y) == 4);

    model::KernelSpec linear{model::KernelKind::Linear};
    const auto lin = model::svm_fit(data.X, data.y, linear, opts);
    CHECK(train_accuracy_count(lin, data.X, data.y) <= 3);
}

TEST_CASE("fitted models satisfy the dual constraints") {
    RandomProblem data(24, 3, 101);
    for (auto kind : {model::KernelKind::Linear, model::KernelKind::Rbf}) {
        model::KernelSpec spec{kind};
        model::SvmFitReport report;
        const auto m = model::svm_fit(data.X, data.y, spec, {}, &report);

        double alpha_dot_y = 0.0;
        for (long i = 0; i < report.alpha.size(); ++i) {
            alpha_dot_y += report.alpha[i] * data.y[static_cast<std::size_t>(i)];
            CHECK(report.alpha[i] >= 0.0);
            CHECK(report.alpha[i] <= 1.0);
        }
        CHECK(std::abs(alpha_dot_y) <= 1e-8);

        // Stored vectors are exactly the alpha > 0 rows.
        long stored = 0;
        for (long i = 0; i < report.alpha.size(); ++i) {
            if (report.alpha[i] > 0.0) ++stored;
        }
        CHECK(m.support_vectors.rows() == stored);
        for (long s = 0; s < m.dual_coeffs.size(); ++s) CHECK(m.dual_coeffs[s] != 0.0);
    }
}

TEST_CASE("SMO reaches the QP oracle's objective on small problems") {
    const std::vector<model::KernelSpec> kernels = {
        {model::KernelKind::Linear},
        {model::KernelKind::Rbf, false, 0.5},
        {model::KernelKind::Poly, false, 0.5, 3, 1.0},
        {model::KernelKind::Sigmoid, false, 0.05, 3, 0.0},
    };
    for (unsigned seed = 301; seed < 303; ++seed) {
        RandomProblem data(20, 4, seed);
        for (const auto& spec : kernels) {
            model::SvmFitOptions opts;
            opts.tol = 1e-5;
            model::SvmFitReport report;
            model::svm_fit(data.X, data.y, spec, opts, &report);
            const auto oracle = synth::oracle_qp_svm(data.X, data.y, spec, opts.C);
            CHECK(std::abs(report.objective - oracle.objective) <= 1e-4);
            CHECK(report.kkt_violation <= 1e-3);
        }
    }
}

TEST_CASE("row order does not change the solution") {
    RandomProblem data(30, 4, 77);
    model::KernelSpec rbf{model::KernelKind::Rbf, false, 0.3};

    std::vector<long> perm(30);
    for (long i = 0; i < 30; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::mt19937_64 rng(78);
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix Xp(30, 4);
    std::vector<int> yp(30);
    for (long i = 0; i < 30; ++i) {
        Xp.row(i) = data.X.row(perm[static_cast<std::size_t>(i)]);
        yp[static_cast<std::size_t>(i)] = data.y[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    }

    model::SvmFitOptions opts;
    opts.tol = 1e-5;
    model::SvmFitReport r1, r2;
    const auto m1 = model::svm_fit(data.X, data.y, rbf, opts, &r1);
    const auto m2 = model::svm_fit(Xp, yp, rbf, opts, &r2);
    CHECK(r1.objective == doctest::Approx(r2.objective).epsilon(1e-4));
    // Strictly PD kernel: the decision function at the optimum is unique.
    for (int g = 0; g < 10; ++g) {
        const Vector x = testutil::gaussian_vector(4, 200 + static_cast<unsigned>(g));
        CHECK(std::abs(model::svm_decision(m1, x) - model::svm_decision(m2, x)) < 5e-3);
    }
}

TEST_CASE("svm_predict breaks score ties toward +1") {
    model::SvmModel m;
    m.support_vectors = Matrix(2, 1);
    m.support_vectors << -1, 1;
    m.dual_coeffs = vec2(-0.5, 0.5);
    m.bias = 0.0;
    m.kernel = model::KernelSpec{model::KernelKind::Linear};
    CHECK(model::svm_decision(m, Vector::Zero(1)) == 0.0);
    CHECK(model::svm_predict(m, Vector::Zero(1)) == +1);

    CHECK_THROWS_AS(model::svm_predict(m, Vector::Zero(3)), ValidationError);
}

TEST_CASE("svm_fit validates its inputs") {
    Clouds data;
    model::KernelSpec linear{model::KernelKind::Linear};

    std::vector<int> one_class = {1, 1, 1, 1};
    CHECK_THROWS_AS(model::svm_fit(data.X, one_class, linear), ValidationError);

    std::vector<int> bad_label = {1, -1, 1, 2};
    CHECK_THROWS_AS(model::svm_fit(data.X, bad_label, linear), ValidationError);

    model::SvmFitOptions bad_c;
    bad_c.C = 0.0;
    CHECK_THROWS_AS(model::svm_fit(data.X, data.y, linear, bad_c), ValidationError);

    std::vector<int> short_y = {1, -1};
    CHECK_THROWS_AS(model::svm_fit(data.X, short_y, linear), ValidationError);
}

TEST_CASE("rbf gram matrices are positive semidefinite") {
    const Matrix X = testutil::gaussian_matrix(25, 6, 91);
    model::KernelSpec rbf{model::KernelKind::Rbf, false, 0.7};
    Matrix K(25, 25);
    for (long i = 0; i < 25; ++i) {
        for (long j = 0; j < 25; ++j) K(i, j) = model::kernel_eval(rbf, X.row(i), X.row(j));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(K, Eigen::EigenvaluesOnly);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-8);
}
