#pragma once

// Test-local data makers and a throwaway directory. Kept independent of the
// library's own RNG so test inputs can't drift with implementation changes.

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "eegclass/types.hpp"

namespace testutil {

inline eegclass::Matrix gaussian_matrix(long rows, long cols, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    eegclass::Matrix m(rows, cols);
    for (long r = 0; r < rows; ++r) {
        for (long c = 0; c < cols; ++c) m(r, c) = normal(rng);
    }
    return m;
}

inline eegclass::Vector gaussian_vector(long n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    eegclass::Vector v(n);
    for (long i = 0; i < n; ++i) v[i] = normal(rng);
    return v;
}

struct ScratchDir {
    std::filesystem::path path;

    ScratchDir() {
        static std::atomic<unsigned> counter{0};
        path = std::filesystem::temp_directory_path() /
               ("eegclass-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path);
    }
    ~ScratchDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    ScratchDir(const ScratchDir&) = delete;
    ScratchDir& operator=(const ScratchDir&) = delete;

    std::filesystem::path file(const std::string& name) const { return path / name; }
};

inline void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

inline std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

template <typename A, typename B>
bool exact_equal(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           (a.size() == 0 || (a.derived() - b.derived()).cwiseAbs().maxCoeff() == 0.0);
}

}  // namespace testutil
