#pragma once

// Seeded randomness kept free of std::*_distribution so that identical seeds
// give identical streams across standard libraries.

#include <cstdint>
#include <vector>

namespace eegclass::detail {

// splitmix64; also used to derive independent stream seeds.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n) by rejection; n > 0.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    // Uniform in [0, 1).
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller (one draw per call, no caching so the
    // stream position stays easy to reason about).
    double next_gaussian();

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[next_below(i)]);
        }
    }

    // First m elements of a Fisher-Yates pass over [0, n), sorted ascending.
    std::vector<int> sample_indices(int n, int m);
};

}  // namespace eegclass::detail
