#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eegclass::detail {

double SplitMix64::next_gaussian() {
    double u1 = next_unit();
    while (u1 <= 0.0) u1 = next_unit();
    const double u2 = next_unit();
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

std::vector<int> SplitMix64::sample_indices(int n, int m) {
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < m; ++i) {
        const auto j = i + static_cast<int>(next_below(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(static_cast<std::size_t>(m));
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace eegclass::detail
