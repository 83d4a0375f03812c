#pragma once

// Brute-force reference implementations for the tests. Pattern indices are
// found by listing all permutations with std::next_permutation and matching
// the window's rank vector, deliberately avoiding the factorial-base
// arithmetic of the library.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace naive {

inline std::int64_t factorial(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// r[i] = 1 + number of window values strictly smaller than w[i]
inline std::vector<int> rank_vector(const std::vector<double>& w) {
    std::vector<int> r(w.size(), 1);
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j)
            if (w[j] < w[i]) ++r[i];
    return r;
}

// 1-based position of perm in the lexicographic list of permutations
inline std::int64_t lexicographic_index(const std::vector<int>& perm) {
    std::vector<int> p(perm.size());
    std::iota(p.begin(), p.end(), 1);
    std::int64_t idx = 1;
    do {
        if (p == perm) return idx;
        ++idx;
    } while (std::next_permutation(p.begin(), p.end()));
    return -1;
}

inline std::int64_t pattern_index(const std::vector<double>& window) {
    return lexicographic_index(rank_vector(window));
}

inline std::vector<std::int64_t> pattern_counts(const std::vector<double>& x, int n, std::int64_t d) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(factorial(n)), 0);
    const auto T = static_cast<std::int64_t>(x.size());
    for (std::int64_t s = 0; s + (n - 1) * d < T; ++s) {
        std::vector<double> w;
        w.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) w.push_back(x[static_cast<std::size_t>(s + i * d)]);
        counts[static_cast<std::size_t>(pattern_index(w) - 1)]++;
    }
    return counts;
}

// Turning points and up-steps counted directly from the definitions.
inline std::int64_t turning_points(const std::vector<double>& x) {
    std::int64_t v = 0;
    for (std::size_t t = 1; t + 1 < x.size(); ++t) {
        const bool is_max = x[t] > x[t - 1] && x[t] > x[t + 1];
        const bool is_min = x[t] < x[t - 1] && x[t] < x[t + 1];
        if (is_max || is_min) ++v;
    }
    return v;
}

inline std::int64_t up_steps(const std::vector<double>& x) {
    std::int64_t u = 0;
    for (std::size_t t = 0; t + 1 < x.size(); ++t)
        if (x[t] < x[t + 1]) ++u;
    return u;
}

} // namespace naive
