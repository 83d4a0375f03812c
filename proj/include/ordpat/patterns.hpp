#pragma once

// Order patterns: the permutation realized by n equally spaced values of a
// series, indexed 1..n! in lexicographic order of the permutation's one-line
// notation. For n = 3 the patterns are 1=123, 2=132, 3=213, 4=231, 5=312,
// 6=321; pattern 123 means x_t < x_{t+d} < x_{t+2d}.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordpat/errors.hpp"

namespace ordpat {

inline constexpr int min_pattern_order = 2;
inline constexpr int max_pattern_order = 6;

constexpr std::int64_t factorial(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Identifies one of the n! patterns of a given order; index is 1-based.
struct PatternIndex {
    int order = 0;
    std::int64_t index = 0;
};

namespace detail {

inline void check_order(int n) {
    if (n < min_pattern_order || n > max_pattern_order)
        throw std::invalid_argument("pattern order must be in [" + std::to_string(min_pattern_order) +
                                    ", " + std::to_string(max_pattern_order) + "], got " +
                                    std::to_string(n));
}

// Lexicographic rank (0-based) of the pattern of x[0], x[step], ...,
// x[(n-1)*step] via the Lehmer code: digit i counts later values smaller
// than x[i*step], and the digits are combined in factorial base.
template <typename It>
std::int64_t encode0(It x, int n, std::int64_t step) {
    std::int64_t acc = 0;
    for (int i = 0; i < n - 1; ++i) {
        const double xi = x[static_cast<std::int64_t>(i) * step];
        std::int64_t smaller = 0;
        for (int j = i + 1; j < n; ++j) {
            const double xj = x[static_cast<std::int64_t>(j) * step];
            if (xj < xi) ++smaller;
            else if (xj == xi) throw tie_error("equal values at offsets " + std::to_string(i) + " and " +
                                               std::to_string(j) + "; jitter the series first");
        }
        acc = acc * (n - i) + smaller;
    }
    return acc;
}

} // namespace detail

// Pattern of the n values x[0], x[lag], ..., x[(n-1)*lag]. Throws tie_error
// on equal values.
template <typename It>
PatternIndex encode_pattern(It x, int order, std::int64_t lag = 1) {
    detail::check_order(order);
    if (lag < 1) throw std::invalid_argument("lag must be >= 1");
    return {order, detail::encode0(x, order, lag) + 1};
}

// One-line notation of pattern k, e.g. order 4, k=2 -> {1,2,4,3}.
inline std::vector<int> index_to_permutation(int order, std::int64_t index) {
    detail::check_order(order);
    if (index < 1 || index > factorial(order))
        throw std::invalid_argument("pattern index " + std::to_string(index) + " out of range for order " +
                                    std::to_string(order));
    std::int64_t rem = index - 1;
    std::array<std::int64_t, 8> digit{};
    for (int i = order - 1; i >= 0; --i) {
        digit[static_cast<std::size_t>(i)] = rem % (order - i);
        rem /= (order - i);
    }
    std::vector<int> avail(static_cast<std::size_t>(order));
    for (int i = 0; i < order; ++i) avail[static_cast<std::size_t>(i)] = i + 1;
    std::vector<int> perm(static_cast<std::size_t>(order));
    for (int i = 0; i < order; ++i) {
        // The Lehmer digit counts smaller later entries, which equals the
        // rank of perm[i] among the still unused symbols.
        const auto pos = static_cast<std::size_t>(digit[static_cast<std::size_t>(i)]);
        perm[static_cast<std::size_t>(i)] = avail[pos];
        avail.erase(avail.begin() + static_cast<std::ptrdiff_t>(pos));
    }
    return perm;
}

inline std::int64_t permutation_to_index(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    detail::check_order(n);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : perm) {
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)])
            throw std::invalid_argument("not a permutation of 1.." + std::to_string(n));
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
    std::int64_t acc = 0;
    for (int i = 0; i < n - 1; ++i) {
        std::int64_t smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (perm[static_cast<std::size_t>(j)] < perm[static_cast<std::size_t>(i)]) ++smaller;
        acc = acc * (n - i) + smaller;
    }
    return acc + 1;
}

// Index of the pattern obtained by flipping the series sign, i.e. replacing
// each symbol s by n+1-s. In the lexicographic numbering this is the
// reversal k -> n!+1-k.
inline std::int64_t negate_index(int order, std::int64_t index) {
    detail::check_order(order);
    const std::int64_t nf = factorial(order);
    if (index < 1 || index > nf)
        throw std::invalid_argument("pattern index out of range");
    return nf + 1 - index;
}

// Compact text form, "1234" up to order 6 (single digits suffice).
inline std::string pattern_string(int order, std::int64_t index) {
    const std::vector<int> perm = index_to_permutation(order, index);
    std::string s;
    s.reserve(perm.size());
    for (int v : perm) s.push_back(static_cast<char>('0' + v));
    return s;
}

// ---------------------------------------------------------------------------
// Frequencies
// ---------------------------------------------------------------------------

// Relative pattern frequencies of one series at one lag; counts[k-1] and
// frequencies[k-1] belong to pattern index k.
struct PatternDistribution {
    int order = 0;
    std::int64_t lag = 0;
    std::int64_t window_count = 0;  // number of windows evaluated
    std::vector<std::int64_t> counts;
    std::vector<double> frequencies;
};

// Counts every window x_s, x_{s+d}, ..., x_{s+(n-1)d} with stride one, so a
// series of length T yields T-(n-1)d windows.
inline PatternDistribution pattern_counts(const std::vector<double>& x, int order, std::int64_t lag) {
    detail::check_order(order);
    if (lag < 1) throw std::invalid_argument("lag must be >= 1");
    const auto T = static_cast<std::int64_t>(x.size());
    const std::int64_t span = static_cast<std::int64_t>(order - 1) * lag;
    if (T <= span)
        throw short_series_error("series of length " + std::to_string(T) +
                                 " has no window of order " + std::to_string(order) + " at lag " +
                                 std::to_string(lag));
    PatternDistribution dist;
    dist.order = order;
    dist.lag = lag;
    dist.window_count = T - span;
    dist.counts.assign(static_cast<std::size_t>(factorial(order)), 0);
    for (std::int64_t s = 0; s < dist.window_count; ++s)
        ++dist.counts[static_cast<std::size_t>(detail::encode0(x.data() + s, order, lag))];
    dist.frequencies.resize(dist.counts.size());
    for (std::size_t k = 0; k < dist.counts.size(); ++k)
        dist.frequencies[k] = static_cast<double>(dist.counts[k]) / static_cast<double>(dist.window_count);
    return dist;
}

inline PatternDistribution pattern_frequencies(const std::vector<double>& x, int order, std::int64_t lag) {
    return pattern_counts(x, order, lag);
}

// Average of the per-lag frequency vectors over the given lags. For processes
// whose pattern law does not depend on the lag this reduces estimation
// variance without biasing the estimate.
inline PatternDistribution lag_averaged_frequencies(const std::vector<double>& x, int order,
                                                    const std::vector<std::int64_t>& lags) {
    if (lags.empty()) throw std::invalid_argument("lag_averaged_frequencies: no lags given");
    PatternDistribution avg;
    bool first = true;
    for (std::int64_t d : lags) {
        PatternDistribution dist = pattern_counts(x, order, d);
        if (first) {
            avg = std::move(dist);
            first = false;
        } else {
            avg.window_count += dist.window_count;
            for (std::size_t k = 0; k < avg.counts.size(); ++k) {
                avg.counts[k] += dist.counts[k];
                avg.frequencies[k] += dist.frequencies[k];
            }
        }
    }
    avg.lag = 0;  // marks a lag-averaged distribution
    const auto m = static_cast<double>(lags.size());
    if (m > 1)
        for (double& f : avg.frequencies) f /= m;
    return avg;
}

} // namespace ordpat
