#pragma once

// Scalar order statistics built from pattern frequencies of order 2 and 3:
// up-down balance, turning rate, persistence, permutation entropy and the
// conditional entropy of patterns given the first step.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ordpat/errors.hpp"
#include "ordpat/patterns.hpp"

namespace ordpat {

// Number of strict ascents x_s < x_{s+d} among the T-d pairs at lag d.
inline std::int64_t up_step_count(const std::vector<double>& x, std::int64_t lag = 1) {
    if (lag < 1) throw std::invalid_argument("lag must be >= 1");
    const auto T = static_cast<std::int64_t>(x.size());
    if (T <= lag) throw short_series_error("series too short for up_step_count at lag " + std::to_string(lag));
    std::int64_t ups = 0;
    for (std::int64_t s = 0; s + lag < T; ++s) {
        if (x[static_cast<std::size_t>(s)] == x[static_cast<std::size_t>(s + lag)])
            throw tie_error("equal values at positions " + std::to_string(s + 1) + " and " +
                            std::to_string(s + lag + 1));
        if (x[static_cast<std::size_t>(s)] < x[static_cast<std::size_t>(s + lag)]) ++ups;
    }
    return ups;
}

// Number of local extrema among the inner points of the lag-d subsampled
// series: position s is a turning point when the increments on both sides
// have opposite signs.
inline std::int64_t turning_point_count(const std::vector<double>& x, std::int64_t lag = 1) {
    if (lag < 1) throw std::invalid_argument("lag must be >= 1");
    const auto T = static_cast<std::int64_t>(x.size());
    if (T <= 2 * lag)
        throw short_series_error("series too short for turning_point_count at lag " + std::to_string(lag));
    std::int64_t turns = 0;
    for (std::int64_t s = 0; s + 2 * lag < T; ++s) {
        const double a = x[static_cast<std::size_t>(s)];
        const double b = x[static_cast<std::size_t>(s + lag)];
        const double c = x[static_cast<std::size_t>(s + 2 * lag)];
        if (a == b || b == c)
            throw tie_error("equal values near position " + std::to_string(s + 1));
        const bool up1 = a < b;
        const bool up2 = b < c;
        if (up1 != up2) ++turns;
    }
    return turns;
}

// beta = p(12) - p(21) = 2 p(12) - 1. Zero for any process with time-reversal
// or up-down symmetry, positive when ascents prevail.
inline double up_down_balance(const std::vector<double>& x, std::int64_t lag = 1) {
    const auto T = static_cast<std::int64_t>(x.size());
    const std::int64_t pairs = T - lag;
    const double p12 = static_cast<double>(up_step_count(x, lag)) / static_cast<double>(pairs);
    return 2.0 * p12 - 1.0;
}

// alpha = p(132)+p(213)+p(231)+p(312) = 1 - p(123) - p(321): the probability
// that three consecutive values form a local extremum. 2/3 for white noise,
// 1/2 for Brownian motion.
inline double turning_rate(const std::vector<double>& x, std::int64_t lag = 1) {
    const auto T = static_cast<std::int64_t>(x.size());
    const std::int64_t triples = T - 2 * lag;
    return static_cast<double>(turning_point_count(x, lag)) / static_cast<double>(triples);
}

// tau = 2/3 - alpha: zero for white noise, positive when the series keeps
// its direction more often than chance.
inline double persistence(const std::vector<double>& x, std::int64_t lag = 1) {
    return 2.0 / 3.0 - turning_rate(x, lag);
}

// Shannon entropy of a pattern distribution in nats, with 0 log 0 := 0.
inline double permutation_entropy(const PatternDistribution& dist) {
    double h = 0.0;
    for (double p : dist.frequencies)
        if (p > 0.0) h -= p * std::log(p);
    return h;
}

template <typename Series>
double permutation_entropy(const Series& x, int order, std::int64_t lag) {
    return permutation_entropy(pattern_frequencies(x, order, lag));
}

// Entropy of the order-3 pattern given the direction of the first step.
// With p = p(12), p1 = p(123), p2 = p(132)+p(231), p3 = p(213)+p(312),
// p4 = p(321) this is sum_i -p_i ln p_i + p ln p + (1-p) ln(1-p), since
// patterns 1..3 start upward (prob. p) and 4..6 start downward. Attains
// ln 2 for Brownian motion and about 0.6365 for white noise.
inline double conditional_entropy(const PatternDistribution& dist3) {
    if (dist3.order != 3)
        throw std::invalid_argument("conditional_entropy expects an order-3 distribution");
    const auto& f = dist3.frequencies;
    const double p = f[0] + f[1] + f[3];  // 123, 132, 231 start with an up step
    const double part[4] = {f[0], f[1] + f[3], f[2] + f[4], f[5]};
    double h = 0.0;
    for (double pi : part)
        if (pi > 0.0) h -= pi * std::log(pi);
    if (p > 0.0) h += p * std::log(p);
    if (p < 1.0) h += (1.0 - p) * std::log(1.0 - p);
    return h;
}

template <typename Series>
double conditional_entropy(const Series& x, std::int64_t lag) {
    return conditional_entropy(pattern_frequencies(x, 3, lag));
}

// ---------------------------------------------------------------------------
// Deviation from the Brownian null
// ---------------------------------------------------------------------------

// Under Brownian motion at lag 1, alpha has mean 1/2 and variance
// 1/(4(T-2)), beta has mean 0 and variance 1/(T-1); both are asymptotically
// normal, so these are standard z-scores.
inline double z_score_turning_rate(double alpha, std::int64_t T) {
    if (T < 3) throw std::invalid_argument("z_score_turning_rate needs T >= 3");
    return (alpha - 0.5) * 2.0 * std::sqrt(static_cast<double>(T - 2));
}

inline double z_score_up_down_balance(double beta, std::int64_t T) {
    if (T < 2) throw std::invalid_argument("z_score_up_down_balance needs T >= 2");
    return beta * std::sqrt(static_cast<double>(T - 1));
}

// ---------------------------------------------------------------------------
// Summary over several lags
// ---------------------------------------------------------------------------

struct OrderSummary {
    std::int64_t length = 0;
    std::vector<std::int64_t> lags;
    std::vector<double> turning_rate_by_lag;
    std::vector<double> balance_by_lag;
    std::vector<double> entropy_by_lag;       // order-3 permutation entropy
    std::vector<double> cond_entropy_by_lag;
    double mean_turning_rate = 0.0;  // averaged over the lags
    double mean_balance = 0.0;
    double z_turning_rate = 0.0;  // from lag 1 only, Brownian null
    double z_balance = 0.0;
};

inline OrderSummary summarize(const std::vector<double>& x, const std::vector<std::int64_t>& lags = {1}) {
    if (lags.empty()) throw std::invalid_argument("summarize: no lags given");
    OrderSummary s;
    s.length = static_cast<std::int64_t>(x.size());
    s.lags = lags;
    for (std::int64_t d : lags) {
        const PatternDistribution dist3 = pattern_frequencies(x, 3, d);
        s.turning_rate_by_lag.push_back(1.0 - dist3.frequencies[0] - dist3.frequencies[5]);
        s.balance_by_lag.push_back(up_down_balance(x, d));
        s.entropy_by_lag.push_back(permutation_entropy(dist3));
        s.cond_entropy_by_lag.push_back(conditional_entropy(dist3));
        s.mean_turning_rate += s.turning_rate_by_lag.back();
        s.mean_balance += s.balance_by_lag.back();
    }
    const auto m = static_cast<double>(lags.size());
    s.mean_turning_rate /= m;
    s.mean_balance /= m;
    // The variance formulas behind the z-scores hold for lag 1; quote those.
    const double a1 = turning_rate(x, 1);
    const double b1 = up_down_balance(x, 1);
    s.z_turning_rate = z_score_turning_rate(a1, s.length);
    s.z_balance = z_score_up_down_balance(b1, s.length);
    return s;
}

} // namespace ordpat
