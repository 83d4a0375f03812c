#pragma once

// Hypothesis tests: Monte Carlo goodness-of-fit of a pattern distribution
// against Brownian motion, coin-toss z-tests for turning points and up-steps
// under a Brownian null, the Bienayme test under an i.i.d. null, the
// variance-vs-lag experiment and small exhaustive permutation counts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ordpat/detail/parallel.hpp"
#include "ordpat/models.hpp"
#include "ordpat/ordstats.hpp"
#include "ordpat/patterns.hpp"
#include "ordpat/rng.hpp"

namespace ordpat {

struct TestResult {
    std::string statistic_name;
    double observed = 0.0;
    double null_median = 0.0;
    double p_value = 0.0;
    std::int64_t n_simulations = 1;
    std::uint64_t seed = 0;
    std::map<std::string, double> extra;
};

namespace detail {

inline double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

inline double two_sided_normal_p(double z) { return std::erfc(std::abs(z) / std::numbers::sqrt2); }

// Two-sided exact p-value for X ~ Binomial(n, 1/2): doubled smaller tail,
// capped at 1.
inline double two_sided_binomial_p(std::int64_t x, std::int64_t n) {
    auto log_pmf = [n](std::int64_t k) {
        return std::lgamma(static_cast<double>(n + 1)) - std::lgamma(static_cast<double>(k + 1)) -
               std::lgamma(static_cast<double>(n - k + 1)) - static_cast<double>(n) * std::log(2.0);
    };
    double lower = 0.0, upper = 0.0;
    for (std::int64_t k = 0; k <= n; ++k) {
        const double pmf = std::exp(log_pmf(k));
        if (k <= x) lower += pmf;
        if (k >= x) upper += pmf;
    }
    return std::min(1.0, 2.0 * std::min(lower, upper));
}

inline double median_of(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median of empty sample");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline double quantile_of(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    return quantile_sorted(v, q);
}

inline double euclidean_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Monte Carlo distance test against Brownian motion
// ---------------------------------------------------------------------------

// Tests whether the observed pattern distribution q is compatible with
// Brownian motion: the null sample d_k = ||b_k - b|| comes from N simulated
// BM paths of the same length, pattern frequencies averaged over the same
// lags as q, and p = #{d_k > ||q - b||}/N (strict inequality). A p-value
// near 1 means q sits closer to the theoretical table than typical BM
// samples do.
inline TestResult mc_distance_test(const PatternDistribution& q, std::int64_t T, std::int64_t N,
                                   std::uint64_t seed, const std::vector<std::int64_t>& lags = {1, 2, 3},
                                   std::vector<double>* null_sample_out = nullptr, int n_threads = 0) {
    if (q.order < 2 || q.order > 4)
        throw std::invalid_argument("mc_distance_test: q must have order 2..4");
    if (T < 10) throw std::invalid_argument("mc_distance_test: T must be >= 10");
    if (N < 100) throw std::invalid_argument("mc_distance_test: N must be >= 100");
    if (lags.empty()) throw std::invalid_argument("mc_distance_test: empty lag set");
    const std::vector<double> b = bm_pattern_probabilities(q.order).probabilities;
    if (q.frequencies.size() != b.size())
        throw std::invalid_argument("mc_distance_test: frequency vector has wrong length");
    const double observed = detail::euclidean_distance(q.frequencies, b);

    const int order = q.order;
    std::vector<double> d(static_cast<std::size_t>(N), 0.0);
    detail::parallel_for(
        N,
        [&](std::int64_t k) {
            static thread_local std::vector<double> path;
            ModelSpec bm;
            bm.kind = ModelKind::bm;
            bm.length = T;
            bm.seed = substream_seed(seed, static_cast<std::uint64_t>(k));
            simulate_into(bm, path);
            const PatternDistribution qk = lag_averaged_frequencies(path, order, lags);
            d[static_cast<std::size_t>(k)] = detail::euclidean_distance(qk.frequencies, b);
        },
        n_threads);

    std::int64_t exceed = 0;
    for (double dk : d)
        if (dk > observed) ++exceed;

    TestResult r;
    r.statistic_name = "bm_pattern_distance";
    r.observed = observed;
    r.null_median = detail::median_of(d);
    r.p_value = static_cast<double>(exceed) / static_cast<double>(N);
    r.n_simulations = N;
    r.seed = seed;
    r.extra["null_q10"] = detail::quantile_of(d, 0.10);
    r.extra["null_q90"] = detail::quantile_of(d, 0.90);
    r.extra["null_mean"] = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(N);
    if (null_sample_out) *null_sample_out = std::move(d);
    return r;
}

// ---------------------------------------------------------------------------
// Coin-toss tests (Brownian null)
// ---------------------------------------------------------------------------

// For Brownian motion the turning-point count V is Binomial(T-2, 1/2) and
// the up-step count U is Binomial(T-1, 1/2). Returns the V test first, the
// U test second. The normal approximation is standard; set exact_binomial
// for short series.
inline std::pair<TestResult, TestResult> coin_toss_test(const TimeSeries& ts, bool exact_binomial = false) {
    const std::int64_t T = ts.size();
    if (T < 3) throw short_series_error("coin_toss_test needs T >= 3");
    const std::int64_t V = turning_point_count(ts.values, 1);
    const std::int64_t U = up_step_count(ts.values, 1);

    TestResult rv;
    rv.statistic_name = "turning_points_vs_bm";
    rv.observed = static_cast<double>(V);
    rv.null_median = 0.5 * static_cast<double>(T - 2);
    const double zv = (rv.observed - rv.null_median) / std::sqrt(0.25 * static_cast<double>(T - 2));
    rv.p_value = exact_binomial ? detail::two_sided_binomial_p(V, T - 2) : detail::two_sided_normal_p(zv);
    rv.extra["z"] = zv;
    rv.extra["alpha"] = static_cast<double>(V) / static_cast<double>(T - 2);

    TestResult ru;
    ru.statistic_name = "up_steps_vs_bm";
    ru.observed = static_cast<double>(U);
    ru.null_median = 0.5 * static_cast<double>(T - 1);
    const double zu = (ru.observed - ru.null_median) / std::sqrt(0.25 * static_cast<double>(T - 1));
    ru.p_value = exact_binomial ? detail::two_sided_binomial_p(U, T - 1) : detail::two_sided_normal_p(zu);
    ru.extra["z"] = zu;
    ru.extra["beta"] = 2.0 * static_cast<double>(U) / static_cast<double>(T - 1) - 1.0;

    return {rv, ru};
}

// ---------------------------------------------------------------------------
// Bienayme test (i.i.d. null)
// ---------------------------------------------------------------------------

// For an i.i.d. sequence, E(V) = (2/3)(T-2), Var(V) = (8/45)(T-2) + 1/30,
// E(U) = (T-1)/2, Var(U) = (1/12)(T-1) + 1/6, and both counts are
// asymptotically normal. V test first, U test second.
inline std::pair<TestResult, TestResult> bienayme_test(const TimeSeries& ts) {
    const std::int64_t T = ts.size();
    if (T < 5) throw short_series_error("bienayme_test needs T >= 5");
    const std::int64_t V = turning_point_count(ts.values, 1);
    const std::int64_t U = up_step_count(ts.values, 1);

    TestResult rv;
    rv.statistic_name = "turning_points_vs_iid";
    rv.observed = static_cast<double>(V);
    rv.null_median = 2.0 / 3.0 * static_cast<double>(T - 2);
    const double var_v = 8.0 / 45.0 * static_cast<double>(T - 2) + 1.0 / 30.0;
    const double zv = (rv.observed - rv.null_median) / std::sqrt(var_v);
    rv.p_value = detail::two_sided_normal_p(zv);
    rv.extra["z"] = zv;
    rv.extra["variance"] = var_v;

    TestResult ru;
    ru.statistic_name = "up_steps_vs_iid";
    ru.observed = static_cast<double>(U);
    ru.null_median = 0.5 * static_cast<double>(T - 1);
    const double var_u = 1.0 / 12.0 * static_cast<double>(T - 1) + 1.0 / 6.0;
    const double zu = (ru.observed - ru.null_median) / std::sqrt(var_u);
    ru.p_value = detail::two_sided_normal_p(zu);
    ru.extra["z"] = zu;
    ru.extra["variance"] = var_u;

    return {rv, ru};
}

// ---------------------------------------------------------------------------
// Variance of alpha and beta as a function of the lag
// ---------------------------------------------------------------------------

struct VarianceVsLag {
    std::vector<std::int64_t> lags;
    std::vector<double> mean_alpha;
    std::vector<double> mean_beta;
    std::vector<double> var_alpha;  // sample variance across trials
    std::vector<double> var_beta;
    std::int64_t trials = 0;
    std::int64_t length = 0;
    bool degenerate = false;  // trials < 2, variances reported as zero
};

// Simulates `trials` trajectories of the model template (its seed field is
// replaced by per-trial substreams of `seed`) and reports the spread of
// alpha(d) and beta(d) across trials for each lag.
inline VarianceVsLag variance_vs_lag(const ModelSpec& model, std::int64_t T, std::int64_t trials,
                                     const std::vector<std::int64_t>& lags, std::uint64_t seed,
                                     int n_threads = 0) {
    if (trials < 1) throw std::invalid_argument("variance_vs_lag: trials must be >= 1");
    if (lags.empty()) throw std::invalid_argument("variance_vs_lag: empty lag set");
    const std::size_t L = lags.size();
    const auto max_lag = *std::max_element(lags.begin(), lags.end());
    if (T <= 2 * max_lag)
        throw short_series_error("variance_vs_lag: T too short for the largest lag");

    std::vector<double> alpha(static_cast<std::size_t>(trials) * L);
    std::vector<double> beta(static_cast<std::size_t>(trials) * L);
    detail::parallel_for(
        trials,
        [&](std::int64_t k) {
            static thread_local std::vector<double> path;
            ModelSpec spec = model;
            spec.length = T;
            spec.seed = substream_seed(seed, static_cast<std::uint64_t>(k));
            simulate_into(spec, path);
            for (std::size_t j = 0; j < L; ++j) {
                alpha[static_cast<std::size_t>(k) * L + j] = turning_rate(path, lags[j]);
                beta[static_cast<std::size_t>(k) * L + j] = up_down_balance(path, lags[j]);
            }
        },
        n_threads);

    VarianceVsLag out;
    out.lags = lags;
    out.trials = trials;
    out.length = T;
    out.degenerate = trials < 2;
    for (std::size_t j = 0; j < L; ++j) {
        double ma = 0.0, mb = 0.0;
        for (std::int64_t k = 0; k < trials; ++k) {
            ma += alpha[static_cast<std::size_t>(k) * L + j];
            mb += beta[static_cast<std::size_t>(k) * L + j];
        }
        ma /= static_cast<double>(trials);
        mb /= static_cast<double>(trials);
        double va = 0.0, vb = 0.0;
        if (!out.degenerate) {
            for (std::int64_t k = 0; k < trials; ++k) {
                const double da = alpha[static_cast<std::size_t>(k) * L + j] - ma;
                const double db = beta[static_cast<std::size_t>(k) * L + j] - mb;
                va += da * da;
                vb += db * db;
            }
            va /= static_cast<double>(trials - 1);
            vb /= static_cast<double>(trials - 1);
        }
        out.mean_alpha.push_back(ma);
        out.mean_beta.push_back(mb);
        out.var_alpha.push_back(va);
        out.var_beta.push_back(vb);
    }
    return out;
}

// Least-squares slope of y against x, for reading growth rates off a
// variance-vs-lag table.
inline double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("least_squares_slope needs two samples of equal length >= 2");
    const auto n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// Exhaustive permutation counts
// ---------------------------------------------------------------------------

enum class TurningPredicate {
    two_interior_turning_points,       // positions 2 and 3 are both turning points
    turning_at_second_and_second_last  // positions 2 and n-1 are both turning points
};

// Counts the permutations of 1..n satisfying the predicate by full
// enumeration. These counts enter the covariances of neighbouring
// turning-point indicators: 10 of 24 for n=4, 54 of 120 for n=5.
inline std::int64_t permutation_count_oracle(int n, TurningPredicate predicate) {
    if (n < 1 || n > 7) throw std::invalid_argument("permutation_count_oracle: n must be in 1..7");
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
    auto turning_at = [&](int pos) {  // 1-based, needs both neighbours
        if (pos < 2 || pos > n - 1) return false;
        const int a = perm[static_cast<std::size_t>(pos - 2)];
        const int b = perm[static_cast<std::size_t>(pos - 1)];
        const int c = perm[static_cast<std::size_t>(pos)];
        return (a < b) != (b < c);
    };
    std::int64_t count = 0;
    do {
        bool ok = false;
        switch (predicate) {
            case TurningPredicate::two_interior_turning_points:
                ok = turning_at(2) && turning_at(3);
                break;
            case TurningPredicate::turning_at_second_and_second_last:
                ok = turning_at(2) && turning_at(n - 1);
                break;
        }
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

} // namespace ordpat
