#pragma once

// Null models: Brownian motion (cumulative sums of standard normal draws)
// and AR(1) with Gaussian or centered exponential noise, plus the exact
// pattern distribution of Brownian motion for orders 2 to 4.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "ordpat/patterns.hpp"
#include "ordpat/rng.hpp"
#include "ordpat/series.hpp"

namespace ordpat {

enum class ModelKind { bm, ar1 };
enum class NoiseKind { gaussian, exponential_centered };

struct ModelSpec {
    ModelKind kind = ModelKind::bm;
    double phi = 0.0;            // AR(1) only, |phi| < 1
    NoiseKind noise = NoiseKind::gaussian;  // AR(1) only; BM increments are normal
    std::int64_t length = 0;
    std::uint64_t seed = 0;
    std::int64_t burn_in = 0;    // AR(1) only: discarded leading steps
};

namespace detail {

inline void check_model(const ModelSpec& spec) {
    if (spec.length < 1) throw std::invalid_argument("simulate: length must be >= 1");
    if (spec.kind == ModelKind::ar1 && !(std::abs(spec.phi) < 1.0))
        throw std::invalid_argument("simulate: AR(1) needs |phi| < 1");
    if (spec.burn_in < 0) throw std::invalid_argument("simulate: burn_in must be >= 0");
}

} // namespace detail

// Fills `out` with one trajectory; reuses its capacity, which matters in
// Monte Carlo loops. Deterministic given the ModelSpec.
inline void simulate_into(const ModelSpec& spec, std::vector<double>& out) {
    detail::check_model(spec);
    out.clear();
    out.reserve(static_cast<std::size_t>(spec.length));
    auto engine = make_engine(spec.seed);
    if (spec.kind == ModelKind::bm) {
        std::normal_distribution<double> normal(0.0, 1.0);
        double x = 0.0;
        for (std::int64_t t = 0; t < spec.length; ++t) {
            x += normal(engine);
            out.push_back(x);
        }
        return;
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    std::exponential_distribution<double> expo(1.0);
    auto draw = [&] {
        return spec.noise == NoiseKind::gaussian ? normal(engine) : 1.0 - expo(engine);
    };
    double x = draw();  // x_1 = z_1
    std::int64_t produced = 1;
    const std::int64_t total = spec.burn_in + spec.length;
    if (spec.burn_in == 0) out.push_back(x);
    for (std::int64_t t = 1; t < total; ++t) {
        x = spec.phi * x + draw();
        ++produced;
        if (produced > spec.burn_in) out.push_back(x);
    }
}

inline TimeSeries simulate(const ModelSpec& spec) {
    TimeSeries ts;
    ts.name = spec.kind == ModelKind::bm ? "bm" : "ar1";
    simulate_into(spec, ts.values);
    return ts;
}

// ---------------------------------------------------------------------------
// Exact Brownian pattern distribution
// ---------------------------------------------------------------------------

struct BmPatternTable {
    int order = 0;
    std::vector<double> probabilities;  // probabilities[k-1] for pattern k
};

// P(pattern k) for Brownian motion, any lag. A pattern is an intersection of
// n-1 half-space events on the i.i.d. normal increments, so its probability
// follows from the orthant formulas: 1/2 for one condition,
// 1/4 + asin(rho)/(2 pi) for two, 1/8 + sum asin(rho_ij)/(4 pi) for three.
// Closed forms exist only up to three conditions, hence n <= 4.
inline BmPatternTable bm_pattern_probabilities(int order) {
    if (order < 2 || order > 4)
        throw std::invalid_argument("bm_pattern_probabilities: order must be in 2..4");
    BmPatternTable table;
    table.order = order;
    const std::int64_t nf = factorial(order);
    table.probabilities.reserve(static_cast<std::size_t>(nf));
    const int m = order - 1;  // number of increments and of order conditions
    for (std::int64_t k = 1; k <= nf; ++k) {
        const std::vector<int> perm = index_to_permutation(order, k);
        std::vector<int> pos(static_cast<std::size_t>(order));
        for (int i = 0; i < order; ++i) pos[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)] - 1)] = i;
        // Condition r: x at pos[r] < x at pos[r+1], a +/-1 sum of increments.
        std::vector<std::vector<double>> w(static_cast<std::size_t>(m),
                                           std::vector<double>(static_cast<std::size_t>(m), 0.0));
        for (int r = 0; r < m; ++r) {
            const int a = pos[static_cast<std::size_t>(r)];
            const int b = pos[static_cast<std::size_t>(r + 1)];
            const double sign = b > a ? 1.0 : -1.0;
            for (int j = std::min(a, b) + 1; j <= std::max(a, b); ++j)
                w[static_cast<std::size_t>(r)][static_cast<std::size_t>(j - 1)] = sign;
        }
        auto corr = [&](int r, int s) {
            double rs = 0.0, rr = 0.0, ss = 0.0;
            for (int j = 0; j < m; ++j) {
                rs += w[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] *
                      w[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)];
                rr += w[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] *
                      w[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
                ss += w[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)] *
                      w[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)];
            }
            return rs / std::sqrt(rr * ss);
        };
        double p = 0.0;
        switch (m) {
            case 1: p = 0.5; break;
            case 2: p = 0.25 + std::asin(corr(0, 1)) / (2.0 * std::numbers::pi); break;
            case 3: {
                // Summing in sorted order makes the k <-> n!+1-k symmetry of
                // the table exact in floating point, not just up to rounding.
                std::array<double, 3> terms{std::asin(corr(0, 1)), std::asin(corr(0, 2)),
                                            std::asin(corr(1, 2))};
                std::sort(terms.begin(), terms.end());
                p = 0.125 + (terms[0] + terms[1] + terms[2]) / (4.0 * std::numbers::pi);
                break;
            }
        }
        table.probabilities.push_back(p);
    }
    return table;
}

// ---------------------------------------------------------------------------
// Monte Carlo check of the table
// ---------------------------------------------------------------------------

struct McPatternEstimate {
    int order = 0;
    std::int64_t samples = 0;       // path length
    std::int64_t window_count = 0;  // samples - (order-1)
    std::vector<double> probabilities;
    std::vector<double> std_errors;  // binomial sqrt(p(1-p)/window_count)
};

// Pattern distribution at lag 1 of a single Brownian path of the given
// length, streamed so memory stays O(order). Serves as an independent check
// on bm_pattern_probabilities; the error bars treat windows as independent,
// which overlapping windows only approximate.
inline McPatternEstimate mc_bm_pattern_oracle(int order, std::int64_t samples, std::uint64_t seed) {
    detail::check_order(order);
    if (samples < 1000000)
        throw std::invalid_argument("mc_bm_pattern_oracle: need at least 1e6 samples");
    McPatternEstimate est;
    est.order = order;
    est.samples = samples;
    est.window_count = samples - (order - 1);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(factorial(order)), 0);
    auto engine = make_engine(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> window(static_cast<std::size_t>(order), 0.0);
    double x = 0.0;
    for (std::int64_t t = 0; t < samples; ++t) {
        x += normal(engine);
        for (int i = 0; i + 1 < order; ++i)
            window[static_cast<std::size_t>(i)] = window[static_cast<std::size_t>(i + 1)];
        window[static_cast<std::size_t>(order - 1)] = x;
        if (t >= order - 1)
            ++counts[static_cast<std::size_t>(detail::encode0(window.data(), order, 1))];
    }
    est.probabilities.resize(counts.size());
    est.std_errors.resize(counts.size());
    const auto W = static_cast<double>(est.window_count);
    for (std::size_t k = 0; k < counts.size(); ++k) {
        const double p = static_cast<double>(counts[k]) / W;
        est.probabilities[k] = p;
        est.std_errors[k] = std::sqrt(p * (1.0 - p) / W);
    }
    return est;
}

} // namespace ordpat
