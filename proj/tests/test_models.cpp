#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "ordpat/models.hpp"
#include "ordpat/ordstats.hpp"
#include "ordpat/rng.hpp"

using namespace ordpat;

TEST_CASE("simulation is deterministic in the ModelSpec", "[models]") {
    ModelSpec spec;
    spec.kind = ModelKind::ar1;
    spec.phi = 0.6;
    spec.length = 500;
    spec.seed = 42;
    const TimeSeries a = simulate(spec);
    const TimeSeries b = simulate(spec);
    CHECK(a.values == b.values);
    CHECK(a.name == "ar1");
    spec.seed = 43;
    CHECK(simulate(spec).values != a.values);

    std::vector<double> reused{1.0, 2.0, 3.0};
    spec.seed = 42;
    simulate_into(spec, reused);
    CHECK(reused == a.values);
}

TEST_CASE("brownian path is the cumulative sum of unit normals", "[models]") {
    ModelSpec spec;
    spec.kind = ModelKind::bm;
    spec.length = 10;
    spec.seed = 7;
    const TimeSeries ts = simulate(spec);
    CHECK(ts.name == "bm");
    auto engine = make_engine(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    double acc = 0.0;
    for (std::int64_t t = 0; t < spec.length; ++t) {
        acc += normal(engine);
        CHECK(ts.values[static_cast<std::size_t>(t)] == acc);
    }

    spec.length = 1;
    auto fresh = make_engine(spec.seed);
    std::normal_distribution<double> n2(0.0, 1.0);
    CHECK(simulate(spec).values[0] == n2(fresh));
}

TEST_CASE("model specs are validated", "[models]") {
    ModelSpec spec;
    spec.length = 0;
    CHECK_THROWS_AS(simulate(spec), std::invalid_argument);
    spec.length = 10;
    spec.kind = ModelKind::ar1;
    spec.phi = 1.0;
    CHECK_THROWS_AS(simulate(spec), std::invalid_argument);
    spec.phi = 0.5;
    spec.burn_in = -1;
    CHECK_THROWS_AS(simulate(spec), std::invalid_argument);
}

TEST_CASE("burn-in discards a prefix of the same trajectory", "[models]") {
    ModelSpec with;
    with.kind = ModelKind::ar1;
    with.phi = 0.9;
    with.length = 200;
    with.seed = 5;
    with.burn_in = 300;
    const TimeSeries tail = simulate(with);
    REQUIRE(tail.size() == 200);

    ModelSpec whole = with;
    whole.burn_in = 0;
    whole.length = 500;
    const TimeSeries full = simulate(whole);
    const std::vector<double> expected(full.values.end() - 200, full.values.end());
    CHECK(tail.values == expected);
}

TEST_CASE("ar(1) with phi zero behaves as white noise", "[models]") {
    ModelSpec spec;
    spec.kind = ModelKind::ar1;
    spec.phi = 0.0;
    spec.length = 100000;
    spec.seed = 11;
    const TimeSeries ts = simulate(spec);
    // turning rate of an i.i.d. sequence is 2/3, std. error ~ sqrt(8/45/T)
    CHECK(turning_rate(ts.values) == Catch::Approx(2.0 / 3.0).margin(0.004));
    CHECK(up_down_balance(ts.values) == Catch::Approx(0.0).margin(0.01));
}

TEST_CASE("centered exponential noise has the right shape", "[models]") {
    ModelSpec spec;
    spec.kind = ModelKind::ar1;
    spec.phi = 0.0;
    spec.noise = NoiseKind::exponential_centered;
    spec.length = 200000;
    spec.seed = 13;
    const TimeSeries ts = simulate(spec);
    const double n = static_cast<double>(spec.length);
    const double mean = std::accumulate(ts.values.begin(), ts.values.end(), 0.0) / n;
    double var = 0.0;
    for (double v : ts.values) var += (v - mean) * (v - mean);
    var /= n - 1.0;
    CHECK(mean == Catch::Approx(0.0).margin(0.01));
    CHECK(var == Catch::Approx(1.0).margin(0.03));
    // 1 - Exp(1) is bounded above by 1 and has a long left tail
    CHECK(*std::max_element(ts.values.begin(), ts.values.end()) <= 1.0);
    CHECK(*std::min_element(ts.values.begin(), ts.values.end()) < -1.0);
}

TEST_CASE("persistent ar(1) with exponential noise drifts upward in pattern", "[models]") {
    // up-down balance at lag 1 sits near 0.26 for phi = 0.99; average a few
    // seeds to tame the large sampling error of a strongly dependent series
    const std::vector<std::int64_t> lags{1, 2, 3, 4, 5, 6};
    std::vector<double> mean_beta(lags.size(), 0.0);
    const int n_seeds = 6;
    for (int s = 0; s < n_seeds; ++s) {
        ModelSpec spec;
        spec.kind = ModelKind::ar1;
        spec.phi = 0.99;
        spec.noise = NoiseKind::exponential_centered;
        spec.length = 100000;
        spec.seed = 100 + static_cast<std::uint64_t>(s);
        spec.burn_in = 1000;
        const TimeSeries ts = simulate(spec);
        for (std::size_t i = 0; i < lags.size(); ++i)
            mean_beta[i] += up_down_balance(ts.values, lags[i]) / n_seeds;
    }
    CHECK(mean_beta[0] == Catch::Approx(0.26).margin(0.07));
    for (std::size_t i = 0; i < lags.size(); ++i) {
        INFO("lag " << lags[i]);
        CHECK(mean_beta[i] > 0.1);
    }
}

TEST_CASE("exact brownian pattern table, orders 2 and 3", "[models]") {
    const BmPatternTable t2 = bm_pattern_probabilities(2);
    REQUIRE(t2.probabilities.size() == 2);
    CHECK(t2.probabilities[0] == 0.5);
    CHECK(t2.probabilities[1] == 0.5);

    const BmPatternTable t3 = bm_pattern_probabilities(3);
    REQUIRE(t3.probabilities.size() == 6);
    const double expected3[6] = {0.25, 0.125, 0.125, 0.125, 0.125, 0.25};
    for (std::size_t k = 0; k < 6; ++k)
        CHECK(t3.probabilities[k] == Catch::Approx(expected3[k]).margin(1e-15));

    CHECK_THROWS_AS(bm_pattern_probabilities(1), std::invalid_argument);
    CHECK_THROWS_AS(bm_pattern_probabilities(5), std::invalid_argument);
}

TEST_CASE("exact brownian pattern table, order 4", "[models]") {
    const BmPatternTable t = bm_pattern_probabilities(4);
    REQUIRE(t.probabilities.size() == 24);
    const auto& p = t.probabilities;

    CHECK(std::accumulate(p.begin(), p.end(), 0.0) == Catch::Approx(1.0).margin(1e-14));

    // probabilities depend only on the symmetry class of the pattern
    const std::vector<std::vector<int>> groups = {
        {1, 24}, {2, 7, 18, 23}, {3, 22}, {4, 12, 13, 21},
        {5, 9, 16, 20}, {6, 8, 10, 15, 17, 19}, {11, 14}};
    for (const auto& g : groups)
        for (std::size_t i = 1; i < g.size(); ++i)
            CHECK(p[static_cast<std::size_t>(g[i] - 1)] == p[static_cast<std::size_t>(g[0] - 1)]);

    // reversal symmetry p(k) = p(n!+1-k), bit for bit
    for (int k = 1; k <= 24; ++k)
        CHECK(p[static_cast<std::size_t>(k - 1)] == p[static_cast<std::size_t>(24 - k)]);

    CHECK(p[0] == Catch::Approx(0.125).margin(1e-15));               // 1234
    CHECK(p[1] == Catch::Approx(0.0625).margin(1e-15));              // 1243
    CHECK(p[2] == Catch::Approx(1.0 / 24.0).margin(1e-15));          // 1324
    CHECK(p[4] == Catch::Approx(1.0 / 48.0).margin(1e-15));          // 1423
    CHECK(p[3] == Catch::Approx(0.03545663800765182).margin(1e-13)); // 1342
    CHECK(p[5] == Catch::Approx(0.02704336199234818).margin(1e-13)); // 1432
    CHECK(p[10] == Catch::Approx(0.01462330467431848).margin(1e-13)); // 2413
    // the two asin families are complementary within a 1/16 cell
    CHECK(p[3] + p[5] == Catch::Approx(0.0625).margin(1e-15));
}

TEST_CASE("monte carlo path reproduces the exact table", "[models]") {
    const McPatternEstimate e2 = mc_bm_pattern_oracle(2, 1000000, 21);
    CHECK(e2.window_count == 999999);
    CHECK(e2.probabilities[0] == Catch::Approx(0.5).margin(0.004));
    CHECK(e2.probabilities[0] + e2.probabilities[1] == Catch::Approx(1.0).margin(1e-12));
    for (std::size_t k = 0; k < 2; ++k)
        CHECK(e2.std_errors[k] ==
              std::sqrt(e2.probabilities[k] * (1.0 - e2.probabilities[k]) / 999999.0));

    const McPatternEstimate e3 = mc_bm_pattern_oracle(3, 2000000, 22);
    const BmPatternTable t3 = bm_pattern_probabilities(3);
    for (std::size_t k = 0; k < 6; ++k) {
        INFO("pattern " << k + 1);
        // overlapping windows inflate the binomial error bar a little
        CHECK(std::abs(e3.probabilities[k] - t3.probabilities[k]) < 8.0 * e3.std_errors[k]);
    }

    CHECK_THROWS_AS(mc_bm_pattern_oracle(3, 999999, 1), std::invalid_argument);
}

TEST_CASE("brownian pattern frequencies do not depend on the lag", "[models]") {
    ModelSpec spec;
    spec.kind = ModelKind::bm;
    spec.length = 200000;
    spec.seed = 31;
    const TimeSeries ts = simulate(spec);
    const BmPatternTable t3 = bm_pattern_probabilities(3);
    for (std::int64_t d : {1, 2, 5}) {
        const auto f = pattern_frequencies(ts.values, 3, d).frequencies;
        for (std::size_t k = 0; k < 6; ++k) {
            INFO("lag " << d << " pattern " << k + 1);
            CHECK(f[k] == Catch::Approx(t3.probabilities[k]).margin(0.01));
        }
    }
}
