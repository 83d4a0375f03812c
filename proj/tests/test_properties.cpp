#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

#include "ordpat/io.hpp"
#include "support/naive_oracle.hpp"

using namespace ordpat;

namespace {

std::vector<double> random_series(std::mt19937_64& gen, std::size_t n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(n);
    for (auto& v : x) v = u(gen);
    return x;
}

std::vector<double> random_walk(std::size_t n, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> z;
    std::vector<double> x(n);
    double acc = 0.0;
    for (auto& v : x) v = (acc += z(gen));
    return x;
}

} // namespace

TEST_CASE("pattern counts agree with the exhaustive oracle", "[props]") {
    std::mt19937_64 gen(2024);
    std::uniform_int_distribution<int> pick_order(2, 5);
    std::uniform_int_distribution<std::int64_t> pick_lag(1, 3);
    std::uniform_int_distribution<std::size_t> pick_len(10, 50);
    for (int rep = 0; rep < 1000; ++rep) {
        const int order = pick_order(gen);
        const std::int64_t lag = pick_lag(gen);
        std::size_t len = pick_len(gen);
        len = std::max<std::size_t>(len, static_cast<std::size_t>((order - 1) * lag + 1) + 1);
        const auto x = random_series(gen, len);
        const PatternDistribution got = pattern_counts(x, order, lag);
        const auto want = naive::pattern_counts(x, order, lag);
        REQUIRE(got.counts == want);
        std::int64_t total = 0;
        for (auto c : got.counts) total += c;
        REQUIRE(total == got.window_count);
    }
}

TEST_CASE("negating the series mirrors the distribution", "[props]") {
    std::mt19937_64 gen(55);
    for (int rep = 0; rep < 100; ++rep) {
        const auto x = random_series(gen, 60);
        auto neg = x;
        for (auto& v : neg) v = -v;
        for (int order : {2, 3, 4, 5}) {
            const auto a = pattern_counts(x, order, 1).counts;
            const auto b = pattern_counts(neg, order, 1).counts;
            const std::int64_t nf = factorial(order);
            for (std::int64_t k = 1; k <= nf; ++k)
                REQUIRE(b[static_cast<std::size_t>(negate_index(order, k) - 1)] ==
                        a[static_cast<std::size_t>(k - 1)]);
        }
    }
}

TEST_CASE("reversing the series reverses every pattern", "[props]") {
    std::mt19937_64 gen(56);
    for (int rep = 0; rep < 100; ++rep) {
        const auto x = random_series(gen, 60);
        auto rev = x;
        std::reverse(rev.begin(), rev.end());
        for (int order : {2, 3, 4}) {
            const auto a = pattern_counts(x, order, 2).counts;
            const auto b = pattern_counts(rev, order, 2).counts;
            const std::int64_t nf = factorial(order);
            for (std::int64_t k = 1; k <= nf; ++k) {
                std::vector<int> perm = index_to_permutation(order, k);
                std::reverse(perm.begin(), perm.end());
                const std::int64_t kr = permutation_to_index(perm);
                REQUIRE(b[static_cast<std::size_t>(kr - 1)] == a[static_cast<std::size_t>(k - 1)]);
            }
        }
    }
}

TEST_CASE("strictly monotone maps leave patterns untouched", "[props]") {
    std::mt19937_64 gen(57);
    for (int rep = 0; rep < 50; ++rep) {
        const auto x = random_series(gen, 80);
        auto cubed = x;
        for (auto& v : cubed) v = v * v * v;
        auto scaled = x;
        for (auto& v : scaled) v = 3.0 * v + 11.0;
        for (int order : {2, 3, 4}) {
            const auto a = pattern_counts(x, order, 1).counts;
            REQUIRE(pattern_counts(cubed, order, 1).counts == a);
            REQUIRE(pattern_counts(scaled, order, 1).counts == a);
        }
    }
}

TEST_CASE("lag averaging is the arithmetic mean of the per-lag tables", "[props]") {
    std::mt19937_64 gen(58);
    const std::vector<std::int64_t> lags{1, 2, 4};
    for (int rep = 0; rep < 50; ++rep) {
        const auto x = random_series(gen, 70);
        const PatternDistribution avg = lag_averaged_frequencies(x, 3, lags);
        for (std::size_t p = 0; p < 6; ++p) {
            double m = 0.0;
            for (std::int64_t d : lags) m += pattern_frequencies(x, 3, d).frequencies[p];
            REQUIRE(avg.frequencies[p] == Catch::Approx(m / 3.0).margin(1e-15));
        }
        double sum = 0.0;
        for (double f : avg.frequencies) sum += f;
        REQUIRE(sum == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("identities between the scalar statistics hold on samples", "[props]") {
    for (unsigned seed = 1; seed <= 50; ++seed) {
        const auto x = random_walk(150, seed);
        for (std::int64_t d : {1, 2}) {
            const auto f = pattern_frequencies(x, 3, d).frequencies;
            REQUIRE(std::abs(turning_rate(x, d) - (1.0 - f[0] - f[5])) <= 1e-14);
            REQUIRE(persistence(x, d) == 2.0 / 3.0 - turning_rate(x, d));
            const double balance = up_down_balance(x, d);
            REQUIRE(balance >= -1.0);
            REQUIRE(balance <= 1.0);
        }
    }
}

TEST_CASE("monte carlo artifacts are byte-identical across reruns", "[props]") {
    PatternDistribution q;
    q.order = 3;
    q.frequencies = {0.26, 0.12, 0.12, 0.12, 0.12, 0.26};

    const nlohmann::json t1 = mc_distance_test(q, 300, 120, 77);
    const nlohmann::json t2 = mc_distance_test(q, 300, 120, 77);
    CHECK(t1.dump() == t2.dump());

    ModelSpec bm;
    bm.kind = ModelKind::bm;
    const nlohmann::json v1 = variance_vs_lag(bm, 200, 200, {1, 2}, 5);
    const nlohmann::json v2 = variance_vs_lag(bm, 200, 200, {1, 2}, 5, 4);
    CHECK(v1.dump() == v2.dump());  // thread count must not leak into results

    const nlohmann::json c1 =
        changepoint_significance(0.1, bm, 400, ChangeMethod::beta, {1, 2}, 150, 9, 1);
    const nlohmann::json c2 =
        changepoint_significance(0.1, bm, 400, ChangeMethod::beta, {1, 2}, 150, 9, 3);
    CHECK(c1.dump() == c2.dump());
}

TEST_CASE("a noise-to-walk junction is localized reliably", "[props]") {
    const std::int64_t T = 2400;
    int hits = 0;
    for (unsigned seed = 0; seed < 100; ++seed) {
        std::mt19937_64 gen(9000 + seed);
        std::normal_distribution<double> z;
        std::vector<double> x;
        x.reserve(static_cast<std::size_t>(T));
        for (int i = 0; i < 1200; ++i) x.push_back(z(gen));
        double level = x.back();
        for (int i = 0; i < 1200; ++i) x.push_back(level += z(gen));
        TimeSeries ts;
        ts.values = std::move(x);
        const ChangeCurve curve = scalar_change_curve(ts, ChangeMethod::alpha, {1, 2, 3});
        const ChangePoint cp = find_change_point(curve);
        if (std::abs(cp.index - 1200) <= T / 20) ++hits;
    }
    // the split estimate should land within 5% of the true junction nearly always
    CHECK(hits >= 95);
}
