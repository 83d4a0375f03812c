// Simulates Brownian motion and compares its order-4 pattern frequencies
// with the exact distribution.

#include <cstdio>

#include "ordpat/models.hpp"
#include "ordpat/patterns.hpp"

int main() {
    using namespace ordpat;
    ModelSpec spec;
    spec.kind = ModelKind::bm;
    spec.length = 100000;
    spec.seed = 2024;
    const TimeSeries ts = simulate(spec);
    const PatternDistribution empirical = pattern_frequencies(ts.values, 4, 1);
    const BmPatternTable exact = bm_pattern_probabilities(4);

    std::printf("%-8s %-10s %-10s\n", "pattern", "simulated", "exact");
    for (std::int64_t k = 1; k <= 24; ++k)
        std::printf("%-8s %-10.5f %-10.5f\n", pattern_string(4, k).c_str(),
                    empirical.frequencies[static_cast<std::size_t>(k - 1)],
                    exact.probabilities[static_cast<std::size_t>(k - 1)]);
    return 0;
}
