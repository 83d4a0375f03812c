// Builds a series that switches from white noise to Brownian motion halfway
// and locates the junction with the order-distance curve.

#include <cstdio>

#include "ordpat/changepoint.hpp"
#include "ordpat/models.hpp"

int main() {
    using namespace ordpat;
    ModelSpec noise;
    noise.kind = ModelKind::ar1;  // phi = 0: white noise
    noise.length = 2000;
    noise.seed = 7;
    ModelSpec walk;
    walk.kind = ModelKind::bm;
    walk.length = 2000;
    walk.seed = 8;

    TimeSeries ts = simulate(noise);
    const TimeSeries tail = simulate(walk);
    ts.values.insert(ts.values.end(), tail.values.begin(), tail.values.end());

    const ChangeCurve curve = order_change_curve(ts, 4, {1, 2, 3});
    const ChangePoint point = find_change_point(curve);
    std::printf("true junction: 2000, found: %lld (g = %.4f)\n",
                static_cast<long long>(point.index), point.value);
    return 0;
}
