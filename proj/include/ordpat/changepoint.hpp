#pragma once

// Change-point analysis. A split point k divides x_1..x_T into x_1..x_k and
// x_{k+1}..x_T; curves assign each k a weighted before/after contrast:
//   f(k) = c_k |m_k - m~_k|          difference of means
//   g(k) = c_k ||q^k - q~^k||        distance of pattern distributions
//   h(k) = c_k (s_k - s~_k)          signed difference of a scalar order
//                                    statistic (beta, alpha, entropies)
// with c_k = 2 sqrt(k(T-k))/T. Maxima of |curve| are change-point
// candidates; binary segmentation recurses into the longest segment.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordpat/detail/parallel.hpp"
#include "ordpat/hypotest.hpp"
#include "ordpat/models.hpp"
#include "ordpat/ordstats.hpp"
#include "ordpat/patterns.hpp"
#include "ordpat/series.hpp"

namespace ordpat {

enum class ChangeMethod { mean, order_distance, beta, alpha, entropy, cond_entropy };

inline std::string change_method_name(ChangeMethod m) {
    switch (m) {
        case ChangeMethod::mean: return "mean";
        case ChangeMethod::order_distance: return "order_distance";
        case ChangeMethod::beta: return "beta";
        case ChangeMethod::alpha: return "alpha";
        case ChangeMethod::entropy: return "entropy";
        case ChangeMethod::cond_entropy: return "cond_entropy";
    }
    throw std::invalid_argument("unknown change method");
}

inline ChangeMethod parse_change_method(const std::string& s) {
    if (s == "mean") return ChangeMethod::mean;
    if (s == "order_distance" || s == "order") return ChangeMethod::order_distance;
    if (s == "beta") return ChangeMethod::beta;
    if (s == "alpha") return ChangeMethod::alpha;
    if (s == "entropy") return ChangeMethod::entropy;
    if (s == "cond_entropy") return ChangeMethod::cond_entropy;
    throw std::invalid_argument("unknown change method '" + s + "'");
}

// values[k] is the curve at split point k, 1 <= k <= T-1; index 0 and T are
// placeholders and splits where a segment has no window are NaN. weights[k]
// holds c_k. margin is what the search excludes at each end.
struct ChangeCurve {
    ChangeMethod method = ChangeMethod::mean;
    int order = 0;                   // pattern order behind the statistic (0 for mean)
    std::vector<std::int64_t> lags;  // empty for mean
    std::int64_t length = 0;         // T
    std::int64_t margin = 0;
    bool local = false;      // true for fixed-window curves (no c_k factor)
    std::int64_t window = 0; // window size m of local curves
    std::vector<double> values;   // size T+1
    std::vector<double> weights;  // size T+1
};

enum class CurveSign { max, min };

struct ChangePoint {
    std::int64_t index = 0;  // split point k, 1-based
    std::string label;       // label of x_k when the series carries labels
    double value = 0.0;      // curve value at k (signed)
    CurveSign sign = CurveSign::max;
};

namespace detail {

inline double split_weight(std::int64_t k, std::int64_t T) {
    return 2.0 * std::sqrt(static_cast<double>(k) * static_cast<double>(T - k)) /
           static_cast<double>(T);
}

inline int method_order(ChangeMethod m) {
    switch (m) {
        case ChangeMethod::mean: return 0;
        case ChangeMethod::order_distance: return 4;  // default, overridable
        case ChangeMethod::beta: return 2;
        default: return 3;
    }
}

// Margin rule: exclude split points closer than max(250, 5*(n-1)*max_lag)
// to either end, where spurious curve maxima concentrate. When the series
// is too short for that rule, fall back to the structural minimum (both
// segments hold at least one window per lag).
inline std::int64_t default_margin(std::int64_t T, int order, std::int64_t max_lag) {
    const std::int64_t span = order >= 2 ? static_cast<std::int64_t>(order - 1) * max_lag : 1;
    const std::int64_t structural = order >= 2 ? span + 1 : 1;
    const std::int64_t preferred = std::max<std::int64_t>(250, 5 * span);
    if (preferred <= T - preferred) return std::max(structural, preferred);
    return structural;
}

// Incremental pattern counts on both sides of a moving split, one counter
// pair per lag. advance(k) shifts the split from k-1 to k in O(order) per
// lag, so a whole curve costs O(T * lags * order).
class split_counter {
public:
    split_counter(const std::vector<double>& x, int order, std::vector<std::int64_t> lags)
        : x_(x), order_(order), lags_(std::move(lags)), T_(static_cast<std::int64_t>(x.size())) {
        check_order(order_);
        if (lags_.empty()) throw std::invalid_argument("split_counter: empty lag set");
        const std::size_t nf = static_cast<std::size_t>(factorial(order_));
        left_.assign(lags_.size(), std::vector<std::int64_t>(nf, 0));
        right_.assign(lags_.size(), std::vector<std::int64_t>(nf, 0));
        for (std::size_t j = 0; j < lags_.size(); ++j) {
            const std::int64_t d = lags_[j];
            if (d < 1) throw std::invalid_argument("split_counter: lag must be >= 1");
            const std::int64_t span = static_cast<std::int64_t>(order_ - 1) * d;
            for (std::int64_t s = 0; s + span < T_; ++s)
                ++right_[j][static_cast<std::size_t>(encode0(x_.data() + s, order_, d))];
        }
        k_ = 0;
    }

    // Move the split to k (left segment = first k values); call with
    // k = 1, 2, ... in order.
    void advance(std::int64_t k) {
        if (k != k_ + 1) throw std::logic_error("split_counter: splits must advance by one");
        k_ = k;
        const std::int64_t e = k - 1;  // 0-based index of the value that switched sides
        for (std::size_t j = 0; j < lags_.size(); ++j) {
            const std::int64_t d = lags_[j];
            const std::int64_t span = static_cast<std::int64_t>(order_ - 1) * d;
            if (e - span >= 0)
                ++left_[j][static_cast<std::size_t>(encode0(x_.data() + (e - span), order_, d))];
            if (e + span < T_)
                --right_[j][static_cast<std::size_t>(encode0(x_.data() + e, order_, d))];
        }
    }

    std::int64_t left_windows(std::size_t j) const {
        return k_ - static_cast<std::int64_t>(order_ - 1) * lags_[j];
    }
    std::int64_t right_windows(std::size_t j) const {
        return T_ - k_ - static_cast<std::int64_t>(order_ - 1) * lags_[j];
    }
    bool defined() const {
        for (std::size_t j = 0; j < lags_.size(); ++j)
            if (left_windows(j) < 1 || right_windows(j) < 1) return false;
        return true;
    }
    const std::vector<std::int64_t>& left_counts(std::size_t j) const { return left_[j]; }
    const std::vector<std::int64_t>& right_counts(std::size_t j) const { return right_[j]; }
    std::size_t lag_count() const { return lags_.size(); }

private:
    const std::vector<double>& x_;
    int order_;
    std::vector<std::int64_t> lags_;
    std::int64_t T_;
    std::int64_t k_ = 0;
    std::vector<std::vector<std::int64_t>> left_, right_;
};

inline double scalar_from_counts(ChangeMethod method, const std::vector<std::int64_t>& counts,
                                 std::int64_t windows) {
    const double w = static_cast<double>(windows);
    switch (method) {
        case ChangeMethod::beta:
            return 2.0 * static_cast<double>(counts[0]) / w - 1.0;
        case ChangeMethod::alpha:
            return 1.0 - static_cast<double>(counts[0] + counts[5]) / w;
        case ChangeMethod::entropy: {
            double h = 0.0;
            for (std::int64_t c : counts)
                if (c > 0) {
                    const double p = static_cast<double>(c) / w;
                    h -= p * std::log(p);
                }
            return h;
        }
        case ChangeMethod::cond_entropy: {
            const double f[6] = {static_cast<double>(counts[0]) / w, static_cast<double>(counts[1]) / w,
                                 static_cast<double>(counts[2]) / w, static_cast<double>(counts[3]) / w,
                                 static_cast<double>(counts[4]) / w, static_cast<double>(counts[5]) / w};
            const double p = f[0] + f[1] + f[3];
            const double part[4] = {f[0], f[1] + f[3], f[2] + f[4], f[5]};
            double h = 0.0;
            for (double pi : part)
                if (pi > 0.0) h -= pi * std::log(pi);
            if (p > 0.0) h += p * std::log(p);
            if (p < 1.0) h += (1.0 - p) * std::log(1.0 - p);
            return h;
        }
        default:
            throw std::logic_error("scalar_from_counts: not a scalar method");
    }
}

// Sweeps all splits and hands (k, unweighted contrast) to the sink. The
// contrast is ||q^k - q~^k|| for order_distance and the signed lag-averaged
// difference for scalar methods.
template <typename Sink>
void sweep_order_contrast(const std::vector<double>& x, ChangeMethod method, int order,
                          const std::vector<std::int64_t>& lags, Sink&& sink) {
    const auto T = static_cast<std::int64_t>(x.size());
    split_counter counter(x, order, lags);
    const std::size_t nf = static_cast<std::size_t>(factorial(order));
    const std::size_t L = counter.lag_count();
    std::vector<double> ql(nf), qr(nf);
    for (std::int64_t k = 1; k <= T - 1; ++k) {
        counter.advance(k);
        if (!counter.defined()) continue;
        if (method == ChangeMethod::order_distance) {
            std::fill(ql.begin(), ql.end(), 0.0);
            std::fill(qr.begin(), qr.end(), 0.0);
            for (std::size_t j = 0; j < L; ++j) {
                const double wl = static_cast<double>(counter.left_windows(j));
                const double wr = static_cast<double>(counter.right_windows(j));
                for (std::size_t p = 0; p < nf; ++p) {
                    ql[p] += static_cast<double>(counter.left_counts(j)[p]) / wl;
                    qr[p] += static_cast<double>(counter.right_counts(j)[p]) / wr;
                }
            }
            double s = 0.0;
            for (std::size_t p = 0; p < nf; ++p) {
                const double diff = (ql[p] - qr[p]) / static_cast<double>(L);
                s += diff * diff;
            }
            sink(k, std::sqrt(s));
        } else {
            double sl = 0.0, sr = 0.0;
            for (std::size_t j = 0; j < L; ++j) {
                sl += scalar_from_counts(method, counter.left_counts(j), counter.left_windows(j));
                sr += scalar_from_counts(method, counter.right_counts(j), counter.right_windows(j));
            }
            sink(k, (sl - sr) / static_cast<double>(L));
        }
    }
}

// Largest |curve value| with split margin at least `margin`; used for null
// simulations where the full curve is never materialized.
inline double max_abs_contrast(const std::vector<double>& x, ChangeMethod method, int order,
                               const std::vector<std::int64_t>& lags, std::int64_t margin) {
    const auto T = static_cast<std::int64_t>(x.size());
    double best = 0.0;
    sweep_order_contrast(x, method, order, lags, [&](std::int64_t k, double v) {
        if (k < margin || k > T - margin) return;
        const double weighted = std::abs(v) * split_weight(k, T);
        if (weighted > best) best = weighted;
    });
    return best;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Curves
// ---------------------------------------------------------------------------

// f(k) = c_k |mean(x_1..x_k) - mean(x_{k+1}..x_T)|. Pass margin = -1 for the
// default rule.
inline ChangeCurve mean_change_curve(const TimeSeries& ts, std::int64_t margin = -1) {
    const std::int64_t T = ts.size();
    if (T < 4) throw short_series_error("mean_change_curve needs T >= 4");
    ChangeCurve curve;
    curve.method = ChangeMethod::mean;
    curve.length = T;
    curve.margin = margin >= 0 ? margin : detail::default_margin(T, 0, 1);
    curve.values.assign(static_cast<std::size_t>(T + 1), std::numeric_limits<double>::quiet_NaN());
    curve.weights.assign(static_cast<std::size_t>(T + 1), 0.0);
    double total = 0.0;
    for (double v : ts.values) total += v;
    double left = 0.0;
    for (std::int64_t k = 1; k <= T - 1; ++k) {
        left += ts.values[static_cast<std::size_t>(k - 1)];
        const double mk = left / static_cast<double>(k);
        const double mr = (total - left) / static_cast<double>(T - k);
        const double c = detail::split_weight(k, T);
        curve.weights[static_cast<std::size_t>(k)] = c;
        curve.values[static_cast<std::size_t>(k)] = c * std::abs(mk - mr);
    }
    return curve;
}

// g(k) = c_k ||q^k - q~^k|| with lag-averaged pattern distributions of the
// two segments.
inline ChangeCurve order_change_curve(const TimeSeries& ts, int order,
                                      const std::vector<std::int64_t>& lags = {1, 2, 3},
                                      std::int64_t margin = -1) {
    const std::int64_t T = ts.size();
    const std::int64_t max_lag = *std::max_element(lags.begin(), lags.end());
    if (T < 2 * ((order - 1) * max_lag + 1))
        throw short_series_error("order_change_curve: no admissible split point");
    ChangeCurve curve;
    curve.method = ChangeMethod::order_distance;
    curve.order = order;
    curve.lags = lags;
    curve.length = T;
    curve.margin = margin >= 0 ? margin : detail::default_margin(T, order, max_lag);
    curve.values.assign(static_cast<std::size_t>(T + 1), std::numeric_limits<double>::quiet_NaN());
    curve.weights.assign(static_cast<std::size_t>(T + 1), 0.0);
    for (std::int64_t k = 1; k <= T - 1; ++k)
        curve.weights[static_cast<std::size_t>(k)] = detail::split_weight(k, T);
    detail::sweep_order_contrast(ts.values, ChangeMethod::order_distance, order, lags,
                                 [&](std::int64_t k, double v) {
                                     curve.values[static_cast<std::size_t>(k)] =
                                         v * curve.weights[static_cast<std::size_t>(k)];
                                 });
    return curve;
}

// h(k) = c_k (s_k - s~_k) for a scalar order statistic s, averaged over the
// lag set; signed, so maxima and minima carry different meanings.
inline ChangeCurve scalar_change_curve(const TimeSeries& ts, ChangeMethod statistic,
                                       const std::vector<std::int64_t>& lags = {1, 2, 3},
                                       std::int64_t margin = -1) {
    if (statistic == ChangeMethod::mean || statistic == ChangeMethod::order_distance)
        throw std::invalid_argument("scalar_change_curve expects beta, alpha, entropy or cond_entropy");
    const std::int64_t T = ts.size();
    const int order = detail::method_order(statistic);
    const std::int64_t max_lag = *std::max_element(lags.begin(), lags.end());
    if (T < 2 * ((order - 1) * max_lag + 1))
        throw short_series_error("scalar_change_curve: no admissible split point");
    ChangeCurve curve;
    curve.method = statistic;
    curve.order = order;
    curve.lags = lags;
    curve.length = T;
    curve.margin = margin >= 0 ? margin : detail::default_margin(T, order, max_lag);
    curve.values.assign(static_cast<std::size_t>(T + 1), std::numeric_limits<double>::quiet_NaN());
    curve.weights.assign(static_cast<std::size_t>(T + 1), 0.0);
    for (std::int64_t k = 1; k <= T - 1; ++k)
        curve.weights[static_cast<std::size_t>(k)] = detail::split_weight(k, T);
    detail::sweep_order_contrast(ts.values, statistic, order, lags, [&](std::int64_t k, double v) {
        curve.values[static_cast<std::size_t>(k)] = v * curve.weights[static_cast<std::size_t>(k)];
    });
    return curve;
}

// ---------------------------------------------------------------------------
// Local curves
// ---------------------------------------------------------------------------

namespace detail {

inline double window_statistic(const std::vector<double>& x, std::int64_t first, std::int64_t m,
                               ChangeMethod statistic, const std::vector<std::int64_t>& lags) {
    // first is 0-based, window is x[first .. first+m-1]
    if (statistic == ChangeMethod::mean) {
        double s = 0.0;
        for (std::int64_t i = first; i < first + m; ++i) s += x[static_cast<std::size_t>(i)];
        return s / static_cast<double>(m);
    }
    const int order = method_order(statistic);
    double sum = 0.0;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(factorial(order)));
    for (std::int64_t d : lags) {
        std::fill(counts.begin(), counts.end(), 0);
        const std::int64_t span = static_cast<std::int64_t>(order - 1) * d;
        for (std::int64_t s = first; s + span < first + m; ++s)
            ++counts[static_cast<std::size_t>(encode0(x.data() + s, order, d))];
        sum += scalar_from_counts(statistic, counts, m - span);
    }
    return sum / static_cast<double>(lags.size());
}

} // namespace detail

// Value at k = statistic on x_{k-m+1}..x_k minus statistic on
// x_{k+1}..x_{k+m}; fixed window size, so no c_k factor. Defined for
// m <= k <= T-m.
inline ChangeCurve local_change_curve(const TimeSeries& ts, ChangeMethod statistic, std::int64_t m,
                                      const std::vector<std::int64_t>& lags = {1, 2, 3}) {
    if (statistic == ChangeMethod::order_distance)
        throw std::invalid_argument("local_change_curve supports mean and scalar statistics");
    const std::int64_t T = ts.size();
    if (m < 2) throw std::invalid_argument("local_change_curve: window must be >= 2");
    if (T < 2 * m) throw short_series_error("local_change_curve needs T >= 2m");
    const int order = detail::method_order(statistic);
    if (order >= 2) {
        const std::int64_t max_lag = *std::max_element(lags.begin(), lags.end());
        if (m < (order - 1) * max_lag + 1)
            throw std::invalid_argument("local_change_curve: window too small for the largest lag");
    }
    ChangeCurve curve;
    curve.method = statistic;
    curve.order = order;
    if (order >= 2) curve.lags = lags;
    curve.length = T;
    curve.margin = m;
    curve.local = true;
    curve.window = m;
    curve.values.assign(static_cast<std::size_t>(T + 1), std::numeric_limits<double>::quiet_NaN());
    curve.weights.assign(static_cast<std::size_t>(T + 1), 1.0);
    for (std::int64_t k = m; k <= T - m; ++k) {
        const double before = detail::window_statistic(ts.values, k - m, m, statistic, lags);
        const double after = detail::window_statistic(ts.values, k, m, statistic, lags);
        curve.values[static_cast<std::size_t>(k)] = before - after;
    }
    return curve;
}

// ---------------------------------------------------------------------------
// Search
// ---------------------------------------------------------------------------

// Argmax of |value| over the admissible range [margin, T-margin]; ties go to
// the smallest index. Pass the series to attach the label of x_k.
inline ChangePoint find_change_point(const ChangeCurve& curve, const TimeSeries* ts = nullptr) {
    const std::int64_t T = curve.length;
    const std::int64_t lo = std::max<std::int64_t>(1, curve.margin);
    const std::int64_t hi = std::min<std::int64_t>(T - 1, T - curve.margin);
    std::int64_t best_k = -1;
    double best_abs = -1.0;
    for (std::int64_t k = lo; k <= hi; ++k) {
        const double v = curve.values[static_cast<std::size_t>(k)];
        if (std::isnan(v)) continue;
        if (std::abs(v) > best_abs) {
            best_abs = std::abs(v);
            best_k = k;
        }
    }
    if (best_k < 0) throw std::invalid_argument("find_change_point: no admissible split point");
    ChangePoint cp;
    cp.index = best_k;
    cp.value = curve.values[static_cast<std::size_t>(best_k)];
    cp.sign = cp.value >= 0.0 ? CurveSign::max : CurveSign::min;
    if (ts && ts->has_labels()) cp.label = ts->labels[static_cast<std::size_t>(best_k - 1)];
    return cp;
}

// ---------------------------------------------------------------------------
// Binary segmentation
// ---------------------------------------------------------------------------

struct SegmentationOptions {
    ChangeMethod method = ChangeMethod::beta;
    int order = 4;  // order_distance only
    std::vector<std::int64_t> lags = {1, 2, 3};
    std::int64_t max_points = 3;
    std::int64_t min_segment = -1;  // -1: twice the default margin
    std::int64_t margin = -1;       // -1: default rule per segment
};

struct SegmentationResult {
    std::vector<ChangePoint> points;  // discovery order
    bool all_zero = false;            // whole-series curve was identically 0
};

namespace detail {

inline ChangeCurve curve_for(const TimeSeries& ts, const SegmentationOptions& opt) {
    switch (opt.method) {
        case ChangeMethod::mean: return mean_change_curve(ts, opt.margin);
        case ChangeMethod::order_distance: return order_change_curve(ts, opt.order, opt.lags, opt.margin);
        default: return scalar_change_curve(ts, opt.method, opt.lags, opt.margin);
    }
}

} // namespace detail

// Finds up to max_points change points: the best split of the whole series
// first, then repeatedly the best split of the longest remaining segment.
// Segments shorter than min_segment on either side of a candidate are not
// created; a segment whose curve is flat zero is left alone.
inline SegmentationResult recursive_segmentation(const TimeSeries& ts, const SegmentationOptions& options = {}) {
    const std::int64_t T = ts.size();
    SegmentationOptions opt = options;
    if (opt.max_points < 1) throw std::invalid_argument("recursive_segmentation: max_points must be >= 1");
    const int order = opt.method == ChangeMethod::order_distance ? opt.order
                                                                 : detail::method_order(opt.method);
    const std::int64_t max_lag =
        opt.method == ChangeMethod::mean ? 1 : *std::max_element(opt.lags.begin(), opt.lags.end());
    if (opt.min_segment < 0) opt.min_segment = 2 * detail::default_margin(T, order, max_lag);

    struct segment {
        std::int64_t lo, hi;  // 1-based inclusive
        bool dead = false;
        std::int64_t size() const { return hi - lo + 1; }
    };
    std::vector<segment> segments{{1, T, false}};
    SegmentationResult result;

    while (static_cast<std::int64_t>(result.points.size()) < opt.max_points) {
        // longest live segment, leftmost on ties
        std::size_t pick = segments.size();
        for (std::size_t i = 0; i < segments.size(); ++i) {
            if (segments[i].dead) continue;
            if (pick == segments.size() || segments[i].size() > segments[pick].size()) pick = i;
        }
        if (pick == segments.size()) break;
        segment& seg = segments[pick];

        ChangePoint found;
        bool ok = false;
        try {
            const TimeSeries sub = slice_by_index(ts, seg.lo, seg.hi);
            ChangeCurve curve = detail::curve_for(sub, opt);
            // candidates must leave min_segment values on both sides
            ChangeCurve restricted = curve;
            restricted.margin = std::max(curve.margin, opt.min_segment);
            ChangePoint local = find_change_point(restricted, nullptr);
            if (local.value != 0.0) {
                found = local;
                found.index = seg.lo - 1 + local.index;  // back to global coordinates
                if (ts.has_labels()) found.label = ts.labels[static_cast<std::size_t>(found.index - 1)];
                ok = true;
            } else if (seg.lo == 1 && seg.hi == T) {
                result.all_zero = true;
            }
        } catch (const std::exception&) {
            ok = false;  // segment too short for the method; retire it
        }
        if (!ok) {
            seg.dead = true;
            continue;
        }
        result.points.push_back(found);
        const segment left{seg.lo, found.index, false};
        const segment right{found.index + 1, seg.hi, false};
        segments[pick] = left;
        segments.push_back(right);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Significance by simulation
// ---------------------------------------------------------------------------

// Fraction of null-model trajectories of length T whose weighted curve
// maximum exceeds observed_max; reported as the p-value of the observed
// change point under that null.  margin < 0 selects the default margin rule;
// pass the margin used for the observed search so the nulls match it.
inline TestResult changepoint_significance(double observed_max, const ModelSpec& null_model,
                                           std::int64_t T, ChangeMethod method,
                                           const std::vector<std::int64_t>& lags, std::int64_t N,
                                           std::uint64_t seed, int n_threads = 0,
                                           std::int64_t margin = -1) {
    if (N < 100) throw std::invalid_argument("changepoint_significance: N must be >= 100");
    if (method == ChangeMethod::mean)
        throw std::invalid_argument("changepoint_significance supports order-based methods");
    const int order = detail::method_order(method);
    const std::int64_t max_lag = *std::max_element(lags.begin(), lags.end());
    if (margin < 0) margin = detail::default_margin(T, order, max_lag);

    std::vector<double> maxima(static_cast<std::size_t>(N), 0.0);
    detail::parallel_for(
        N,
        [&](std::int64_t k) {
            static thread_local std::vector<double> path;
            ModelSpec spec = null_model;
            spec.length = T;
            spec.seed = substream_seed(seed, static_cast<std::uint64_t>(k));
            simulate_into(spec, path);
            maxima[static_cast<std::size_t>(k)] = detail::max_abs_contrast(path, method, order, lags, margin);
        },
        n_threads);

    std::int64_t exceed = 0;
    for (double m : maxima)
        if (m > observed_max) ++exceed;

    TestResult r;
    r.statistic_name = "max_change_curve_" + change_method_name(method);
    r.observed = observed_max;
    r.null_median = detail::median_of(maxima);
    r.p_value = static_cast<double>(exceed) / static_cast<double>(N);
    r.n_simulations = N;
    r.seed = seed;
    r.extra["margin"] = static_cast<double>(margin);
    r.extra["null_q10"] = detail::quantile_of(maxima, 0.10);
    r.extra["null_q90"] = detail::quantile_of(maxima, 0.90);
    return r;
}

} // namespace ordpat
