#pragma once

// Serialization: JSON bindings for the result types and plot-ready CSV
// writers. Doubles are printed via std::to_chars, the shortest form that
// parses back to the same value, so identical runs produce identical bytes.

#include <charconv>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ordpat/changepoint.hpp"
#include "ordpat/hypotest.hpp"
#include "ordpat/models.hpp"
#include "ordpat/ordstats.hpp"
#include "ordpat/patterns.hpp"
#include "ordpat/series.hpp"

namespace ordpat {

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline void to_json(nlohmann::json& j, const PatternDistribution& d) {
    nlohmann::json freq = nlohmann::json::object();
    nlohmann::json counts = nlohmann::json::object();
    for (std::size_t k = 0; k < d.frequencies.size(); ++k) {
        const std::string key = pattern_string(d.order, static_cast<std::int64_t>(k + 1));
        freq[key] = d.frequencies[k];
        counts[key] = d.counts[k];
    }
    j = nlohmann::json{{"order", d.order},
                       {"lag", d.lag},
                       {"window_count", d.window_count},
                       {"frequencies", freq},
                       {"counts", counts}};
}

inline void to_json(nlohmann::json& j, const OrderSummary& s) {
    j = nlohmann::json{{"length", s.length},
                       {"lags", s.lags},
                       {"turning_rate_by_lag", s.turning_rate_by_lag},
                       {"balance_by_lag", s.balance_by_lag},
                       {"entropy_by_lag", s.entropy_by_lag},
                       {"cond_entropy_by_lag", s.cond_entropy_by_lag},
                       {"mean_turning_rate", s.mean_turning_rate},
                       {"mean_balance", s.mean_balance},
                       {"z_turning_rate", s.z_turning_rate},
                       {"z_balance", s.z_balance}};
}

inline void to_json(nlohmann::json& j, const TestResult& r) {
    j = nlohmann::json{{"statistic_name", r.statistic_name},
                       {"observed", r.observed},
                       {"null_median", r.null_median},
                       {"p_value", r.p_value},
                       {"n_simulations", r.n_simulations},
                       {"seed", r.seed},
                       {"extra", r.extra}};
}

inline void to_json(nlohmann::json& j, const ChangePoint& p) {
    j = nlohmann::json{{"index", p.index},
                       {"label", p.label},
                       {"value", p.value},
                       {"sign", p.sign == CurveSign::max ? "max" : "min"}};
}

inline void to_json(nlohmann::json& j, const SegmentationResult& r) {
    j = nlohmann::json{{"points", r.points}, {"all_zero", r.all_zero}};
}

inline void to_json(nlohmann::json& j, const McPatternEstimate& e) {
    j = nlohmann::json{{"order", e.order},
                       {"samples", e.samples},
                       {"window_count", e.window_count},
                       {"probabilities", e.probabilities},
                       {"std_errors", e.std_errors}};
}

inline void to_json(nlohmann::json& j, const VarianceVsLag& v) {
    j = nlohmann::json{{"lags", v.lags},
                       {"mean_alpha", v.mean_alpha},
                       {"mean_beta", v.mean_beta},
                       {"var_alpha", v.var_alpha},
                       {"var_beta", v.var_beta},
                       {"trials", v.trials},
                       {"length", v.length},
                       {"degenerate", v.degenerate}};
}

inline void to_json(nlohmann::json& j, const ChangeCurve& c) {
    nlohmann::json values = nlohmann::json::array();
    nlohmann::json weights = nlohmann::json::array();
    for (std::int64_t k = 1; k <= c.length - 1; ++k) {
        values.push_back(c.values[static_cast<std::size_t>(k)]);  // NaN serializes as null
        weights.push_back(c.weights[static_cast<std::size_t>(k)]);
    }
    j = nlohmann::json{{"method", change_method_name(c.method)},
                       {"order", c.order},
                       {"lags", c.lags},
                       {"length", c.length},
                       {"margin", c.margin},
                       {"local", c.local},
                       {"window", c.window},
                       {"first_k", 1},
                       {"values", values},
                       {"weights", weights}};
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

namespace detail {

// Quote a CSV field only when it needs it.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

} // namespace detail

// Leading "# key: value" lines so a CSV artifact carries its own provenance.
inline void write_metadata_comments(std::ostream& os,
                                    const std::vector<std::pair<std::string, std::string>>& kv) {
    for (const auto& [key, value] : kv) os << "# " << key << ": " << value << "\n";
}

inline void write_distribution_csv(std::ostream& os, const PatternDistribution& d) {
    os << "index,pattern,count,frequency\n";
    for (std::size_t k = 0; k < d.frequencies.size(); ++k)
        os << (k + 1) << ',' << pattern_string(d.order, static_cast<std::int64_t>(k + 1)) << ','
           << d.counts[k] << ',' << format_double(d.frequencies[k]) << "\n";
}

// One column per lag: the layout of a frequencies-vs-lag table. Pass the
// lag-averaged distribution to append it as a "mean" column.
inline void write_lag_table_csv(std::ostream& os, const std::vector<PatternDistribution>& per_lag,
                                const PatternDistribution* averaged = nullptr) {
    if (per_lag.empty()) return;
    const int order = per_lag[0].order;
    os << "index,pattern";
    for (const auto& d : per_lag) os << ",lag" << d.lag;
    if (averaged) os << ",mean";
    os << "\n";
    for (std::size_t k = 0; k < per_lag[0].frequencies.size(); ++k) {
        os << (k + 1) << ',' << pattern_string(order, static_cast<std::int64_t>(k + 1));
        for (const auto& d : per_lag) os << ',' << format_double(d.frequencies[k]);
        if (averaged) os << ',' << format_double(averaged->frequencies[k]);
        os << "\n";
    }
}

// Rows only where the curve is defined.
inline void write_curve_csv(std::ostream& os, const ChangeCurve& c, const TimeSeries* ts = nullptr) {
    const bool labeled = ts && ts->has_labels();
    os << "k,label,value,c_k\n";
    for (std::int64_t k = 1; k <= c.length - 1; ++k) {
        const double v = c.values[static_cast<std::size_t>(k)];
        if (std::isnan(v)) continue;
        os << k << ',';
        if (labeled) os << detail::csv_field(ts->labels[static_cast<std::size_t>(k - 1)]);
        os << ',' << format_double(v) << ',' << format_double(c.weights[static_cast<std::size_t>(k)])
           << "\n";
    }
}

inline void write_series_csv(std::ostream& os, const TimeSeries& ts) {
    const bool labeled = ts.has_labels();
    os << (labeled ? "index,label,value\n" : "index,value\n");
    for (std::int64_t i = 0; i < ts.size(); ++i) {
        os << (i + 1) << ',';
        if (labeled) os << detail::csv_field(ts.labels[static_cast<std::size_t>(i)]) << ',';
        os << format_double(ts.values[static_cast<std::size_t>(i)]) << "\n";
    }
}

inline void write_variance_table_csv(std::ostream& os, const VarianceVsLag& v) {
    os << "lag,mean_alpha,var_alpha,mean_beta,var_beta\n";
    for (std::size_t j = 0; j < v.lags.size(); ++j)
        os << v.lags[j] << ',' << format_double(v.mean_alpha[j]) << ',' << format_double(v.var_alpha[j])
           << ',' << format_double(v.mean_beta[j]) << ',' << format_double(v.var_beta[j]) << "\n";
}

inline void write_sample_csv(std::ostream& os, const std::vector<double>& sample,
                             const std::string& column_name) {
    os << column_name << "\n";
    for (double v : sample) os << format_double(v) << "\n";
}

} // namespace ordpat
