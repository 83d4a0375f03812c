// ordpat: order-pattern statistics for univariate time series.
//
// Subcommands cover pattern frequency tables, scalar order statistics,
// goodness-of-fit against Brownian motion, i.i.d. randomness tests,
// change-point search and null-model simulation. Every stochastic command
// takes a --seed and echoes it in the output, so artifacts are exactly
// reproducible.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ordpat/ordpat.hpp"

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Shared option blocks
// ---------------------------------------------------------------------------

struct input_options {
    std::string path;
    std::string column;
    std::string label_column;
    std::string range;        // FROM:TO matched against labels
    std::string index_range;  // A:B, 1-based inclusive
    std::string preset;
    bool apply_log = false;
    std::string jitter = "0";  // amplitude, or "auto"
    std::uint64_t jitter_seed = 1;
    std::string missing = "drop";
};

struct output_options {
    std::string path;    // empty: stdout
    std::string format = "json";
};

void add_input_options(CLI::App* cmd, input_options& in) {
    cmd->add_option("--input", in.path, "input CSV file")->required();
    cmd->add_option("--column", in.column, "value column, by header name or 1-based position")
        ->required();
    cmd->add_option("--label-column", in.label_column, "label column (dates), by name or position");
    cmd->add_option("--range", in.range,
                    "keep rows with label in FROM:TO; TO may be a prefix, e.g. 2015:2019");
    cmd->add_option("--index-range", in.index_range, "keep rows A:B by 1-based position");
    cmd->add_option("--preset", in.preset,
                    "named label range: wti-1986-2001, wti-2001-08, wti-2009-14, wti-2015-19")
        ->check(CLI::IsMember({"wti-1986-2001", "wti-2001-08", "wti-2009-14", "wti-2015-19"}));
    cmd->add_flag("--log", in.apply_log, "log-transform the values");
    cmd->add_option("--jitter", in.jitter, "tie-breaking noise amplitude, or 'auto'");
    cmd->add_option("--jitter-seed", in.jitter_seed, "seed of the tie-breaking noise");
    cmd->add_option("--missing", in.missing, "missing-value policy")
        ->check(CLI::IsMember({"drop", "fail"}));
}

void add_output_options(CLI::App* cmd, output_options& out, const std::string& default_format) {
    out.format = default_format;
    cmd->add_option("--output", out.path, "output file (default: stdout)");
    cmd->add_option("--format", out.format, "output format")->check(CLI::IsMember({"json", "csv"}));
}

std::pair<std::string, std::string> split_range(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("range must look like FROM:TO, got '" + s + "'");
    return {s.substr(0, colon), s.substr(colon + 1)};
}

// The four segments used throughout the oil-price discussion.
std::pair<std::string, std::string> preset_range(const std::string& name) {
    if (name == "wti-1986-2001") return {"1986-01-02", "2001-10-16"};
    if (name == "wti-2001-08") return {"2001-10-17", "2008-07-07"};
    if (name == "wti-2009-14") return {"2008-12-26", "2014-07-22"};
    if (name == "wti-2015-19") return {"2014-07-23", "2019-09-03"};
    throw std::invalid_argument("unknown preset '" + name + "'");
}

// "1..6", "1-6", "3", or "1,2,5"
std::vector<std::int64_t> parse_lags(const std::string& s) {
    std::vector<std::int64_t> lags;
    auto parse_int = [](const std::string& t) {
        std::size_t used = 0;
        const std::int64_t v = std::stoll(t, &used);
        if (used != t.size()) throw std::invalid_argument("bad lag '" + t + "'");
        return v;
    };
    auto add_piece = [&](const std::string& piece) {
        auto dots = piece.find("..");
        std::size_t seplen = 2;
        if (dots == std::string::npos) {
            dots = piece.find('-', 1);
            seplen = 1;
        }
        if (dots == std::string::npos) {
            lags.push_back(parse_int(piece));
            return;
        }
        const std::int64_t a = parse_int(piece.substr(0, dots));
        const std::int64_t b = parse_int(piece.substr(dots + seplen));
        if (b < a) throw std::invalid_argument("empty lag range '" + piece + "'");
        for (std::int64_t d = a; d <= b; ++d) lags.push_back(d);
    };
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const std::string piece =
            comma == std::string::npos ? s.substr(start) : s.substr(start, comma - start);
        if (piece.empty()) throw std::invalid_argument("bad lag list '" + s + "'");
        add_piece(piece);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    for (std::int64_t d : lags)
        if (d < 1) throw std::invalid_argument("lags must be >= 1");
    return lags;
}

ordpat::TimeSeries load_input(const input_options& in) {
    std::optional<ordpat::ColumnSelector> label;
    if (!in.label_column.empty()) label = ordpat::ColumnSelector::parse(in.label_column);
    ordpat::TimeSeries ts =
        ordpat::load_csv(in.path, ordpat::ColumnSelector::parse(in.column), label);

    if (!in.preset.empty() && !in.range.empty())
        throw std::invalid_argument("--preset and --range are mutually exclusive");
    std::string from, to;
    if (!in.preset.empty()) std::tie(from, to) = preset_range(in.preset);
    if (!in.range.empty()) std::tie(from, to) = split_range(in.range);
    if (!from.empty() || !to.empty()) {
        if (!ts.has_labels())
            throw std::invalid_argument("label ranges need --label-column");
        ts = ordpat::slice_by_label(ts, from, to);
    }
    if (!in.index_range.empty()) {
        const auto [a, b] = split_range(in.index_range);
        ts = ordpat::slice_by_index(ts, std::stoll(a), std::stoll(b));
    }

    ordpat::PreprocessSpec prep;
    prep.apply_log = in.apply_log;
    prep.missing_policy =
        in.missing == "fail" ? ordpat::MissingPolicy::fail : ordpat::MissingPolicy::drop;
    prep.jitter_seed = in.jitter_seed;
    if (in.jitter == "auto") {
        prep.jitter_amplitude = ordpat::auto_jitter_amplitude(ts);
    } else {
        prep.jitter_amplitude = std::stod(in.jitter);
    }
    return ordpat::preprocess(ts, prep);
}

json input_config(const input_options& in) {
    return json{{"input", in.path},        {"column", in.column},
                {"label_column", in.label_column}, {"range", in.range},
                {"index_range", in.index_range},   {"preset", in.preset},
                {"log", in.apply_log},     {"jitter", in.jitter},
                {"jitter_seed", in.jitter_seed},   {"missing", in.missing}};
}

// ---------------------------------------------------------------------------
// Artifact writing
// ---------------------------------------------------------------------------

json make_meta(const std::string& command, std::optional<std::uint64_t> seed, const json& config) {
    json meta{{"tool", "ordpat"},
              {"version", ORDPAT_VERSION},
              {"command", command},
              {"config", config}};
    if (seed) meta["seed"] = *seed;
    return meta;
}

// JSON: one envelope {meta, result}. CSV: meta as comment lines, then the
// body the caller provides.
void write_artifact(const output_options& out, const json& meta, const json& result,
                    const std::function<void(std::ostream&)>& csv_body) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out.path.empty()) {
        file.open(out.path, std::ios::binary);
        if (!file) throw ordpat::io_error("cannot write '" + out.path + "'");
        os = &file;
    }
    if (out.format == "json") {
        const json envelope{{"meta", meta}, {"result", result}};
        *os << envelope.dump(2) << "\n";
    } else {
        std::vector<std::pair<std::string, std::string>> kv;
        for (const auto& [key, value] : meta.items())
            kv.emplace_back(key, value.is_string() ? value.get<std::string>() : value.dump());
        ordpat::write_metadata_comments(*os, kv);
        csv_body(*os);
    }
    if (os->fail()) throw ordpat::io_error("write failed" + (out.path.empty() ? "" : ": " + out.path));
}

ordpat::ModelSpec make_model(const std::string& name, double phi, const std::string& noise,
                             std::int64_t T, std::uint64_t seed, std::int64_t burn_in) {
    ordpat::ModelSpec spec;
    if (name == "bm") {
        spec.kind = ordpat::ModelKind::bm;
    } else if (name == "ar1") {
        spec.kind = ordpat::ModelKind::ar1;
    } else {
        throw std::invalid_argument("unknown model '" + name + "'");
    }
    spec.phi = phi;
    spec.noise = noise == "exponential" ? ordpat::NoiseKind::exponential_centered
                                        : ordpat::NoiseKind::gaussian;
    spec.length = T;
    spec.seed = seed;
    spec.burn_in = burn_in;
    return spec;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int run_patterns(const input_options& in, int order, const std::string& lags_s, bool average,
                 const output_options& out) {
    const ordpat::TimeSeries ts = load_input(in);
    const std::vector<std::int64_t> lags = parse_lags(lags_s);
    std::vector<ordpat::PatternDistribution> per_lag;
    per_lag.reserve(lags.size());
    for (std::int64_t d : lags) per_lag.push_back(ordpat::pattern_frequencies(ts.values, order, d));
    std::optional<ordpat::PatternDistribution> averaged;
    if (average || lags.size() > 1) averaged = ordpat::lag_averaged_frequencies(ts.values, order, lags);

    json config = input_config(in);
    config["order"] = order;
    config["lags"] = lags;
    json result{{"length", ts.size()}, {"per_lag", per_lag}};
    if (averaged) result["averaged"] = *averaged;
    write_artifact(out, make_meta("patterns", std::nullopt, config), result, [&](std::ostream& os) {
        ordpat::write_lag_table_csv(os, per_lag, averaged ? &*averaged : nullptr);
    });
    return 0;
}

int run_summary(const input_options& in, const std::string& lags_s, const output_options& out) {
    const ordpat::TimeSeries ts = load_input(in);
    const std::vector<std::int64_t> lags = parse_lags(lags_s);
    const ordpat::OrderSummary summary = ordpat::summarize(ts.values, lags);
    json config = input_config(in);
    config["lags"] = lags;
    write_artifact(out, make_meta("summary", std::nullopt, config), summary, [&](std::ostream& os) {
        os << "lag,turning_rate,balance,entropy,cond_entropy\n";
        for (std::size_t j = 0; j < lags.size(); ++j)
            os << lags[j] << ',' << ordpat::format_double(summary.turning_rate_by_lag[j]) << ','
               << ordpat::format_double(summary.balance_by_lag[j]) << ','
               << ordpat::format_double(summary.entropy_by_lag[j]) << ','
               << ordpat::format_double(summary.cond_entropy_by_lag[j]) << "\n";
    });
    return 0;
}

int run_test_bm(const input_options& in, int order, const std::string& lags_s, std::int64_t N,
                std::uint64_t seed, int threads, const std::string& dump_null,
                const output_options& out) {
    const ordpat::TimeSeries ts = load_input(in);
    const std::vector<std::int64_t> lags = parse_lags(lags_s);
    const ordpat::PatternDistribution q = ordpat::lag_averaged_frequencies(ts.values, order, lags);
    std::vector<double> null_sample;
    const ordpat::TestResult r = ordpat::mc_distance_test(
        q, ts.size(), N, seed, lags, dump_null.empty() ? nullptr : &null_sample, threads);
    if (!dump_null.empty()) {
        std::ofstream file(dump_null, std::ios::binary);
        if (!file) throw ordpat::io_error("cannot write '" + dump_null + "'");
        ordpat::write_sample_csv(file, null_sample, "distance");
    }
    json config = input_config(in);
    config["order"] = order;
    config["lags"] = lags;
    config["N"] = N;
    json result = r;
    result["length"] = ts.size();
    write_artifact(out, make_meta("test-bm", seed, config), result, [&](std::ostream& os) {
        os << "statistic,observed,null_median,p_value,n_simulations\n"
           << r.statistic_name << ',' << ordpat::format_double(r.observed) << ','
           << ordpat::format_double(r.null_median) << ',' << ordpat::format_double(r.p_value) << ','
           << r.n_simulations << "\n";
    });
    return 0;
}

int run_bienayme(const input_options& in, const std::string& null_model, bool exact,
                 const output_options& out) {
    const ordpat::TimeSeries ts = load_input(in);
    std::pair<ordpat::TestResult, ordpat::TestResult> results =
        null_model == "bm" ? ordpat::coin_toss_test(ts, exact) : ordpat::bienayme_test(ts);
    json config = input_config(in);
    config["null"] = null_model;
    config["exact"] = exact;
    const json result{{"turning_points", results.first},
                      {"up_steps", results.second},
                      {"length", ts.size()}};
    write_artifact(out, make_meta("bienayme", std::nullopt, config), result, [&](std::ostream& os) {
        os << "statistic,observed,null_median,z,p_value\n";
        for (const auto* r : {&results.first, &results.second})
            os << r->statistic_name << ',' << ordpat::format_double(r->observed) << ','
               << ordpat::format_double(r->null_median) << ','
               << ordpat::format_double(r->extra.at("z")) << ','
               << ordpat::format_double(r->p_value) << "\n";
    });
    return 0;
}

struct changepoint_options {
    std::string method = "beta";
    int order = 4;
    std::string lags = "1,2,3";
    std::int64_t margin = -1;
    std::string null_model;  // empty: no significance simulation
    double phi = 0.0;
    std::string noise = "gaussian";
    std::int64_t N = 1000;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string curve_out;
};

ordpat::ChangeCurve build_curve(const ordpat::TimeSeries& ts, const changepoint_options& opt) {
    const ordpat::ChangeMethod method = ordpat::parse_change_method(opt.method);
    const std::vector<std::int64_t> lags = parse_lags(opt.lags);
    switch (method) {
        case ordpat::ChangeMethod::mean: return ordpat::mean_change_curve(ts, opt.margin);
        case ordpat::ChangeMethod::order_distance:
            return ordpat::order_change_curve(ts, opt.order, lags, opt.margin);
        default: return ordpat::scalar_change_curve(ts, method, lags, opt.margin);
    }
}

int run_changepoint(const input_options& in, const changepoint_options& opt,
                    const output_options& out) {
    const ordpat::TimeSeries ts = load_input(in);
    const ordpat::ChangeCurve curve = build_curve(ts, opt);
    const ordpat::ChangePoint point = ordpat::find_change_point(curve, &ts);
    if (!opt.curve_out.empty()) {
        std::ofstream file(opt.curve_out, std::ios::binary);
        if (!file) throw ordpat::io_error("cannot write '" + opt.curve_out + "'");
        ordpat::write_curve_csv(file, curve, &ts);
    }
    json config = input_config(in);
    config["method"] = opt.method;
    config["order"] = curve.order;
    config["lags"] = curve.lags;
    config["margin"] = curve.margin;
    json result{{"change_point", point}, {"length", ts.size()}, {"margin", curve.margin}};
    std::optional<std::uint64_t> seed;
    if (!opt.null_model.empty()) {
        const ordpat::ModelSpec null_spec =
            make_model(opt.null_model, opt.phi, opt.noise, ts.size(), 0, 0);
        result["significance"] = ordpat::changepoint_significance(
            std::abs(point.value), null_spec, ts.size(), ordpat::parse_change_method(opt.method),
            parse_lags(opt.lags), opt.N, opt.seed, opt.threads, curve.margin);
        config["null"] = opt.null_model;
        config["phi"] = opt.phi;
        config["noise"] = opt.noise;
        config["N"] = opt.N;
        seed = opt.seed;
    }
    write_artifact(out, make_meta("changepoint", seed, config), result, [&](std::ostream& os) {
        ordpat::write_curve_csv(os, curve, &ts);
    });
    return 0;
}

int run_segment(const input_options& in, const std::string& method, int order,
                const std::string& lags_s, std::int64_t max_points, std::int64_t min_segment,
                std::int64_t margin, const output_options& out) {
    const ordpat::TimeSeries ts = load_input(in);
    ordpat::SegmentationOptions opt;
    opt.method = ordpat::parse_change_method(method);
    opt.order = order;
    opt.lags = parse_lags(lags_s);
    opt.max_points = max_points;
    opt.min_segment = min_segment;
    opt.margin = margin;
    const ordpat::SegmentationResult result = ordpat::recursive_segmentation(ts, opt);
    json config = input_config(in);
    config["method"] = method;
    config["order"] = order;
    config["lags"] = opt.lags;
    config["max_points"] = max_points;
    config["min_segment"] = min_segment;
    write_artifact(out, make_meta("segment", std::nullopt, config), result, [&](std::ostream& os) {
        os << "index,label,value,sign\n";
        for (const auto& p : result.points)
            os << p.index << ',' << p.label << ',' << ordpat::format_double(p.value) << ','
               << (p.sign == ordpat::CurveSign::max ? "max" : "min") << "\n";
    });
    return 0;
}

int run_local(const input_options& in, const std::string& statistic, std::int64_t window,
              const std::string& lags_s, const output_options& out) {
    const ordpat::TimeSeries ts = load_input(in);
    const ordpat::ChangeCurve curve = ordpat::local_change_curve(
        ts, ordpat::parse_change_method(statistic), window, parse_lags(lags_s));
    const ordpat::ChangePoint point = ordpat::find_change_point(curve, &ts);
    json config = input_config(in);
    config["statistic"] = statistic;
    config["window"] = window;
    config["lags"] = curve.lags;
    const json result{{"curve", curve}, {"max_point", point}, {"length", ts.size()}};
    write_artifact(out, make_meta("local", std::nullopt, config), result, [&](std::ostream& os) {
        ordpat::write_curve_csv(os, curve, &ts);
    });
    return 0;
}

int run_simulate(const std::string& model, double phi, const std::string& noise, std::int64_t T,
                 std::uint64_t seed, std::int64_t burn_in, const output_options& out) {
    const ordpat::ModelSpec spec = make_model(model, phi, noise, T, seed, burn_in);
    const ordpat::TimeSeries ts = ordpat::simulate(spec);
    const json config{{"model", model}, {"phi", phi},   {"noise", noise},
                      {"T", T},         {"burn_in", burn_in}};
    write_artifact(out, make_meta("simulate", seed, config), json{{"length", ts.size()}, {"values", ts.values}},
                   [&](std::ostream& os) { ordpat::write_series_csv(os, ts); });
    return 0;
}

int run_variance_lag(const std::string& model, double phi, const std::string& noise, std::int64_t T,
                     std::int64_t trials, const std::string& lags_s, std::uint64_t seed, int threads,
                     const output_options& out) {
    const ordpat::ModelSpec spec = make_model(model, phi, noise, T, 0, 0);
    const std::vector<std::int64_t> lags = parse_lags(lags_s);
    const ordpat::VarianceVsLag table = ordpat::variance_vs_lag(spec, T, trials, lags, seed, threads);
    json result = table;
    if (lags.size() >= 2) {
        std::vector<double> x(lags.begin(), lags.end());
        result["slope_var_alpha"] = ordpat::least_squares_slope(x, table.var_alpha);
        result["slope_var_beta"] = ordpat::least_squares_slope(x, table.var_beta);
    }
    const json config{{"model", model}, {"phi", phi},     {"noise", noise}, {"T", T},
                      {"trials", trials}, {"lags", lags}};
    write_artifact(out, make_meta("variance-lag", seed, config), result,
                   [&](std::ostream& os) { ordpat::write_variance_table_csv(os, table); });
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"order-pattern statistics, randomness tests and change-point search"};
    app.require_subcommand(1);
    std::function<int()> action;

    // patterns
    {
        auto in = std::make_shared<input_options>();
        auto out = std::make_shared<output_options>();
        auto order = std::make_shared<int>(4);
        auto lags = std::make_shared<std::string>("1");
        auto average = std::make_shared<bool>(false);
        CLI::App* cmd = app.add_subcommand("patterns", "pattern frequency table");
        add_input_options(cmd, *in);
        add_output_options(cmd, *out, "json");
        cmd->add_option("--order", *order, "pattern order (2..6)");
        cmd->add_option("--lags", *lags, "lag list, e.g. 1..10 or 1,2,3");
        cmd->add_flag("--average", *average, "also report the lag-averaged distribution");
        cmd->callback([&action, in, out, order, lags, average] {
            action = [=] { return run_patterns(*in, *order, *lags, *average, *out); };
        });
    }

    // summary
    {
        auto in = std::make_shared<input_options>();
        auto out = std::make_shared<output_options>();
        auto lags = std::make_shared<std::string>("1,2,3");
        CLI::App* cmd = app.add_subcommand("summary", "turning rate, balance and entropies per lag");
        add_input_options(cmd, *in);
        add_output_options(cmd, *out, "json");
        cmd->add_option("--lags", *lags, "lag list");
        cmd->callback([&action, in, out, lags] {
            action = [=] { return run_summary(*in, *lags, *out); };
        });
    }

    // test-bm
    {
        auto in = std::make_shared<input_options>();
        auto out = std::make_shared<output_options>();
        auto order = std::make_shared<int>(4);
        auto lags = std::make_shared<std::string>("1,2,3");
        auto N = std::make_shared<std::int64_t>(10000);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto threads = std::make_shared<int>(0);
        auto dump_null = std::make_shared<std::string>();
        CLI::App* cmd = app.add_subcommand(
            "test-bm", "Monte Carlo distance test of the pattern distribution against Brownian motion");
        add_input_options(cmd, *in);
        add_output_options(cmd, *out, "json");
        cmd->add_option("--order", *order, "pattern order (2..4)");
        cmd->add_option("--lags", *lags, "lags averaged into the tested distribution");
        cmd->add_option("--N", *N, "number of null simulations");
        cmd->add_option("--seed", *seed, "master seed of the null simulations");
        cmd->add_option("--threads", *threads, "worker threads (0: all cores)");
        cmd->add_option("--dump-null", *dump_null, "write the null distance sample to this CSV");
        cmd->callback([&action, in, out, order, lags, N, seed, threads, dump_null] {
            action = [=] { return run_test_bm(*in, *order, *lags, *N, *seed, *threads, *dump_null, *out); };
        });
    }

    // bienayme
    {
        auto in = std::make_shared<input_options>();
        auto out = std::make_shared<output_options>();
        auto null_model = std::make_shared<std::string>("iid");
        auto exact = std::make_shared<bool>(false);
        CLI::App* cmd =
            app.add_subcommand("bienayme", "turning-point and up-step count tests (i.i.d. or BM null)");
        add_input_options(cmd, *in);
        add_output_options(cmd, *out, "json");
        cmd->add_option("--null", *null_model, "null hypothesis")
            ->check(CLI::IsMember({"iid", "bm"}));
        cmd->add_flag("--exact", *exact, "exact binomial p-values (BM null, short series)");
        cmd->callback([&action, in, out, null_model, exact] {
            action = [=] { return run_bienayme(*in, *null_model, *exact, *out); };
        });
    }

    // changepoint
    {
        auto in = std::make_shared<input_options>();
        auto out = std::make_shared<output_options>();
        auto opt = std::make_shared<changepoint_options>();
        CLI::App* cmd = app.add_subcommand("changepoint", "global change-point curve and its extremum");
        add_input_options(cmd, *in);
        add_output_options(cmd, *out, "json");
        cmd->add_option("--method", opt->method,
                        "mean, order_distance, beta, alpha, entropy or cond_entropy");
        cmd->add_option("--order", opt->order, "pattern order for order_distance");
        cmd->add_option("--lags", opt->lags, "lag list");
        cmd->add_option("--margin", opt->margin, "search margin (-1: default rule)");
        cmd->add_option("--null", opt->null_model, "null model for significance: bm or ar1");
        cmd->add_option("--phi", opt->phi, "AR(1) coefficient of the null");
        cmd->add_option("--noise", opt->noise, "AR(1) noise: gaussian or exponential")
            ->check(CLI::IsMember({"gaussian", "exponential"}));
        cmd->add_option("--N", opt->N, "null simulations");
        cmd->add_option("--seed", opt->seed, "master seed of the null simulations");
        cmd->add_option("--threads", opt->threads, "worker threads (0: all cores)");
        cmd->add_option("--curve-out", opt->curve_out, "also write the curve to this CSV");
        cmd->callback([&action, in, out, opt] {
            action = [=] { return run_changepoint(*in, *opt, *out); };
        });
    }

    // segment
    {
        auto in = std::make_shared<input_options>();
        auto out = std::make_shared<output_options>();
        auto method = std::make_shared<std::string>("beta");
        auto order = std::make_shared<int>(4);
        auto lags = std::make_shared<std::string>("1,2,3");
        auto max_points = std::make_shared<std::int64_t>(3);
        auto min_segment = std::make_shared<std::int64_t>(-1);
        auto margin = std::make_shared<std::int64_t>(-1);
        CLI::App* cmd = app.add_subcommand("segment", "recursive binary change-point segmentation");
        add_input_options(cmd, *in);
        add_output_options(cmd, *out, "json");
        cmd->add_option("--method", *method, "curve statistic");
        cmd->add_option("--order", *order, "pattern order for order_distance");
        cmd->add_option("--lags", *lags, "lag list");
        cmd->add_option("--max-points", *max_points, "stop after this many change points");
        cmd->add_option("--min-segment", *min_segment, "smallest allowed segment (-1: default)");
        cmd->add_option("--margin", *margin, "per-segment search margin (-1: default rule)");
        cmd->callback([&action, in, out, method, order, lags, max_points, min_segment, margin] {
            action = [=] {
                return run_segment(*in, *method, *order, *lags, *max_points, *min_segment, *margin, *out);
            };
        });
    }

    // local
    {
        auto in = std::make_shared<input_options>();
        auto out = std::make_shared<output_options>();
        auto statistic = std::make_shared<std::string>("beta");
        auto window = std::make_shared<std::int64_t>(150);
        auto lags = std::make_shared<std::string>("1,2,3");
        CLI::App* cmd =
            app.add_subcommand("local", "fixed-window before/after curve for local change points");
        add_input_options(cmd, *in);
        add_output_options(cmd, *out, "csv");
        cmd->add_option("--statistic", *statistic, "mean, beta, alpha, entropy or cond_entropy");
        cmd->add_option("--window", *window, "window size m");
        cmd->add_option("--lags", *lags, "lag list");
        cmd->callback([&action, in, out, statistic, window, lags] {
            action = [=] { return run_local(*in, *statistic, *window, *lags, *out); };
        });
    }

    // simulate
    {
        auto out = std::make_shared<output_options>();
        auto model = std::make_shared<std::string>("bm");
        auto phi = std::make_shared<double>(0.0);
        auto noise = std::make_shared<std::string>("gaussian");
        auto T = std::make_shared<std::int64_t>(0);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto burn_in = std::make_shared<std::int64_t>(0);
        CLI::App* cmd = app.add_subcommand("simulate", "draw one trajectory of a null model");
        add_output_options(cmd, *out, "csv");
        cmd->add_option("--model", *model, "bm or ar1")->check(CLI::IsMember({"bm", "ar1"}));
        cmd->add_option("--phi", *phi, "AR(1) coefficient");
        cmd->add_option("--noise", *noise, "AR(1) noise: gaussian or exponential")
            ->check(CLI::IsMember({"gaussian", "exponential"}));
        cmd->add_option("--T", *T, "series length")->required();
        cmd->add_option("--seed", *seed, "seed");
        cmd->add_option("--burn-in", *burn_in, "discarded leading AR(1) steps");
        cmd->callback([&action, out, model, phi, noise, T, seed, burn_in] {
            action = [=] { return run_simulate(*model, *phi, *noise, *T, *seed, *burn_in, *out); };
        });
    }

    // variance-lag
    {
        auto out = std::make_shared<output_options>();
        auto model = std::make_shared<std::string>("bm");
        auto phi = std::make_shared<double>(0.0);
        auto noise = std::make_shared<std::string>("gaussian");
        auto T = std::make_shared<std::int64_t>(2500);
        auto trials = std::make_shared<std::int64_t>(10000);
        auto lags = std::make_shared<std::string>("1..10");
        auto seed = std::make_shared<std::uint64_t>(1);
        auto threads = std::make_shared<int>(0);
        CLI::App* cmd = app.add_subcommand(
            "variance-lag", "empirical variance of turning rate and balance as a function of the lag");
        add_output_options(cmd, *out, "json");
        cmd->add_option("--model", *model, "bm or ar1")->check(CLI::IsMember({"bm", "ar1"}));
        cmd->add_option("--phi", *phi, "AR(1) coefficient");
        cmd->add_option("--noise", *noise, "AR(1) noise: gaussian or exponential")
            ->check(CLI::IsMember({"gaussian", "exponential"}));
        cmd->add_option("--T", *T, "trajectory length");
        cmd->add_option("--trials", *trials, "number of trajectories");
        cmd->add_option("--lags", *lags, "lag list");
        cmd->add_option("--seed", *seed, "master seed");
        cmd->add_option("--threads", *threads, "worker threads (0: all cores)");
        cmd->callback([&action, out, model, phi, noise, T, trials, lags, seed, threads] {
            action = [=] {
                return run_variance_lag(*model, *phi, *noise, *T, *trials, *lags, *seed, *threads, *out);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        return action ? action() : 1;
    } catch (const ordpat::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ordpat::data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
