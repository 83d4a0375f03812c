#pragma once

// Univariate time series: CSV ingestion, range selection and preprocessing
// (log transform, tie-breaking jitter, missing-value handling).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ordpat/errors.hpp"
#include "ordpat/rng.hpp"

namespace ordpat {

// Values straight from load_csv may contain NaN markers for missing cells;
// preprocess() resolves them and guarantees an all-finite series.
struct TimeSeries {
    std::vector<double> values;
    std::vector<std::string> labels;  // empty, or one label per value
    std::string name;

    std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }
    bool has_labels() const { return !labels.empty(); }
};

enum class MissingPolicy { drop, fail };

struct PreprocessSpec {
    bool apply_log = false;
    double jitter_amplitude = 0.0;  // uniform noise on [0, amplitude); 0 disables
    std::uint64_t jitter_seed = 0;
    MissingPolicy missing_policy = MissingPolicy::drop;
};

namespace detail {

inline double quantile_sorted(const std::vector<double>& sorted, double q) {
    const std::size_t n = sorted.size();
    if (n == 0) return std::numeric_limits<double>::quiet_NaN();
    if (n == 1) return sorted[0];
    const double pos = q * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, n - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

inline bool all_distinct(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
}

} // namespace detail

// Amplitude used when the caller asks for automatic jitter: 1e-7 times the
// interquartile range, so the perturbation is unit-free. Degenerate spreads
// fall back to the full range, then to the value scale.
inline double auto_jitter_amplitude(const TimeSeries& ts) {
    std::vector<double> finite;
    finite.reserve(ts.values.size());
    for (double v : ts.values)
        if (std::isfinite(v)) finite.push_back(v);
    if (finite.empty()) return 1e-7;
    std::sort(finite.begin(), finite.end());
    double scale = detail::quantile_sorted(finite, 0.75) - detail::quantile_sorted(finite, 0.25);
    if (scale <= 0.0) scale = finite.back() - finite.front();
    if (scale <= 0.0) scale = std::max(1.0, std::abs(finite.front()));
    return 1e-7 * scale;
}

// Missing markers first, then log, then jitter. Deterministic: the same
// (series, spec) pair always yields the bit-identical result. When jitter is
// on, the output is guaranteed pairwise distinct; if a tie survives a draw,
// the noise is redrawn from a seed derived from (jitter_seed, attempt).
inline TimeSeries preprocess(const TimeSeries& ts, const PreprocessSpec& spec) {
    if (!(spec.jitter_amplitude >= 0.0))
        throw std::invalid_argument("preprocess: jitter_amplitude must be >= 0");
    if (ts.has_labels() && ts.labels.size() != ts.values.size())
        throw std::invalid_argument("preprocess: labels/values length mismatch");

    TimeSeries out;
    out.name = ts.name;
    out.values.reserve(ts.values.size());
    const bool labeled = ts.has_labels();
    if (labeled) out.labels.reserve(ts.labels.size());
    for (std::size_t i = 0; i < ts.values.size(); ++i) {
        const double v = ts.values[i];
        if (!std::isfinite(v)) {
            if (spec.missing_policy == MissingPolicy::fail)
                throw data_error("preprocess: missing value at row " + std::to_string(i + 1));
            continue;  // drop: close the gap
        }
        out.values.push_back(v);
        if (labeled) out.labels.push_back(ts.labels[i]);
    }

    if (spec.apply_log) {
        for (double& v : out.values) {
            if (!(v > 0.0))
                throw data_error("preprocess: nonpositive value under apply_log");
            v = std::log(v);
        }
    }

    if (spec.jitter_amplitude > 0.0 && !out.values.empty()) {
        const std::vector<double> base = out.values;
        constexpr int max_attempts = 64;
        for (int attempt = 0; attempt < max_attempts; ++attempt) {
            auto engine = make_engine(spec.jitter_seed, static_cast<std::uint64_t>(attempt));
            std::uniform_real_distribution<double> noise(0.0, spec.jitter_amplitude);
            for (std::size_t i = 0; i < out.values.size(); ++i)
                out.values[i] = base[i] + noise(engine);
            if (detail::all_distinct(out.values)) return out;
        }
        throw data_error("preprocess: could not break ties by jitter");
    }
    return out;
}

// ---------------------------------------------------------------------------
// CSV ingestion
// ---------------------------------------------------------------------------

struct ColumnSelector {
    std::string name;  // match against header when non-empty
    int index = -1;    // 0-based position otherwise

    static ColumnSelector by_name(std::string n) {
        ColumnSelector c;
        c.name = std::move(n);
        return c;
    }
    static ColumnSelector by_index(int zero_based) {
        ColumnSelector c;
        c.index = zero_based;
        return c;
    }
    // "3" -> 1-based position 3; anything else -> header name.
    static ColumnSelector parse(const std::string& s) {
        if (!s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
            return by_index(std::stoi(s) - 1);
        return by_name(s);
    }
};

struct CsvOptions {
    char delimiter = ',';
    enum class Header { automatic, yes, no } header = Header::automatic;
    char comment = '#';  // rows whose first cell starts with this are dropped; 0 disables
};

namespace detail {

// RFC-4180 row splitter: quoted fields, doubled quotes, delimiters and
// newlines inside quotes.
inline std::vector<std::vector<std::string>> parse_csv(std::istream& in, char delim) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    char c;
    auto end_field = [&] {
        row.push_back(field);
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        const bool blank = row.size() == 1 && row[0].empty();
        if (!blank) rows.push_back(row);
        row.clear();
    };
    while (in.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && !field_started) {
            in_quotes = true;
            field_started = true;
        } else if (c == delim) {
            end_field();
        } else if (c == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            end_row();
        } else {
            field.push_back(c);
            field_started = true;
        }
    }
    if (!field.empty() || !row.empty()) end_row();
    return rows;
}

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline bool parse_number(const std::string& cell, double& out) {
    const std::string t = trim(cell);
    if (t.empty()) return false;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) return false;
    out = v;
    return true;
}

inline int resolve_column(const ColumnSelector& sel, const std::vector<std::string>& header,
                          std::size_t width, bool have_header, const std::string& what) {
    if (!sel.name.empty()) {
        if (!have_header)
            throw io_error("load_csv: " + what + " '" + sel.name + "' requested by name but file has no header");
        for (std::size_t j = 0; j < header.size(); ++j)
            if (trim(header[j]) == sel.name) return static_cast<int>(j);
        throw io_error("load_csv: no column named '" + sel.name + "'");
    }
    if (sel.index < 0 || static_cast<std::size_t>(sel.index) >= width)
        throw io_error("load_csv: column index " + std::to_string(sel.index + 1) + " out of range");
    return sel.index;
}

} // namespace detail

// Reads one numeric column (plus an optional label column) from a CSV file.
// Missing or unparseable numeric cells are recorded as NaN markers and left
// for preprocess() to resolve.
inline TimeSeries load_csv(const std::filesystem::path& path, const ColumnSelector& column,
                           std::optional<ColumnSelector> label_column = std::nullopt,
                           const CsvOptions& options = {}) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw io_error("load_csv: cannot open '" + path.string() + "'");
    auto rows = detail::parse_csv(file, options.delimiter);
    if (options.comment != 0)
        std::erase_if(rows, [&](const std::vector<std::string>& row) {
            return !row[0].empty() && row[0][0] == options.comment;
        });
    if (rows.empty()) throw io_error("load_csv: '" + path.string() + "' is empty");

    const std::size_t width = rows[0].size();
    bool have_header = false;
    switch (options.header) {
        case CsvOptions::Header::yes: have_header = true; break;
        case CsvOptions::Header::no: have_header = false; break;
        case CsvOptions::Header::automatic: {
            if (!column.name.empty() || (label_column && !label_column->name.empty())) {
                have_header = true;
            } else {
                // Header iff the first row's value cell is not a number.
                double ignored;
                const int j = detail::resolve_column(column, rows[0], width, false, "column");
                have_header = !detail::parse_number(rows[0][static_cast<std::size_t>(j)], ignored);
            }
            break;
        }
    }

    const std::vector<std::string>& header = rows[0];
    const int vcol = detail::resolve_column(column, header, width, have_header, "column");
    int lcol = -1;
    if (label_column)
        lcol = detail::resolve_column(*label_column, header, width, have_header, "label column");

    TimeSeries ts;
    ts.name = path.stem().string();
    const std::size_t first = have_header ? 1 : 0;
    ts.values.reserve(rows.size() - first);
    for (std::size_t i = first; i < rows.size(); ++i) {
        const auto& row = rows[i];
        double v = std::numeric_limits<double>::quiet_NaN();
        if (static_cast<std::size_t>(vcol) < row.size())
            detail::parse_number(row[static_cast<std::size_t>(vcol)], v);
        ts.values.push_back(v);
        if (lcol >= 0)
            ts.labels.push_back(static_cast<std::size_t>(lcol) < row.size()
                                    ? detail::trim(row[static_cast<std::size_t>(lcol)])
                                    : "");
    }
    return ts;
}

// ---------------------------------------------------------------------------
// Range selection
// ---------------------------------------------------------------------------

// 1-based inclusive positions.
inline TimeSeries slice_by_index(const TimeSeries& ts, std::int64_t first, std::int64_t last) {
    if (first < 1 || last > ts.size() || first > last)
        throw std::invalid_argument("slice_by_index: bad range " + std::to_string(first) + ":" +
                                    std::to_string(last));
    TimeSeries out;
    out.name = ts.name;
    out.values.assign(ts.values.begin() + (first - 1), ts.values.begin() + last);
    if (ts.has_labels())
        out.labels.assign(ts.labels.begin() + (first - 1), ts.labels.begin() + last);
    return out;
}

// Keeps rows whose label falls in [from, to], where `to` is matched as a
// prefix so "2015:2019" covers every date that starts with 2019. Relies on
// labels that sort chronologically as strings (ISO dates do).
inline TimeSeries slice_by_label(const TimeSeries& ts, const std::string& from, const std::string& to) {
    if (!ts.has_labels())
        throw std::invalid_argument("slice_by_label: series has no labels");
    TimeSeries out;
    out.name = ts.name;
    for (std::size_t i = 0; i < ts.values.size(); ++i) {
        const std::string& l = ts.labels[i];
        const bool ge_from = from.empty() || l >= from;
        const bool le_to = to.empty() || l <= to || l.compare(0, to.size(), to) == 0;
        if (ge_from && le_to) {
            out.values.push_back(ts.values[i]);
            out.labels.push_back(l);
        }
    }
    return out;
}

} // namespace ordpat
