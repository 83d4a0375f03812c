#pragma once

#include <stdexcept>

namespace ordpat {

// Input data cannot support the requested statistic.
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Equal values at compared positions. The documented remedy is jitter,
// see preprocess() in series.hpp.
struct tie_error : data_error {
    using data_error::data_error;
};

// Series too short for the requested order/lag combination.
struct short_series_error : data_error {
    using data_error::data_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ordpat
