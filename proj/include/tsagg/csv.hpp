#pragma once

#include <string>
#include <vector>

#include "tsagg/core.hpp"

namespace tsagg {

// Shortest text that round-trips the double exactly ('.' decimal, no locale).
std::string format_double(double value);

// Series files: header "index,value", 1-based index, LF line endings.
void write_series_csv(const std::string& path, const TimeSeries& series);
TimeSeries read_series_csv(const std::string& path);

}  // namespace tsagg
