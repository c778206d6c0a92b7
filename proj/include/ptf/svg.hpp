#pragma once

#include <span>
#include <string>

namespace ptf {

// Minimal self-contained log-log line plot: the data polyline plus a dashed
// reference line of the given slope anchored at the series midpoint.
std::string loglog_svg(std::span<const double> xs, std::span<const double> ys,
                       double reference_slope, const std::string& title,
                       const std::string& x_label, const std::string& y_label);

}  // namespace ptf
